"""The filter F and family S with minimum set size x over [n], n = 4x + 4."""

from __future__ import annotations

from dataclasses import dataclass

from .core import ElementSet, PairedSystem, SetFamily, element_frequencies
from .errors import UnsupportedParameterError

GROUPS = ("k1", "k2", "k3", "k4")


@dataclass(frozen=True)
class ConstructionParams:
    x: int

    def __post_init__(self):
        if not isinstance(self.x, int) or self.x < 2:
            raise UnsupportedParameterError(
                f"minimum set size x must be an integer >= 2, got {self.x!r}"
            )

    @property
    def n(self) -> int:
        return 4 * self.x + 4


def as_params(params: ConstructionParams | int) -> ConstructionParams:
    if isinstance(params, ConstructionParams):
        return params
    return ConstructionParams(params)


def _span(lo: int, hi: int) -> int:
    """Bits for the elements lo..hi inclusive; empty when lo > hi."""
    if lo > hi:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << (lo - 1)


def _pt(*elements: int) -> int:
    bits = 0
    for e in elements:
        bits |= 1 << (e - 1)
    return bits


def group_indices(params: ConstructionParams | int, group: str) -> range:
    """Index range of the parametric generator groups k1..k4 (possibly empty)."""
    n = as_params(params).n
    h, q = n // 2, n // 4
    ranges = {
        "k1": range(5, q + 3),
        "k2": range(q + 3, h + 1),
        "k3": range(h + 4, 3 * q + 1),
        "k4": range(3 * q + 2, n),
    }
    try:
        return ranges[group]
    except KeyError:
        raise ValueError(f"unknown group {group!r}; expected one of {GROUPS}") from None


def _family_bits(n: int) -> dict[int, int]:
    h, q = n // 2, n // 4
    s: dict[int, int] = {
        0: _span(1, n),
        1: _pt(2) | _span(h + 1, n),
        2: _pt(1, n) | _span(3, h),
        3: _pt(1) | _span(4, h + 2),
        4: _pt(1, 3) | _span(h + 3, n),
    }
    for k in range(5, q + 3):
        s[k] = _pt(1, 4) | _span(k + 1, h + k - 2)
    for k in range(q + 3, h + 1):
        s[k] = _pt(1, 4) | _span(k + 1, h + k - 3)
    # absent from the published list; the only choice leaving every element
    # with frequency n/2 + 1 (see missing_member_from_frequencies)
    s[h + 1] = _pt(2, 4) | _span(h + 2, n - 2)
    s[h + 2] = _pt(2, 4) | _span(h + 3, n - 1)
    s[h + 3] = _pt(2, 3) | _span(h + 4, n)
    for k in range(h + 4, 3 * q + 1):
        s[k] = _pt(2, 3) | _span(5, k - h + 1) | _span(k + 1, n)
    s[3 * q + 1] = _pt(2, 3) | _span(5, q + 3) | _span(3 * q + 2, n - 1)
    for k in range(3 * q + 2, n):
        s[k] = _pt(2, 3) | _span(5, k - h + 2) | _span(k + 1, n)
    s[n] = _pt(3, 3 * q + 1) | _span(5, h + 2)
    s[n + 1] = _span(3 * q + 2, n)
    s[n + 2] = _pt(1) | _span(5, q + 2)
    return s


def build_filter(params: ConstructionParams | int) -> SetFamily:
    """F_0 = [n], F_i = [n] minus {i} for i in [n], then [n] minus {1,2} and [n] minus {3,4}."""
    n = as_params(params).n
    full = _span(1, n)
    bits = [full]
    bits += [full & ~_pt(i) for i in range(1, n + 1)]
    bits += [full & ~_pt(1, 2), full & ~_pt(3, 4)]
    return SetFamily.from_bits(n, bits)


def build_family(params: ConstructionParams | int) -> PairedSystem:
    """Pairs (S_i, F_i) for i = 0..n+2 in canonical index order.

    Not validated here; run the verify module on the result.
    """
    n = as_params(params).n
    smalls = _family_bits(n)
    filt = build_filter(params)
    return PairedSystem(n, ((ElementSet(n, smalls[i]), filt[i]) for i in range(n + 3)))


def member_set(params: ConstructionParams | int, index: int) -> ElementSet:
    n = as_params(params).n
    if not 0 <= index <= n + 2:
        raise IndexError(f"index {index} outside 0..{n + 2}")
    return ElementSet(n, _family_bits(n)[index])


def group_generators(params: ConstructionParams | int, group: str) -> SetFamily:
    params = as_params(params)
    bits = _family_bits(params.n)
    return SetFamily.from_bits(params.n, (bits[k] for k in group_indices(params, group)))


def missing_member_from_frequencies(others: SetFamily, target: int) -> ElementSet:
    """Recover a deleted member from the frequency deficit.

    If every element should appear in exactly ``target`` members, the deleted
    set is exactly the elements that appear ``target - 1`` times among the rest.
    Any other count means no single set can complete the family.
    """
    freqs = element_frequencies(others)
    bad = [(i + 1, f) for i, f in enumerate(freqs) if f not in (target, target - 1)]
    if bad:
        raise ValueError(f"no single-set completion reaches frequency {target}: {bad}")
    return ElementSet.from_elements(
        others.universe_size, (i + 1 for i, f in enumerate(freqs) if f == target - 1)
    )
