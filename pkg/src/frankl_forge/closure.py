"""Union closures, the closed-form size conjecture, and the Theta(n^2) proof checks."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable

from .construct import (GROUPS, ConstructionParams, as_params, build_family,
                        group_generators, group_indices)
from .core import ElementSet, SetFamily, element_frequencies
from .errors import (ClosureLimitExceeded, EmptyGroupError, FormulaDomainError,
                     NotUnionClosedError)

# |cl(S_k1)| = x(x-1)/2 clears n^2/128 for every x >= 3; n^2/64 only from x = 5
OMEGA_CONSTANT = Fraction(1, 128)
UNION_CLOSED_CHECK_LIMIT = 10_000
FLOAT_TOL = 1e-9

_FLIP = str.maketrans("01", "10")


def canonical_key(bits: int, universe_size: int) -> tuple[int, str]:
    """Sort key: size ascending, then ascending element list lexicographically."""
    # reversed binary puts element 1 first; flipping makes "present" sort low
    return bits.bit_count(), format(bits, f"0{universe_size}b")[::-1].translate(_FLIP)


def canonical_family(universe_size: int, bits: Iterable[int]) -> SetFamily:
    ordered = sorted(bits, key=lambda b: canonical_key(b, universe_size))
    return SetFamily.from_bits(universe_size, ordered)


def closure_bits(generators: Iterable[int], max_size: int | None = None) -> set[int]:
    closed: set[int] = set()
    for g in generators:
        closed |= {g | c for c in closed}
        closed.add(g)
        if max_size is not None and len(closed) > max_size:
            raise ClosureLimitExceeded(max_size)
    return closed


@dataclass(frozen=True)
class ClosureResult:
    generators: SetFamily
    closure: SetFamily
    histogram: dict[int, int]

    @property
    def size(self) -> int:
        return len(self.closure)

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.generator_count, self.size)


def union_closure(fam: SetFamily, max_size: int | None = None) -> ClosureResult:
    """All unions of nonempty subfamilies, in canonical order.

    Raises ClosureLimitExceeded once the closure passes ``max_size`` sets.
    """
    if len(fam) == 0:
        raise ValueError("union closure of an empty family is undefined here")
    closed = closure_bits((m.bits for m in fam), max_size)
    closure = canonical_family(fam.universe_size, closed)
    histogram = dict(sorted(Counter(b.bit_count() for b in closed).items()))
    return ClosureResult(fam, closure, histogram)


def is_union_closed(fam: SetFamily) -> bool:
    index = fam.bit_index()
    members = [m.bits for m in fam]
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if a | b not in index:
                return False
    return True


def conjecture_formula(n: int) -> int:
    """23/32 n^2 + 35/8 n - 21, evaluated exactly."""
    if n < 12 or n % 4:
        raise FormulaDomainError(f"n={n} is not of the form 4x+4 with x >= 2")
    numerator = 23 * n * n + 140 * n - 672
    if numerator % 32:
        raise FormulaDomainError(f"formula is not an integer at n={n}")
    return numerator // 32


@dataclass(frozen=True)
class SweepRow:
    x: int
    n: int
    family_size: int
    closure_size: int
    formula_value: int
    matches: bool

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.family_size, self.closure_size)


def sweep_row(x: int, max_size: int | None = None) -> SweepRow:
    sys = build_family(x)
    n = sys.universe_size
    size = len(closure_bits((s.bits for s, _ in sys), max_size))
    formula = conjecture_formula(n)
    return SweepRow(x, n, len(sys), size, formula, size == formula)


def sweep(x_from: int, x_to: int, max_size: int | None = None) -> list[SweepRow]:
    if not 2 <= x_from <= x_to:
        raise ValueError(f"need 2 <= x_from <= x_to, got {x_from}..{x_to}")
    return [sweep_row(x, max_size) for x in range(x_from, x_to + 1)]


# Parametric families from the Theta(n^2) argument. Names k1..k4 describe
# cl(S_k1)..cl(S_k4); k5 and k6 bound cl(S_k1 u S_k2) and cl(S_k3 u S_k4); "C"
# bounds the sets mixing both sides.

def _run(lo: int, hi: int) -> int:
    return ((1 << (hi - lo + 1)) - 1) << (lo - 1) if lo <= hi else 0


def _one_four(a: int, b: int) -> int:
    return 0b1001 | _run(a, b)


def _two_three(n: int, a: int, b: int) -> int:
    return 0b0110 | _run(5, a) | _run(b, n)


DESCRIPTIONS = GROUPS + ("k5", "k6", "C")


def proof_description_bits(n: int, name: str) -> set[int]:
    h, q = n // 2, n // 4
    if name == "k1":
        return {_one_four(a, b) for a in range(6, q + 4) for b in range(h + 3, 3 * q + 1)
                if b - a >= h - 3}
    if name == "k2":
        return {_one_four(a, b) for a in range(q + 4, h + 2) for b in range(3 * q, n - 2)
                if b - a >= h - 4}
    if name == "k3":
        return {_two_three(n, a, b) for a in range(5, q + 2) for b in range(h + 5, 3 * q + 2)
                if b - a <= h}
    if name == "k4":
        return {_two_three(n, a, b) for a in range(q + 4, h + 2) for b in range(3 * q + 3, n + 1)
                if b - a <= h - 1}
    if name == "k5":
        return {_one_four(a, b) for a in range(6, h + 2) for b in range(h + 3, n - 2)
                if b - a >= h - 4}
    if name == "k6":
        return {_two_three(n, a, b) for a in range(5, h + 2) for b in range(h + 5, n + 1)
                if b - a <= h}
    if name == "C":
        out = set()
        for a8 in range(5, h + 2):
            for a7 in range(a8 + 1, h + 2):
                for b7 in range(max(h + 3, a7 + h - 4), n + 1):
                    for b8 in range(b7 + 1, min(n, a8 + h) + 1):
                        out.add(_run(1, a8) | _run(a7, b7) | _run(b8, n))
        return out
    raise ValueError(f"unknown description {name!r}; expected one of {DESCRIPTIONS}")


def proof_description(params: ConstructionParams | int, name: str) -> SetFamily:
    n = as_params(params).n
    return canonical_family(n, proof_description_bits(n, name))


def parametric_group_closure(params: ConstructionParams | int, group: str) -> SetFamily:
    """cl(S_g) from its parameter-range description, without computing any union."""
    params = as_params(params)
    if group not in GROUPS:
        raise ValueError(f"unknown group {group!r}; expected one of {GROUPS}")
    if len(group_indices(params, group)) == 0:
        raise EmptyGroupError(f"group {group} has no generators at x={params.x}")
    return proof_description(params, group)


@dataclass
class TheoremReport:
    x: int
    n: int
    group_matches: dict[str, bool] = field(default_factory=dict)
    group_sizes: dict[str, int] = field(default_factory=dict)
    k5_ok: bool = False
    k6_ok: bool = False
    # sets of cl(S_k1..S_k4) that come from neither side alone, checked against C
    mixed_count: int = 0
    c_outliers: list[ElementSet] = field(default_factory=list)
    # C misses unions whose blocks overlap; those collapse to {1..m} u {b..n}
    outliers_two_block: bool = True
    # every mixed set is a union of one k5 set and one k6 set
    pairwise_ok: bool = False
    lower_bound: Fraction = Fraction(0)
    lower_ok: bool = False

    @property
    def c_ok(self) -> bool:
        return not self.c_outliers

    @property
    def ok(self) -> bool:
        return (all(self.group_matches.values()) and self.k5_ok and self.k6_ok
                and self.c_ok and self.pairwise_ok and self.lower_ok)


def _is_prefix_suffix(bits: int, n: int) -> bool:
    prefix = (~bits & (bits + 1)).bit_length() - 1  # length of the run 1..m
    rest = bits >> prefix
    if rest == 0:
        return True
    start = (rest & -rest).bit_length() + prefix
    return bits >> (start - 1) == (1 << (n - start + 1)) - 1


def theorem_checks(params: ConstructionParams | int) -> TheoremReport:
    params = as_params(params)
    if params.x < 3:
        raise EmptyGroupError("the k3 group is empty below x = 3")
    n = params.n
    report = TheoremReport(params.x, n)
    gens = {g: [m.bits for m in group_generators(params, g)] for g in GROUPS}
    for g in GROUPS:
        computed = closure_bits(gens[g])
        report.group_matches[g] = computed == parametric_group_closure(params, g).bit_index()
        report.group_sizes[g] = len(computed)

    left = closure_bits(gens["k1"] + gens["k2"])
    right = closure_bits(gens["k3"] + gens["k4"])
    everything = closure_bits(gens["k1"] + gens["k2"] + gens["k3"] + gens["k4"])
    k5 = proof_description_bits(n, "k5")
    k6 = proof_description_bits(n, "k6")
    report.k5_ok = left <= k5
    report.k6_ok = right <= k6

    mixed = everything - left - right
    c_desc = proof_description_bits(n, "C")
    report.mixed_count = len(mixed)
    report.c_outliers = list(canonical_family(n, mixed - c_desc))
    report.outliers_two_block = all(_is_prefix_suffix(s.bits, n) for s in report.c_outliers)
    report.pairwise_ok = mixed <= {a | b for a, b in product(k5, k6)}

    report.lower_bound = OMEGA_CONSTANT * n * n
    report.lower_ok = report.group_sizes["k1"] >= report.lower_bound
    return report


def average_set_size_check(fam: SetFamily) -> tuple[Fraction, float, bool]:
    """Reimer: average member size >= log2(|fam|) / 2 for union-closed families."""
    if len(fam) <= UNION_CLOSED_CHECK_LIMIT and not is_union_closed(fam):
        raise NotUnionClosedError("average set size bound only applies to union-closed families")
    average = Fraction(sum(len(m) for m in fam), len(fam))
    bound = 0.5 * math.log2(len(fam))
    return average, bound, float(average) >= bound - FLOAT_TOL


def knill_check(fam: SetFamily) -> tuple[int, float, bool]:
    """Knill: some element lies in at least (m-1)/log2(m) of the m members."""
    m = len(fam)
    if m < 2:
        raise ValueError("Knill's bound needs at least two members")
    best = max(element_frequencies(fam))
    bound = (m - 1) / math.log2(m)
    return best, bound, best >= bound - FLOAT_TOL
