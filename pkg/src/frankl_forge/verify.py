"""Reimer's conditions, filter and abundance checks, and structural lints.

Every checker collects all violations (with witnesses) rather than stopping at
the first one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .core import (ElementSet, PairedSystem, SetFamily, check_same_universe,
                   element_frequencies, is_subset)
from .errors import MalformedPairError, OracleTooLargeError

DEFAULT_ORACLE_BUDGET = 1 << 20

Pair = tuple[ElementSet, ElementSet]


@dataclass(frozen=True)
class Interval:
    """All sets C with lower <= C <= upper. Never constructed empty."""

    lower: ElementSet
    upper: ElementSet

    def __post_init__(self):
        if not is_subset(self.lower, self.upper):
            raise MalformedPairError(f"{self.lower!r} is not a subset of {self.upper!r}")

    @property
    def free_count(self) -> int:
        return (self.upper.bits & ~self.lower.bits).bit_count()

    def member_bits(self) -> set[int]:
        free = self.upper.bits & ~self.lower.bits
        out = set()
        sub = free
        while True:
            out.add(self.lower.bits | sub)
            if sub == 0:
                return out
            sub = (sub - 1) & free


def intervals_disjoint(sp: ElementSet, fp: ElementSet, sq: ElementSet, fq: ElementSet) -> bool:
    """[sp, fp] and [sq, fq] are disjoint iff some element of one lower set lies
    outside the other upper set."""
    if not (is_subset(sp, fp) and is_subset(sq, fq)):
        raise MalformedPairError("interval lower bound is not contained in its upper bound")
    check_same_universe(sp, sq)
    return bool((sp.bits & ~fq.bits) | (sq.bits & ~fp.bits))


def intervals_disjoint_oracle(sp: ElementSet, fp: ElementSet, sq: ElementSet, fq: ElementSet,
                              budget: int = DEFAULT_ORACLE_BUDGET) -> bool:
    """Enumerate both intervals and intersect them."""
    a, b = Interval(sp, fp), Interval(sq, fq)
    check_same_universe(sp, sq)
    cost = (1 << a.free_count) + (1 << b.free_count)
    if cost > budget:
        raise OracleTooLargeError(f"enumeration needs {cost} sets, budget is {budget}")
    return a.member_bits().isdisjoint(b.member_bits())


@dataclass(frozen=True)
class Interference:
    p: int
    q: int
    witness: ElementSet


def check_non_interference(pairs: PairedSystem | Sequence[Pair]) -> list[Interference]:
    """All interfering index pairs (p < q), witness S_p | S_q.

    Accepts a bare list of pairs too, so systems that are not bijections can
    still be diagnosed.
    """
    pairs = list(pairs)
    out = []
    for p, q in combinations(range(len(pairs)), 2):
        sp, fp = pairs[p]
        sq, fq = pairs[q]
        if not is_subset(sp, fp) or not is_subset(sq, fq):
            # an interval whose lower set escapes its upper set is empty
            continue
        if not intervals_disjoint(sp, fp, sq, fq):
            out.append(Interference(p, q, sp | sq))
    return out


def check_subset_condition(pairs: PairedSystem | Sequence[Pair]) -> list[int]:
    return [i for i, (small, large) in enumerate(pairs) if not is_subset(small, large)]


@dataclass(frozen=True)
class FilterResult:
    ok: bool
    witness: tuple[ElementSet, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_filter(fam: SetFamily) -> FilterResult:
    """Upward closure under adding one element; witness is the first (F, i) that escapes."""
    index = fam.bit_index()
    for member in fam:
        for i in range(1, fam.universe_size + 1):
            if member.bits | (1 << (i - 1)) not in index:
                return FilterResult(False, (member, i))
    return FilterResult(True)


@dataclass(frozen=True)
class AbundanceResult:
    holds: bool
    best_element: int
    best_count: int
    threshold_count: int


def check_abundance(fam: SetFamily) -> AbundanceResult:
    freqs = element_frequencies(fam)
    best_count = max(freqs)
    best_element = freqs.index(best_count) + 1
    threshold = (len(fam) + 1) // 2
    return AbundanceResult(best_count >= threshold, best_element, best_count, threshold)


@dataclass(frozen=True)
class LintResult:
    name: str
    description: str
    passed: bool
    witness: str = ""


def structural_lints(sys: PairedSystem) -> list[LintResult]:
    n = sys.universe_size
    full = ElementSet.full(n)
    smalls = [p[0] for p in sys]
    lints = []

    partner = [s for s, f in sys if f == full]
    if not partner:
        lints.append(LintResult("L1", "set paired with [n] is [n]", False,
                                "no filter set equals [n]"))
    else:
        ok = partner[0] == full
        lints.append(LintResult("L1", "set paired with [n] is [n]", ok,
                                "" if ok else f"[n] is paired with {partner[0].elements()}"))

    name = "sets at n+1, n+2 nonempty"
    if len(sys) != n + 3:
        lints.append(LintResult("L2", name, False, f"system has {len(sys)} pairs, expected {n + 3}"))
    else:
        empty = [i for i in (n + 1, n + 2) if len(smalls[i]) == 0]
        lints.append(LintResult("L2", name, not empty,
                                f"empty small set at index {empty}" if empty else ""))

    min_size = min(len(s) for s in smalls)
    ok = n >= 4 * min_size + 4
    lints.append(LintResult("L3", "n >= 4x + 4", ok,
                            "" if ok else f"n={n} < 4*{min_size}+4={4 * min_size + 4}"))

    name = "every element in n/2+1 sets when n = 4x+4"
    if n != 4 * min_size + 4:
        lints.append(LintResult("L4", name, True, f"not applicable (x={min_size})"))
    else:
        freqs = element_frequencies(SetFamily(n, smalls))
        off = [(i + 1, f) for i, f in enumerate(freqs) if f != n // 2 + 1]
        lints.append(LintResult("L4", name, not off,
                                f"(element, frequency) off target: {off[:10]}" if off else ""))

    bound = n * (n - 1) // 2 + 2
    total = sum(len(smalls[p]) for p in range(1, min(n, len(smalls) - 1) + 1))
    ok = total >= bound
    lints.append(LintResult("L5", "sum of |S_p| over p in [n] >= n(n-1)/2 + 2", ok,
                            f"sum={total}, bound={bound}"))
    return lints


@dataclass(frozen=True)
class Witness:
    check: str
    indices: tuple[int, ...]
    explanation: str


@dataclass
class VerificationReport:
    universe_size: int
    min_size: int
    subset_ok: bool
    non_interference_ok: bool
    filter_ok: bool
    abundance: AbundanceResult
    lint_results: list[LintResult] = field(default_factory=list)
    violation_witnesses: list[Witness] = field(default_factory=list)

    @property
    def reimer_ok(self) -> bool:
        return self.subset_ok and self.non_interference_ok and self.filter_ok

    @property
    def is_counterexample(self) -> bool:
        return self.reimer_ok and not self.abundance.holds

    @property
    def lints_ok(self) -> bool:
        return all(l.passed for l in self.lint_results)


def verify_system(sys: PairedSystem) -> VerificationReport:
    witnesses: list[Witness] = []
    bad_subset = check_subset_condition(sys)
    for i in bad_subset:
        small, large = sys[i]
        witnesses.append(Witness("subset", (i,),
                                 f"S_{i} has {(small - large).elements()} outside F_{i}"))
    clashes = check_non_interference(sys)
    for c in clashes:
        witnesses.append(Witness("non_interference", (c.p, c.q),
                                 f"{c.witness.elements()} lies in both intervals"))
    filt = check_filter(sys.larges)
    if not filt.ok:
        member, i = filt.witness
        witnesses.append(Witness("filter", (),
                                 f"{member.elements()} plus element {i} is not in the filter"))
    lints = structural_lints(sys)
    for lint in lints:
        if not lint.passed:
            witnesses.append(Witness(lint.name, (), lint.witness))
    return VerificationReport(
        universe_size=sys.universe_size,
        min_size=min(len(s) for s, _ in sys),
        subset_ok=not bad_subset,
        non_interference_ok=not clashes,
        filter_ok=filt.ok,
        abundance=check_abundance(sys.smalls),
        lint_results=lints,
        violation_witnesses=witnesses,
    )
