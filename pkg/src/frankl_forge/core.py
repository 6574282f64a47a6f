"""Bit-vector set algebra over a universe [n] = {1, ..., n}.

Element ``i`` is stored at bit ``i - 1`` of a Python int, so the universe size
is only bounded by memory.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DuplicateMemberError, UniverseMismatchError


def check_same_universe(a: "ElementSet", b: "ElementSet") -> None:
    if a.universe_size != b.universe_size:
        raise UniverseMismatchError(
            f"universe sizes differ: {a.universe_size} != {b.universe_size}"
        )


def bits_to_elements(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length())
        bits ^= low
    return out


@dataclass(frozen=True, slots=True)
class ElementSet:
    """A subset of [universe_size]."""

    universe_size: int
    bits: int = 0

    def __post_init__(self):
        if self.universe_size < 1:
            raise ValueError(f"universe size must be >= 1, got {self.universe_size}")
        if self.bits < 0 or self.bits >> self.universe_size:
            raise ValueError(f"bits outside universe [{self.universe_size}]")

    @classmethod
    def from_elements(cls, universe_size: int, elements: Iterable[int]) -> ElementSet:
        bits = 0
        for e in elements:
            if not 1 <= e <= universe_size:
                raise ValueError(f"element {e} outside [1, {universe_size}]")
            bits |= 1 << (e - 1)
        return cls(universe_size, bits)

    @classmethod
    def full(cls, universe_size: int) -> ElementSet:
        return cls(universe_size, (1 << universe_size) - 1)

    @classmethod
    def empty(cls, universe_size: int) -> ElementSet:
        return cls(universe_size, 0)

    def elements(self) -> list[int]:
        return bits_to_elements(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.universe_size and bool(self.bits >> (element - 1) & 1)

    def __or__(self, other: ElementSet) -> ElementSet:
        return set_union(self, other)

    def __and__(self, other: ElementSet) -> ElementSet:
        check_same_universe(self, other)
        return ElementSet(self.universe_size, self.bits & other.bits)

    def __sub__(self, other: ElementSet) -> ElementSet:
        check_same_universe(self, other)
        return ElementSet(self.universe_size, self.bits & ~other.bits)

    def __le__(self, other: ElementSet) -> bool:
        return is_subset(self, other)

    def complement(self) -> ElementSet:
        return ElementSet(self.universe_size, ((1 << self.universe_size) - 1) ^ self.bits)

    def with_element(self, element: int) -> ElementSet:
        return ElementSet(self.universe_size, self.bits | (1 << (element - 1)))

    def __repr__(self) -> str:
        return f"ElementSet(n={self.universe_size}, {{{', '.join(map(str, self.elements()))}}})"


def set_union(a: ElementSet, b: ElementSet) -> ElementSet:
    check_same_universe(a, b)
    return ElementSet(a.universe_size, a.bits | b.bits)


def is_subset(a: ElementSet, b: ElementSet) -> bool:
    check_same_universe(a, b)
    return a.bits & ~b.bits == 0


class SetFamily(Sequence[ElementSet]):
    """Ordered, duplicate-free list of sets over a shared universe.

    Duplicates raise :class:`DuplicateMemberError` rather than being dropped.
    """

    __slots__ = ("universe_size", "_members", "_index")

    def __init__(self, universe_size: int, members: Iterable[ElementSet] = ()):
        self.universe_size = universe_size
        members = tuple(members)
        index: set[int] = set()
        for position, m in enumerate(members):
            if m.universe_size != universe_size:
                raise UniverseMismatchError(
                    f"member {position} has universe {m.universe_size}, family has {universe_size}"
                )
            if m.bits in index:
                raise DuplicateMemberError(f"duplicate member at position {position}: {m!r}")
            index.add(m.bits)
        self._members = members
        self._index = frozenset(index)

    @classmethod
    def from_bits(cls, universe_size: int, bits: Iterable[int]) -> SetFamily:
        return cls(universe_size, (ElementSet(universe_size, b) for b in bits))

    @classmethod
    def from_lists(cls, universe_size: int, lists: Iterable[Iterable[int]]) -> SetFamily:
        return cls(universe_size, (ElementSet.from_elements(universe_size, s) for s in lists))

    def __len__(self) -> int:
        return len(self._members)

    def __getitem__(self, i):
        return self._members[i]

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self._members)

    def __contains__(self, item) -> bool:
        if isinstance(item, ElementSet):
            return item.universe_size == self.universe_size and item.bits in self._index
        return False

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.universe_size == other.universe_size and self._members == other._members

    def __hash__(self) -> int:
        return hash((self.universe_size, self._members))

    def same_sets(self, other: SetFamily) -> bool:
        """Equality ignoring member order."""
        return self.universe_size == other.universe_size and self._index == other._index

    def bit_index(self) -> frozenset[int]:
        return self._index

    def __repr__(self) -> str:
        return f"SetFamily(n={self.universe_size}, {len(self)} members)"


def element_frequencies(fam: SetFamily) -> list[int]:
    """count[i - 1] is the number of members containing element i."""
    counts = [0] * fam.universe_size
    for member in fam:
        bits = member.bits
        while bits:
            low = bits & -bits
            counts[low.bit_length() - 1] += 1
            bits ^= low
    return counts


class PairedSystem:
    """The bijection S_i <-> F_i, index-aligned."""

    __slots__ = ("universe_size", "pairs")

    def __init__(self, universe_size: int, pairs: Iterable[tuple[ElementSet, ElementSet]]):
        self.universe_size = universe_size
        self.pairs = tuple((small, large) for small, large in pairs)
        # SetFamily enforces shared universe and distinctness on each side
        SetFamily(universe_size, (p[0] for p in self.pairs))
        SetFamily(universe_size, (p[1] for p in self.pairs))

    @property
    def smalls(self) -> SetFamily:
        return SetFamily(self.universe_size, (p[0] for p in self.pairs))

    @property
    def larges(self) -> SetFamily:
        return SetFamily(self.universe_size, (p[1] for p in self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __getitem__(self, i: int) -> tuple[ElementSet, ElementSet]:
        return self.pairs[i]

    def __iter__(self):
        return iter(self.pairs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairedSystem):
            return NotImplemented
        return self.universe_size == other.universe_size and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash((self.universe_size, self.pairs))

    def replace(self, index: int, small: ElementSet | None = None,
                large: ElementSet | None = None) -> PairedSystem:
        """Copy with the pair at ``index`` swapped out; handy for corrupting fixtures."""
        pairs = list(self.pairs)
        old_small, old_large = pairs[index]
        pairs[index] = (old_small if small is None else small,
                        old_large if large is None else large)
        return PairedSystem(self.universe_size, pairs)

    def __repr__(self) -> str:
        return f"PairedSystem(n={self.universe_size}, {len(self)} pairs)"
