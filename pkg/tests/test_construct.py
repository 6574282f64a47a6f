import pytest

from frankl_forge.construct import (ConstructionParams, build_family, build_filter,
                                    group_indices, member_set, missing_member_from_frequencies)
from frankl_forge.core import ElementSet, SetFamily
from frankl_forge.errors import UnsupportedParameterError
from frankl_forge.verify import check_filter, check_non_interference, check_subset_condition

from oracles import family_from_text, filter_from_text, span

ALL_X = range(2, 13)


def elems(s):
    return s.elements()


def test_params():
    assert ConstructionParams(2).n == 12
    assert ConstructionParams(100).n == 404
    for bad in (1, 0, -3):
        with pytest.raises(UnsupportedParameterError):
            ConstructionParams(bad)
    with pytest.raises(UnsupportedParameterError):
        build_family(1)
    with pytest.raises(UnsupportedParameterError):
        build_filter(1)


def test_filter_examples():
    f = build_filter(2)
    assert elems(f[0]) == list(range(1, 13))
    assert elems(f[14]) == [1, 2, 5, 6, 7, 8, 9, 10, 11, 12]
    assert elems(f[13]) == list(range(3, 13))


@pytest.mark.parametrize("x", ALL_X)
def test_filter_shape(x):
    f = build_filter(x)
    n = 4 * x + 4
    assert len(f) == n + 3
    assert [len(m) for m in f] == [n] + [n - 1] * n + [n - 2] * 2
    assert [frozenset(m.elements()) for m in f] == filter_from_text(n)
    assert check_filter(f).ok


def test_family_examples_x2():
    sys = build_family(2)
    smalls = [elems(s) for s, _ in sys]
    assert smalls[1] == [2, 7, 8, 9, 10, 11, 12]
    assert smalls[13] == [11, 12]
    assert smalls[14] == [1, 5]
    assert smalls[7] == [2, 4, 8, 9, 10]
    sizes = [len(s) for s, _ in sys]
    assert sizes == [12, 7, 6, 6, 6, 6, 5, 5, 5, 5, 5, 6, 6, 2, 2]
    assert sum(sizes) == 84 == 12 * (12 // 2 + 1)


@pytest.mark.parametrize("x", ALL_X)
def test_family_matches_published_list(x):
    n, listed = family_from_text(x)
    sys = build_family(x)
    assert sys.universe_size == n
    for k, s in listed.items():
        assert frozenset(elems(sys[k][0])) == s, k


@pytest.mark.parametrize("x", ALL_X)
def test_missing_member_is_the_frequency_deficit(x):
    # remove S_{n/2+1}; the elements now one short of n/2+1 must be exactly it
    n, listed = family_from_text(x)
    others = SetFamily.from_lists(n, listed.values())
    recovered = missing_member_from_frequencies(others, n // 2 + 1)
    sys = build_family(x)
    assert recovered == sys[n // 2 + 1][0]
    assert elems(recovered) == [2, 4] + list(range(n // 2 + 2, n - 1))


def test_missing_member_rejects_impossible_completion():
    fam = SetFamily.from_lists(3, [[1], [2]])
    with pytest.raises(ValueError):
        missing_member_from_frequencies(fam, 3)


@pytest.mark.parametrize("x", ALL_X)
def test_family_invariants(x):
    sys = build_family(x)
    n = 4 * x + 4
    smalls = [s for s, _ in sys]
    assert len(sys) == n + 3
    assert len({s.bits for s in smalls}) == n + 3
    assert len({f.bits for _, f in sys}) == n + 3
    sizes = [len(s) for s in smalls]
    assert min(sizes) == x == n // 4 - 1
    assert [i for i, z in enumerate(sizes) if z == x] == [n + 1, n + 2]
    assert sum(sizes[1:n + 1]) == n * (n - 1) // 2 + 2
    assert sum(sizes) == n * (n // 2 + 1)
    assert 2 in smalls[1] and 1 in smalls[2] and 4 in smalls[3] and 3 in smalls[4]
    assert smalls[0] == ElementSet.full(n)
    assert len(smalls[n + 1]) > 0 and len(smalls[n + 2]) > 0
    assert check_subset_condition(sys) == []
    assert check_non_interference(sys) == []


def test_member_set():
    assert member_set(2, 0) == ElementSet.full(12)
    # 3n/4+2 .. n at n=16 is 14..16 (size x = 3)
    assert elems(member_set(3, 17)) == [14, 15, 16]
    assert member_set(ConstructionParams(5), 9) == build_family(5)[9][0]
    with pytest.raises(IndexError):
        member_set(2, 15)
    with pytest.raises(IndexError):
        member_set(2, -1)


def test_empty_ranges_are_skipped_at_x2():
    assert len(group_indices(2, "k3")) == 0
    assert list(group_indices(2, "k1")) == [5]
    assert list(group_indices(3, "k3")) == [12]
    with pytest.raises(ValueError):
        group_indices(3, "k9")


def test_deterministic():
    assert build_family(7) == build_family(7)
    assert span(1, 0) == set()
