import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from mlab.census import all_algebras, is_isomorphic
from mlab.errors import PreconditionError
from mlab.functor import Fn
from mlab.initiality import (
    VERDICT_INCONCLUSIVE,
    VERDICT_OK,
    VERDICT_REFUTED,
    Inconclusive,
    is_C_initial_bounded,
    terminal_C_initial_bounded,
    unique_map_to_dual,
)
from mlab.measuring import convolution_lazy
from mlab.structures import (
    empty_coalgebra,
    one_point_algebra,
    std_algebra,
    std_coalgebra,
    succ_algebra,
    unit_coalgebra,
)

FAMILY2 = all_algebras(2)
FAMILY3 = all_algebras(3)


@pytest.mark.parametrize("n", range(3))
def test_chain_is_initial_for_its_countdown(n):
    rep = is_C_initial_bounded(std_algebra(n), std_coalgebra(n), FAMILY3)
    assert rep.verdict == VERDICT_OK and rep.ok
    assert [c for _, c in rep.counts] == [1] * len(FAMILY3)
    assert rep.as_dict()["scope"] == "family-relative"


@pytest.mark.parametrize("n", range(3))
def test_longer_chain_is_also_initial(n):
    assert is_C_initial_bounded(std_algebra(n + 1), std_coalgebra(n), FAMILY3).ok


def test_everything_is_initial_for_the_empty_coalgebra():
    for A in FAMILY2:
        assert is_C_initial_bounded(A, empty_coalgebra(), FAMILY2).ok


def test_refutation_names_a_witness():
    rep = is_C_initial_bounded(std_algebra(1), std_coalgebra(2), FAMILY3)
    assert rep.verdict == VERDICT_REFUTED
    assert rep.witness["count"] != 1
    target = rep.witness["target"]
    assert dict(rep.counts)[target] == rep.witness["count"]


def test_bound_overflow_is_inconclusive_not_refuted():
    rep = is_C_initial_bounded(std_algebra(2), std_coalgebra(2), FAMILY3, bound=20)
    assert rep.verdict == VERDICT_INCONCLUSIVE
    assert rep.skipped
    assert all(dict(rep.counts)[s] is None for s in rep.skipped)


def test_empty_family_is_refused():
    with pytest.raises(PreconditionError):
        is_C_initial_bounded(std_algebra(1), std_coalgebra(1), [])


@given(st.integers(0, 2), st.lists(st.integers(0, len(FAMILY3) - 1), unique=True, min_size=1, max_size=6))
def test_verdict_is_monotone_in_the_family(n, picks):
    A, C = std_algebra(n), std_coalgebra(n)
    sub = [FAMILY3[i] for i in picks]
    assert is_C_initial_bounded(A, C, sub).ok


@given(st.integers(0, len(FAMILY2) - 1), st.integers(0, 2))
def test_counts_match_brute_force(i, n):
    A, C = FAMILY2[i], std_coalgebra(n)
    rep = is_C_initial_bounded(A, C, FAMILY2)
    for (label, count), X in zip(rep.counts, FAMILY2):
        assert count == len(oracle.measurings(oracle.coalg(C), oracle.alg(A), oracle.alg(X)))
    assert rep.ok == all(c == 1 for _, c in rep.counts)


@pytest.mark.parametrize("n", [0, 1])
def test_terminal_initial_algebra_small_search(n):
    T = terminal_C_initial_bounded(std_coalgebra(n), 3)
    assert is_isomorphic(T, std_algebra(n))


def test_unit_coalgebra_search_is_inconclusive():
    res = terminal_C_initial_bounded(unit_coalgebra(), 3)
    assert isinstance(res, Inconclusive)
    assert "naturals" in res.note
    assert res.as_dict()["verdict"] == VERDICT_INCONCLUSIVE


def test_empty_coalgebra_search_finds_the_point():
    assert is_isomorphic(terminal_C_initial_bounded(empty_coalgebra(), 3), one_point_algebra())


@pytest.mark.parametrize("n", range(5))
def test_map_to_the_dual(n):
    d = unique_map_to_dual(std_algebra(n), std_coalgebra(n))
    for m in range(n + 1):
        assert d.image[str(m)] == Fn(tuple(min(i, m) for i in range(n + 1)))
    assert d.unique and d.hom_count == 1
    L = convolution_lazy(std_coalgebra(n))
    A = std_algebra(n)
    assert all(d.image[A.succ(a)] == L.succ(d.image[a]) for a in A.carrier)


def test_cycle_away_from_zero_goes_to_the_top():
    A = succ_algebra(["0", "1", "2"], "0", {"0": "1", "1": "2", "2": "1"})
    d = unique_map_to_dual(A, std_coalgebra(1))
    assert d.image["0"] == Fn((0, 0))
    assert d.image["1"] == d.image["2"] == Fn((0, 1)) == d.lasso.top
    assert d.unique
    assert d.as_dict()["map"]["2"] == [0, 1]


def test_cycle_through_zero_has_no_map():
    A = succ_algebra(["0", "1", "2"], "0", {"0": "1", "1": "2", "2": "0"})
    with pytest.raises(PreconditionError):
        unique_map_to_dual(A, std_coalgebra(1))


def test_orphan_element_is_refused():
    A = succ_algebra(["0", "1", "x"], "0", {"0": "1", "1": "1", "x": "1"})
    with pytest.raises(PreconditionError, match="x"):
        unique_map_to_dual(A, std_coalgebra(1))
