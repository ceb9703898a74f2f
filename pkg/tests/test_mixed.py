import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mlab.errors import BoundExceeded, FunctorMismatch
from mlab.functor import STOP, Fn, Inl, Pair, eval_on_set
from mlab.measuring import enumerate_alg_homs
from mlab.mixed import (
    all_automata,
    all_gf_algebras,
    automaton,
    automaton_code,
    automaton_homs,
    contravariance_holds,
    distinct_up_to_iso,
    gf_algebra_code,
    gf_algebra_from_ops,
    gf_convolution,
    gf_functor,
    gf_measuring_count,
    precompose,
    unit_automaton,
    unit_iso_holds,
)
from mlab.structures import FinAlgebra, is_alg_hom
from mlab.functor import FinSet


@st.composite
def gf_algebras(draw, sigma, max_size=3):
    k = draw(st.integers(1, max_size))
    elems = [f"a{i}" for i in range(k)]
    F = gf_functor(sigma)
    domain = eval_on_set(F, FinSet(elems))
    alpha = {x: draw(st.sampled_from(elems)) for x in domain}
    return FinAlgebra(F, FinSet(elems), alpha)


@st.composite
def moore(draw, sigma, max_states=3):
    k = draw(st.integers(1, max_states))
    states = [f"q{i}" for i in range(k)]
    accept = [q for q in states if draw(st.booleans())]
    delta = {(q, s): draw(st.sampled_from(states)) for q in states for s in sigma}
    return automaton(sigma, states, accept, delta)


def reference_convolution(C, A):
    """[C,A] written out from the pointwise formula, state by state."""
    states = list(C.states)
    sigma = list(C.alphabet)
    table = {}
    for fs in itertools.product(A.carrier.elements, repeat=len(states)):
        table[Fn(fs)] = dict(zip(states, fs))
    out = {STOP: Fn(tuple(A.alpha[STOP] for _ in states))}
    for bit in "01":
        for gs in itertools.product(table, repeat=len(sigma)):
            vals = []
            for c in states:
                b = "1" if bit == "1" and C.accept[c] == "1" else "0"
                entries = tuple(table[g][C.delta[(c, s)]] for g, s in zip(gs, sigma))
                vals.append(A.alpha[Inl(Pair(b, Fn(entries)))])
            out[Inl(Pair(bit, Fn(gs)))] = Fn(tuple(vals))
    return out


def counter(sigma, k):
    """Counts accepted bits modulo k, ignoring the tuple beyond its first entry."""
    elems = [str(i) for i in range(k)]

    def op(bit, values):
        base = int(values[0]) if values else 0
        return str((base + (bit == "1")) % k)

    return gf_algebra_from_ops(sigma, elems, "0", op, f"count{k}")


@given(st.data())
def test_convolution_matches_the_pointwise_formula(data):
    sigma = data.draw(st.sampled_from([["a"], ["a", "b"]]))
    C = data.draw(moore(sigma, max_states=2))
    A = data.draw(gf_algebras(sigma, max_size=2))
    conv = gf_convolution(C, A)
    assert conv.alpha == reference_convolution(C, A)
    assert conv.alpha == gf_convolution(C, A, generic=True).alpha
    assert len(conv.carrier) == len(A.carrier) ** len(C.states)


@pytest.mark.parametrize("accepting", [True, False])
def test_single_state_transports_structure(accepting):
    A = counter(["a"], 3)
    C = automaton(["a"], ["q"], ["q"] if accepting else [], {("q", "a"): "q"})
    conv = gf_convolution(C, A)
    iso = {f: f.values[0] for f in conv.carrier}
    for x, y in conv.alpha.items():
        if x == STOP:
            assert iso[y] == A.alpha[STOP]
            continue
        bit, (g,) = x.value.left, x.value.right.values
        b = bit if accepting else "0"
        assert iso[y] == A.alpha[Inl(Pair(b, Fn((iso[g],))))]


def test_unit_isomorphism_exhaustive_one_letter():
    algs = distinct_up_to_iso(
        [A for k in (1, 2, 3) for A in all_gf_algebras(["a"], k)], gf_algebra_code
    )
    assert all(unit_iso_holds(A) for A in algs)


@given(st.data())
def test_unit_isomorphism_two_letters(data):
    assert unit_iso_holds(data.draw(gf_algebras(["a", "b"], max_size=3)))


@given(st.data())
def test_automaton_homs_act_contravariantly(data):
    sigma = data.draw(st.sampled_from([["a"], ["a", "b"]]))
    C = data.draw(moore(sigma, max_states=2))
    D = data.draw(moore(sigma, max_states=2))
    A = data.draw(gf_algebras(sigma, max_size=2))
    for f in automaton_homs(C, D):
        assert contravariance_holds(f, C, D, A)
        assert len(precompose(f, C, D, A)) == len(A.carrier) ** len(D.states)


def test_automaton_homs_by_brute_force():
    C = automaton(["a"], ["p", "q"], ["p"], {("p", "a"): "q", ("q", "a"): "p"})
    D = automaton(["a"], ["x", "y"], ["x"], {("x", "a"): "y", ("y", "a"): "x"})
    assert automaton_homs(C, D) == [{"p": "x", "q": "y"}]
    assert automaton_homs(C, unit_automaton(["a"])) == []


def test_measuring_counts():
    A = counter(["a"], 2)
    assert gf_measuring_count(unit_automaton(["a"]), A, A) >= 1
    point = counter(["a"], 1)
    assert gf_measuring_count(unit_automaton(["a"]), A, point) == 1
    C = automaton(["a"], ["p", "q"], ["p"], {("p", "a"): "q", ("q", "a"): "p"})
    assert gf_measuring_count(C, A, point) == 1


@given(st.data())
def test_counts_survive_renaming_states(data):
    sigma = ["a"]
    C = data.draw(moore(sigma, max_states=2))
    A = data.draw(gf_algebras(sigma, max_size=2))
    B = data.draw(gf_algebras(sigma, max_size=2))
    renamed = C.rename({q: f"r{q}" for q in C.states})
    assert gf_measuring_count(C, A, B) == gf_measuring_count(renamed, A, B)


def test_measuring_count_is_homs_into_the_convolution():
    A, B = counter(["a"], 2), counter(["a"], 3)
    C = automaton(["a"], ["p"], [], {("p", "a"): "p"})
    conv = gf_convolution(C, B)
    brute = [
        h for h in (dict(zip(A.carrier, vs)) for vs in itertools.product(conv.carrier, repeat=len(A.carrier)))
        if is_alg_hom(A, conv, h)
    ]
    assert gf_measuring_count(C, A, B) == len(brute) == len(enumerate_alg_homs(A, conv, generic=True))


def test_alphabet_mismatch_and_bound():
    with pytest.raises(FunctorMismatch):
        gf_convolution(unit_automaton(["a", "b"]), counter(["a"], 2))
    C = automaton(["a"], [f"q{i}" for i in range(6)], [], {(f"q{i}", "a"): "q0" for i in range(6)})
    with pytest.raises(BoundExceeded):
        gf_convolution(C, counter(["a"], 3), bound=100)


def test_automaton_validation():
    with pytest.raises(ValueError):
        automaton(["a"], ["p"], [], {})


def test_iso_codes_collapse_relabelled_copies():
    auts = all_automata(["a"], 2)
    reps = distinct_up_to_iso(auts, automaton_code)
    assert len(auts) == 16
    # two-state one-letter Moore machines up to relabelling
    assert len(reps) == 10
