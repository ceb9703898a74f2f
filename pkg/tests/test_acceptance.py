"""Acceptance criteria, each checked exhaustively and timed against its limit.

Run under pytest (a summary section lists one PASS/FAIL line per criterion)
or directly with ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import oracle  # noqa: E402
from conftest import ACCEPTANCE_LINES  # noqa: E402
from mlab.census import all_algebras, all_coalgebras, is_isomorphic  # noqa: E402
from mlab.functor import BOOL_AND, ID_PLUS_ONE, Comp, Exp, FinSet, Fn, Prod, check_lax_axioms  # noqa: E402
from mlab.initiality import is_C_initial_bounded, terminal_C_initial_bounded, unique_map_to_dual  # noqa: E402
from mlab.laws import (  # noqa: E402
    classification_oracle,
    sweep_enrichment,
    sweep_mixed,
    sweep_representability,
)
from mlab.measuring import convolution_algebra, enumerate_alg_homs, enumerate_measurings  # noqa: E402
from mlab.structures import (  # noqa: E402
    NINF,
    bracket,
    lazy_saturation,
    std_algebra,
    std_coalgebra,
    succ_algebra,
    succ_coalgebra,
    unit_coalgebra,
)
from mlab.universal import classify_universal, dual_algebra, dual_coalgebra_classified  # noqa: E402


def _record(name, limit, check):
    start = time.perf_counter()
    failures = check()
    secs = time.perf_counter() - start
    ok = not failures and secs < limit
    line = f"{'PASS' if ok else 'FAIL'} {name} ({secs:.2f}s, limit {limit}s)"
    if failures:
        line += f": {len(failures)} failures, first {failures[0]}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failures, failures[:5]
    assert secs < limit, f"{secs:.2f}s exceeds {limit}s"


def _failed_rows(rows):
    return [f"{r.name}: {r.as_dict()['witnesses'][:1]}" for r in rows if not r.ok or r.instances == 0]


def _classification():
    failures = []
    for n in range(6):
        A = std_algebra(n)
        for B in all_algebras(4):
            plain = oracle.alg(B)
            nb = oracle.nth(plain, n)
            expected = NINF if plain[2][nb] == nb else bracket(n)
            S = classify_universal(A, B)
            if S != expected:
                failures.append(f"n={n} {B!r}: {S} != {expected}")
            elif not classification_oracle(A, B, S):
                failures.append(f"n={n} {B!r}: measuring counts disagree with {S}")
    return failures


def test_universal_measuring_classification():
    _record("universal measuring classification, n<=5, |B|<=4", 60, _classification)


def _chain_law():
    rng = random.Random(20261017)
    failures = []
    for _ in range(200):
        states = [str(i) for i in range(rng.randint(1, 4))]
        step = {c: rng.choice(states + [None]) for c in states}
        elems = [str(i) for i in range(rng.randint(1, 4))]
        zero, succ = rng.choice(elems), {a: rng.choice(elems) for a in elems}
        m = rng.randint(0, 8)
        conv = convolution_algebra(succ_coalgebra(states, step), succ_algebra(elems, zero, succ))
        x = conv.zero
        for _ in range(m):
            x = conv.succ(x)
        plainB = (elems, zero, succ)
        pointwise = oracle.conv_iterate((states, step), plainB, m)
        for i, c in enumerate(states):
            k = min(oracle.index(step, c), m)
            want = oracle.nth(plainB, int(k))
            if x.values[i] != want or pointwise[c] != want:
                failures.append(f"step={step} succ={succ} zero={zero} m={m} c={c}")
                break
    return failures


def test_convolution_chain_law():
    _record("convolution chain law, 200 random instances", 10, _chain_law)


def _representability():
    failures = _failed_rows(sweep_representability(3))
    # brute-force counts on the smallest carriers, independent of the library search
    algs, coals = all_algebras(2), all_coalgebras(2)
    for C in coals:
        for A in algs:
            for B in algs:
                want = len(oracle.measurings(oracle.coalg(C), oracle.alg(A), oracle.alg(B)))
                got = len(enumerate_alg_homs(A, convolution_algebra(C, B)))
                if got != want:
                    failures.append(f"{C!r} {A!r} {B!r}: {got} != {want}")
    return failures


def test_representability_bijections():
    _record("representability bijections, carriers <= 3", 120, _representability)


def test_enrichment_laws():
    _record("enrichment laws, carriers <= 2", 60, lambda: _failed_rows(sweep_enrichment(2)))


def _unit_measurings():
    failures = []
    I = unit_coalgebra()
    algs = all_algebras(3)
    for A in algs:
        for B in algs:
            got = [m.phi[next(iter(I.carrier))] for m in enumerate_measurings(I, A, B)]
            want = oracle.homs(oracle.alg(A), oracle.alg(B))
            key = lambda h: tuple(sorted(h.items()))  # noqa: E731
            if sorted(map(key, got)) != sorted(map(key, want)) or len(got) != len(want):
                failures.append(f"{A!r} {B!r}")
    return failures


def test_unit_measurings_are_total_homs():
    _record("measurings by the unit coalgebra = total homs, sizes <= 3", 10, _unit_measurings)


def _duals():
    failures = []
    for n in range(6):
        if dual_coalgebra_classified(std_algebra(n)) != bracket(n):
            failures.append(f"dual coalgebra n={n}")
        lasso = lazy_saturation(dual_algebra(std_coalgebra(n)))
        top = Fn(tuple(range(n + 1)))
        chain = [Fn(tuple(min(i, m) for i in range(n + 1))) for m in range(n + 1)]
        if (lasso.prefix, lasso.cycle, lasso.top, list(lasso.elements)) != (n, 1, top, chain):
            failures.append(f"dual algebra n={n}: lasso ({lasso.prefix},{lasso.cycle})")
    return failures


def test_dual_computations():
    _record("dual coalgebra and dual algebra, n <= 5", 5, _duals)


def _c_initiality():
    failures = []
    family = all_algebras(3)
    for n in range(3):
        A, C = std_algebra(n), std_coalgebra(n)
        rep = is_C_initial_bounded(A, C, family)
        counts = [c for _, c in rep.counts]
        if not rep.ok or counts != [1] * len(family):
            failures.append(f"counts n={n}: {counts}")
        brute = [len(oracle.measurings(oracle.coalg(C), oracle.alg(A), oracle.alg(X))) for X in family]
        if brute != counts:
            failures.append(f"brute-force counts n={n}: {brute}")
        T = terminal_C_initial_bounded(C, 4)
        if not (hasattr(T, "carrier") and is_isomorphic(T, A)):
            failures.append(f"terminal n={n}: {T}")
    return failures


def test_c_initiality():
    _record("C-initiality of chains, family <= 3, terminal search bound 4", 300, _c_initiality)


def _dual_map():
    failures = []
    for n in range(5):
        d = unique_map_to_dual(std_algebra(n), std_coalgebra(n))
        want = {str(m): Fn(tuple(min(i, m) for i in range(n + 1))) for m in range(n + 1)}
        if d.image != want or d.hom_count != 1 or not d.unique:
            failures.append(f"n={n}")
    return failures


def test_unique_map_to_dual():
    _record("unique map from a chain to its dual algebra, n <= 4", 10, _dual_map)


def _lax():
    functors = [ID_PLUS_ONE, BOOL_AND, Comp(ID_PLUS_ONE, ID_PLUS_ONE)]
    functors += [Prod(BOOL_AND, Exp(FinSet(list("ab"[:k])))) for k in range(3)]
    failures = []
    for F in functors:
        report = check_lax_axioms(F, 3)
        failures += [f"{F}: {r.name}" for r in report.rows if not r.ok or r.instances == 0]
    return failures


def test_lax_coherence():
    _record("lax monoidal coherence, sets <= 3", 60, _lax)


def test_mixed_suite():
    _record("mixed automata and GF-algebras, sizes <= 2", 60, lambda: _failed_rows(sweep_mixed(2, 2, 2)))


CRITERIA = [
    test_universal_measuring_classification,
    test_convolution_chain_law,
    test_representability_bijections,
    test_enrichment_laws,
    test_unit_measurings_are_total_homs,
    test_dual_computations,
    test_c_initiality,
    test_unique_map_to_dual,
    test_lax_coherence,
    test_mixed_suite,
]

if __name__ == "__main__":
    failed = 0
    for criterion in CRITERIA:
        try:
            criterion()
        except AssertionError:
            failed += 1
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria passed")
    sys.exit(1 if failed else 0)
