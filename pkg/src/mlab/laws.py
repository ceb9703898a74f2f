"""Exhaustive law sweeps over small instances, collected into a pass/fail matrix.

Each ``sweep_*`` function returns LawRows (instance counts plus failure
witnesses).  ``run_laws`` runs all of them at a chosen size.
"""

import random
import time
from dataclasses import dataclass, field

from .census import all_algebras, all_coalgebras, is_isomorphic
from .functor import (
    BOOL_AND,
    ID_PLUS_ONE,
    STAR,
    Comp,
    ConstMonoid,
    Exp,
    FinSet,
    Fn,
    LawRow,
    Prod,
    check_functor_laws,
    check_lax_axioms,
    check_nabla_naturality,
    show,
)
from .initiality import is_C_initial_bounded, terminal_C_initial_bounded, unique_map_to_dual
from .measuring import (
    compose_measurings,
    convolution_algebra,
    count_measurings,
    curry,
    enumerate_alg_homs,
    enumerate_coalg_homs,
    enumerate_measurings,
    identity_measuring,
    is_measuring,
    uncurry,
)
from .mixed import (
    all_automata,
    all_gf_algebras,
    automaton_code,
    automaton_homs,
    distinct_up_to_iso,
    gf_algebra_code,
    gf_convolution,
    precompose,
    unit_iso_holds,
)
from .structures import (
    INF,
    NINF,
    associator,
    bracket,
    index_of,
    indices,
    is_alg_hom,
    is_coalg_hom,
    is_N_generated,
    lazy_saturation,
    left_unitor,
    product_coalgebra,
    reachable_algebra,
    right_unitor,
    std_algebra,
    std_coalgebra,
    succ_algebra,
    succ_coalgebra,
    symmetry,
    unit_coalgebra,
)
from .universal import (
    classify_universal,
    dual_algebra,
    dual_coalgebra_classified,
    measuring_graph,
    measuring_tensor,
)

IMPLICATION = ConstMonoid.from_op(
    "bool imp", ["0", "1"], "1", lambda a, b: "1" if a == "0" or b == "1" else "0", check=False
)


def lax_catalogue(corrupt=False):
    """The functors whose lax structure is checked by default.

    With ``corrupt`` the two-element monoid is replaced by implication, which
    is neither associative nor commutative, giving a broken nabla.
    """
    two = IMPLICATION if corrupt else BOOL_AND
    return [
        ("id+1", ID_PLUS_ONE),
        (f"const {two.name}", two),
        (f"{two.name} x X^1", Prod(two, Exp(FinSet(["a"])))),
        (f"{two.name} x X^2", Prod(two, Exp(FinSet(["a", "b"])))),
        ("(id+1).(id+1)", Comp(ID_PLUS_ONE, ID_PLUS_ONE)),
    ]


def _named(row, prefix):
    row.name = f"{prefix}: {row.name}"
    return row


def sweep_lax(max_size=3, corrupt=False):
    rows = []
    for label, F in lax_catalogue(corrupt):
        rows.extend(_named(r, label) for r in check_lax_axioms(F, max_size).rows)
    return rows


def sweep_functor_laws(max_size=2):
    rows = []
    for label, F in lax_catalogue():
        rows.extend(_named(r, label) for r in check_functor_laws(F, max_size).rows)
        rows.extend(_named(r, label) for r in check_nabla_naturality(F, max_size).rows)
    return rows


def sweep_monoidal_coalgebras(max_size=2):
    """Associator, unitors and symmetry are coalgebra isomorphisms, and
    product states obey the min rule for indices."""
    rows = {k: LawRow(k) for k in ("associator", "unitors", "symmetry", "product index")}
    coals = all_coalgebras(max_size)
    I = unit_coalgebra()
    for C in coals:
        rows["unitors"].instances += 1
        IC, CI = product_coalgebra(I, C), product_coalgebra(C, I)
        if not (is_coalg_hom(IC, C, left_unitor(C)) and is_coalg_hom(CI, C, right_unitor(C))):
            rows["unitors"].fail(repr(C))
        for D in coals:
            CD, DC = product_coalgebra(C, D), product_coalgebra(D, C)
            rows["symmetry"].instances += 1
            if not is_coalg_hom(CD, DC, symmetry(C, D)):
                rows["symmetry"].fail(f"{C!r} {D!r}")
            ic, id_, icd = indices(C), indices(D), indices(CD)
            for p in CD.carrier:
                rows["product index"].instances += 1
                if icd[p] != min(ic[p.left], id_[p.right]):
                    rows["product index"].fail(show(p))
            for E in coals:
                rows["associator"].instances += 1
                lhs = product_coalgebra(CD, E)
                rhs = product_coalgebra(C, product_coalgebra(D, E))
                if not is_coalg_hom(lhs, rhs, associator(C, D, E)):
                    rows["associator"].fail(f"{C!r} {D!r} {E!r}")
    return list(rows.values())


def _frozen(mapping):
    return tuple(sorted(mapping.items(), key=lambda kv: show(kv[0])))


def sweep_representability(max_size=3):
    """mu_C(A,B) against Alg(A,[C,B]) elementwise, and against Alg(C|>A, B)."""
    conv_row = LawRow("mu_C(A,B) = Alg(A,[C,B]) elementwise")
    tensor_row = LawRow("mu_C(A,B) = Alg(C|>A,B) elementwise")
    confluence = LawRow("tensor critical pairs joinable")
    algs = all_algebras(max_size)
    for C in all_coalgebras(max_size):
        convs = {id(B): convolution_algebra(C, B) for B in algs}
        for A in algs:
            T = measuring_tensor(C, A)
            confluence.instances += 1
            if not T.critical_pairs_joinable():
                confluence.fail(f"{C!r} {A!r}")
            for B in algs:
                ms = enumerate_measurings(C, A, B)
                conv_row.instances += 1
                homs = enumerate_alg_homs(A, convs[id(B)])
                curried = [_frozen(curry(m)) for m in ms]
                bijective = len(set(curried)) == len(ms) and set(curried) == {_frozen(h) for h in homs}
                if not bijective or any(uncurry(curry(m), C, A, B) != m for m in ms):
                    conv_row.fail(f"{C!r} {A!r} {B!r}")
                tensor_row.instances += 1
                via_tensor = [T.hom_to_measuring(h, B) for h in T.homs_into(B)]
                via_tensor.sort(key=lambda m: m.key())
                if via_tensor != ms:
                    tensor_row.fail(f"{C!r} {A!r} {B!r}")
    return [conv_row, tensor_row, confluence]


def sweep_unit_measurings(max_size=3):
    """Measurings by the unit coalgebra are exactly the total homomorphisms."""
    row = LawRow("mu_I(A,B) = Alg(A,B) elementwise")
    I = unit_coalgebra()
    algs = all_algebras(max_size)
    for A in algs:
        for B in algs:
            row.instances += 1
            ms = [m.phi[STAR] for m in enumerate_measurings(I, A, B)]
            if ms != enumerate_alg_homs(A, B):
                row.fail(f"{A!r} {B!r}")
    return [row]


def sweep_graph_labelings(max_size=3, max_coalgebra=None):
    row = LawRow("graph labelings = measurings")
    algs = all_algebras(max_size)
    coals = all_coalgebras(max_size if max_coalgebra is None else max_coalgebra)
    for A in algs:
        for B in algs:
            G = measuring_graph(A, B)
            for C in coals:
                row.instances += 1
                got = [G.labeling_to_measuring(C, lab) for lab in G.labelings(C)]
                got.sort(key=lambda m: m.key())
                if got != enumerate_measurings(C, A, B):
                    row.fail(f"{C!r} {A!r} {B!r}")
    return [row]


def random_coalgebra(rng, k):
    names = [str(i) for i in range(k)]
    return succ_coalgebra(names, {c: rng.choice(names + [None]) for c in names})


def random_algebra(rng, k):
    names = [str(i) for i in range(k)]
    return succ_algebra(names, rng.choice(names), {a: rng.choice(names) for a in names})


def sweep_chain_law(instances=200, seed=0, max_carrier=4, max_m=8):
    """The m-th successor of zero in [C,B] is c -> min(index c, m) in B."""
    row = LawRow("chain law in [C,B]")
    rng = random.Random(seed)
    for _ in range(instances):
        C = random_coalgebra(rng, rng.randint(1, max_carrier))
        B = random_algebra(rng, rng.randint(1, max_carrier))
        m = rng.randint(0, max_m)
        conv = convolution_algebra(C, B)
        x = conv.zero
        for _ in range(m):
            x = conv.succ(x)
        row.instances += 1
        for i, c in enumerate(C.carrier):
            k = min(index_of(C, c), m)
            expected = B.zero
            for _ in range(int(k)):
                expected = B.succ(expected)
            if x.values[i] != expected:
                row.fail(f"{C!r} {B!r} m={m} c={c}")
                break
    return [row]


def sweep_enrichment(max_size=2):
    """Composition of measurings is a measuring, associative along the
    product associator and unital along the unit coalgebra."""
    closed = LawRow("composite is a measuring")
    assoc = LawRow("composition associative")
    units = LawRow("composition unital")
    algs = all_algebras(max_size)
    coals = all_coalgebras(max_size)
    by_pair = {}
    for A in algs:
        for B in algs:
            by_pair[id(A), id(B)] = [m for C in coals for m in enumerate_measurings(C, A, B)]
    products = {}

    def prod(D, C):
        key = (id(D), id(C))
        if key not in products:
            products[key] = product_coalgebra(D, C)
        return products[key]

    def compose(g, f):
        return compose_measurings(g, f, prod(g.C, f.C))

    # identities are built once so the product cache keys stay valid
    idents = {id(A): identity_measuring(A) for A in algs}
    I = idents[id(algs[0])].C
    for A in algs:
        for B in algs:
            for f in by_pair[id(A), id(B)]:
                units.instances += 1
                left = compose(idents[id(B)], f)
                right = compose(f, idents[id(A)])
                lu, ru = left_unitor(f.C), right_unitor(f.C)
                ok = all(left.phi[p] == f.phi[lu[p]] for p in prod(I, f.C).carrier)
                ok = ok and all(right.phi[p] == f.phi[ru[p]] for p in prod(f.C, I).carrier)
                if not ok:
                    units.fail(repr(f))
    for A in algs:
        for B in algs:
            for X in algs:
                for f in by_pair[id(A), id(B)]:
                    for g in by_pair[id(B), id(X)]:
                        gf = compose(g, f)
                        closed.instances += 1
                        if not is_measuring(gf.C, A, X, gf.phi):
                            closed.fail(f"{g!r} . {f!r}")
                        for Y in algs:
                            for h in by_pair[id(X), id(Y)]:
                                assoc.instances += 1
                                lhs = compose(compose(h, g), f)
                                rhs = compose(h, gf)
                                to_rhs = associator(h.C, g.C, f.C)
                                if any(lhs.phi[p] != rhs.phi[to_rhs[p]] for p in lhs.phi):
                                    assoc.fail(f"{h!r} {g!r} {f!r}")
    return [closed, assoc, units]


def classification_oracle(A, B, S):
    """Check S against measuring counts from every small subterminal coalgebra.

    A subterminal candidate measures A into B in exactly one way when it
    embeds in S, and in no way otherwise.
    """
    k_max = len(A.carrier) + len(B.carrier)
    candidates = [(bracket(k), std_coalgebra(k)) for k in range(k_max + 1)]
    candidates.append((NINF, None))
    I = unit_coalgebra()
    empty_count = count_measurings(succ_coalgebra([], {}), A, B)
    if empty_count != 1:
        return False
    for shape, C in candidates:
        if C is None:
            # the unit coalgebra is the point at infinity
            n = count_measurings(I, A, B)
            if (n == 1) != S.contains(INF) or n > 1:
                return False
            continue
        n = count_measurings(C, A, B)
        if n > 1 or (n == 1) != shape.embeds_in(S):
            return False
    return True


def sweep_classification(max_n=5, max_b=4):
    """Universal measurings from <n> to every small B, against the oracle."""
    named = LawRow("classification of the universal measuring from <n>")
    oracle = LawRow("classification agrees with measuring counts")
    for n in range(max_n + 1):
        A = std_algebra(n)
        for B in all_algebras(max_b):
            S = classify_universal(A, B)
            nb = B.zero
            for _ in range(n):
                nb = B.succ(nb)
            expected = NINF if B.succ(nb) == nb else bracket(n)
            named.instances += 1
            if S != expected:
                named.fail(f"n={n} {B!r} got {S}")
            oracle.instances += 1
            if not classification_oracle(A, B, S):
                oracle.fail(f"n={n} {B!r}")
    return [named, oracle]


def sweep_duals(max_n=5):
    coalg = LawRow("dual coalgebra of <n> is <n>^")
    alg = LawRow("[<n>^,N] saturates at the top sequence")
    for n in range(max_n + 1):
        coalg.instances += 1
        if dual_coalgebra_classified(std_algebra(n)) != bracket(n):
            coalg.fail(f"n={n}")
        alg.instances += 1
        lasso = lazy_saturation(dual_algebra(std_coalgebra(n)))
        chain_ok = all(lasso.elements[m] == Fn(tuple(min(i, m) for i in range(n + 1))) for m in range(n + 1))
        if not (lasso.prefix == n and lasso.cycle == 1 and lasso.top == Fn(tuple(range(n + 1))) and chain_ok):
            alg.fail(f"n={n}")
    return [coalg, alg]


def sweep_duality_counts(max_size=3):
    """|Alg(A, [C,N])| = |CoAlg(C, dual of A)| when both are finite."""
    row = LawRow("dual adjunction counts")
    for A in all_algebras(max_size):
        if not is_N_generated(A):
            continue
        S = dual_coalgebra_classified(A)
        if S.kind != "bracket":
            continue
        D = S.coalgebra()
        for C in all_coalgebras(max_size):
            if any(v == INF for v in indices(C).values()):
                continue
            conv = dual_algebra(C)
            reach = reachable_algebra(conv)[0]
            row.instances += 1
            if len(enumerate_alg_homs(A, reach)) != len(enumerate_coalg_homs(C, D)):
                row.fail(f"{A!r} {C!r}")
    return [row]


def sweep_c_initial(max_n=2, family_size=3, terminal_bound=4):
    counts = LawRow("<n> is <n>^-initial on the family")
    terminal = LawRow("terminal <n>^-initial algebra is <n>")
    family = all_algebras(family_size)
    for n in range(max_n + 1):
        counts.instances += 1
        rep = is_C_initial_bounded(std_algebra(n), std_coalgebra(n), family)
        if not (rep.ok and all(c == 1 for _, c in rep.counts)):
            counts.fail(f"n={n}")
        terminal.instances += 1
        T = terminal_C_initial_bounded(std_coalgebra(n), terminal_bound)
        if not (hasattr(T, "carrier") and is_isomorphic(T, std_algebra(n))):
            terminal.fail(f"n={n}")
    return [counts, terminal]


def sweep_dual_map(max_n=4):
    row = LawRow("unique map <n> -> [<n>^,N] is m -> (min(i,m))_i")
    for n in range(max_n + 1):
        row.instances += 1
        d = unique_map_to_dual(std_algebra(n), std_coalgebra(n))
        expected = {str(m): Fn(tuple(min(i, m) for i in range(n + 1))) for m in range(n + 1)}
        if d.image != expected or d.hom_count != 1:
            row.fail(f"n={n}")
    return [row]


def mixed_instances(max_states=2, max_alphabet=2, max_size=2):
    """Automata, algebras and automaton homs up to isomorphism, per alphabet."""
    out = []
    for k in range(1, max_alphabet + 1):
        sigma = [chr(ord("a") + i) for i in range(k)]
        auts = distinct_up_to_iso(
            [C for s in range(1, max_states + 1) for C in all_automata(sigma, s)], automaton_code
        )
        algs = distinct_up_to_iso(
            [A for s in range(1, max_size + 1) for A in all_gf_algebras(sigma, s)], gf_algebra_code
        )
        homs = [(f, C, D) for C in auts for D in auts for f in automaton_homs(C, D)]
        out.append((sigma, auts, algs, homs))
    return out


def sweep_mixed(max_states=2, max_alphabet=2, max_size=2):
    unit = LawRow("[I,A] = A for the unit automaton")
    contra = LawRow("automaton homs act contravariantly on [C,A]")
    fast = LawRow("closed-form convolution = generic composite")
    for sigma, auts, algs, homs in mixed_instances(max_states, max_alphabet, max_size):
        for A in algs:
            unit.instances += 1
            if not unit_iso_holds(A):
                unit.fail(repr(A))
        conv = {}
        for i, C in enumerate(auts):
            for j, A in enumerate(algs):
                conv[i, j] = gf_convolution(C, A)
        for C, A in ((auts[0], algs[-1]), (auts[-1], algs[-1]), (auts[-1], algs[0])):
            fast.instances += 1
            if gf_convolution(C, A).alpha != gf_convolution(C, A, generic=True).alpha:
                fast.fail(f"{sigma} {C.name}")
        pos = {id(C): i for i, C in enumerate(auts)}
        for f, C, D in homs:
            for j, A in enumerate(algs):
                contra.instances += 1
                if not is_alg_hom(conv[pos[id(D)], j], conv[pos[id(C)], j], precompose(f, C, D, A)):
                    contra.fail(f"sigma={sigma} f={f}")
    return [unit, contra, fast]


@dataclass
class LawMatrix:
    rows: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.ok for _, r, _ in self.rows)

    def add(self, suite, rows, seconds):
        for r in rows:
            self.rows.append((suite, r, seconds))

    def failing(self):
        return [(s, r) for s, r, _ in self.rows if not r.ok]

    def as_dict(self, timing=False):
        out = []
        for suite, r, secs in self.rows:
            d = {"suite": suite, **r.as_dict()}
            if timing:
                d["seconds"] = round(secs, 3)
            out.append(d)
        return {"ok": self.ok, "rows": out}

    def lines(self):
        return [f"{'PASS' if r.ok else 'FAIL'}  {suite:12} {r.name} ({r.instances} instances)" for suite, r, _ in self.rows]


def run_laws(max_size=3, corrupt_nabla=False, mixed=True):
    """Run every sweep at a size derived from ``max_size``.

    Sizes are capped per suite so the default run stays at desk scale:
    enrichment and functor laws use at most 2, mixed instances use at most 2.
    """
    plan = [
        ("functor", lambda: sweep_lax(max_size, corrupt_nabla)),
        ("functor", lambda: sweep_functor_laws(min(max_size, 2))),
        ("structures", lambda: sweep_monoidal_coalgebras(min(max_size, 2))),
        ("measuring", lambda: sweep_representability(max_size)),
        ("measuring", lambda: sweep_unit_measurings(max_size)),
        ("measuring", lambda: sweep_chain_law(50 * max(max_size, 1), 0, max(max_size, 1) + 1, 2 * max_size + 2)),
        ("measuring", lambda: sweep_enrichment(min(max_size, 2))),
        ("universal", lambda: sweep_graph_labelings(min(max_size, 2))),
        ("universal", lambda: sweep_classification(max_size + 2, max_size + 1)),
        ("universal", lambda: sweep_duals(max_size + 2)),
        ("universal", lambda: sweep_duality_counts(max_size)),
        ("initiality", lambda: sweep_c_initial(min(max_size, 2), min(max_size, 3), min(max_size + 1, 4))),
        ("initiality", lambda: sweep_dual_map(max_size + 1)),
    ]
    if mixed:
        plan.append(("mixed", lambda: sweep_mixed(min(max_size, 2), min(max_size, 2), min(max_size, 2))))
    matrix = LawMatrix()
    for suite, run in plan:
        t = time.perf_counter()
        rows = run()
        matrix.add(suite, rows, time.perf_counter() - t)
    return matrix
