"""Measurings: C-indexed families of maps A -> B that behave like partial
homomorphisms, plus partial induction, enumeration, composition and the
convolution algebra [C, B]."""

import itertools
import os
from dataclasses import dataclass

from .errors import BoundExceeded, FunctorMismatch, PreconditionError
from .functor import ID_PLUS_ONE, STAR, STOP, FinSet, Fn, Inl, element_key, eval_on_set, show
from .structures import (
    INF,
    FinAlgebra,
    LazyAlgebra,
    NATURALS,
    is_N_generated,
    product_coalgebra,
    unit_coalgebra,
)

DEFAULT_ENUM_BOUND = 10**6


def default_enum_bound():
    return int(os.environ.get("MLAB_ENUM_BOUND", DEFAULT_ENUM_BOUND))


def _same_functor(*structs):
    F = structs[0].functor
    for s in structs[1:]:
        if s.functor != F:
            raise FunctorMismatch(f"functor mismatch: {F} vs {s.functor}")
    return F


@dataclass(eq=False)
class Measuring:
    """phi[c][a] in B for every state c of C and element a of A."""

    C: object
    A: object
    B: object
    phi: dict

    def __call__(self, c, a):
        return self.phi[c][a]

    def __eq__(self, other):
        return isinstance(other, Measuring) and self.phi == other.phi

    def key(self):
        pos = self.B.carrier.index
        return tuple(pos(self.phi[c][a]) for c in self.C.carrier for a in self.A.carrier)

    def component(self, c):
        return dict(self.phi[c])

    def as_json(self):
        return {show(c): {show(a): show(self.phi[c][a]) for a in self.A.carrier} for c in self.C.carrier}

    def __repr__(self):
        return f"Measuring({self.as_json()})"


@dataclass(frozen=True)
class MeasuringCheck:
    ok: bool
    witness: tuple = None  # (state, element of F(A))

    def __bool__(self):
        return self.ok

    def describe(self):
        if self.ok:
            return "ok"
        c, x = self.witness
        return f"violated at ({show(c)}, {show(x)})"


def _check_phi_total(C, A, B, phi):
    for c in C.carrier:
        if c not in phi:
            raise ValueError(f"phi missing state {show(c)}")
        row = phi[c]
        for a in A.carrier:
            if a not in row:
                raise ValueError(f"phi[{show(c)}] missing {show(a)}")
            if row[a] not in B.carrier:
                raise ValueError(f"phi[{show(c)}][{show(a)}] = {show(row[a])} not in target")


def is_measuring(C, A, B, phi, generic=False):
    """Check the measuring square pointwise on C x F(A).

    For id+1 the check runs through the zero/successor conditions unless
    ``generic`` is set; both walk C then F(A) in canonical order, so they report
    the same first witness.
    """
    F = _same_functor(C, A, B)
    _check_phi_total(C, A, B, phi)
    FA = eval_on_set(F, A.carrier)
    if F == ID_PLUS_ONE and not generic:
        zero_b = B.zero
        for c in C.carrier:
            prev = C.step(c)
            row = phi[c]
            for x in FA:
                if x == STOP:
                    good = row[A.zero] == zero_b
                else:
                    a = x.value
                    lhs = row[A.succ(a)]
                    good = lhs == (zero_b if prev is None else B.succ(phi[prev][a]))
                if not good:
                    return MeasuringCheck(False, (c, x))
        return MeasuringCheck(True)

    def ev(p):
        return phi[p.left][p.right]

    for c in C.carrier:
        chi_c = C.chi[c]
        for x in FA:
            lhs = phi[c][A.alpha[x]]
            rhs = B.alpha[F.fmap(ev, F.nabla(chi_c, x))]
            if lhs != rhs:
                return MeasuringCheck(False, (c, x))
    return MeasuringCheck(True)


# -- partial induction ------------------------------------------------------


@dataclass
class PartialInduction:
    """Outcome of inductively approximating a homomorphism A -> B.

    ``steps`` holds f_0..f_n.  When ``total`` the sequence became stationary and
    ``homomorphism`` is the diagonal; otherwise ``witness`` is
    ``(element, image_1, image_2)``: the element of A that step n+1 would have
    to send to two different places.
    """

    total: bool
    steps: list
    witness: tuple = None
    homomorphism: dict = None

    @property
    def n(self):
        return INF if self.total else len(self.steps) - 1


def partial_induction(A, B):
    """Run f_0 = const 0, f_{c+1}(0) = 0, f_{c+1}(a+1) = f_c(a) + 1.

    ``B`` may be a finite algebra or a LazyAlgebra (e.g. the naturals).  The
    carrier of A is finite, so f_c becomes stationary once c exceeds the
    longest zero-distance in A; a repeated f_c therefore certifies totality.
    """
    if not is_N_generated(A):
        raise PreconditionError("partial induction needs every element reachable from zero")
    elems = A.carrier.elements
    f = {a: B.zero for a in elems}
    steps = [f]
    seen = {tuple(f[a] for a in elems): 0}
    while True:
        g = {A.zero: B.zero}
        for a in elems:
            e = A.succ(a)
            v = B.succ(f[a])
            if e in g and g[e] != v:
                return PartialInduction(False, steps, (e, g[e], v))
            g[e] = v
        key = tuple(g[a] for a in elems)
        if key in seen:
            if seen[key] != len(steps) - 1:
                raise AssertionError("partial induction cycled without stabilising")
            return PartialInduction(True, steps, None, g)
        seen[key] = len(steps)
        steps.append(g)
        f = g


# -- enumeration ------------------------------------------------------------


class _IdSuccShape:
    """Per-(A, B) tables shared by enumeration routines."""

    def __init__(self, A, B):
        self.A, self.B = A, B
        self.elems = A.carrier.elements
        self.pos = {a: i for i, a in enumerate(self.elems)}
        self.zero = self.pos[A.zero]
        self.succ = [self.pos[A.succ(a)] for a in self.elems]
        reached = {self.zero} | set(self.succ)
        self.junk = [i for i in range(len(self.elems)) if i not in reached]
        self.b_elems = B.carrier.elements
        self.bpos = {b: i for i, b in enumerate(self.b_elems)}
        self.b_zero = self.bpos[B.zero]
        self.b_succ = [self.bpos[B.succ(b)] for b in self.b_elems]
        self._memo = {}

    def _fill(self, forced):
        if not self.junk:
            return [tuple(forced)]
        out = []
        for values in itertools.product(range(len(self.b_elems)), repeat=len(self.junk)):
            f = list(forced)
            for i, v in zip(self.junk, values):
                f[i] = v
            out.append(tuple(f))
        return out

    def successors_of(self, g):
        """All M1 maps f with f(a+1) = g(a)+1 (g=None: f(a+1) = 0)."""
        if g in self._memo:
            return self._memo[g]
        forced = [None] * len(self.elems)
        forced[self.zero] = self.b_zero
        ok = True
        for i, e in enumerate(self.succ):
            v = self.b_zero if g is None else self.b_succ[g[i]]
            if forced[e] is None:
                forced[e] = v
            elif forced[e] != v:
                ok = False
                break
        result = self._fill(forced) if ok else []
        self._memo[g] = result
        return result

    def m1_maps(self):
        n, nb = len(self.elems), len(self.b_elems)
        others = [i for i in range(n) if i != self.zero]
        out = []
        for values in itertools.product(range(nb), repeat=len(others)):
            f = [self.b_zero] * n
            for i, v in zip(others, values):
                f[i] = v
            out.append(tuple(f))
        return out

    def compatible(self, f, g):
        """f(a+1) == g(a)+1 for every a (edge f -> g)."""
        return all(f[e] == self.b_succ[g[i]] for i, e in enumerate(self.succ))


def _dependency_order(C):
    """States ordered so each non-root comes after its step target.

    Roots are stopping states and one representative per cycle; for a
    representative r the constraint against step(r) is checked separately.
    """
    elems = C.carrier.elements
    step = {c: C.step(c) for c in elems}
    on_cycle_rep = {}
    state = {}
    for c in elems:
        path = []
        cur = c
        while cur is not None and cur not in state:
            state[cur] = "visiting"
            path.append(cur)
            cur = step[cur]
        if cur is not None and state.get(cur) == "visiting":
            cyc = path[path.index(cur):]
            rep = min(cyc, key=element_key)
            on_cycle_rep[rep] = True
        for p in path:
            state[p] = "done"
    reps = sorted(on_cycle_rep, key=element_key)
    children = {c: [] for c in elems}
    roots = [c for c in elems if step[c] is None]
    for c in elems:
        if step[c] is not None and c not in on_cycle_rep:
            children[step[c]].append(c)
    order = []
    stack = list(reversed(roots + reps))
    while stack:
        c = stack.pop()
        order.append(c)
        stack.extend(reversed(children[c]))
    return order, set(reps), step


def _enumerate_idsucc(C, A, B):
    shape = _IdSuccShape(A, B)
    order, reps, step = _dependency_order(C)
    closers = {}
    for r in reps:
        closers.setdefault(step[r], []).append(r)
    assign = {}
    results = []
    all_m1 = None

    def rec(i):
        nonlocal all_m1
        if i == len(order):
            results.append(dict(assign))
            return
        c = order[i]
        if c in reps:
            if all_m1 is None:
                all_m1 = shape.m1_maps()
            cands = all_m1
        else:
            prev = step[c]
            cands = shape.successors_of(None if prev is None else assign[prev])
        for f in cands:
            assign[c] = f
            if all(shape.compatible(assign[r], f) for r in closers.get(c, ())):
                rec(i + 1)
        assign.pop(c, None)

    rec(0)
    a_elems, b_elems = shape.elems, shape.b_elems
    out = []
    for sol in results:
        phi = {c: {a: b_elems[sol[c][i]] for i, a in enumerate(a_elems)} for c in C.carrier}
        out.append(Measuring(C, A, B, phi))
    return out


def _enumerate_generic(C, A, B, bound):
    cells = [(c, a) for c in C.carrier for a in A.carrier]
    size = len(B.carrier) ** len(cells)
    if size > bound:
        raise BoundExceeded("enumerate_measurings (generic)", size, bound)
    out = []
    for values in itertools.product(B.carrier.elements, repeat=len(cells)):
        phi = {c: {} for c in C.carrier}
        for (c, a), b in zip(cells, values):
            phi[c][a] = b
        if is_measuring(C, A, B, phi, generic=True):
            out.append(Measuring(C, A, B, phi))
    return out


def enumerate_measurings(C, A, B, bound=None):
    """Every measuring from A to B by C, in canonical order."""
    F = _same_functor(C, A, B)
    bound = default_enum_bound() if bound is None else bound
    per_state = len(B.carrier) ** len(A.carrier)
    if per_state > bound:
        raise BoundExceeded("enumerate_measurings", per_state, bound)
    if F == ID_PLUS_ONE:
        out = _enumerate_idsucc(C, A, B)
    else:
        out = _enumerate_generic(C, A, B, bound)
    out.sort(key=Measuring.key)
    return out


def count_measurings(C, A, B, bound=None):
    return len(enumerate_measurings(C, A, B, bound))


def _homs_idsucc(A, B):
    shape = _IdSuccShape(A, B)
    n, nb = len(shape.elems), len(shape.b_elems)
    out = []

    def propagate(h):
        changed = True
        while changed:
            changed = False
            for i in range(n):
                if h[i] is None:
                    continue
                e, v = shape.succ[i], shape.b_succ[h[i]]
                if h[e] is None:
                    h[e] = v
                    changed = True
                elif h[e] != v:
                    return False
        return True

    def rec(h):
        if not propagate(h):
            return
        try:
            i = h.index(None)
        except ValueError:
            out.append(tuple(h))
            return
        for b in range(nb):
            h2 = list(h)
            h2[i] = b
            rec(h2)

    start = [None] * n
    start[shape.zero] = shape.b_zero
    rec(start)
    return [dict(zip(shape.elems, (shape.b_elems[v] for v in h))) for h in out]


def _homs_generic(A, B):
    F = A.functor
    elems = A.carrier.elements
    pos = {a: i for i, a in enumerate(elems)}
    buckets = [[] for _ in elems]
    for x in eval_on_set(F, A.carrier):
        deps = {pos[a] for a in F.support(x)} | {pos[A.alpha[x]]}
        buckets[max(deps)].append(x)
    out = []
    h = {}

    def rec(i):
        if i == len(elems):
            out.append(dict(h))
            return
        for b in B.carrier:
            h[elems[i]] = b
            if all(h[A.alpha[x]] == B.alpha[F.fmap(h.__getitem__, x)] for x in buckets[i]):
                rec(i + 1)
        h.pop(elems[i], None)

    rec(0)
    return out


def enumerate_alg_homs(A, B, bound=None, generic=False):
    """All algebra homomorphisms A -> B (dicts), in canonical order."""
    F = _same_functor(A, B)
    bound = default_enum_bound() if bound is None else bound
    size = len(B.carrier) ** len(A.carrier)
    if size > bound:
        raise BoundExceeded("enumerate_alg_homs", size, bound)
    if F == ID_PLUS_ONE and not generic:
        homs = _homs_idsucc(A, B)
    else:
        homs = _homs_generic(A, B)
    pos = B.carrier.index
    homs.sort(key=lambda h: tuple(pos(h[a]) for a in A.carrier))
    return homs


def enumerate_coalg_homs(C, D):
    """All coalgebra homomorphisms C -> D by brute force."""
    F = _same_functor(C, D)
    out = []
    for values in itertools.product(D.carrier.elements, repeat=len(C.carrier)):
        f = dict(zip(C.carrier.elements, values))
        if all(F.fmap(f.__getitem__, C.chi[c]) == D.chi[f[c]] for c in C.carrier):
            out.append(f)
    return out


# -- composition ------------------------------------------------------------


def identity_measuring(A):
    """id_A as a measuring by the unit coalgebra."""
    return Measuring(unit_coalgebra(A.functor), A, A, {STAR: {a: a for a in A.carrier}})


def compose_measurings(g, f, product=None):
    """(g . f)_(d,c) = g_d . f_c, measured by the product coalgebra D x C.

    ``product`` may supply a precomputed D x C when composing many pairs.
    """
    if g.A != f.B:
        raise FunctorMismatch("middle algebras differ")
    DC = product_coalgebra(g.C, f.C) if product is None else product
    phi = {}
    for p in DC.carrier:
        gd, fc = g.phi[p.left], f.phi[p.right]
        phi[p] = {a: gd[fc[a]] for a in f.A.carrier}
    return Measuring(DC, f.A, g.B, phi)


def transport_measuring(m, iso, target_C):
    """Move a measuring along a coalgebra isomorphism given on states."""
    phi = {iso[c]: dict(row) for c, row in m.phi.items()}
    return Measuring(target_C, m.A, m.B, phi)


# -- convolution ------------------------------------------------------------


def _function_space(C, B):
    return FinSet(Fn(vs) for vs in itertools.product(B.carrier.elements, repeat=len(C.carrier)))


def convolution_algebra(C, B, bound=None, generic=False):
    """[C, B]: maps C -> B with the transported algebra structure.

    Functions are ``Fn`` value tuples in the canonical order of C's states.
    """
    F = _same_functor(C, B)
    bound = default_enum_bound() if bound is None else bound
    size = len(B.carrier) ** len(C.carrier)
    if size > bound:
        raise BoundExceeded("convolution_algebra", size, bound)
    carrier = _function_space(C, B)
    states = C.carrier.elements
    pos = C.carrier.index
    alpha = {}
    if F == ID_PLUS_ONE and not generic:
        preds = [C.step(c) for c in states]
        pred_pos = [None if p is None else pos(p) for p in preds]
        zero_b = B.zero
        alpha[STOP] = Fn((zero_b,) * len(states))
        for f in carrier:
            vals = f.values
            alpha[Inl(f)] = Fn(tuple(zero_b if p is None else B.succ(vals[p]) for p in pred_pos))
    else:

        def ev(p):
            return p.left.values[pos(p.right)]

        for x in eval_on_set(F, carrier):
            alpha[x] = Fn(tuple(B.alpha[F.fmap(ev, F.nabla(x, C.chi[c]))] for c in states))
    name = f"[{C.name or 'C'},{B.name or 'B'}]"
    return FinAlgebra(F, carrier, alpha, name)


def curry(m):
    """Measuring C x A -> B  to  the map A -> [C, B]."""
    return {a: Fn(tuple(m.phi[c][a] for c in m.C.carrier)) for a in m.A.carrier}


def uncurry(h, C, A, B):
    phi = {c: {a: h[a].values[i] for a in A.carrier} for i, c in enumerate(C.carrier)}
    return Measuring(C, A, B, phi)


def convolution_lazy(C, target=NATURALS):
    """[C, target] for a lazy id+1 target (default: the naturals)."""
    states = C.carrier.elements
    pos = C.carrier.index
    pred_pos = [None if C.step(c) is None else pos(C.step(c)) for c in states]
    zero = target.zero

    def succ(f):
        vals = f.values
        return Fn(tuple(zero if p is None else target.succ(vals[p]) for p in pred_pos))

    name = f"[{C.name or 'C'},{target.name}]"
    return LazyAlgebra(Fn((zero,) * len(states)), succ, name)


def is_idsucc_algebra(A):
    return isinstance(A, FinAlgebra) and A.functor == ID_PLUS_ONE
