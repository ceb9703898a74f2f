"""Universal measurings, duals and the measuring tensor for id+1.

The universal measuring coalgebra from A to B is presented by a finite graph:
nodes are maps A -> B preserving zero, a node is *terminal* when it sends
every successor to zero, and ``f -> g`` is an edge when ``f(a+1) = g(a)+1``.
A measuring by C is then a labelling of C's states by nodes that sends
stopping states to terminal nodes and steps to edges.

For algebras generated by their zero, the universal measuring is a
subcoalgebra of the extended naturals and is named by ``classify_universal``.
"""

import itertools
from dataclasses import dataclass, field

from .errors import PreconditionError
from .functor import ID_PLUS_ONE, Fn, Pair, element_key, show
from .measuring import Measuring, _IdSuccShape, convolution_lazy, default_enum_bound
from .errors import BoundExceeded, FunctorMismatch
from .structures import (
    INF,
    NATURALS,
    NINF,
    EMPTY_SUB,
    bracket,
    bracket_point,
    find_lasso,
    is_N_generated,
    succ_algebra,
)


def _require_idsucc(*structs):
    for s in structs:
        if getattr(s, "functor", ID_PLUS_ONE) != ID_PLUS_ONE:
            raise FunctorMismatch("only defined for id+1")


@dataclass
class MeasuringGraph:
    A: object
    B: object
    nodes: list
    terminal: set
    edges: set
    _out: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._out = {f: [] for f in self.nodes}
        for f, g in sorted(self.edges, key=lambda e: (self._key(e[0]), self._key(e[1]))):
            self._out[f].append(g)

    def _key(self, f):
        return tuple(element_key(v) for v in f.values)

    def successors(self, f):
        """Nodes g with an edge f -> g (g is a possible label of c - 1)."""
        return self._out[f]

    def as_map(self, f):
        return dict(zip(self.A.carrier.elements, f.values))

    def labelings(self, C):
        """All valid labellings of C, by brute force over node assignments."""
        _require_idsucc(C)
        states = C.carrier.elements
        out = []
        for labels in itertools.product(self.nodes, repeat=len(states)):
            lab = dict(zip(states, labels))
            ok = True
            for c in states:
                prev = C.step(c)
                if prev is None:
                    if lab[c] not in self.terminal:
                        ok = False
                        break
                elif (lab[c], lab[prev]) not in self.edges:
                    ok = False
                    break
            if ok:
                out.append(lab)
        return out

    def labeling_to_measuring(self, C, lab):
        phi = {c: self.as_map(lab[c]) for c in C.carrier}
        return Measuring(C, self.A, self.B, phi)

    def longest_path_to_terminal(self):
        """Length of the longest edge path ending at a terminal node (INF if
        a cycle can reach a terminal node; -1 if there are no terminal nodes)."""
        if not self.terminal:
            return -1
        into = {f: [] for f in self.nodes}
        for f, g in self.edges:
            into[g].append(f)
        live = set(self.terminal)
        frontier = list(self.terminal)
        while frontier:
            g = frontier.pop()
            for f in into[g]:
                if f not in live:
                    live.add(f)
                    frontier.append(f)
        # longest[f]: longest path from f to a terminal inside ``live``
        longest = {}
        on_stack = set()

        def visit(f):
            if f in longest:
                return longest[f]
            if f in on_stack:
                return INF
            on_stack.add(f)
            best = 0 if f in self.terminal else -INF
            for g in self._out[f]:
                if g in live:
                    best = max(best, visit(g) + 1)
            on_stack.discard(f)
            longest[f] = best
            return best

        return max(visit(f) for f in live)

    def to_dot(self):
        lines = ["digraph measuring {"]
        name = {f: show(f) for f in self.nodes}
        for f in self.nodes:
            shape = "doublecircle" if f in self.terminal else "circle"
            lines.append(f'  "{name[f]}" [shape={shape}];')
        for f in self.nodes:
            for g in self._out[f]:
                lines.append(f'  "{name[f]}" -> "{name[g]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def as_json(self):
        return {
            "nodes": [show(f) for f in self.nodes],
            "terminal": [show(f) for f in self.nodes if f in self.terminal],
            "edges": [[show(f), show(g)] for f in self.nodes for g in self._out[f]],
        }


def measuring_graph(A, B, bound=None):
    _require_idsucc(A, B)
    bound = default_enum_bound() if bound is None else bound
    size = len(B.carrier) ** len(A.carrier)
    if size > bound:
        raise BoundExceeded("measuring_graph", size, bound)
    shape = _IdSuccShape(A, B)
    b = shape.b_elems
    raw = shape.m1_maps()
    nodes = [Fn(tuple(b[i] for i in f)) for f in raw]
    as_node = dict(zip(raw, nodes))
    terminal_raw = set(shape.successors_of(None))
    terminal = {as_node[f] for f in raw if f in terminal_raw}
    edges = set()
    for g in raw:
        for f in shape.successors_of(g):
            edges.add((as_node[f], as_node[g]))
    nodes.sort(key=lambda f: tuple(element_key(v) for v in f.values))
    return MeasuringGraph(A, B, nodes, terminal, edges)


# -- classification ---------------------------------------------------------


def classify_universal(A, B):
    """Name the universal measuring coalgebra from A to B.

    Requires every element of A to be reachable from zero.  ``B`` may be a
    finite algebra or a LazyAlgebra.  The finite points are decided by partial
    induction: a measuring by ``<k>^`` exists iff the induction survives step
    k.  The point at infinity is its own predecessor, so it is decided
    separately by the existence of a total homomorphism.  The two usually
    agree, giving ``Ninf`` or ``<n>^``.  When the chain of A ends in a cycle
    longer than one, the induction can break while a homomorphism still exists,
    and the answer is ``<n>^+I``.  Every zero-generated A admits the constant-zero measuring by
    ``<0>^``, so ``empty`` cannot arise, and a lasso in the step sequence always
    certifies totality, so ``N-`` is not produced for finite A.
    """
    from .measuring import partial_induction

    _require_idsucc(A)
    if not is_N_generated(A):
        raise PreconditionError("classification needs every element of A reachable from zero")
    if len(A.carrier) == 0:
        return EMPTY_SUB
    outcome = partial_induction(A, B)
    if outcome.total:
        return NINF
    if total_hom_exists(A, B):
        return bracket_point(outcome.n)
    return bracket(outcome.n)


def total_hom_exists(A, B):
    """Whether the only candidate k_A -> k_B is a homomorphism (A zero-generated)."""
    image = {}
    a, b = A.zero, B.zero
    while a not in image:
        image[a] = b
        a, b = A.succ(a), B.succ(b)
    return all(image[A.succ(x)] == B.succ(image[x]) for x in A.carrier)


def dual_coalgebra_classified(A):
    """The dual coalgebra of A: the universal measuring from A to the naturals."""
    return classify_universal(A, NATURALS)


def dual_algebra(C):
    """The dual algebra [C, N]."""
    _require_idsucc(C)
    return convolution_lazy(C, NATURALS)


# -- measuring tensor ---------------------------------------------------------

ZERO_BASE = None


def _term_key(t):
    base, k = t
    if base is ZERO_BASE:
        return (k, 0)
    return (k, 1, element_key(base.left), element_key(base.right))


def show_term(t):
    base, k = t
    inner = "0" if base is ZERO_BASE else f"{show(base.left)}|{show(base.right)}"
    if k == 0:
        return inner
    if base is ZERO_BASE:
        return f"s^{k}(0)" if k > 1 else "s(0)"
    return f"s^{k}({inner})" if k > 1 else f"s({inner})"


class PresentedAlgebra:
    """C |> A as a finitely presented id+1 algebra.

    Generators are symbols ``c|a`` and the zero; relations identify
    ``c|0_A`` with 0, ``c|(a+1)`` with 0 when c stops, and ``c|(a+1)`` with
    ``s(c-1|a)`` otherwise.  The congruence is closed by union-find on the
    finite set of terms appearing in relations; a class with no successor in
    that set continues as a free successor tail.

    Elements are normal-form terms ``(base, k)`` meaning ``s^k(base)``.
    """

    def __init__(self, C, A):
        _require_idsucc(C, A)
        self.C, self.A = C, A
        self.terms = []
        self.ids = {}
        self.parent = []
        self.next = []
        self.rules = {}

        zero = self._node((ZERO_BASE, 0))
        for c in C.carrier:
            for a in A.carrier:
                self._node((Pair(c, a), 0))
        for c in C.carrier:
            prev = C.step(c)
            if prev is not None:
                for a in A.carrier:
                    self._node((Pair(prev, a), 1))
        for t, i in list(self.ids.items()):
            up = (t[0], t[1] + 1)
            if up in self.ids:
                self.next[i] = self.ids[up]
        for c in C.carrier:
            prev = C.step(c)
            gen = self.ids[(Pair(c, A.zero), 0)]
            self.rules.setdefault((c, A.zero), []).append((ZERO_BASE, 0))
            self._union(gen, zero)
            for a in A.carrier:
                e = A.succ(a)
                rhs = (ZERO_BASE, 0) if prev is None else (Pair(prev, a), 1)
                self.rules.setdefault((c, e), []).append(rhs)
                self._union(self.ids[(Pair(c, e), 0)], self.ids[rhs])
        self._finalise()

    def _node(self, t):
        if t not in self.ids:
            self.ids[t] = len(self.terms)
            self.terms.append(t)
            self.parent.append(len(self.parent))
            self.next.append(None)
        return self.ids[t]

    def _find(self, i):
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def _union(self, x, y):
        pending = [(x, y)]
        while pending:
            x, y = pending.pop()
            rx, ry = self._find(x), self._find(y)
            if rx == ry:
                continue
            sx, sy = self.next[rx], self.next[ry]
            self.parent[ry] = rx
            if sx is None:
                self.next[rx] = sy
            elif sy is not None:
                pending.append((sx, sy))

    def _finalise(self):
        members = {}
        for i in range(len(self.terms)):
            members.setdefault(self._find(i), []).append(self.terms[i])
        self.rep = {r: min(ts, key=_term_key) for r, ts in members.items()}
        self.classes = sorted(self.rep.values(), key=_term_key)
        self.members = {self.rep[r]: sorted(ts, key=_term_key) for r, ts in members.items()}
        self._class_of = {self.rep[r]: r for r in members}
        self.class_succ = {}
        for r, t in self.rep.items():
            nxt = self.next[r]
            self.class_succ[t] = None if nxt is None else self.rep[self._find(nxt)]

    # algebra interface
    @property
    def zero(self):
        return self.normal_form((ZERO_BASE, 0))

    def normal_form(self, term):
        base, m = term
        k0 = m
        while (base, k0) not in self.ids:
            k0 -= 1
            if k0 < 0:
                raise KeyError(f"unknown generator {term!r}")
        cur = self.rep[self._find(self.ids[(base, k0)])]
        for j in range(m - k0):
            nxt = self.class_succ[cur]
            if nxt is None:
                return (cur[0], cur[1] + (m - k0 - j))
            cur = nxt
        return cur

    def succ(self, x):
        return self.normal_form((x[0], x[1] + 1))

    def generator(self, c, a):
        return self.normal_form((Pair(c, a), 0))

    def is_finite(self):
        return all(s is not None for s in self.class_succ.values())

    def tails(self):
        """Classes whose successor chain is free (infinite)."""
        return [t for t in self.classes if self.class_succ[t] is None]

    def chain(self, x=None, bound=1000):
        return find_lasso(self.zero if x is None else x, self.succ, bound)

    def to_algebra(self):
        """The finite quotient as a FinAlgebra (only when ``is_finite``)."""
        if not self.is_finite():
            raise PreconditionError("tensor has free successor tails")
        names = {t: show_term(t) for t in self.classes}
        succ = {names[t]: names[self.class_succ[t]] for t in self.classes}
        return succ_algebra(succ, names[self.zero], succ, "C|>A")

    # universal property
    def homs_into(self, B):
        """All homomorphisms into a finite id+1 algebra, as dicts on classes.

        Tail elements are determined by their class; only the finite part
        carries constraints.
        """
        classes = self.classes
        idx = {t: i for i, t in enumerate(classes)}
        nxt = [None if self.class_succ[t] is None else idx[self.class_succ[t]] for t in classes]
        b = B.carrier.elements
        bpos = {x: i for i, x in enumerate(b)}
        b_succ = [bpos[B.succ(x)] for x in b]
        out = []

        def propagate(h):
            changed = True
            while changed:
                changed = False
                for i, v in enumerate(h):
                    if v is None or nxt[i] is None:
                        continue
                    j, w = nxt[i], b_succ[v]
                    if h[j] is None:
                        h[j] = w
                        changed = True
                    elif h[j] != w:
                        return False
            return True

        def rec(h):
            if not propagate(h):
                return
            if None not in h:
                out.append(tuple(h))
                return
            i = h.index(None)
            for v in range(len(b)):
                h2 = list(h)
                h2[i] = v
                rec(h2)

        start = [None] * len(classes)
        start[idx[self.zero]] = bpos[B.zero]
        rec(start)
        return [{t: b[v] for t, v in zip(classes, h)} for h in out]

    def hom_to_measuring(self, h, B):
        phi = {c: {a: h[self.generator(c, a)] for a in self.A.carrier} for c in self.C.carrier}
        return Measuring(self.C, self.A, B, phi)

    def rewrite_alternatives(self):
        """For each generator ``c|e``, every right-hand side a rule offers."""
        return {k: list(v) for k, v in self.rules.items()}

    def critical_pairs_joinable(self):
        """All alternative rewrites of each generator reach one normal form."""
        for (c, e), rhss in self.rules.items():
            nfs = {self.normal_form(t) for t in rhss}
            nfs.add(self.generator(c, e))
            if len(nfs) != 1:
                return False
        return True

    def as_json(self):
        return {
            "zero": show_term(self.zero),
            "classes": [
                {
                    "normal_form": show_term(t),
                    "members": [show_term(m) for m in self.members[t]],
                    "succ": None if self.class_succ[t] is None else show_term(self.class_succ[t]),
                }
                for t in self.classes
            ],
            "generators": {
                f"{show(c)}|{show(a)}": show_term(self.generator(c, a)) for c in self.C.carrier for a in self.A.carrier
            },
            "finite": self.is_finite(),
        }


def measuring_tensor(C, A):
    return PresentedAlgebra(C, A)
