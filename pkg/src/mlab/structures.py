"""Finite algebras and coalgebras, indices, lassos and lazy algebras.

Algebras and coalgebras are stored generically (a structure map out of or
into ``F(carrier)``).  For ``F = id + 1`` the helpers ``zero``/``succ`` and
``step`` give the usual pointed-successor and partial-endofunction views:
``inl(a) -> succ(a)``, ``inr(*) -> zero`` and ``step(c) is None`` for the stop
tag.
"""

import itertools
import math
import threading
from dataclasses import dataclass

from more_itertools import set_partitions

from .errors import BoundExceeded, FunctorMismatch, NotSaturated
from .functor import (
    ID_PLUS_ONE,
    ONE,
    STAR,
    STOP,
    FinSet,
    Inl,
    Pair,
    element_key,
    eval_on_set,
    product_set,
    show,
)

INF = math.inf


def _check_total(kind, domain, mapping, codomain):
    for x in domain:
        if x not in mapping:
            raise ValueError(f"{kind} not defined on {show(x)}")
        if mapping[x] not in codomain:
            raise ValueError(f"{kind}({show(x)}) = {show(mapping[x])} lies outside the codomain")
    if len(mapping) != len(domain):
        extra = [show(x) for x in mapping if x not in domain]
        raise ValueError(f"{kind} defined on unknown elements {extra}")


@dataclass(eq=False)
class FinAlgebra:
    functor: object
    carrier: FinSet
    alpha: dict
    name: str = ""

    def __post_init__(self):
        _check_total("alpha", eval_on_set(self.functor, self.carrier), self.alpha, self.carrier)
        self.is_idsucc = self.functor == ID_PLUS_ONE

    def __eq__(self, other):
        return (
            isinstance(other, FinAlgebra)
            and self.functor == other.functor
            and self.carrier == other.carrier
            and self.alpha == other.alpha
        )

    def __len__(self):
        return len(self.carrier)

    # id + 1 view
    @property
    def zero(self):
        return self.alpha[STOP]

    def succ(self, a):
        return self.alpha[Inl(a)]

    def __repr__(self):
        label = self.name or "algebra"
        if self.is_idsucc:
            table = " ".join(f"{show(a)}->{show(self.succ(a))}" for a in self.carrier)
            return f"<{label}: zero {show(self.zero)}; succ {table}>"
        return f"<{label} over {self.functor}: {self.carrier!r}>"


@dataclass(eq=False)
class FinCoalgebra:
    functor: object
    carrier: FinSet
    chi: dict
    name: str = ""

    def __post_init__(self):
        # values of chi must live in F(carrier); membership is checked via support
        for c in self.carrier:
            if c not in self.chi:
                raise ValueError(f"chi not defined on {show(c)}")
            if not self.functor.support(self.chi[c]) <= set(self.carrier):
                raise ValueError(f"chi({show(c)}) leaves the carrier")
        if len(self.chi) != len(self.carrier):
            raise ValueError("chi defined on unknown elements")
        self.is_idsucc = self.functor == ID_PLUS_ONE

    def __eq__(self, other):
        return (
            isinstance(other, FinCoalgebra)
            and self.functor == other.functor
            and self.carrier == other.carrier
            and self.chi == other.chi
        )

    def __len__(self):
        return len(self.carrier)

    def step(self, c):
        """Predecessor ``c - 1``, or None when c stops (index 0)."""
        v = self.chi[c]
        return v.value if isinstance(v, Inl) else None

    def __repr__(self):
        label = self.name or "coalgebra"
        if self.is_idsucc:
            table = " ".join(
                f"{show(c)}->{'stop' if self.step(c) is None else show(self.step(c))}" for c in self.carrier
            )
            return f"<{label}: step {table}>"
        return f"<{label} over {self.functor}: {self.carrier!r}>"


def succ_algebra(elements, zero, succ, name=""):
    """Build an id+1 algebra from a zero and a successor table."""
    carrier = FinSet(elements)
    alpha = {Inl(a): succ[a] for a in carrier if a in succ}
    alpha[STOP] = zero
    return FinAlgebra(ID_PLUS_ONE, carrier, alpha, name)


def succ_coalgebra(elements, step, name=""):
    """Build an id+1 coalgebra from a partial endofunction (None = stop)."""
    carrier = FinSet(elements)
    chi = {c: (STOP if step[c] is None else Inl(step[c])) for c in carrier if c in step}
    return FinCoalgebra(ID_PLUS_ONE, carrier, chi, name)


def std_algebra(n):
    """<n>: {0..n}, succ(k) = min(k+1, n)."""
    elems = [str(k) for k in range(n + 1)]
    return succ_algebra(elems, "0", {str(k): str(min(k + 1, n)) for k in range(n + 1)}, f"<{n}>")


def std_coalgebra(n):
    """<n>^: {0..n}, 0 stops and k steps to k-1."""
    step = {str(k): (None if k == 0 else str(k - 1)) for k in range(n + 1)}
    return succ_coalgebra(step, step, f"<{n}>^")


def unit_coalgebra(F=ID_PLUS_ONE):
    """The monoidal unit as a coalgebra: one point with chi = eta."""
    return FinCoalgebra(F, ONE, {STAR: F.eta()}, "I")


def empty_coalgebra(F=ID_PLUS_ONE):
    return FinCoalgebra(F, FinSet(), {}, "empty")


def one_point_algebra():
    return std_algebra(0)


def index_of(C, c):
    """Steps until the stop tag; INF if the orbit cycles first."""
    seen = set()
    k = 0
    while True:
        nxt = C.step(c)
        if nxt is None:
            return k
        if c in seen:
            return INF
        seen.add(c)
        c = nxt
        k += 1


def indices(C):
    """index_of for every state, sharing work along orbits."""
    out = {}
    for c in C.carrier:
        path = []
        cur = c
        on_path = set()
        while cur not in out and cur not in on_path:
            on_path.add(cur)
            path.append(cur)
            nxt = C.step(cur)
            if nxt is None:
                out[cur] = 0
                path.pop()
                break
            cur = nxt
        base = out.get(cur, INF)
        for p in reversed(path):
            base = base + 1 if base != INF else INF
            out[p] = base
    return out


# -- subterminal names ------------------------------------------------------


@dataclass(frozen=True)
class Subterminal:
    """One of the subcoalgebras of the extended naturals."""

    kind: str  # "empty" | "bracket" | "bracket+point" | "nminus" | "ipoint" | "ninf"
    n: int = -1

    def __str__(self):
        return {
            "empty": "empty",
            "bracket": f"<{self.n}>^",
            "bracket+point": f"<{self.n}>^+I",
            "nminus": "N-",
            "ipoint": "I",
            "ninf": "Ninf",
        }[self.kind]

    def contains(self, k):
        """Does this subterminal contain the point of index ``k``?"""
        if self.kind == "empty":
            return False
        if self.kind == "bracket":
            return k != INF and k <= self.n
        if self.kind == "bracket+point":
            return k == INF or k <= self.n
        if self.kind == "nminus":
            return k != INF
        if self.kind == "ipoint":
            return k == INF
        return True

    def embeds_in(self, other):
        pts = self.points()
        return all(other.contains(p) for p in pts)

    def points(self):
        # ninf / nminus are infinite; a finite witness list suffices for embeds_in
        if self.kind == "empty":
            return []
        if self.kind == "bracket":
            return list(range(self.n + 1))
        if self.kind == "bracket+point":
            return list(range(self.n + 1)) + [INF]
        if self.kind == "ipoint":
            return [INF]
        if self.kind == "nminus":
            return [0, 1, 2, 10**9]
        return [0, 1, 2, 10**9, INF]

    def coalgebra(self):
        """Finite subterminals as concrete coalgebras."""
        if self.kind == "empty":
            return empty_coalgebra()
        if self.kind == "bracket":
            return std_coalgebra(self.n)
        if self.kind == "bracket+point":
            step = {str(k): (None if k == 0 else str(k - 1)) for k in range(self.n + 1)}
            step[STAR] = STAR
            return succ_coalgebra(step, step, str(self))
        if self.kind == "ipoint":
            return unit_coalgebra()
        raise ValueError(f"{self} is infinite")

    def as_dict(self):
        d = {"name": str(self), "kind": self.kind}
        if self.kind in ("bracket", "bracket+point"):
            d["n"] = self.n
        return d


EMPTY_SUB = Subterminal("empty")
NMINUS = Subterminal("nminus")
IPOINT = Subterminal("ipoint")
NINF = Subterminal("ninf")


def bracket(n):
    return Subterminal("bracket", n)


def bracket_point(n):
    """<n>^ together with the point at infinity."""
    return Subterminal("bracket+point", n)


# -- lassos -----------------------------------------------------------------


@dataclass(frozen=True)
class Lasso:
    """An eventually periodic chain: ``elements[:prefix]`` then a cycle."""

    elements: tuple
    prefix: int
    cycle: int

    def at(self, m):
        if m < len(self.elements):
            return self.elements[m]
        return self.elements[self.prefix + (m - self.prefix) % self.cycle]

    @property
    def top(self):
        """The element where the chain settles, if the cycle is a fixed point."""
        return self.elements[-1] if self.cycle == 1 else None

    def __len__(self):
        return len(self.elements)


def find_lasso(start, step, bound):
    """Map-based lasso detection on ``start, step(start), ...``."""
    seen = {}
    chain = []
    x = start
    for i in range(bound + 1):
        if x in seen:
            p = seen[x]
            return Lasso(tuple(chain), p, i - p)
        seen[x] = i
        chain.append(x)
        x = step(x)
    raise NotSaturated(bound)


def canonical_from_initial(A):
    """The sequence 0_A, 1_A, 2_A, ... as a lasso."""
    return find_lasso(A.zero, A.succ, len(A.carrier) + 1)


def is_N_generated(A):
    """True iff every element is reachable from zero under succ."""
    return len(canonical_from_initial(A)) == len(A.carrier)


# -- lazy algebras ----------------------------------------------------------


class LazyAlgebra:
    """An id+1 algebra given by computed zero and successor.

    Elements are any hashable values; equality is Python equality.  Successor
    calls are memoised behind a lock so concurrent readers agree.
    """

    def __init__(self, zero, succ, name="lazy", show_element=show):
        self.zero = zero
        self._succ = succ
        self.name = name
        self.show_element = show_element
        self._memo = {}
        self._lock = threading.Lock()

    def succ(self, x):
        with self._lock:
            if x in self._memo:
                return self._memo[x]
        y = self._succ(x)
        with self._lock:
            self._memo.setdefault(x, y)
        return y

    def iterate(self, m, x=None):
        x = self.zero if x is None else x
        for _ in range(m):
            x = self.succ(x)
        return x

    @classmethod
    def from_algebra(cls, A):
        return cls(A.zero, A.succ, A.name or "algebra")

    def __repr__(self):
        return f"<LazyAlgebra {self.name}>"


NATURALS = LazyAlgebra(0, lambda n: n + 1, "N", show_element=str)


def lazy_saturation(L, bound=1000):
    """Least (prefix, cycle) of the chain from zero, or NotSaturated."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    return find_lasso(L.zero, L.succ, bound)


def reachable_algebra(L, bound=1000, name=""):
    """The saturated chain of a lazy algebra as a finite id+1 algebra."""
    lasso = lazy_saturation(L, bound)
    names = {x: str(i) for i, x in enumerate(lasso.elements)}
    succ = {names[x]: names[lasso.at(i + 1)] for i, x in enumerate(lasso.elements)}
    A = succ_algebra(succ, names[lasso.elements[0]], succ, name or f"reach({L.name})")
    return A, {v: k for k, v in names.items()}


# -- homomorphism checks ----------------------------------------------------


def is_alg_hom(A, B, f):
    """f . alpha_A == alpha_B . F(f) on every element of F(A)."""
    if A.functor != B.functor:
        raise FunctorMismatch("algebras over different functors")
    F = A.functor
    get = f.__getitem__
    return all(f[A.alpha[x]] == B.alpha[F.fmap(get, x)] for x in eval_on_set(F, A.carrier))


def is_coalg_hom(C, D, f):
    """F(f) . chi_C == chi_D . f on every state."""
    if C.functor != D.functor:
        raise FunctorMismatch("coalgebras over different functors")
    F = C.functor
    get = f.__getitem__
    return all(F.fmap(get, C.chi[c]) == D.chi[f[c]] for c in C.carrier)


def product_coalgebra(C, D):
    """C x D with chi = nabla . (chi_C x chi_D)."""
    if C.functor != D.functor:
        raise FunctorMismatch("coalgebras over different functors")
    F = C.functor
    carrier = product_set(C.carrier, D.carrier)
    chi = {p: F.nabla(C.chi[p.left], D.chi[p.right]) for p in carrier}
    name = f"({C.name or 'C'} x {D.name or 'D'})"
    return FinCoalgebra(F, carrier, chi, name)


def associator(C, D, E):
    """(C x D) x E -> C x (D x E) on carriers."""
    return {Pair(Pair(c, d), e): Pair(c, Pair(d, e)) for c in C.carrier for d in D.carrier for e in E.carrier}


def symmetry(C, D):
    return {Pair(c, d): Pair(d, c) for c in C.carrier for d in D.carrier}


def left_unitor(C):
    """I x C -> C"""
    return {Pair(STAR, c): c for c in C.carrier}


def right_unitor(C):
    """C x I -> C"""
    return {Pair(c, STAR): c for c in C.carrier}


# -- posets of subobjects and quotients --------------------------------------


def subcoalgebras(C, bound=8):
    """All chi-closed subsets with the inherited structure, smallest first."""
    n = len(C.carrier)
    if n > bound:
        raise BoundExceeded("subcoalgebras", 2**n, 2**bound)
    F = C.functor
    out = []
    elems = C.carrier.elements
    for r in range(n + 1):
        for subset in itertools.combinations(elems, r):
            S = set(subset)
            if all(F.support(C.chi[s]) <= S for s in subset):
                out.append(FinCoalgebra(F, FinSet(subset), {s: C.chi[s] for s in subset}))
    return out


def quotient_maps(A, bound=6):
    """All quotients of A as ``(Q, q)`` with q: A -> Q the projection.

    A partition qualifies when alpha descends to it.  Each block is named by
    its least element, so the discrete partition gives ``A`` itself.  Listed
    from finest to coarsest.
    """
    n = len(A.carrier)
    if n > bound:
        raise BoundExceeded("quotient_algebras", f"Bell({n})", f"Bell({bound})")
    F = A.functor
    FA = eval_on_set(F, A.carrier)
    out = []
    for blocks in set_partitions(list(A.carrier.elements)):
        q = {}
        for block in blocks:
            rep = min(block, key=element_key)
            for a in block:
                q[a] = rep
        alpha = {}
        ok = True
        for x in FA:
            key = F.fmap(q.__getitem__, x)
            val = q[A.alpha[x]]
            if alpha.setdefault(key, val) != val:
                ok = False
                break
        if not ok:
            continue
        carrier = FinSet(set(q.values()))
        if len(alpha) != len(eval_on_set(F, carrier)):
            continue
        out.append((FinAlgebra(F, carrier, alpha), q))
    out.sort(key=lambda p: (-len(p[0].carrier), [element_key(p[1][a]) for a in A.carrier]))
    return out


def quotient_algebras(A, bound=6):
    return [Q for Q, _ in quotient_maps(A, bound)]
