"""Bounded C-initiality and the unique map into the dual algebra [C, N].

An algebra A is C-initial when every X admits exactly one measuring of A into
X by C.  Only family-relative verdicts are computed here: the quantifier over
all algebras X is replaced by an explicit finite test family.
"""

from dataclasses import dataclass, field

from .census import all_algebras
from .errors import BoundExceeded, PreconditionError
from .functor import ID_PLUS_ONE, show
from .measuring import convolution_lazy, count_measurings, enumerate_alg_homs
from .structures import NATURALS, find_lasso, is_alg_hom, reachable_algebra

VERDICT_OK = "c-initial-on-family"
VERDICT_REFUTED = "refuted"
VERDICT_INCONCLUSIVE = "inconclusive"


@dataclass
class CInitialReport:
    algebra: object
    coalgebra: object
    family: list
    counts: list
    verdict: str
    witness: object = None
    skipped: list = field(default_factory=list)

    @property
    def ok(self):
        return self.verdict == VERDICT_OK

    def as_dict(self):
        return {
            "algebra": self.algebra.name or repr(self.algebra),
            "coalgebra": self.coalgebra.name or repr(self.coalgebra),
            "scope": "family-relative",
            "family_size": len(self.family),
            "counts": [{"target": name, "count": n} for name, n in self.counts],
            "verdict": self.verdict,
            "witness": self.witness,
            "skipped": self.skipped,
        }


def _label(X, i):
    return X.name or f"X{i}"


def is_C_initial_bounded(A, C, family, bound=None):
    """Count measurings of A into each member of ``family`` by C."""
    if not family:
        raise PreconditionError("test family is empty")
    counts, skipped = [], []
    witness = None
    for i, X in enumerate(family):
        label = _label(X, i)
        try:
            n = count_measurings(C, A, X, bound)
        except BoundExceeded:
            skipped.append(label)
            counts.append((label, None))
            continue
        counts.append((label, n))
        if n != 1 and witness is None:
            witness = {"target": label, "count": n}
    if witness is not None:
        verdict = VERDICT_REFUTED
    elif skipped:
        verdict = VERDICT_INCONCLUSIVE
    else:
        verdict = VERDICT_OK
    return CInitialReport(A, C, list(family), counts, verdict, witness, skipped)


@dataclass
class Inconclusive:
    reason: str
    note: str = ""
    candidates: list = field(default_factory=list)

    def as_dict(self):
        return {"verdict": VERDICT_INCONCLUSIVE, "reason": self.reason, "note": self.note,
                "candidates": [c.name for c in self.candidates]}


def _is_unit(C):
    """True when C is a single state stepping to itself."""
    if len(C.carrier) != 1:
        return False
    (c,) = C.carrier
    return C.step(c) == c


def terminal_C_initial_bounded(C, size_bound=4, bound=None):
    """Search the algebras of size <= size_bound for the terminal C-initial one.

    Candidates are the algebras that are C-initial on the family of all
    algebras up to ``size_bound``; the answer is a candidate receiving exactly
    one homomorphism from every candidate.  Returns an ``Inconclusive`` when
    none exists within the bound.
    """
    family = all_algebras(size_bound)
    candidates = [A for A in family if is_C_initial_bounded(A, C, family, bound).ok]
    for T in candidates:
        if all(len(enumerate_alg_homs(X, T, bound)) == 1 for X in candidates):
            return T
    note = ""
    if _is_unit(C):
        note = "the unit coalgebra singles out the naturals, which no finite algebra can stand in for"
    if not candidates:
        return Inconclusive("no algebra within the bound is C-initial on the family", note)
    return Inconclusive("no C-initial candidate within the bound is terminal among the others", note, candidates)


# -- the unique map A -> [C, N] -------------------------------------------------


def _zero_distances(A):
    dist = {A.zero: 0}
    x, d = A.zero, 0
    while True:
        x, d = A.succ(x), d + 1
        if x in dist:
            return dist
        dist[x] = d


@dataclass
class DualMap:
    A: object
    C: object
    image: dict
    lasso: object
    hom_count: int

    @property
    def unique(self):
        return self.hom_count == 1

    def as_dict(self):
        return {
            "map": {show(a): list(self.image[a].values) for a in self.A.carrier},
            "chain": [list(f.values) for f in self.lasso.elements],
            "prefix": self.lasso.prefix,
            "cycle": self.lasso.cycle,
            "homomorphisms_found": self.hom_count,
        }


def unique_map_to_dual(A, C, bound=1000):
    """The homomorphism A -> [C, N] sending n_A to n_[C,N].

    Elements reached from zero in n steps go to the n-th element of the zero
    chain of [C, N]; every other element lies on a successor cycle and goes to
    the top element, where that chain becomes stationary.  The candidate is
    checked to be a homomorphism, and uniqueness is confirmed by enumerating
    all homomorphisms into the saturated reachable part of [C, N].
    """
    if A.functor != ID_PLUS_ONE or C.functor != ID_PLUS_ONE:
        raise PreconditionError("only defined for id+1")
    successors = {A.succ(a) for a in A.carrier}
    for a in A.carrier:
        if a != A.zero and a not in successors:
            raise PreconditionError(f"element {show(a)} is neither zero nor a successor")
    L = convolution_lazy(C, NATURALS)
    lasso = find_lasso(L.zero, L.succ, bound)
    dist = _zero_distances(A)
    top = lasso.top if lasso.cycle == 1 else None
    image = {}
    for a in A.carrier:
        if a in dist:
            image[a] = lasso.at(dist[a])
        elif top is None:
            raise PreconditionError(f"[C,N] has no top element for the cycle through {show(a)}")
        else:
            image[a] = top
    for a in A.carrier:
        if image[A.succ(a)] != L.succ(image[a]):
            raise PreconditionError(f"no homomorphism: the image of {show(a)} is inconsistent")
    R, names = reachable_algebra(L, bound, f"{L.name} reachable")
    back = {v: k for k, v in names.items()}
    named = {a: back[image[a]] for a in A.carrier}
    if not is_alg_hom(A, R, named):
        raise PreconditionError("image leaves the reachable part of [C,N]")
    count = len(enumerate_alg_homs(A, R))
    return DualMap(A, C, image, lasso, count)

