"""Automata measuring algebras of (id+1) . (2 x X^Sigma).

Automata are coalgebras of F(X) = 2 x X^Sigma.  Algebras of GF with
G = id+1 are sets with a constant and an operation taking an acceptance bit
and a Sigma-indexed tuple.  An automaton C turns a GF-algebra A into the
convolution algebra [C, A]; the measurings of A into B by C are the
homomorphisms A -> [C, B].
"""

import itertools
from dataclasses import dataclass

from .errors import BoundExceeded, FunctorMismatch
from .functor import ID_PLUS_ONE, STOP, Comp, FinSet, Fn, Pair, automaton_functor, eval_on_set, show
from .measuring import default_enum_bound, enumerate_alg_homs
from .structures import FinAlgebra, FinCoalgebra, is_alg_hom

BITS = ("0", "1")


@dataclass
class MooreCoalgebra:
    alphabet: FinSet
    states: FinSet
    accept: dict
    delta: dict
    name: str = ""

    def __post_init__(self):
        for q in self.states:
            if self.accept.get(q) not in BITS:
                raise ValueError(f"acceptance of {show(q)} must be 0 or 1")
            for s in self.alphabet:
                if self.delta.get((q, s)) not in self.states:
                    raise ValueError(f"delta({show(q)},{show(s)}) is undefined or unknown")

    @property
    def functor(self):
        return automaton_functor(self.alphabet)

    def coalgebra(self):
        chi = {
            q: Pair(self.accept[q], Fn(tuple(self.delta[(q, s)] for s in self.alphabet)))
            for q in self.states
        }
        return FinCoalgebra(self.functor, self.states, chi, self.name)

    def rename(self, mapping, name=""):
        """The same automaton with states renamed along a bijection."""
        return MooreCoalgebra(
            self.alphabet,
            FinSet(mapping[q] for q in self.states),
            {mapping[q]: b for q, b in self.accept.items()},
            {(mapping[q], s): mapping[t] for (q, s), t in self.delta.items()},
            name or self.name,
        )


def automaton(alphabet, states, accept, delta, name=""):
    """Build an automaton; ``accept`` is the set of accepting states."""
    alphabet = alphabet if isinstance(alphabet, FinSet) else FinSet(alphabet)
    states = states if isinstance(states, FinSet) else FinSet(states)
    acc = {q: "1" if q in accept else "0" for q in states}
    return MooreCoalgebra(alphabet, states, acc, dict(delta), name)


def unit_automaton(alphabet, name="I"):
    """One accepting state looping on every letter: the unit for F."""
    alphabet = alphabet if isinstance(alphabet, FinSet) else FinSet(alphabet)
    return automaton(alphabet, ["*"], ["*"], {("*", s): "*" for s in alphabet}, name)


def all_automata(alphabet, n_states):
    alphabet = alphabet if isinstance(alphabet, FinSet) else FinSet(alphabet)
    states = [f"q{i}" for i in range(n_states)]
    keys = [(q, s) for q in states for s in alphabet]
    out = []
    for acc in itertools.product(BITS, repeat=n_states):
        for targets in itertools.product(states, repeat=len(keys)):
            out.append(MooreCoalgebra(alphabet, FinSet(states), dict(zip(states, acc)), dict(zip(keys, targets))))
    return out


def gf_functor(alphabet):
    alphabet = alphabet if isinstance(alphabet, FinSet) else FinSet(alphabet)
    return Comp(ID_PLUS_ONE, automaton_functor(alphabet))


def gf_algebra(alphabet, elements, structure, name=""):
    """A GF-algebra from a total structure map on (2 x X^Sigma) + 1."""
    return FinAlgebra(gf_functor(alphabet), FinSet(elements), dict(structure), name)


def gf_algebra_from_ops(alphabet, elements, constant, op, name=""):
    """Structure from a constant and ``op(bit, tuple_of_elements)``."""
    F = gf_functor(alphabet)
    carrier = FinSet(elements)
    alpha = {}
    for x in eval_on_set(F, carrier):
        alpha[x] = constant if x == STOP else op(x.value.left, x.value.right.values)
    return FinAlgebra(F, carrier, alpha, name)


def all_gf_algebras(alphabet, size):
    """Every GF-algebra on the elements a0..a{size-1} (labelled, not up to iso)."""
    F = gf_functor(alphabet)
    carrier = FinSet(f"a{i}" for i in range(size))
    domain = eval_on_set(F, carrier).elements
    for values in itertools.product(carrier.elements, repeat=len(domain)):
        yield FinAlgebra(F, carrier, dict(zip(domain, values)))


def _alphabet_of(A):
    F = A.functor
    if not (isinstance(F, Comp) and F.outer == ID_PLUS_ONE):
        raise FunctorMismatch("expected an algebra of (id+1) . (2 x X^Sigma)")
    return F.inner.right.base


def gf_convolution(C, A, bound=None, generic=False):
    """[C, A] with the transported GF-algebra structure.

    For x in GF([C, A]) and a state c, the value at c pairs x with chi(c)
    through the strength of id+1, evaluates with the lax structure of F, and
    applies A's structure.  The default path computes the same composite in
    closed form: the bit is conjoined with c's acceptance and each tuple entry
    is evaluated at c's successor on that letter.
    """
    if _alphabet_of(A) != C.alphabet:
        raise FunctorMismatch("automaton and algebra use different alphabets")
    bound = default_enum_bound() if bound is None else bound
    size = len(A.carrier) ** len(C.states)
    if size > bound:
        raise BoundExceeded("gf_convolution", size, bound)
    coalg = C.coalgebra()
    F = coalg.functor
    states = C.states.elements
    pos = C.states.index
    carrier = FinSet(Fn(vs) for vs in itertools.product(A.carrier.elements, repeat=len(states)))
    GF = A.functor
    alpha = {}
    if generic:

        def ev(p):
            return p.left.values[pos(p.right)]

        def h(p):
            return F.fmap(ev, F.nabla(p.left, p.right))

        for x in eval_on_set(GF, carrier):
            alpha[x] = Fn(
                tuple(A.alpha[ID_PLUS_ONE.fmap(h, ID_PLUS_ONE.strength(x, coalg.chi[c]))] for c in states)
            )
    else:
        rows = [
            (C.accept[c] == "1", [pos(C.delta[(c, s)]) for s in C.alphabet])
            for c in states
        ]
        const = Fn((A.alpha[STOP],) * len(states))
        table = {(x.value.left, x.value.right.values): y for x, y in A.alpha.items() if x != STOP}
        for x in eval_on_set(GF, carrier):
            if x == STOP:
                alpha[x] = const
                continue
            bit, fs = x.value.left, x.value.right.values
            alpha[x] = Fn(
                tuple(
                    table[(bit if acc else "0", tuple(f.values[t] for f, t in zip(fs, targets)))]
                    for acc, targets in rows
                )
            )
    return FinAlgebra(GF, carrier, alpha, f"[{C.name or 'C'},{A.name or 'A'}]")


def gf_measuring_count(C, A, B, bound=None):
    """Number of GF-algebra homomorphisms A -> [C, B]."""
    conv = gf_convolution(C, B, bound)
    return len(enumerate_alg_homs(A, conv, bound, generic=True))


def unit_iso_holds(A):
    """[I, A] is isomorphic to A along f -> f(*)."""
    conv = gf_convolution(unit_automaton(_alphabet_of(A)), A)
    iso = {f: f.values[0] for f in conv.carrier}
    return len(set(iso.values())) == len(A.carrier) and is_alg_hom(conv, A, iso)


def automaton_homs(C, D):
    """Automaton homomorphisms C -> D (as state maps)."""
    out = []
    states = C.states.elements
    for values in itertools.product(D.states.elements, repeat=len(states)):
        f = dict(zip(states, values))
        if all(
            C.accept[q] == D.accept[f[q]] and all(f[C.delta[(q, s)]] == D.delta[(f[q], s)] for s in C.alphabet)
            for q in states
        ):
            out.append(f)
    return out


def precompose(f, C, D, A):
    """The map [D, A] -> [C, A] induced by an automaton hom f: C -> D."""
    dpos = D.states.index
    idx = [dpos(f[q]) for q in C.states]
    conv_d = itertools.product(A.carrier.elements, repeat=len(D.states))
    return {Fn(vs): Fn(tuple(vs[i] for i in idx)) for vs in conv_d}


def contravariance_holds(f, C, D, A):
    """Precomposition with f is a GF-algebra hom [D, A] -> [C, A]."""
    return is_alg_hom(gf_convolution(D, A), gf_convolution(C, A), precompose(f, C, D, A))


def as_json(A):
    return {show(x): show(A.alpha[x]) for x in eval_on_set(A.functor, A.carrier)}



def automaton_code(C):
    """Isomorphism invariant of an automaton: least table over state relabellings."""
    states = C.states.elements
    best = None
    for perm in itertools.permutations(range(len(states))):
        rank = dict(zip(states, perm))
        order = sorted(states, key=rank.__getitem__)
        code = tuple(
            (C.accept[q],) + tuple(rank[C.delta[(q, s)]] for s in C.alphabet) for q in order
        )
        best = code if best is None or code < best else best
    return best


def gf_algebra_code(A):
    """Isomorphism invariant of a GF-algebra: least structure table over relabellings."""
    elems = A.carrier.elements
    domain = eval_on_set(A.functor, A.carrier).elements
    best = None
    for perm in itertools.permutations(elems):
        rename = dict(zip(elems, perm))
        moved = {A.functor.fmap(rename.__getitem__, x): rename[A.alpha[x]] for x in domain}
        code = tuple(A.carrier.index(moved[x]) for x in domain)
        best = code if best is None or code < best else best
    return best


def distinct_up_to_iso(items, code):
    seen = set()
    out = []
    for x in items:
        k = code(x)
        if k not in seen:
            seen.add(k)
            out.append(x)
    return out
