"""Small id+1 algebras and coalgebras, one per isomorphism class.

Canonical form: the lexicographically least ``(zero, succ-table)`` (resp.
``step-table``) encoding over all relabellings of ``0..k-1``.
"""

import itertools
from functools import lru_cache

from .structures import succ_algebra, succ_coalgebra


def _algebra_code(zero, succ, perm):
    # perm: old -> new
    k = len(succ)
    inv = [0] * k
    for old, new in enumerate(perm):
        inv[new] = old
    return (perm[zero],) + tuple(perm[succ[inv[i]]] for i in range(k))


def _coalgebra_code(step, perm):
    k = len(step)
    inv = [0] * k
    for old, new in enumerate(perm):
        inv[new] = old
    return tuple(-1 if step[inv[i]] < 0 else perm[step[inv[i]]] for i in range(k))


@lru_cache(maxsize=None)
def algebra_codes(k):
    """Canonical codes of id+1 algebras on k elements."""
    perms = list(itertools.permutations(range(k)))
    codes = set()
    for zero in range(k):
        for succ in itertools.product(range(k), repeat=k):
            codes.add(min(_algebra_code(zero, succ, p) for p in perms))
    return sorted(codes)


@lru_cache(maxsize=None)
def coalgebra_codes(k):
    perms = list(itertools.permutations(range(k)))
    codes = set()
    for step in itertools.product(range(-1, k), repeat=k):
        codes.add(min(_coalgebra_code(step, p) for p in perms))
    return sorted(codes)


def algebra_from_code(code, name=""):
    k = len(code) - 1
    elems = [str(i) for i in range(k)]
    return succ_algebra(elems, str(code[0]), {str(i): str(code[1 + i]) for i in range(k)}, name)


def coalgebra_from_code(code, name=""):
    elems = [str(i) for i in range(len(code))]
    return succ_coalgebra(elems, {str(i): (None if s < 0 else str(s)) for i, s in enumerate(code)}, name)


def canonical_algebra_code(A):
    """Isomorphism invariant of an id+1 algebra (complete for small sizes)."""
    elems = list(A.carrier)
    pos = {a: i for i, a in enumerate(elems)}
    zero = pos[A.zero]
    succ = tuple(pos[A.succ(a)] for a in elems)
    return min(_algebra_code(zero, succ, p) for p in itertools.permutations(range(len(elems))))


def canonical_coalgebra_code(C):
    elems = list(C.carrier)
    pos = {c: i for i, c in enumerate(elems)}
    step = tuple(-1 if C.step(c) is None else pos[C.step(c)] for c in elems)
    return min(_coalgebra_code(step, p) for p in itertools.permutations(range(len(elems))))


def is_isomorphic(A, B):
    return len(A.carrier) == len(B.carrier) and canonical_algebra_code(A) == canonical_algebra_code(B)


def all_algebras(max_size, min_size=1):
    """One id+1 algebra per isomorphism class, sizes min_size..max_size."""
    out = []
    for k in range(max(min_size, 1), max_size + 1):
        for j, code in enumerate(algebra_codes(k)):
            out.append(algebra_from_code(code, f"A{k}.{j}"))
    return out


def all_coalgebras(max_size, min_size=0):
    out = []
    for k in range(min_size, max_size + 1):
        for j, code in enumerate(coalgebra_codes(k)):
            out.append(coalgebra_from_code(code, f"C{k}.{j}"))
    return out
