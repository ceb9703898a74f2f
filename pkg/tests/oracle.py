"""Brute-force reference computations on plain dicts.

Nothing here imports the library's algorithms: algebras are
``(elements, zero, succ)`` and coalgebras are ``(states, step)`` with
``step[c] is None`` meaning the state stops.  Every search is a naive
product over all candidate maps, so it is only usable at tiny sizes.
"""

import itertools
import math

INF = math.inf


def alg(A):
    """Library id+1 algebra -> plain triple."""
    elems = list(A.carrier)
    return elems, A.zero, {a: A.succ(a) for a in elems}


def coalg(C):
    states = list(C.carrier)
    return states, {c: C.step(c) for c in states}


def index(step, c):
    seen = set()
    k = 0
    while c not in seen:
        seen.add(c)
        nxt = step[c]
        if nxt is None:
            return k
        c, k = nxt, k + 1
    return INF


def iterate(succ, x, m):
    for _ in range(m):
        x = succ[x]
    return x


def nth(A, m):
    _, zero, succ = A
    return iterate(succ, zero, m)


def is_measuring(C, A, B, phi):
    states, step = C
    elems, za, sa = A
    _, zb, sb = B
    for c in states:
        if phi[c, za] != zb:
            return False
        for a in elems:
            want = zb if step[c] is None else sb[phi[step[c], a]]
            if phi[c, sa[a]] != want:
                return False
    return True


def measurings(C, A, B):
    """All measurings as dicts keyed by (state, element)."""
    states, _ = C
    elems = A[0]
    keys = [(c, a) for c in states for a in elems]
    out = []
    for values in itertools.product(B[0], repeat=len(keys)):
        phi = dict(zip(keys, values))
        if is_measuring(C, A, B, phi):
            out.append(phi)
    return out


def homs(A, B):
    elems, za, sa = A
    _, zb, sb = B
    out = []
    for values in itertools.product(B[0], repeat=len(elems)):
        h = dict(zip(elems, values))
        if h[za] == zb and all(h[sa[a]] == sb[h[a]] for a in elems):
            out.append(h)
    return out


def coalg_homs(C, D):
    cs, cstep = C
    ds, dstep = D
    out = []
    for values in itertools.product(ds, repeat=len(cs)):
        f = dict(zip(cs, values))
        ok = True
        for c in cs:
            nxt = cstep[c]
            if nxt is None:
                ok = dstep[f[c]] is None
            else:
                ok = dstep[f[c]] == f[nxt]
            if not ok:
                break
        if ok:
            out.append(f)
    return out


def conv_iterate(C, B, m):
    """The m-th successor of zero in [C,B] as a dict, by the pointwise formula."""
    states, step = C
    _, zb, sb = B
    f = {c: zb for c in states}
    for _ in range(m):
        f = {c: zb if step[c] is None else sb[f[step[c]]] for c in states}
    return f


def reachable(A):
    elems, zero, succ = A
    seen, x = [], zero
    while x not in seen:
        seen.append(x)
        x = succ[x]
    return seen


def is_iso(A, B):
    return any(len(set(h.values())) == len(A[0]) for h in homs(A, B)) and len(A[0]) == len(B[0])


def all_algebras(k):
    """Every labelled algebra on 0..k-1 (not up to isomorphism)."""
    elems = [str(i) for i in range(k)]
    for zero in elems:
        for succ in itertools.product(elems, repeat=k):
            yield elems, zero, dict(zip(elems, succ))


def all_coalgebras(k):
    states = [str(i) for i in range(k)]
    for step in itertools.product(states + [None], repeat=k):
        yield states, dict(zip(states, step))


def iso_classes(items, iso):
    reps = []
    for x in items:
        if not any(iso(x, r) for r in reps):
            reps.append(x)
    return reps
