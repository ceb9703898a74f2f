"""Lax symmetric monoidal endofunctors on finite sets.

A functor is a small expression tree (``Id``, ``ConstMonoid``, ``Prod``,
``Sum``, ``Comp``, ``Exp``).  Each node knows how to act on finite sets, on
maps (one element at a time), and carries the lax structure ``nabla`` and
``eta`` for the cartesian monoidal structure ``(Set, x, 1)``.

Elements of ``F(X)`` are built from the tagged values below, so that two
different functors never produce colliding element names.
"""

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ParseError

STAR = "*"


@dataclass(frozen=True)
class Inl:
    value: object


@dataclass(frozen=True)
class Inr:
    value: object


@dataclass(frozen=True)
class Pair:
    left: object
    right: object


@dataclass(frozen=True)
class Fn:
    """A function out of a finite set, stored as its values in domain order."""

    values: tuple


_DIGITS = re.compile(r"(\d+)")


def element_key(e):
    """Sort key: tag first, then lexicographic (numbers compared numerically)."""
    if isinstance(e, str):
        return (0, tuple((0, int(p)) if p.isdigit() else (1, p) for p in _DIGITS.split(e) if p))
    if isinstance(e, Inl):
        return (1, element_key(e.value))
    if isinstance(e, Inr):
        return (2, element_key(e.value))
    if isinstance(e, Pair):
        return (3, element_key(e.left), element_key(e.right))
    if isinstance(e, Fn):
        return (4, tuple(element_key(v) for v in e.values))
    raise TypeError(f"not a finite-set element: {e!r}")


def show(e):
    """Canonical printable name of an element."""
    if isinstance(e, str):
        return e
    if isinstance(e, Inl):
        return f"inl({show(e.value)})"
    if isinstance(e, Inr):
        return f"inr({show(e.value)})"
    if isinstance(e, Pair):
        return f"({show(e.left)},{show(e.right)})"
    if isinstance(e, Fn):
        return "[" + ",".join(show(v) for v in e.values) + "]"
    raise TypeError(f"not a finite-set element: {e!r}")


@dataclass(frozen=True)
class FinSet:
    """A finite set with a canonical (sorted) element order."""

    elements: tuple
    _members: frozenset = field(init=False, repr=False, compare=False)
    _position: dict = field(init=False, repr=False, compare=False)

    def __init__(self, elements=()):
        elems = list(elements)
        members = frozenset(elems)
        if len(members) != len(elems):
            raise ValueError("duplicate elements in FinSet")
        elems.sort(key=element_key)
        object.__setattr__(self, "elements", tuple(elems))
        object.__setattr__(self, "_members", members)
        object.__setattr__(self, "_position", {e: i for i, e in enumerate(elems)})

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in self._members

    def __getitem__(self, i):
        return self.elements[i]

    def __hash__(self):
        return hash(self.elements)

    def index(self, e):
        return self._position[e]

    def names(self):
        return [show(e) for e in self.elements]

    def __repr__(self):
        return "{" + ", ".join(self.names()) + "}"


ONE = FinSet([STAR])
EMPTY = FinSet()


def named_set(prefix, n):
    return FinSet(f"{prefix}{i}" for i in range(n))


def product_set(X, Y):
    return FinSet(Pair(x, y) for x in X for y in Y)


def all_maps(X, Y):
    """Every total map X -> Y, as dicts, in canonical order."""
    for values in itertools.product(Y.elements, repeat=len(X)):
        yield dict(zip(X.elements, values))


# -- functor expressions ----------------------------------------------------


class FunctorExpr:
    """Base class of the functor syntax tree."""

    def on_set(self, X):
        raise NotImplementedError

    def fmap(self, f, x):
        """Action of F(f) on a single element x of F(X); ``f`` is a callable."""
        raise NotImplementedError

    def nabla(self, x, y):
        raise NotImplementedError

    def eta(self):
        raise NotImplementedError

    def strength(self, x, y):
        """The canonical strength F(X) x Y -> F(X x Y)."""
        raise NotImplementedError

    def support(self, x):
        """The set of X-elements occurring in x."""
        raise NotImplementedError


@dataclass(frozen=True)
class Id(FunctorExpr):
    def on_set(self, X):
        return X

    def fmap(self, f, x):
        return f(x)

    def nabla(self, x, y):
        return Pair(x, y)

    def eta(self):
        return STAR

    def strength(self, x, y):
        return Pair(x, y)

    def support(self, x):
        return {x}

    def __str__(self):
        return "id"


@dataclass(frozen=True)
class ConstMonoid(FunctorExpr):
    """Constant functor at a commutative monoid.

    ``table`` lists ``(a, b, a*b)`` triples.  Associativity, commutativity and
    unitality are checked exhaustively unless ``check=False`` (used only to
    build deliberately broken instances for negative controls).
    """

    name: str
    carrier: FinSet
    unit: str
    table: tuple
    check: bool = field(default=True, compare=False)
    _op: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        op = {(a, b): c for a, b, c in self.table}
        object.__setattr__(self, "_op", op)
        M = self.carrier
        if self.unit not in M:
            raise ValueError(f"monoid unit {self.unit!r} not in carrier")
        for a in M:
            for b in M:
                if (a, b) not in op or op[(a, b)] not in M:
                    raise ValueError(f"monoid operation not total on ({a}, {b})")
        if not self.check:
            return
        for a in M:
            if op[(self.unit, a)] != a:
                raise ValueError(f"{self.unit} is not a unit for {a}")
            for b in M:
                if op[(a, b)] != op[(b, a)]:
                    raise ValueError(f"operation not commutative on ({a}, {b})")
                for c in M:
                    if op[(op[(a, b)], c)] != op[(a, op[(b, c)])]:
                        raise ValueError(f"operation not associative on ({a}, {b}, {c})")

    @classmethod
    def from_op(cls, name, elements, unit, op, check=True):
        M = FinSet(elements)
        table = tuple((a, b, op(a, b)) for a in M for b in M)
        return cls(name, M, unit, table, check)

    def mul(self, a, b):
        return self._op[(a, b)]

    def on_set(self, X):
        return self.carrier

    def fmap(self, f, x):
        return x

    def nabla(self, x, y):
        return self._op[(x, y)]

    def eta(self):
        return self.unit

    def strength(self, x, y):
        return x

    def support(self, x):
        return set()

    def __str__(self):
        return f"(const {self.name})"


UNIT_MONOID = ConstMonoid.from_op("unit", [STAR], STAR, lambda a, b: STAR)
BOOL_AND = ConstMonoid.from_op("bool and", ["0", "1"], "1", lambda a, b: "1" if a == b == "1" else "0")
BOOL_OR = ConstMonoid.from_op("bool or", ["0", "1"], "0", lambda a, b: "1" if "1" in (a, b) else "0")
MONOIDS = {m.name: m for m in (UNIT_MONOID, BOOL_AND, BOOL_OR)}


@dataclass(frozen=True)
class Prod(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr

    def on_set(self, X):
        return product_set(eval_on_set(self.left, X), eval_on_set(self.right, X))

    def fmap(self, f, x):
        return Pair(self.left.fmap(f, x.left), self.right.fmap(f, x.right))

    def nabla(self, x, y):
        return Pair(self.left.nabla(x.left, y.left), self.right.nabla(x.right, y.right))

    def eta(self):
        return Pair(self.left.eta(), self.right.eta())

    def strength(self, x, y):
        return Pair(self.left.strength(x.left, y), self.right.strength(x.right, y))

    def support(self, x):
        return self.left.support(x.left) | self.right.support(x.right)

    def __str__(self):
        return f"(prod {self.left} {self.right})"


@dataclass(frozen=True)
class Sum(FunctorExpr):
    """F + M for a constant monoid M; the module actions project onto M."""

    left: FunctorExpr
    right: ConstMonoid

    def __post_init__(self):
        if not isinstance(self.right, ConstMonoid):
            raise TypeError("right summand of Sum must be a ConstMonoid")

    def on_set(self, X):
        return FinSet([Inl(x) for x in eval_on_set(self.left, X)] + [Inr(m) for m in self.right.carrier])

    def fmap(self, f, x):
        if isinstance(x, Inl):
            return Inl(self.left.fmap(f, x.value))
        return x

    def nabla(self, x, y):
        if isinstance(x, Inl) and isinstance(y, Inl):
            return Inl(self.left.nabla(x.value, y.value))
        if isinstance(x, Inr) and isinstance(y, Inr):
            return Inr(self.right.mul(x.value, y.value))
        return x if isinstance(x, Inr) else y

    def eta(self):
        return Inl(self.left.eta())

    def strength(self, x, y):
        if isinstance(x, Inl):
            return Inl(self.left.strength(x.value, y))
        return x

    def support(self, x):
        if isinstance(x, Inl):
            return self.left.support(x.value)
        return set()

    def __str__(self):
        return f"(sum {self.left} {self.right})"


@dataclass(frozen=True)
class Comp(FunctorExpr):
    """outer . inner"""

    outer: FunctorExpr
    inner: FunctorExpr

    def on_set(self, X):
        return eval_on_set(self.outer, eval_on_set(self.inner, X))

    def fmap(self, f, x):
        inner = self.inner
        return self.outer.fmap(lambda u: inner.fmap(f, u), x)

    def nabla(self, x, y):
        inner = self.inner
        return self.outer.fmap(lambda p: inner.nabla(p.left, p.right), self.outer.nabla(x, y))

    def eta(self):
        e = self.inner.eta()
        return self.outer.fmap(lambda _: e, self.outer.eta())

    def strength(self, x, y):
        inner = self.inner
        return self.outer.fmap(lambda p: inner.strength(p.left, p.right), self.outer.strength(x, y))

    def support(self, x):
        out = set()
        for u in self.outer.support(x):
            out |= self.inner.support(u)
        return out

    def __str__(self):
        return f"(comp {self.outer} {self.inner})"


@dataclass(frozen=True)
class Exp(FunctorExpr):
    """X -> X^base, functions stored as value tuples in base order."""

    base: FinSet

    def on_set(self, X):
        return FinSet(Fn(vs) for vs in itertools.product(X.elements, repeat=len(self.base)))

    def fmap(self, f, x):
        return Fn(tuple(f(v) for v in x.values))

    def nabla(self, x, y):
        return Fn(tuple(Pair(u, v) for u, v in zip(x.values, y.values)))

    def eta(self):
        return Fn((STAR,) * len(self.base))

    def strength(self, x, y):
        return Fn(tuple(Pair(v, y) for v in x.values))

    def support(self, x):
        return set(x.values)

    def __str__(self):
        return "(exp " + " ".join(self.base.names()) + ")"


ID_PLUS_ONE = Sum(Id(), UNIT_MONOID)
STOP = Inr(STAR)


def automaton_functor(alphabet):
    """2 x X^alphabet, the functor whose coalgebras are Moore automata."""
    if not isinstance(alphabet, FinSet):
        alphabet = FinSet(alphabet)
    return Prod(BOOL_AND, Exp(alphabet))


# -- operations -------------------------------------------------------------


@lru_cache(maxsize=4096)
def eval_on_set(F, X):
    return F.on_set(X)


def eval_on_map(F, f, domain=None):
    """F(f) as a dict on F(domain); ``f`` is a dict defined on ``domain``."""
    if domain is None:
        domain = FinSet(f)
    return {x: F.fmap(f.__getitem__, x) for x in eval_on_set(F, domain)}


def nabla(F, X, Y):
    """The lax structure map F(X) x F(Y) -> F(X x Y), as a dict on pairs."""
    FX, FY = eval_on_set(F, X), eval_on_set(F, Y)
    return {Pair(x, y): F.nabla(x, y) for x in FX for y in FY}


def eta(F):
    return F.eta()


def _assoc(p):
    return Pair(p.left.left, Pair(p.left.right, p.right))


def _swap(p):
    return Pair(p.right, p.left)


def _drop_left(p):
    return p.right


def _drop_right(p):
    return p.left


@dataclass
class LawRow:
    name: str
    instances: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def fail(self, witness, keep=5):
        if len(self.failures) < keep:
            self.failures.append(witness)
        else:
            self.failures.append(None)

    def as_dict(self):
        return {
            "name": self.name,
            "instances": self.instances,
            "failures": sum(1 for _ in self.failures),
            "witnesses": [w for w in self.failures if w is not None],
            "ok": self.ok,
        }


@dataclass
class LawReport:
    rows: list

    @property
    def ok(self):
        return all(r.ok for r in self.rows)

    def row(self, name):
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    def as_dict(self):
        return {"ok": self.ok, "rows": [r.as_dict() for r in self.rows]}


def _sizes(max_size):
    return range(0, max_size + 1)


def check_lax_axioms(F, max_size=3):
    """Exhaustively check associativity, unitality and commutativity of
    (F, nabla, eta) on sets x0.., y0.., z0.. of every size up to ``max_size``."""
    assoc = LawRow("associativity")
    left = LawRow("left unit")
    right = LawRow("right unit")
    comm = LawRow("commutativity")
    e = F.eta()
    sets = {k: (named_set("x", k), named_set("y", k), named_set("z", k)) for k in _sizes(max_size)}
    for i in _sizes(max_size):
        X = sets[i][0]
        FX = eval_on_set(F, X)
        for a in FX:
            left.instances += 1
            if F.fmap(_drop_left, F.nabla(e, a)) != a:
                left.fail(f"X={X!r} a={show(a)}")
            right.instances += 1
            if F.fmap(_drop_right, F.nabla(a, e)) != a:
                right.fail(f"X={X!r} a={show(a)}")
        for j in _sizes(max_size):
            FY = eval_on_set(F, sets[j][1])
            for a in FX:
                for b in FY:
                    comm.instances += 1
                    if F.fmap(_swap, F.nabla(a, b)) != F.nabla(b, a):
                        comm.fail(f"a={show(a)} b={show(b)}")
            for k in _sizes(max_size):
                FZ = eval_on_set(F, sets[k][2])
                for a in FX:
                    for b in FY:
                        ab = F.nabla(a, b)
                        for c in FZ:
                            assoc.instances += 1
                            lhs = F.fmap(_assoc, F.nabla(ab, c))
                            rhs = F.nabla(a, F.nabla(b, c))
                            if lhs != rhs:
                                assoc.fail(f"a={show(a)} b={show(b)} c={show(c)}")
    return LawReport([assoc, left, right, comm])


def check_functor_laws(F, max_size=2):
    """Identity and composition laws over all maps between small sets."""
    ident = LawRow("functor identity")
    compose = LawRow("functor composition")
    for i in _sizes(max_size):
        X = named_set("x", i)
        idX = {x: x for x in X}
        ident.instances += 1
        if any(v != k for k, v in eval_on_map(F, idX, X).items()):
            ident.fail(f"X={X!r}")
        for j in _sizes(max_size):
            Y = named_set("y", j)
            for k in _sizes(max_size):
                Z = named_set("z", k)
                for f in all_maps(X, Y):
                    Ff = eval_on_map(F, f, X)
                    for g in all_maps(Y, Z):
                        compose.instances += 1
                        Fg = eval_on_map(F, g, Y)
                        gf = {x: g[f[x]] for x in X}
                        Fgf = eval_on_map(F, gf, X)
                        if any(Fgf[u] != Fg[Ff[u]] for u in Fgf):
                            compose.fail(f"f={f} g={g}")
    return LawReport([ident, compose])


def check_nabla_naturality(F, max_size=2):
    """F(f x g) . nabla == nabla . (F f x F g) for all maps between small sets."""
    row = LawRow("nabla naturality")
    for i, j, i2, j2 in itertools.product(_sizes(max_size), repeat=4):
        X, Y = named_set("x", i), named_set("y", j)
        X2, Y2 = named_set("u", i2), named_set("v", j2)
        FX, FY = eval_on_set(F, X), eval_on_set(F, Y)
        for f in all_maps(X, X2):
            for g in all_maps(Y, Y2):
                fg = {Pair(x, y): Pair(f[x], g[y]) for x in X for y in Y}
                for a in FX:
                    Fa = F.fmap(f.__getitem__, a)
                    for b in FY:
                        row.instances += 1
                        lhs = F.fmap(fg.__getitem__, F.nabla(a, b))
                        rhs = F.nabla(Fa, F.fmap(g.__getitem__, b))
                        if lhs != rhs:
                            row.fail(f"a={show(a)} b={show(b)}")
    return LawReport([row])


# -- s-expression syntax ----------------------------------------------------


def _tokenize(text):
    return re.findall(r"\(|\)|[^\s()]+", text)


def parse_functor(text, sets=None):
    """Parse ``(sum id (const unit))``-style functor expressions.

    Forms: ``id``, ``idplus1``, ``(const unit|bool and|bool or)``,
    ``(sum F (const ...))``, ``(prod F G)``, ``(comp OUTER INNER)``,
    ``(exp e1 e2 ...)``.  A single ``(exp NAME)`` argument is looked up in
    ``sets`` first and only taken literally if absent.
    """
    sets = sets or {}
    tokens = _tokenize(text)
    pos = 0

    def fail(msg):
        raise ParseError("BAD_FUNCTOR", f"{msg} in {text!r}")

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            fail("unexpected end")
        tok = tokens[pos]
        pos += 1
        if tok == "id":
            return Id()
        if tok in ("idplus1", "nat"):
            return ID_PLUS_ONE
        if tok != "(":
            fail(f"unexpected token {tok!r}")
        if pos >= len(tokens):
            fail("unexpected end")
        head = tokens[pos]
        pos += 1
        if head == "const":
            words = []
            while pos < len(tokens) and tokens[pos] != ")":
                words.append(tokens[pos])
                pos += 1
            name = " ".join(words)
            if name not in MONOIDS:
                fail(f"unknown monoid {name!r}")
            node = MONOIDS[name]
        elif head == "exp":
            words = []
            while pos < len(tokens) and tokens[pos] != ")":
                words.append(tokens[pos])
                pos += 1
            if len(words) == 1 and words[0] in sets:
                base = sets[words[0]]
                base = base if isinstance(base, FinSet) else FinSet(base)
            else:
                base = FinSet(words)
            node = Exp(base)
        elif head in ("sum", "prod", "comp"):
            a = expr()
            b = expr()
            if head == "sum":
                if not isinstance(b, ConstMonoid):
                    fail("right summand must be (const ...)")
                node = Sum(a, b)
            elif head == "prod":
                node = Prod(a, b)
            else:
                node = Comp(a, b)
        else:
            fail(f"unknown form {head!r}")
        if pos >= len(tokens) or tokens[pos] != ")":
            fail("missing ')'")
        pos += 1
        return node

    node = expr()
    if pos != len(tokens):
        fail("trailing tokens")
    return node


def format_functor(F):
    return str(F)
