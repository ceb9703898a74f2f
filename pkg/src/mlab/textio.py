"""Text formats for algebras, coalgebras, automata and GF-algebras.

One structure per file::

    algebra idsucc { elements a b c; zero a; succ a->b b->c c->c }
    coalgebra idsucc { elements x y; step x->stop y->x }
    algebra (prod (const bool and) id) { elements p q; alpha (0,p)->p ... }
    coalgebra (sum id (const unit)) { elements x; chi x->inl(x) }
    automaton { alphabet a b; states q0 q1; accept q0; delta q0,a->q1 ... }
    gfalgebra { alphabet a; elements x y; unit x; op 0[x]->x 1[x]->y ... }

Structures written by ``format_structure`` parse back to equal objects.
Errors are ``ParseError`` with one of the codes SYNTAX, BAD_FUNCTOR,
UNKNOWN_ELEMENT, NON_TOTAL and DUPLICATE_NAME, plus a line and column.
"""

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .functor import ID_PLUS_ONE, STOP, FinSet, Fn, Inl, Inr, Pair, eval_on_set, parse_functor, show
from .mixed import MooreCoalgebra, gf_functor
from .structures import FinAlgebra, FinCoalgebra

KINDS = ("algebra", "coalgebra", "automaton", "gfalgebra")
NAME = re.compile(r"[A-Za-z0-9_.*'|^+]+$")


@dataclass
class Token:
    text: str
    line: int
    column: int


def _position(text, offset):
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _fail(code, message, tok=None):
    if tok is None:
        raise ParseError(code, message)
    raise ParseError(code, message, tok.line, tok.column)


def _split(text):
    """Header tokens, functor text and clauses (lists of Tokens)."""
    m = re.match(r"\s*([A-Za-z]+)", text)
    if not m:
        _fail("SYNTAX", "expected a structure kind", Token("", *_position(text, 0)))
    kind = m.group(1)
    kind_tok = Token(kind, *_position(text, m.start(1)))
    if kind not in KINDS:
        _fail("SYNTAX", f"unknown structure kind {kind!r}", kind_tok)
    open_at = text.find("{", m.end())
    if open_at < 0:
        _fail("SYNTAX", "missing '{'", kind_tok)
    close_at = text.rfind("}")
    if close_at < open_at:
        _fail("SYNTAX", "missing '}'", Token("{", *_position(text, open_at)))
    if text[close_at + 1 :].strip():
        _fail("SYNTAX", "text after closing '}'", Token("}", *_position(text, close_at + 1)))
    raw = text[m.end() : open_at]
    header = raw.strip()
    header_tok = Token(header, *_position(text, m.end() + len(raw) - len(raw.lstrip())))
    clauses = []
    body_start = open_at + 1
    for part in re.finditer(r"[^;]+", text[body_start:close_at]):
        words = [
            Token(w.group(0), *_position(text, body_start + part.start() + w.start()))
            for w in re.finditer(r"\S+", part.group(0))
        ]
        if words:
            clauses.append(words)
    return kind, kind_tok, header, header_tok, clauses


def _clauses_by_keyword(clauses, allowed, kind_tok):
    out = {}
    for words in clauses:
        key = words[0]
        if key.text not in allowed:
            _fail("SYNTAX", f"unexpected clause {key.text!r}", key)
        if key.text in out:
            _fail("DUPLICATE_NAME", f"clause {key.text!r} given twice", key)
        out[key.text] = (key, words[1:])
    return out


def _names(tokens, what):
    seen = []
    for t in tokens:
        if not NAME.match(t.text):
            _fail("SYNTAX", f"bad {what} name {t.text!r}", t)
        if t.text in seen:
            _fail("DUPLICATE_NAME", f"{what} {t.text!r} declared twice", t)
        seen.append(t.text)
    return seen


def _require(clauses, key, kind_tok):
    if key not in clauses:
        _fail("SYNTAX", f"missing clause {key!r}", kind_tok)
    return clauses[key]


def _arrow(tok):
    if tok.text.count("->") != 1:
        _fail("SYNTAX", f"expected source->target, got {tok.text!r}", tok)
    src, dst = tok.text.split("->")
    if not src or not dst:
        _fail("SYNTAX", f"expected source->target, got {tok.text!r}", tok)
    return src, dst


def _known(name, universe, tok, offset=0):
    if name not in universe:
        t = Token(name, tok.line, tok.column + offset)
        _fail("UNKNOWN_ELEMENT", f"unknown element {name!r}", t)
    return name


# -- element expressions -------------------------------------------------


def parse_element(text):
    """Inverse of ``show``: inl(x), inr(x), (l,r), [v,...] and bare names."""
    pos = 0

    def atom():
        nonlocal pos
        m = re.compile(r"[A-Za-z0-9_.*'|^+]+").match(text, pos)
        if not m:
            raise ValueError(f"bad element syntax at {text[pos:]!r}")
        pos = m.end()
        return m.group(0)

    def expect(ch):
        nonlocal pos
        if not text.startswith(ch, pos):
            raise ValueError(f"expected {ch!r} in {text!r}")
        pos += 1

    def expr():
        nonlocal pos
        for tag, cls in (("inl(", Inl), ("inr(", Inr)):
            if text.startswith(tag, pos):
                pos += len(tag)
                v = expr()
                expect(")")
                return cls(v)
        if text.startswith("(", pos):
            pos += 1
            left = expr()
            expect(",")
            right = expr()
            expect(")")
            return Pair(left, right)
        if text.startswith("[", pos):
            pos += 1
            vals = []
            if not text.startswith("]", pos):
                vals.append(expr())
                while text.startswith(",", pos):
                    pos += 1
                    vals.append(expr())
            expect("]")
            return Fn(tuple(vals))
        return atom()

    value = expr()
    if pos != len(text):
        raise ValueError(f"trailing text in {text!r}")
    return value


# -- per-kind parsers ------------------------------------------------------


def _table(entries, domain, codomain, what, parse_src=None, kind_tok=None):
    table = {}
    for tok in entries:
        src_text, dst = _arrow(tok)
        if parse_src is None:
            src = _known(src_text, domain, tok)
        else:
            try:
                src = parse_src(src_text)
            except ValueError as e:
                _fail("SYNTAX", str(e), tok)
            if src not in domain:
                _fail("UNKNOWN_ELEMENT", f"{src_text!r} is not in the domain of {what}", tok)
        _known(dst, codomain, tok, len(src_text) + 2)
        if src in table:
            _fail("DUPLICATE_NAME", f"{what} defined twice at {src_text!r}", tok)
        table[src] = dst
    missing = [d for d in domain if d not in table]
    if missing:
        _fail("NON_TOTAL", f"{what} undefined at {show(missing[0])}", kind_tok)
    return table


def _functor(header, header_tok, sets=None):
    if header == "idsucc":
        return ID_PLUS_ONE
    try:
        return parse_functor(header, sets)
    except ParseError as e:
        raise ParseError("BAD_FUNCTOR", e.message, header_tok.line, header_tok.column) from None


def _parse_algebra(header, header_tok, clauses, kind_tok, name):
    F = _functor(header, header_tok)
    if F == ID_PLUS_ONE and header == "idsucc":
        cl = _clauses_by_keyword(clauses, ("elements", "zero", "succ"), kind_tok)
        elems = _names(_require(cl, "elements", kind_tok)[1], "element")
        zkey, ztoks = _require(cl, "zero", kind_tok)
        if len(ztoks) != 1:
            _fail("SYNTAX", "zero takes exactly one element", zkey)
        zero = _known(ztoks[0].text, elems, ztoks[0])
        succ = _table(_require(cl, "succ", kind_tok)[1], elems, elems, "succ", kind_tok=kind_tok)
        alpha = {STOP: zero, **{Inl(a): b for a, b in succ.items()}}
        return FinAlgebra(F, FinSet(elems), alpha, name)
    cl = _clauses_by_keyword(clauses, ("elements", "alpha"), kind_tok)
    elems = _names(_require(cl, "elements", kind_tok)[1], "element")
    carrier = FinSet(elems)
    domain = eval_on_set(F, carrier)
    alpha = _table(_require(cl, "alpha", kind_tok)[1], domain, elems, "alpha", parse_element, kind_tok)
    return FinAlgebra(F, carrier, alpha, name)


def _parse_coalgebra(header, header_tok, clauses, kind_tok, name):
    F = _functor(header, header_tok)
    if F == ID_PLUS_ONE and header == "idsucc":
        cl = _clauses_by_keyword(clauses, ("elements", "step"), kind_tok)
        elems = _names(_require(cl, "elements", kind_tok)[1], "element")
        step = _table(_require(cl, "step", kind_tok)[1], elems, elems + ["stop"], "step", kind_tok=kind_tok)
        chi = {c: STOP if t == "stop" else Inl(t) for c, t in step.items()}
        return FinCoalgebra(F, FinSet(elems), chi, name)
    cl = _clauses_by_keyword(clauses, ("elements", "chi"), kind_tok)
    elems = _names(_require(cl, "elements", kind_tok)[1], "element")
    carrier = FinSet(elems)
    chi = {}
    key, entries = _require(cl, "chi", kind_tok)
    FC = eval_on_set(F, carrier)
    for tok in entries:
        src, dst_text = _arrow(tok)
        _known(src, elems, tok)
        try:
            dst = parse_element(dst_text)
        except ValueError as e:
            _fail("SYNTAX", str(e), tok)
        if dst not in FC:
            _fail("UNKNOWN_ELEMENT", f"{dst_text!r} is not an element of F(carrier)", tok)
        if src in chi:
            _fail("DUPLICATE_NAME", f"chi defined twice at {src!r}", tok)
        chi[src] = dst
    missing = [c for c in elems if c not in chi]
    if missing:
        _fail("NON_TOTAL", f"chi undefined at {missing[0]}", key)
    return FinCoalgebra(F, carrier, chi, name)


def _parse_automaton(header, header_tok, clauses, kind_tok, name):
    if header:
        _fail("SYNTAX", "automaton takes no functor", header_tok)
    cl = _clauses_by_keyword(clauses, ("alphabet", "states", "accept", "delta"), kind_tok)
    sigma = _names(_require(cl, "alphabet", kind_tok)[1], "letter")
    states = _names(_require(cl, "states", kind_tok)[1], "state")
    accept = [_known(t.text, states, t) for t in cl.get("accept", (None, []))[1]]
    delta = {}
    key, entries = _require(cl, "delta", kind_tok)
    for tok in entries:
        src, dst = _arrow(tok)
        if src.count(",") != 1:
            _fail("SYNTAX", f"expected state,letter->state, got {tok.text!r}", tok)
        q, s = src.split(",")
        _known(q, states, tok)
        _known(s, sigma, tok, len(q) + 1)
        _known(dst, states, tok, len(src) + 2)
        if (q, s) in delta:
            _fail("DUPLICATE_NAME", f"delta defined twice at {src!r}", tok)
        delta[(q, s)] = dst
    for q in states:
        for s in sigma:
            if (q, s) not in delta:
                _fail("NON_TOTAL", f"delta undefined at {q},{s}", key)
    acc = {q: "1" if q in accept else "0" for q in states}
    return MooreCoalgebra(FinSet(sigma), FinSet(states), acc, delta, name)


def _parse_gfalgebra(header, header_tok, clauses, kind_tok, name):
    if header:
        _fail("SYNTAX", "gfalgebra takes no functor", header_tok)
    cl = _clauses_by_keyword(clauses, ("alphabet", "elements", "unit", "op"), kind_tok)
    sigma = _names(_require(cl, "alphabet", kind_tok)[1], "letter")
    elems = _names(_require(cl, "elements", kind_tok)[1], "element")
    ukey, utoks = _require(cl, "unit", kind_tok)
    if len(utoks) != 1:
        _fail("SYNTAX", "unit takes exactly one element", ukey)
    unit = _known(utoks[0].text, elems, utoks[0])
    F = gf_functor(sigma)
    carrier = FinSet(elems)
    alpha = {STOP: unit}
    key, entries = _require(cl, "op", kind_tok)
    for tok in entries:
        src, dst = _arrow(tok)
        m = re.fullmatch(r"([01])\[(.*)\]", src)
        if not m:
            _fail("SYNTAX", f"expected bit[e1,...]->e, got {tok.text!r}", tok)
        args = m.group(2).split(",") if m.group(2) else []
        if len(args) != len(sigma):
            _fail("SYNTAX", f"op needs {len(sigma)} arguments, got {len(args)}", tok)
        for a in args:
            _known(a, elems, tok)
        _known(dst, elems, tok, len(src) + 2)
        x = Inl(Pair(m.group(1), Fn(tuple(args))))
        if x in alpha:
            _fail("DUPLICATE_NAME", f"op defined twice at {src!r}", tok)
        alpha[x] = dst
    for x in eval_on_set(F, carrier):
        if x not in alpha:
            _fail("NON_TOTAL", f"op undefined at {_gf_source(x)}", key)
    return FinAlgebra(F, carrier, alpha, name)


def _gf_source(x):
    return f"{x.value.left}[{','.join(x.value.right.values)}]"


_PARSERS = {
    "algebra": _parse_algebra,
    "coalgebra": _parse_coalgebra,
    "automaton": _parse_automaton,
    "gfalgebra": _parse_gfalgebra,
}


def parse_structure(text, name=""):
    """Parse one structure; raises ParseError with a code and position."""
    kind, kind_tok, header, header_tok, clauses = _split(text)
    try:
        return _PARSERS[kind](header, header_tok, clauses, kind_tok, name)
    except ValueError as e:
        # invariant violations caught by the structure constructors
        _fail("NON_TOTAL", str(e), kind_tok)


def structure_kind(obj):
    if isinstance(obj, MooreCoalgebra):
        return "automaton"
    if isinstance(obj, FinCoalgebra):
        return "coalgebra"
    if isinstance(obj, FinAlgebra):
        if _is_gf(obj):
            return "gfalgebra"
        return "algebra"
    raise TypeError(f"not a structure: {obj!r}")


def _is_gf(A):
    try:
        return A.functor == gf_functor(A.functor.inner.right.base)
    except AttributeError:
        return False


def format_structure(obj):
    kind = structure_kind(obj)
    lines = []
    if kind == "automaton":
        lines.append("automaton {")
        lines.append(f"  alphabet {' '.join(obj.alphabet.names())};")
        lines.append(f"  states {' '.join(obj.states.names())};")
        acc = [q for q in obj.states if obj.accept[q] == "1"]
        if acc:
            lines.append(f"  accept {' '.join(acc)};")
        lines.append("  delta " + " ".join(f"{q},{s}->{obj.delta[(q, s)]}" for q in obj.states for s in obj.alphabet) + ";")
    elif kind == "gfalgebra":
        lines.append("gfalgebra {")
        lines.append(f"  alphabet {' '.join(obj.functor.inner.right.base.names())};")
        lines.append(f"  elements {' '.join(obj.carrier.names())};")
        lines.append(f"  unit {obj.alpha[STOP]};")
        ops = [f"{_gf_source(x)}->{obj.alpha[x]}" for x in eval_on_set(obj.functor, obj.carrier) if x != STOP]
        lines.append("  op " + " ".join(ops) + ";")
    elif obj.functor == ID_PLUS_ONE:
        lines.append(f"{kind} idsucc {{")
        lines.append(f"  elements {' '.join(obj.carrier.names())};")
        if kind == "algebra":
            lines.append(f"  zero {obj.zero};")
            lines.append("  succ " + " ".join(f"{a}->{obj.succ(a)}" for a in obj.carrier) + ";")
        else:
            steps = []
            for c in obj.carrier:
                prev = obj.step(c)
                steps.append(f"{c}->{'stop' if prev is None else prev}")
            lines.append("  step " + " ".join(steps) + ";")
    else:
        lines.append(f"{kind} {obj.functor} {{")
        lines.append(f"  elements {' '.join(obj.carrier.names())};")
        if kind == "algebra":
            entries = [f"{show(x)}->{show(obj.alpha[x])}" for x in eval_on_set(obj.functor, obj.carrier)]
            lines.append("  alpha " + " ".join(entries) + ";")
        else:
            lines.append("  chi " + " ".join(f"{show(c)}->{show(obj.chi[c])}" for c in obj.carrier) + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_structure(path):
    """Parse a structure file; the structure is named after the file stem."""
    p = Path(path)
    return parse_structure(p.read_text(encoding="utf-8"), p.stem)
