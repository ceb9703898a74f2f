"""Command-line front end: ``mlab <command> ...``.

Every command loads structure files, makes one library call and prints a
JSON document on stdout.  Exit status: 0 on success, 1 for parse or
validation errors, 2 when a bound or precondition makes the library refuse.
"""

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .errors import FunctorMismatch, ParseError, Refused
from .functor import FinSet, Fn, show
from .initiality import Inconclusive, is_C_initial_bounded, terminal_C_initial_bounded, unique_map_to_dual
from .laws import run_laws
from .measuring import (
    Measuring,
    compose_measurings,
    convolution_algebra,
    enumerate_measurings,
    is_measuring,
    partial_induction,
)
from .mixed import as_json as gf_as_json, gf_convolution, gf_measuring_count
from .structures import (
    INF,
    NATURALS,
    index_of,
    lazy_saturation,
    quotient_maps,
    subcoalgebras,
)
from .census import all_algebras
from .textio import parse_structure, structure_kind
from .universal import classify_universal, dual_algebra, dual_coalgebra_classified, measuring_graph, measuring_tensor

SCHEMA = 1


class Workspace:
    """Structures loaded from files, keyed by name within each kind."""

    def __init__(self):
        self.by_path = {}
        self.registry = {}
        self.digests = {}

    def load(self, path, kind=None):
        p = Path(path)
        key = str(p)
        if key not in self.by_path:
            try:
                data = p.read_bytes()
            except OSError as e:
                raise ParseError("SYNTAX", f"cannot read {path}: {e.strerror}") from None
            self.digests[key] = hashlib.sha256(data).hexdigest()
            obj = parse_structure(data.decode("utf-8"), p.stem)
            k = structure_kind(obj)
            other = self.registry.get((k, p.stem))
            if other is not None and other != key:
                raise ParseError("DUPLICATE_NAME", f"two {k} files named {p.stem!r}")
            self.registry[(k, p.stem)] = key
            self.by_path[key] = obj
        obj = self.by_path[key]
        if kind is not None and structure_kind(obj) != kind:
            raise ParseError("WRONG_KIND", f"{path} holds {_article(structure_kind(obj))}, expected {_article(kind)}")
        return obj

    def load_json(self, path):
        p = Path(path)
        try:
            data = p.read_bytes()
        except OSError as e:
            raise ParseError("SYNTAX", f"cannot read {path}: {e.strerror}") from None
        self.digests[str(p)] = hashlib.sha256(data).hexdigest()
        try:
            return json.loads(data.decode("utf-8"))
        except json.JSONDecodeError as e:
            raise ParseError("SYNTAX", f"{path}: {e.msg}", e.lineno, e.colno) from None

    def target(self, name):
        """An algebra file, or ``N`` for the lazy naturals."""
        return NATURALS if name == "N" else self.load(name, "algebra")


def _article(word):
    return ("an " if word[0] in "aeiou" else "a ") + word


def _index(k):
    return "inf" if k == INF else int(k)


def _phi_from_json(raw, C, A, B):
    by_name = {show(c): c for c in C.carrier}
    a_name = {show(a): a for a in A.carrier}
    b_name = {show(b): b for b in B.carrier}
    phi = {}
    if not isinstance(raw, dict):
        raise ParseError("SYNTAX", "phi must be an object of objects")
    for cs, row in raw.items():
        if cs not in by_name:
            raise ParseError("UNKNOWN_ELEMENT", f"unknown state {cs!r}")
        if not isinstance(row, dict):
            raise ParseError("SYNTAX", f"phi[{cs!r}] must be an object")
        out = {}
        for a_s, b_s in row.items():
            if a_s not in a_name:
                raise ParseError("UNKNOWN_ELEMENT", f"unknown element {a_s!r} of A")
            if b_s not in b_name:
                raise ParseError("UNKNOWN_ELEMENT", f"unknown element {b_s!r} of B")
            out[a_name[a_s]] = b_name[b_s]
        missing = [show(a) for a in A.carrier if a not in out]
        if missing:
            raise ParseError("NON_TOTAL", f"phi[{cs!r}] undefined at {missing[0]}")
        phi[by_name[cs]] = out
    missing = [show(c) for c in C.carrier if c not in phi]
    if missing:
        raise ParseError("NON_TOTAL", f"phi undefined at state {missing[0]}")
    return phi


def _measuring_file(ws, path):
    """A JSON file with C, A, B (paths relative to the file) and phi."""
    doc = ws.load_json(path)
    base = Path(path).parent
    try:
        C = ws.load(base / doc["C"], "coalgebra")
        A = ws.load(base / doc["A"], "algebra")
        B = ws.load(base / doc["B"], "algebra")
        phi = _phi_from_json(doc["phi"], C, A, B)
    except KeyError as e:
        raise ParseError("SYNTAX", f"{path}: missing key {e.args[0]!r}") from None
    check = is_measuring(C, A, B, phi)
    if not check:
        raise ParseError("NOT_A_MEASURING", f"{path}: {check.describe()}")
    return Measuring(C, A, B, phi)


def _algebra_json(A):
    if A.is_idsucc:
        return {
            "elements": [show(a) for a in A.carrier],
            "zero": show(A.zero),
            "succ": {show(a): show(A.succ(a)) for a in A.carrier},
        }
    return {"elements": [show(a) for a in A.carrier], "alpha": gf_as_json(A)}


def _coalgebra_json(C):
    if C.is_idsucc:
        return {
            "states": [show(c) for c in C.carrier],
            "step": {show(c): None if C.step(c) is None else show(C.step(c)) for c in C.carrier},
        }
    return {"states": [show(c) for c in C.carrier], "chi": {show(c): show(C.chi[c]) for c in C.carrier}}


def _chain_json(L, bound):
    try:
        lasso = lazy_saturation(L, bound)
    except Refused:
        first = [L.zero]
        for _ in range(min(bound, 20)):
            first.append(L.succ(first[-1]))
        return {"saturated": False, "bound": bound, "first": [_value(x) for x in first]}
    return {
        "saturated": True,
        "prefix": lasso.prefix,
        "cycle": lasso.cycle,
        "chain": [_value(x) for x in lasso.elements],
        "top": None if lasso.top is None else _value(lasso.top),
    }


def _value(x):
    if isinstance(x, Fn):
        return [_value(v) for v in x.values]
    if isinstance(x, int):
        return x
    return show(x)


# -- commands ----------------------------------------------------------------


def cmd_index(ws, args):
    C = ws.load(args.coalgebra, "coalgebra")
    names = {show(c): c for c in C.carrier}
    if args.element not in names:
        raise ParseError("UNKNOWN_ELEMENT", f"unknown state {args.element!r}")
    return {"state": args.element, "index": _index(index_of(C, names[args.element]))}


def cmd_poset(ws, args):
    if args.which == "sub":
        C = ws.load(args.structure, "coalgebra")
        subs = [frozenset(S.carrier) for S in subcoalgebras(C, args.max_carrier)]
        items = [[show(c) for c in FinSet(S)] for S in subs]
        order = [[i, j] for i, S in enumerate(subs) for j, T in enumerate(subs) if i != j and S <= T]
        return {"kind": "subcoalgebras", "items": items, "order": order}
    A = ws.load(args.structure, "algebra")
    quots = quotient_maps(A, args.max_carrier)
    items = [[show(a) for a in Q.carrier] for Q, _ in quots]
    kernels = [{(a, b) for a in A.carrier for b in A.carrier if q[a] == q[b]} for _, q in quots]
    # j below i when j is a further quotient of i (coarser partition)
    order = [[j, i] for i in range(len(quots)) for j in range(len(quots)) if i != j and kernels[i] <= kernels[j]]
    return {
        "kind": "quotient algebras",
        "items": items,
        "projections": [{show(a): show(q[a]) for a in A.carrier} for _, q in quots],
        "algebras": [_algebra_json(Q) for Q, _ in quots],
        "order": order,
    }


def cmd_measure(ws, args):
    if args.which == "compose":
        g = _measuring_file(ws, args.g)
        f = _measuring_file(ws, args.f)
        m = compose_measurings(g, f)
        return {"coalgebra": _coalgebra_json(m.C), "phi": m.as_json()}
    C = ws.load(args.C, "coalgebra")
    A = ws.load(args.A, "algebra")
    B = ws.load(args.B, "algebra")
    if args.which == "check":
        phi = _phi_from_json(ws.load_json(args.phi), C, A, B)
        check = is_measuring(C, A, B, phi)
        out = {"measuring": check.ok}
        if not check.ok:
            c, x = check.witness
            out["witness"] = {"state": show(c), "element": show(x)}
        return out
    ms = enumerate_measurings(C, A, B)
    out = {"count": len(ms)}
    if not args.count_only:
        out["measurings"] = [m.as_json() for m in ms]
    return out


def cmd_conv(ws, args):
    C = ws.load(args.C, "coalgebra")
    B = ws.load(args.B, "algebra")
    conv = convolution_algebra(C, B)
    return {"states": [show(c) for c in C.carrier], "algebra": _algebra_json(conv)}


def cmd_umeas(ws, args):
    A = ws.load(args.A, "algebra")
    B = ws.target(args.B)
    if args.which == "classify":
        S = classify_universal(A, B)
        run = partial_induction(A, B)
        return {
            "subterminal": S.as_dict(),
            "nminus_detected": S.kind == "nminus",
            "partial_induction": {
                "total": run.total,
                "steps": len(run.steps),
                "witness": None if run.witness is None else [_value(v) for v in run.witness],
            },
        }
    if B is NATURALS:
        raise ParseError("WRONG_KIND", "the measuring graph needs a finite target algebra")
    G = measuring_graph(A, B)
    if args.dot:
        Path(args.dot).write_text(G.to_dot(), encoding="utf-8")
    out = G.as_json()
    out["longest_path_to_terminal"] = _index(G.longest_path_to_terminal())
    return out


def cmd_dual(ws, args):
    if args.which == "alg":
        C = ws.load(args.structure, "coalgebra")
        return {"states": [show(c) for c in C.carrier], **_chain_json(dual_algebra(C), args.bound)}
    A = ws.load(args.structure, "algebra")
    return {"subterminal": dual_coalgebra_classified(A).as_dict()}


def cmd_tensor(ws, args):
    C = ws.load(args.C, "coalgebra")
    A = ws.load(args.A, "algebra")
    T = measuring_tensor(C, A)
    out = T.as_json()
    out["critical_pairs_joinable"] = T.critical_pairs_joinable()
    if args.homs_into:
        B = ws.load(args.homs_into, "algebra")
        homs = T.homs_into(B)
        out["homs"] = {
            "count": len(homs),
            "measurings": sorted((T.hom_to_measuring(h, B) for h in homs), key=Measuring.key),
        }
        out["homs"]["measurings"] = [m.as_json() for m in out["homs"]["measurings"]]
    return out


def cmd_cinitial(ws, args):
    if args.which == "check":
        A = ws.load(args.A, "algebra")
        C = ws.load(args.C, "coalgebra")
        return is_C_initial_bounded(A, C, all_algebras(args.family_size)).as_dict()
    if args.which == "terminal":
        C = ws.load(args.C, "coalgebra")
        T = terminal_C_initial_bounded(C, args.bound)
        if isinstance(T, Inconclusive):
            return T.as_dict()
        return {"verdict": "found", "scope": "family-relative", "algebra": _algebra_json(T)}
    A = ws.load(args.A, "algebra")
    C = ws.load(args.C, "coalgebra")
    return unique_map_to_dual(A, C).as_dict()


def cmd_gf(ws, args):
    C = ws.load(args.automaton, "automaton")
    A = ws.load(args.A, "gfalgebra")
    if args.which == "conv":
        conv = gf_convolution(C, A)
        return {"states": [show(q) for q in C.states], "algebra": _algebra_json(conv)}
    B = ws.load(args.B, "gfalgebra")
    return {"count": gf_measuring_count(C, A, B)}


def cmd_laws(ws, args):
    matrix = run_laws(args.max_size, corrupt_nabla=args.corrupt_nabla, mixed=not args.skip_mixed)
    for line in matrix.lines():
        print(line, file=sys.stderr)
    return matrix.as_dict(timing=args.timing)


def build_parser():
    p = argparse.ArgumentParser(prog="mlab", description="Measurings between finite algebras and coalgebras.")
    p.add_argument("--version", action="version", version=f"mlab {__version__}")
    p.add_argument("--enum-bound", type=int, help="enumeration bound (overrides MLAB_ENUM_BOUND)")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in the output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("index", help="index of a coalgebra state")
    s.add_argument("coalgebra")
    s.add_argument("element")
    s.set_defaults(run=cmd_index)

    s = sub.add_parser("poset", help="subcoalgebras or quotient algebras")
    s.add_argument("which", choices=["sub", "quot"])
    s.add_argument("structure")
    s.add_argument("--max-carrier", type=int, default=8)
    s.set_defaults(run=cmd_poset)

    s = sub.add_parser("measure", help="check, enumerate or compose measurings")
    msub = s.add_subparsers(dest="which", required=True)
    m = msub.add_parser("check")
    for name in ("C", "A", "B", "phi"):
        m.add_argument(name)
    m = msub.add_parser("enum")
    for name in ("C", "A", "B"):
        m.add_argument(name)
    m.add_argument("--count-only", action="store_true")
    m = msub.add_parser("compose")
    m.add_argument("g")
    m.add_argument("f")
    s.set_defaults(run=cmd_measure)

    s = sub.add_parser("conv", help="convolution algebra [C,B]")
    s.add_argument("C")
    s.add_argument("B")
    s.set_defaults(run=cmd_conv)

    s = sub.add_parser("umeas", help="universal measuring coalgebra")
    s.add_argument("which", choices=["classify", "graph"])
    s.add_argument("A")
    s.add_argument("B", help="algebra file, or N for the naturals (classify only)")
    s.add_argument("--dot", help="write the measuring graph as DOT")
    s.set_defaults(run=cmd_umeas)

    s = sub.add_parser("dual", help="dual algebra [C,N] or dual coalgebra of A")
    s.add_argument("which", choices=["alg", "coalg"])
    s.add_argument("structure")
    s.add_argument("--bound", type=int, default=1000)
    s.set_defaults(run=cmd_dual)

    s = sub.add_parser("tensor", help="measuring tensor C |> A")
    s.add_argument("C")
    s.add_argument("A")
    s.add_argument("--homs-into")
    s.set_defaults(run=cmd_tensor)

    s = sub.add_parser("cinitial", help="bounded C-initiality")
    csub = s.add_subparsers(dest="which", required=True)
    c = csub.add_parser("check")
    c.add_argument("A")
    c.add_argument("C")
    c.add_argument("--family-size", type=int, default=3)
    c = csub.add_parser("terminal")
    c.add_argument("C")
    c.add_argument("--bound", type=int, default=4)
    c = csub.add_parser("dualmap")
    c.add_argument("A")
    c.add_argument("C")
    s.set_defaults(run=cmd_cinitial)

    s = sub.add_parser("gf", help="automata measuring GF-algebras")
    gsub = s.add_subparsers(dest="which", required=True)
    g = gsub.add_parser("conv")
    g.add_argument("automaton")
    g.add_argument("A")
    g = gsub.add_parser("count")
    g.add_argument("automaton")
    g.add_argument("A")
    g.add_argument("B")
    s.set_defaults(run=cmd_gf)

    s = sub.add_parser("laws", help="run the law sweeps and print a pass/fail matrix")
    s.add_argument("--max-size", type=int, default=3)
    s.add_argument("--corrupt-nabla", action="store_true", help="debug: break nabla to see the sweeps fail")
    s.add_argument("--skip-mixed", action="store_true")
    s.set_defaults(run=cmd_laws)
    return p


def _canonical_dump(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False)


def main(argv=None):
    args = build_parser().parse_args(argv)
    saved = os.environ.get("MLAB_ENUM_BOUND")
    if args.enum_bound is not None:
        os.environ["MLAB_ENUM_BOUND"] = str(args.enum_bound)
    ws = Workspace()
    start = time.perf_counter()
    try:
        result = args.run(ws, args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except FunctorMismatch as e:
        print(f"error: FUNCTOR_MISMATCH: {e}", file=sys.stderr)
        return 1
    except Refused as e:
        print(f"refused: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    finally:
        if args.enum_bound is not None:
            if saved is None:
                os.environ.pop("MLAB_ENUM_BOUND", None)
            else:
                os.environ["MLAB_ENUM_BOUND"] = saved
    doc = {
        "schema": SCHEMA,
        "command": [args.command] + ([args.which] if getattr(args, "which", None) else []),
        "result": result,
        "provenance": {"tool": "mlab", "version": __version__, "inputs": dict(sorted(ws.digests.items()))},
    }
    if args.timing:
        doc["seconds"] = round(time.perf_counter() - start, 3)
    print(_canonical_dump(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
