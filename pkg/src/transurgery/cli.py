"""Command line front end.

Exit codes: 0 ok, 2 parse error, 3 hypothesis or regime violation,
4 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Sequence

from . import braids, open_books, twists
from .exact import InexactDivision, Rational

EXIT_OK, EXIT_PARSE, EXIT_HYPOTHESIS, EXIT_INTERNAL = 0, 2, 3, 4


class ParseFailure(ValueError):
    pass


def _slope(text: str) -> Rational:
    try:
        return Rational.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseFailure(f"bad slope {text!r}: {exc}") from None


def _result(command: str, payload: dict, citations: Sequence[str] = ()) -> dict:
    return {"status": "ok", "command": command, "payload": payload, "citations": list(citations)}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_twist(args) -> tuple[dict, str]:
    on, along = _slope(args.on), _slope(args.along)
    if args.sign not in (1, -1):
        raise ParseFailure("--sign must be +1 or -1")
    if args.count < 1:
        raise ParseFailure("--count must be >= 1")
    M = twists.twist_matrix(along, args.sign) ** args.count
    out = M(on)
    payload = {
        "on": str(on),
        "along": str(along),
        "sign": args.sign,
        "count": args.count,
        "result": str(out),
        "matrix": M.rows(),
    }
    return _result("twist", payload), f"{out}\nmatrix {M.rows()}"


def cmd_reduce(args) -> tuple[dict, str]:
    s, a = _slope(args.slope), _slope(args.a)
    prog = twists.reduce_to_meridian(s, args.n, a)
    if not prog.verified:
        raise AssertionError("reduction program failed replay")
    text = "\n".join(
        [f"{len(prog.steps)} step(s), {prog.total_twists} twist(s)"]
        + [f"  +1 along {st.along} x{st.count}" for st in prog.steps]
        + ["trace " + " -> ".join(str(x) for x in prog.replay_trace)]
    )
    return _result("reduce", prog.to_dict(), (twists.CITE_SIMPLE,)), text


def cmd_classify(args) -> tuple[dict, str]:
    s, a = _slope(args.slope), _slope(args.a)
    v = twists.classify_surgery_slope(s, args.n, a)
    payload = v.to_dict()
    citations = payload.pop("citations")
    text = f"{v.verdict.value}" + (f" ({v.reason})" if v.reason else "")
    return _result("classify", payload, citations), text


def _params(args) -> open_books.FamilyParams:
    if args.n < 1:
        raise twists.HypothesisError("n must be >= 1")
    return open_books.FamilyParams(args.n, args.k1, args.k2)


def _fillings(specs: Sequence[str] | None) -> dict[str, Rational]:
    out = {}
    for spec in specs or ():
        name, _, value = spec.rpartition("=")
        out[name or "B1"] = _slope(value)
    return out


def cmd_family(args) -> tuple[dict, str]:
    p = _params(args)
    params = {"n": p.n, "k1": p.k1, "k2": p.k2, "capped": args.capped}
    if args.action == "status":
        st = open_books.family_status(p, args.capped, args.fixed_points, args.extended)
        payload = {"params": params, **st.to_dict()}
        citations = payload.pop("citations")
        return _result("family status", payload, citations), st.status.value
    if args.action == "fdtc":
        vals = [str(x) for x in open_books.family_fdtc(p, args.capped)]
        cite = "FDTC k_i around B_i; k2 - n after capping B1"
        return _result("family fdtc", {"params": params, "fdtc": vals}, (cite,)), " ".join(vals)
    if args.action == "homology":
        if args.capped:
            S, w = open_books.cap_off_family(p)
        else:
            S, w = open_books.family_open_book(p)
        if args.surface:
            S = open_books.MarkedSurface.load(args.surface)
        fills = _fillings(args.fill)
        rep = open_books.open_book_homology(S, w, fills)
        payload = {
            "params": params,
            "surface": S.name,
            "word": str(w),
            "fillings": {k: str(v) for k, v in fills.items()},
            **rep.to_dict(),
        }
        return _result("family homology", payload), f"{rep} (order {rep.order})"
    if args.action == "tight-slopes":
        a = _slope(args.a)
        rep = open_books.binding_tight_slope_report(p, a)
        samples = [_slope(x) for x in (args.slopes or DEFAULT_TIGHT_SAMPLES)]
        payload = rep.to_dict(samples)
        payload["params"]["capped"] = False
        lines = [f"{e['slope']}: {e['status']}" for e in payload["entries"]]
        lines.append("non-closed: true, disconnected: true")
        cites = (open_books.CITE_UT, open_books.CITE_OT, twists.CITE_SIMPLE, twists.CITE_EXTRA)
        return _result("family tight-slopes", payload, cites), "\n".join(lines)
    raise ParseFailure(f"unknown family action {args.action!r}")  # pragma: no cover


DEFAULT_TIGHT_SAMPLES = ("-5", "-1/2", "0", "1/4", "2/9", "1/5")


def cmd_openbook(args) -> tuple[dict, str]:
    if args.surface:
        S = open_books.MarkedSurface.load(args.surface)
    else:
        surfaces = open_books.builtin_surfaces()
        if args.builtin not in surfaces:
            raise ParseFailure(f"unknown surface {args.builtin!r}")
        S = surfaces[args.builtin]
    try:
        w = open_books.MonodromyWord.parse(args.word, S)
    except (KeyError, ValueError) as exc:
        raise ParseFailure(str(exc)) from None
    fills = _fillings(args.fill)
    rep = open_books.open_book_homology(S, w, fills)
    payload = {
        "surface": S.name,
        "word": str(w),
        "fillings": {k: str(v) for k, v in fills.items()},
        **rep.to_dict(),
    }
    return _result("openbook homology", payload), f"{rep} (order {rep.order})"


def cmd_braid(args) -> tuple[dict, str]:
    try:
        letters = braids.parse_letters(args.word)
        strands = args.strands or (max((i for i, _ in letters), default=3) + 1)
        w = braids.BraidWord(strands, tuple(letters))
    except ValueError as exc:
        raise ParseFailure(str(exc)) from None
    if args.action == "det":
        d = braids.link_determinant(w)
        g = braids.goeritz_determinant(w)
        if d != g:
            raise AssertionError(f"Burau determinant {d} != Goeritz determinant {g}")
        payload = {"word": str(w), "strands": w.strands, "determinant": d}
        return _result("braid det", payload, ("|Alexander(-1)| via reduced Burau; Goeritz cross-check",)), str(d)
    c = braids.closure_components(w)
    payload = {"word": str(w), "strands": w.strands, "components": c}
    return _result("braid components", payload), str(c)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def __init__(self, *a, **kw) -> None:
        super().__init__(*a, **kw)
        # let "-7/3" through as a value, not an option
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")

    def error(self, message: str):  # argparse already exits with 2
        raise ParseFailure(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="transurgery", description="Slope twists, open books and braid oracles.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("twist", help="apply contact +-1 surgery along a leaf")
    t.add_argument("--on", required=True)
    t.add_argument("--along", required=True)
    t.add_argument("--sign", type=int, required=True)
    t.add_argument("--count", type=int, default=1)
    t.set_defaults(func=cmd_twist)

    for name, func in (("reduce", cmd_reduce), ("classify", cmd_classify)):
        r = sub.add_parser(name)
        r.add_argument("--slope", required=True)
        r.add_argument("--n", type=int, required=True)
        r.add_argument("--a", required=True)
        r.set_defaults(func=func)

    f = sub.add_parser("family", help="the psi_{n,k1,k2} open books")
    f.add_argument("action", choices=["status", "fdtc", "homology", "tight-slopes"])
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--k1", type=int, required=True)
    f.add_argument("--k2", type=int, required=True)
    f.add_argument("--capped", action="store_true")
    f.add_argument("--fill", action="append", help="slope or BOUNDARY=slope (page framed)")
    f.add_argument("--fixed-points", type=int, default=1)
    f.add_argument("--extended", action="store_true", help="apply both FDTC rules to every book")
    f.add_argument("--a", default="1/3", help="binding neighborhood slope (tight-slopes)")
    f.add_argument("--slopes", nargs="*", help="slopes to report (tight-slopes)")
    f.add_argument("--surface", help="surface file overriding the built-in one")
    f.set_defaults(func=cmd_family)

    o = sub.add_parser("openbook", help="homology of an arbitrary open book")
    o.add_argument("action", choices=["homology"])
    o.add_argument("--word", required=True)
    o.add_argument("--surface")
    o.add_argument("--builtin", default="T")
    o.add_argument("--fill", action="append")
    o.set_defaults(func=cmd_openbook)

    b = sub.add_parser("braid", help="closed braid invariants")
    b.add_argument("action", choices=["det", "components"])
    b.add_argument("--word", required=True)
    b.add_argument("--strands", type=int)
    b.set_defaults(func=cmd_braid)
    return p


def _emit(doc: dict, text: str, as_json: bool, stream) -> None:
    if as_json:
        stream.write(json.dumps(doc, indent=2) + "\n")
    else:
        stream.write(text + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    if as_json:
        argv.remove("--json")
    try:
        args = build_parser().parse_args(argv)
        doc, text = args.func(args)
    except ParseFailure as exc:
        return _fail("parse", str(exc), EXIT_PARSE, as_json)
    except twists.HypothesisError as exc:
        return _fail("hypothesis", str(exc), EXIT_HYPOTHESIS, as_json)
    except (KeyError, ValueError) as exc:
        return _fail("parse", str(exc), EXIT_PARSE, as_json)
    except (AssertionError, InexactDivision) as exc:
        return _fail("internal", str(exc), EXIT_INTERNAL, as_json)
    _emit(doc, text, as_json, sys.stdout)
    return EXIT_OK


def _fail(reason: str, message: str, code: int, as_json: bool) -> int:
    doc: dict[str, Any] = {"status": "error", "reason": reason, "message": message}
    if as_json:
        _emit(doc, "", True, sys.stdout)
    else:
        sys.stderr.write(f"error ({reason}): {message}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
