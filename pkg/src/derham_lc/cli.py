"""Command-line front end.

    derham-lc derham --ideal "[x*y+1]" --module top
    derham-lc verify thm2.6 --ideal "[x*y+1]" --seed 7
    derham-lc predict 4.7 --s 3
    derham-lc run job.txt            # a document with a 'run' line; '-' reads stdin

Exit codes: 0 success or pass, 1 fail, 2 unstabilized or timeout, 3 usage,
parse or precondition error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Dict, List, Optional, Sequence

from . import __version__
from .algebra import VariableContext
from .derham import DeRhamResult, StabilizationError, WindowSchedule, derham_homology
from .geometry import GenericityError, curve_geometry, generic_linear_form, points_at_infinity
from .groebner import GREVLEX, LEX, GroebnerError, Ideal, buchberger
from .locmod import LocalizedModuleSpec, SpecError, WindowError
from .parsing import InputDocument, ParseError, infer_variables, parse_document, parse_ideal
from .theorems import (
    SurfaceInvariants,
    VerificationReport,
    predict_chi,
    verify_graded_chi,
    verify_laurent_chi,
    verify_thm26,
    verify_thm34a,
)

SCHEMA_VERSION = 1
THREADS_ENV = "DERHAM_LC_THREADS"

EXIT_OK, EXIT_FAIL, EXIT_UNSTABLE, EXIT_USAGE = 0, 1, 2, 3

MODULES = ("ring", "localization", "top", "localized")
MODULE_ALIASES = {"h1": "top", "local-cohomology": "top", "plain": "localization"}

log = logging.getLogger("derham_lc")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p: argparse.ArgumentParser, ideal=True):
    if ideal:
        p.add_argument("--ideal", help="bracketed polynomial list, a polynomial, or a bound name")
    p.add_argument("--vars", help="comma-separated variable order (default: sorted names)")
    p.add_argument("--input", help="document with vars and definitions ('-' for stdin)")
    p.add_argument("--schedule", help="k0,D0,dk,dD,p,s")
    p.add_argument("--max-windows", type=int, help="outer windows before giving up")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-seconds", type=float)
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("-v", "--verbose", action="store_true", help="log window progress to stderr")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="derham-lc", description="De Rham homology of localized modules")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("derham", help="window homology of a localized module")
    _add_common(p)
    p.add_argument("--module", default="top",
                   help="ring | localization | top (alias h1) | localized")
    p.add_argument("--extra", help="extra denominators for --module localized")

    for name, desc in (("degree", "degree of the projective closure of a curve"),
                       ("points-at-infinity", "points of the closure on the hyperplane at infinity"),
                       ("generic-form", "seeded certified generic linear form"),
                       ("groebner", "reduced Groebner basis")):
        p = sub.add_parser(name, help=desc)
        _add_common(p)
        if name == "groebner":
            p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")

    p = sub.add_parser("verify", help="check a statement on an input")
    p.add_argument("statement", choices=("thm2.6", "thm3.4a", "cor3.5", "lemma4.4"))
    _add_common(p)
    p.add_argument("--module", default="ring",
                   help="for lemma4.4: the base module N (ring | localization | top)")
    p.add_argument("--original-coordinates", action="store_true",
                   help="for thm2.6: localize at the form without moving it to the last variable")
    p.add_argument("--straighten", action="store_true",
                   help="for thm2.6: send a graph-form ideal to a coordinate ideal first")

    p = sub.add_parser("predict", help="closed-form chi from multiplicities")
    p.add_argument("formula", choices=("4.3", "4.7", "4.8", "5.2"))
    p.add_argument("--s", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--sj", help="j=s_j pairs, comma separated")
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("run", help="execute the run line of a document")
    p.add_argument("document", help="path, or '-' for stdin")
    return ap


# ---------------------------------------------------------------------------
# input resolution


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _document(args) -> InputDocument:
    doc = getattr(args, "_doc", None)
    if doc is not None:
        return doc
    if getattr(args, "input", None):
        return parse_document(_read(args.input))
    return InputDocument()


def _context(args, doc: InputDocument, texts: Sequence[str]) -> VariableContext:
    if args.vars is not None:
        from .parsing import parse_variables
        return VariableContext(parse_variables(args.vars))
    if doc.variables:
        return doc.ctx
    names = set()
    for t in texts:
        if t:
            names.update(infer_variables(t, doc.definitions))
    return VariableContext(tuple(sorted(names)))


def _ideal(args, doc, ctx, text: Optional[str], what="--ideal") -> Ideal:
    if text is None:
        raise UsageError(f"{what} is required")
    return parse_ideal(text, ctx, doc.definitions)


def _schedule(args) -> WindowSchedule:
    extra = {}
    if args.max_windows is not None:
        extra["max_windows"] = args.max_windows
    try:
        if args.schedule:
            return WindowSchedule.parse(args.schedule, **extra)
        return WindowSchedule(**extra)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad schedule: {exc}") from None


def module_spec(kind: str, ctx: VariableContext, ideal: Optional[Ideal],
                extra: Optional[Ideal] = None) -> LocalizedModuleSpec:
    kind = MODULE_ALIASES.get(kind, kind)
    if kind not in MODULES:
        raise UsageError(f"unknown module {kind!r}; expected one of {MODULES}")
    if kind == "ring":
        return LocalizedModuleSpec.polynomial_ring(ctx)
    if ideal is None or not ideal.gens:
        raise UsageError(f"module {kind} needs a non-empty --ideal")
    if kind == "localization":
        return LocalizedModuleSpec.localization(ideal.gens)
    if kind == "top":
        return LocalizedModuleSpec.local_cohomology(ideal.gens)
    if extra is None or not extra.gens:
        raise UsageError("module localized needs --extra denominators")
    return LocalizedModuleSpec.localized_local_cohomology(ideal.gens, extra.gens)


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        t = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if t < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return t


# ---------------------------------------------------------------------------
# commands; each returns (result dict, exit code)


def _derham_exit(res: DeRhamResult) -> int:
    return EXIT_OK if res.stabilized else EXIT_UNSTABLE


def cmd_derham(args, doc):
    ctx = _context(args, doc, [args.ideal, args.extra])
    kind = MODULE_ALIASES.get(args.module, args.module)
    ideal = _ideal(args, doc, ctx, args.ideal) if kind != "ring" or args.ideal else None
    extra = parse_ideal(args.extra, ctx, doc.definitions) if args.extra else None
    spec = module_spec(kind, ctx, ideal, extra)
    res = derham_homology(spec, _schedule(args), max_seconds=args.max_seconds)
    return res.as_dict(), _derham_exit(res)


def cmd_degree(args, doc):
    ctx = _context(args, doc, [args.ideal])
    geo = curve_geometry(_ideal(args, doc, ctx, args.ideal))
    return {"degree": geo.degree, "closure": geo.as_dict()["closure"],
            "variables": geo.as_dict()["variables"]}, EXIT_OK


def cmd_points(args, doc):
    ctx = _context(args, doc, [args.ideal])
    P = _ideal(args, doc, ctx, args.ideal)
    return {"points_at_infinity": points_at_infinity(P)}, EXIT_OK


def cmd_generic(args, doc):
    ctx = _context(args, doc, [args.ideal])
    form = generic_linear_form(_ideal(args, doc, ctx, args.ideal), seed=args.seed)
    return {"form": str(form.z), "coefficients": list(form.coefficients),
            "certificate": form.certificate.as_dict()}, EXIT_OK


def cmd_groebner(args, doc):
    ctx = _context(args, doc, [args.ideal])
    order = LEX if args.order == "lex" else GREVLEX
    G = buchberger(_ideal(args, doc, ctx, args.ideal), order)
    return {"order": args.order, "variables": list(ctx.names),
            "basis": [str(g) for g in G.basis]}, EXIT_OK


def _verify_exit(rep: VerificationReport) -> int:
    return {"pass": EXIT_OK, "fail": EXIT_FAIL}.get(rep.verdict, EXIT_UNSTABLE)


def cmd_verify(args, doc):
    ctx = _context(args, doc, [args.ideal])
    sched = _schedule(args)
    if args.statement == "lemma4.4":
        kind = MODULE_ALIASES.get(args.module, args.module)
        ideal = parse_ideal(args.ideal, ctx, doc.definitions) if args.ideal else None
        rep = verify_laurent_chi(module_spec(kind, ctx, ideal), sched, args.max_seconds)
    else:
        P = _ideal(args, doc, ctx, args.ideal)
        if args.statement == "thm2.6":
            rep = verify_thm26(P, args.seed, sched, args.max_seconds,
                               args.original_coordinates, args.straighten)
        elif args.statement == "thm3.4a":
            rep = verify_thm34a(P, sched, args.max_seconds)
        else:
            rep = verify_graded_chi(P, sched, args.max_seconds)
    return rep.as_dict(), _verify_exit(rep)


def _parse_sj(text: Optional[str]) -> Dict[int, int]:
    out = {}
    if not text:
        return out
    for part in text.split(","):
        try:
            j, v = part.split("=")
            out[int(j)] = int(v)
        except ValueError:
            raise UsageError(f"bad --sj entry {part!r}; expected j=value") from None
    return out


def cmd_predict(args, doc):
    inv = SurfaceInvariants(n=args.n, r=args.r, s=args.s, s_j=_parse_sj(args.sj))
    value = predict_chi(args.formula, inv)
    return {"formula": args.formula, "chi": value,
            "inputs": {"n": args.n, "r": args.r, "s": args.s,
                       "s_j": {str(k): v for k, v in sorted(inv.s_j.items())}}}, EXIT_OK


COMMANDS = {
    "derham": cmd_derham,
    "degree": cmd_degree,
    "points-at-infinity": cmd_points,
    "generic-form": cmd_generic,
    "groebner": cmd_groebner,
    "verify": cmd_verify,
    "predict": cmd_predict,
}


# ---------------------------------------------------------------------------
# output


def _echo(args) -> dict:
    keys = ("statement", "formula", "ideal", "vars", "module", "extra", "order", "schedule",
            "max_windows", "seed", "max_seconds", "s", "n", "r", "sj")
    echo = {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}
    for flag in ("original_coordinates", "straighten"):
        if getattr(args, flag, False):
            echo[flag] = True
    return echo


def make_report(args, result: dict, code: int) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "engine_version": __version__,
        "command": args.command,
        "inputs": _echo(args),
        "exit_code": code,
        "result": result,
    }


def _text_lines(value, indent=0) -> List[str]:
    pad = "  " * indent
    out = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], dict)):
                out.append(f"{pad}{k}:")
                out.extend(_text_lines(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(value, list):
        for item in value:
            out.append(f"{pad}-")
            out.extend(_text_lines(item, indent + 1))
    else:
        out.append(f"{pad}{json.dumps(value)}")
    return out


def emit(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    return "\n".join(_text_lines(report)) + "\n"


# ---------------------------------------------------------------------------


def run(argv: Sequence[str], out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise UsageError("a command is required")
        if args.command == "run":
            doc = parse_document(_read(args.document))
            if doc.job is None:
                raise UsageError("document has no run line")
            if doc.job[0] == "run":
                raise UsageError("a document cannot run another document")
            args = parser.parse_args(doc.job)
            args._doc = doc
        if getattr(args, "verbose", False):
            logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                                format="%(levelname)s %(name)s: %(message)s")
        threads = _threads()
        log.info("threads requested: %d (window ranks run sequentially)", threads)
        result, code = COMMANDS[args.command](args, _document(args))
    except (UsageError, ParseError) as exc:
        print(f"derham-lc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SpecError, WindowError, GenericityError, GroebnerError, ValueError,
            OSError) as exc:
        print(f"derham-lc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StabilizationError as exc:
        print(f"derham-lc: unstabilized: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE
    out.write(emit(make_report(args, result, code), args.format))
    if code == EXIT_UNSTABLE:
        print("derham-lc: homology did not stabilize within the budget; see window_trace",
              file=sys.stderr)
    return code


def main(argv: Sequence[str] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
