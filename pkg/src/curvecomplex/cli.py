"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 budget exhausted.
Machine output goes to stdout (or ``--out``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import __version__
from . import complex as CX
from . import lab as LAB
from . import resolution as RS
from .curves import BudgetExceeded, CurveError, boundary_walks, canon_curve, classify_curve, cut_along, enumerate_curves, intersection_profile
from .slopes import SlopeError
from .surface import SurfaceError, build_surface
from .words import WordError

OK, USAGE, FAILED, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _surface_arg(text: str) -> tuple[int, int]:
    try:
        g, n = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected g,n but got {text!r}")
    return g, n


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--surface", type=_surface_arg, default=None, help="surface as g,n")
    p.add_argument("--max-len", type=_positive, default=None)
    p.add_argument("--format", choices=["json", "dot", "text"], default=None)
    p.add_argument("--out", default=None, help="write machine output here instead of stdout")
    p.add_argument("--jobs", type=_positive, default=None, help="parallelism cap (runs are sequential)")
    p.add_argument("--budget", type=_positive, default=None)
    p.add_argument("--config", default=None, help="JSON file of defaults; flags take precedence")
    p.add_argument("--deterministic", action="store_true", help="no-op: output is always byte-deterministic")
    return p


DEFAULTS = {"surface": None, "max_len": 6, "format": "json", "out": None, "jobs": os.cpu_count() or 1, "budget": None}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="curvecomplex", description="Workbench for curve complexes of small surfaces.")
    parser.add_argument("--version", action="version", version=f"curvecomplex {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, *, parents=(common,), **kw):
        return sub.add_parser(name, parents=list(parents), **kw)

    surf = sub.add_parser("surface").add_subparsers(dest="action", parser_class=_Parser)
    surf.add_parser("info", parents=[common])
    curves = sub.add_parser("curves").add_subparsers(dest="action", parser_class=_Parser)
    curves.add_parser("enum", parents=[common])

    p = add("rel")
    p.add_argument("a")
    p.add_argument("b")
    p = add("product")
    p.add_argument("a")
    p.add_argument("b")
    p = add("classify")
    p.add_argument("word")
    for name in ("reduce", "express"):
        p = add(name)
        p.add_argument("--fn", required=True, help="comma separated pairwise disjoint classes")
        p.add_argument("word")
    p = add("ball")
    p.add_argument("--export", choices=["json", "dot"], default="json")
    p.add_argument("--overlay", action="store_true", help="draw perp and perp0 edges in DOT output")

    chart = sub.add_parser("chart").add_subparsers(dest="action", parser_class=_Parser)
    p = chart.add_parser("fit", parents=[common])
    p.add_argument("a")
    p.add_argument("b")
    p = chart.add_parser("transitions", parents=[common])
    p.add_argument("seed1", help="a,b")
    p.add_argument("seed2", help="c,d")

    p = add("verify")
    p.add_argument("suite", choices=["pentagon", "unique", "configs", "farey", "charts", "dimensions", "cuts", "cover", "reduction"])
    p.add_argument("--bound", type=_positive, default=6, help="slope box for the farey suite")
    p = add("lift")
    p.add_argument("word")
    add("exceptional")
    return parser


def _merge_config(args) -> None:
    if not getattr(args, "config", None):
        cfg = {}
    else:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, ValueError) as e:
            raise UsageError(f"cannot read config: {e}")
        unknown = set(cfg) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys {sorted(unknown)}")
        if "surface" in cfg and cfg["surface"] is not None:
            cfg["surface"] = tuple(cfg["surface"]) if isinstance(cfg["surface"], list) else _surface_arg(cfg["surface"])
    for key, default in DEFAULTS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, cfg.get(key, default))


def _surface(args):
    if args.surface is None:
        raise UsageError("--surface g,n is required")
    g, n = args.surface
    try:
        return build_surface(g, n)
    except SurfaceError as e:
        raise UsageError(str(e))


def _emit(args, payload) -> None:
    if isinstance(payload, bytes):
        data = payload
    elif isinstance(payload, str):
        data = payload.encode()
    else:
        data = (json.dumps(payload, separators=(",", ":")) + "\n").encode()
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _report(args, rep) -> int:
    _emit(args, rep.to_dict())
    return OK if rep.ok else FAILED


def _dispatch(args) -> int:
    cmd = args.command
    if cmd is None:
        raise UsageError("no command given")
    if cmd in ("surface", "curves", "chart") and args.action is None:
        raise UsageError(f"{cmd} needs a subcommand")
    if cmd == "surface":
        S = _surface(args)
        d = S.to_dict()
        d["rank"] = S.rank
        d["boundary_walks"] = [str(c) for c in boundary_walks(S)]
        _emit(args, d)
        return OK
    if cmd == "curves":
        S = _surface(args)
        cs = enumerate_curves(S, args.max_len, budget=args.budget)
        if args.format == "text":
            _emit(args, "".join(f"{c}\n" for c in cs))
        else:
            _emit(args, [str(c) for c in cs])
        return OK
    if cmd == "rel":
        S = _surface(args)
        _emit(args, intersection_profile(S, canon_curve(S, args.a), canon_curve(S, args.b)).to_dict())
        return OK
    if cmd == "product":
        S = _surface(args)
        a, b = canon_curve(S, args.a), canon_curve(S, args.b)
        _emit(args, {"product": str(RS.resolve_curves(S, a, b)), "reverse": str(RS.resolve_curves(S, b, a))})
        return OK
    if cmd == "classify":
        S = _surface(args)
        c = canon_curve(S, args.word)
        _emit(args, {"word": str(c), "class": classify_curve(S, c), "pieces": [list(p) for p in cut_along(S, c)]})
        return OK
    if cmd in ("reduce", "express"):
        S = _surface(args)
        fn = RS.FNSystem(tuple(canon_curve(S, w) for w in args.fn.split(",")))
        fn.check(S)
        a = canon_curve(S, args.word)
        if cmd == "reduce":
            b1, b2 = RS.reduce_step(S, fn, a, max_len=args.max_len)
            _emit(args, {"b1": str(b1), "b2": str(b2)})
        else:
            e = RS.express(S, fn, a, max_len=args.max_len)
            _emit(args, e.to_json())
        return OK
    if cmd == "ball":
        S = _surface(args)
        ball = CX.build_ball(S, args.max_len, budget=args.budget)
        fmt = args.export if args.format != "dot" else "dot"
        _emit(args, CX.export(ball, fmt, overlay=args.overlay))
        return OK
    if cmd == "chart":
        S = _surface(args)
        ball = CX.build_ball(S, args.max_len, budget=args.budget)
        if args.action == "fit":
            ch = CX.fit_chart(ball, (canon_curve(S, args.a), canon_curve(S, args.b)))
            _emit(args, CX.chart_to_dict(ch))
            return OK
        if args.action == "transitions":
            charts = []
            for seed in (args.seed1, args.seed2):
                x, y = seed.split(",")
                charts.append(CX.fit_chart(ball, (canon_curve(S, x), canon_curve(S, y))))
            m = CX.check_transitions(*charts)
            _emit(args, {"matrix": None if m is None else m.rows()})
            return OK if m is not None else FAILED
        raise UsageError("chart needs fit or transitions")
    if cmd == "verify":
        return _report(args, _run_suite(args))
    if cmd == "lift":
        spec = LAB.double_cover()
        c = canon_curve(spec.base, args.word)
        d = LAB.lift_double_cover(spec, c)
        _emit(args, {"base": str(c), "lift": str(d), "class": classify_curve(spec.cover, d)})
        return OK
    if cmd == "exceptional":
        phi, rep, info = LAB.exceptional_automorphism(args.max_len, budget=args.budget or 6)
        out = phi.to_dict()
        out["report"] = rep.to_dict()
        _emit(args, out)
        return OK if rep.ok else FAILED
    raise UsageError(f"unknown command {cmd}")


def _run_suite(args):
    suite = args.suite
    if suite == "pentagon":
        return LAB.verify_pentagon(CX.build_ball(_surface(args), args.max_len, budget=args.budget))
    if suite == "unique":
        return LAB.verify_unique_common_neighbor(CX.build_ball(_surface(args), args.max_len, budget=args.budget))
    if suite == "configs":
        return LAB.verify_config_identities(_surface(args))
    if suite == "farey":
        return LAB.verify_farey(args.bound)
    if suite == "charts":
        return LAB.verify_charts()
    if suite == "dimensions":
        return LAB.verify_dimensions()
    if suite == "cuts":
        return LAB.verify_cuts(CX.build_ball(_surface(args), args.max_len, budget=args.budget))
    if suite == "reduction":
        S = _surface(args)
        return LAB.reduction_suite(S.genus, S.boundary_count)
    if suite == "cover":
        return LAB.verify_double_cover(args.max_len)
    raise UsageError(f"unknown suite {suite}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        _merge_config(args)
        return _dispatch(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE
    except (BudgetExceeded, RS.SearchExhausted) as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return BUDGET
    except (LAB.WrongSurface, RS.PreconditionFailed, RS.NotTopRelated, WordError, SlopeError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE
    except (CX.ChartInconsistent, LAB.ConfigNotFound, CX.InsufficientOverlap) as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return FAILED
    except CurveError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
