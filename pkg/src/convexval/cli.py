"""Command-line front end: ``python -m convexval <command> ...``.

Exit codes: 0 when everything passed, 1 when a verification check failed,
2 for unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field

from . import __version__
from .duality import TransformHandle
from .errors import ConvexValError, InputError
from .families import FamilyParams, family_eval
from .functions import LogConcaveFn, function_from_dict, inf_conv
from .harness import CONTINUITY_SCHEDULE, continuity_curves
from .hpreal import ExpRat, serialize
from .piecewise import shadow_profile
from .polytope import MAX_DIM, Polytope
from .rational import Rat, fmt_rat, vec
from .report import ValuationReport, merge, to_csv
from .suites import SEQUENCES, SUITES, run_suite
from .transforms import laplace_logconcave, laplace_polytope, legendre, polar

DEFAULT_SEED = 0xC0FFEE
SUITE_NAMES = tuple(SUITES) + ("all",)


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    out: str | None = None
    dim: int = 3
    seed: int = DEFAULT_SEED
    count: int | None = None
    tol: float | None = None
    fmt: str = "json"
    extra: dict = field(default_factory=dict)


class UsageError(ConvexValError):
    pass


# -- input helpers ----------------------------------------------------------------------------


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _located(path: str, fn, data):
    try:
        return fn(data)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: invalid content ({exc})") from exc


def parse_points(text: str) -> list:
    """``"1,0,0;0,1/2,0"`` -> list of rational vectors."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            out.append(vec([c.strip() for c in chunk.split(",")]))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"--at: cannot parse point {chunk!r}") from exc
    if not out:
        raise InputError("--at: no points given")
    return out


def _value_json(v):
    if isinstance(v, ExpRat):
        return {"exact": f"{fmt_rat(v.coef)}*exp({fmt_rat(v.exponent)})", **serialize(v.to_arb())}
    if isinstance(v, float):
        return {"exact": "inf"}
    if isinstance(v, Rat):
        return {"exact": fmt_rat(v), **serialize(v)}
    return serialize(v)


def _points_json(xs, values) -> list:
    return [{"x": [fmt_rat(c) for c in x], **_value_json(v)} for x, v in zip(xs, values)]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(cfg: RunConfig, text: str):
    """Write ``text`` to ``--out`` atomically, or to stdout."""
    if not cfg.out:
        sys.stdout.write(text)
        return
    target = os.path.abspath(cfg.out)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".convexval-")
    with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, target)


def _check_dim(n: int):
    if not 1 <= n <= MAX_DIM:
        raise InputError(f"--dim must be in 1..{MAX_DIM}")


# -- commands ---------------------------------------------------------------------------------


def cmd_legendre(cfg: RunConfig) -> int:
    path = cfg.inputs[0]
    data = _load_json(path)
    u = _located(path, function_from_dict, data)
    if isinstance(u, LogConcaveFn):
        raise InputError(f"{path}: legendre expects a convex function (use 'polar' for log-concave input)")
    _write(cfg, _dump(legendre(u).to_dict()))
    return 0


def cmd_polar(cfg: RunConfig) -> int:
    path = cfg.inputs[0]
    f = _located(path, function_from_dict, _load_json(path))
    if not isinstance(f, LogConcaveFn):
        f = LogConcaveFn(f)
    _write(cfg, _dump(polar(f).to_dict()))
    return 0


def cmd_infconv(cfg: RunConfig) -> int:
    (pa, pb) = cfg.inputs
    u = _located(pa, function_from_dict, _load_json(pa))
    v = _located(pb, function_from_dict, _load_json(pb))
    _write(cfg, _dump(inf_conv(u, v).to_dict()))
    return 0


def cmd_laplace(cfg: RunConfig) -> int:
    xs = parse_points(cfg.extra["at"])
    if cfg.extra.get("polytope"):
        path = cfg.extra["polytope"]
        P = _located(path, Polytope.from_dict, _load_json(path))
        _same_dim(xs, P.ambient_dim)
        values = [laplace_polytope(P, x) for x in xs]
    else:
        path = cfg.extra["function"]
        f = _located(path, function_from_dict, _load_json(path))
        base = f.base if isinstance(f, LogConcaveFn) else f
        _same_dim(xs, base.n)
        values = [laplace_logconcave(f, x) for x in xs]
    _write(cfg, _dump(_points_json(xs, values)))
    return 0


def cmd_family_eval(cfg: RunConfig) -> int:
    params_src = cfg.extra["params"]
    data = _load_json(params_src) if os.path.exists(params_src) else _parse_inline(params_src)
    params = _located("--params", FamilyParams.from_dict, data)
    path = cfg.inputs[0]
    raw = _load_json(path)
    obj = _located(path, Polytope.from_dict if params.input_class == "polytope" else function_from_dict, raw)
    xs = parse_points(cfg.extra["at"])
    values = [family_eval(params, obj, x) for x in xs]
    _write(cfg, _dump({"params": params.to_dict(), "values": _points_json(xs, values)}))
    return 0


def _parse_inline(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"--params:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _same_dim(xs, n):
    for x in xs:
        if len(x) != n:
            raise InputError(f"--at: point of dimension {len(x)} for an input of dimension {n}")


def cmd_verify(cfg: RunConfig) -> int:
    _check_dim(cfg.dim)
    report = run_suite(cfg.extra["suite"], cfg.seed, cfg.count, cfg.dim, cfg.tol)
    text = to_csv([report]) if cfg.fmt == "csv" else report.to_json() + "\n"
    _write(cfg, text)
    for line in report.summary_lines():
        print(line, file=sys.stderr)
    bad = report.first_failure()
    if bad is None:
        return 0
    wpath = (cfg.out or "convexval-report") + ".witness.json"
    with open(wpath, "w", encoding="utf-8") as fh:
        fh.write(_dump({"suite": report.suite, "law": bad.name, "witness": bad.witness}))
    print(f"first failure: {bad.name}; witness written to {wpath}", file=sys.stderr)
    return 1


def cmd_report(cfg: RunConfig) -> int:
    reports = []
    for path in cfg.inputs:
        reports.append(_located(path, ValuationReport.from_dict, _load_json(path)))
    if cfg.fmt == "csv":
        _write(cfg, to_csv(reports))
    else:
        _write(cfg, _dump(merge(reports)))
    return 0 if all(r.passed for r in reports) else 1


def cmd_profile(cfg: RunConfig) -> int:
    kind = cfg.extra["kind"]
    if kind == "shadow":
        path = cfg.extra["polytope"]
        P = _located(path, Polytope.from_dict, _load_json(path))
        (x,) = parse_points(cfg.extra["at"])
        _same_dim([x], P.ambient_dim)
        _write(cfg, shadow_profile(P, x).to_csv(cfg.extra.get("samples", 8)))
        return 0
    handle = TransformHandle.make(cfg.extra["transform"])
    _check_dim(cfg.dim)
    rows = ["fixture,x,i,residual"]
    for k, x, curve in continuity_curves(handle, cfg.extra["sequence"], cfg.seed, cfg.count or 3, cfg.dim):
        xs = " ".join(fmt_rat(c) for c in x)
        rows.extend(f"{k},{xs},{i},{r!r}" for i, r in zip(CONTINUITY_SCHEDULE, curve))
    _write(cfg, "\n".join(rows) + "\n")
    return 0


COMMANDS = {
    "legendre": cmd_legendre,
    "polar": cmd_polar,
    "infconv": cmd_infconv,
    "laplace": cmd_laplace,
    "family-eval": cmd_family_eval,
    "verify": cmd_verify,
    "report": cmd_report,
    "profile": cmd_profile,
}


# -- argument parsing -------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    p.add_argument("--dim", type=int, default=3, help="ambient dimension n (1..4)")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED, help="fixture seed (default 0xC0FFEE)")
    p.add_argument("--count", type=int, default=None, help="fixture count (suite default if omitted)")
    p.add_argument("--tol", type=float, default=None, help="tolerance override for transcendental checks")
    p.add_argument("--out", default=None, help="output file (stdout if omitted)")
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="convexval", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"convexval {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("legendre", help="Legendre transform of a class-S or class-F function")
    p.add_argument("input")
    _common(p)

    p = sub.add_parser("polar", help="polar f° = e^{-u*} of a log-concave function")
    p.add_argument("input")
    _common(p)

    p = sub.add_parser("infconv", help="inf-convolution of two class-S functions")
    p.add_argument("input", nargs=2)
    _common(p)

    p = sub.add_parser("laplace", help="Laplace transform of a polytope or log-concave function")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--polytope")
    src.add_argument("--function")
    p.add_argument("--at", required=True, help='points "x1,x2,x3;y1,y2,y3"')
    _common(p)

    p = sub.add_parser("family-eval", help="evaluate a classified family")
    p.add_argument("input")
    p.add_argument("--params", required=True, help="family parameters (JSON file or inline JSON)")
    p.add_argument("--at", required=True)
    _common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITE_NAMES)
    _common(p)

    p = sub.add_parser("report", help="merge report JSON files")
    p.add_argument("input", nargs="+")
    _common(p)

    p = sub.add_parser("profile", help="plot data as CSV (shadow profile or continuity curves)")
    p.add_argument("kind", choices=("shadow", "continuity"))
    p.add_argument("--polytope")
    p.add_argument("--at")
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--transform", default="legendre", choices=("legendre", "laplace", "polar", "weird", "thm13"))
    p.add_argument("--sequence", default="translate_limit", choices=SEQUENCES)
    _common(p)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    inputs = ns.input if isinstance(getattr(ns, "input", None), list) else [getattr(ns, "input", None)]
    extra = {
        k: v
        for k, v in vars(ns).items()
        if k not in ("command", "input", "dim", "seed", "count", "tol", "out", "fmt")
    }
    cfg = RunConfig(ns.command, [i for i in inputs if i], ns.out, ns.dim, ns.seed, ns.count, ns.tol, ns.fmt, extra)
    if cfg.command == "profile" and cfg.extra["kind"] == "shadow" and not (cfg.extra["polytope"] and cfg.extra["at"]):
        raise UsageError("profile shadow needs --polytope and --at")
    return cfg


def run(cfg: RunConfig) -> int:
    return COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return run(config_from_args(ns))
    except UsageError as exc:
        print(f"convexval: error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"convexval: input error: {exc}", file=sys.stderr)
        return 2
    except ConvexValError as exc:
        print(f"convexval: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
