"""Command-line interface: ``g2flags <subcommand> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__
from .exactfield import QF13, parse_qf13, scalar_to_float

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

FRAMES = ("mu", "xyz", "kappa1", "U1", "U2", "U3")
CHART_NAMES = ("kappa1", "U1", "U2", "U3")
THETAS = ("empty", "a1", "a2")


class DomainFailure(Exception):
    """Raised by handlers for inputs outside the mathematical domain."""


# -- serialization ------------------------------------------------------------------


def _float_text(v: float) -> str:
    if not math.isfinite(v):
        return "null"
    return f"{v:.12g}"


def to_plain(obj):
    """Exact scalars become {text, float}; tuples become lists."""
    if isinstance(obj, QF13):
        return {"text": str(obj), "float": scalar_to_float(obj)}
    if isinstance(obj, Fraction):
        return {"text": str(obj), "float": float(obj)}
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, float, str)):
        return obj
    if isinstance(obj, complex):
        return obj.real if obj.imag == 0 else {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return to_plain(obj.to_dict())
    if hasattr(obj, "value"):
        return obj.value
    return str(obj)


def _scalar(v) -> bool:
    return v is None or isinstance(v, (int, float, str, bool))


def dumps(obj, indent: int | None = 2, _level: int = 0) -> str:
    """JSON with insertion-ordered keys and %.12g floats; ``indent=None`` gives one line."""
    if indent is None:
        if isinstance(obj, dict):
            return "{" + ", ".join(f"{json.dumps(k, ensure_ascii=False)}: {dumps(v, None)}" for k, v in obj.items()) + "}"
        if isinstance(obj, list):
            return "[" + ", ".join(dumps(v, None) for v in obj) + "]"
        return dumps(obj)
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _float_text(obj)
    if isinstance(obj, (int, str)):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        if all(_scalar(v) for v in obj.values()):
            return "{" + ", ".join(f"{json.dumps(k, ensure_ascii=False)}: {dumps(v)}" for k, v in obj.items()) + "}"
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{end}}}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(_scalar(v) or (isinstance(v, dict) and all(_scalar(x) for x in v.values())) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + f"\n{end}]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cell(v) -> str:
    if isinstance(v, float):
        return _float_text(v)
    if isinstance(v, dict) and "text" in v:
        return v["text"]
    if isinstance(v, list):
        return ";".join(_cell(x) for x in v)
    return "" if v is None else str(v)


def to_csv(rows: list) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(rows[0].keys())
    for r in rows:
        w.writerow([_cell(v) for v in r.values()])
    return buf.getvalue()


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def pretty(obj, color: bool, _indent: int = 0) -> str:
    pad = "  " * _indent
    lines = []
    if isinstance(obj, dict) and set(obj) == {"text", "float"}:
        return f"{pad}{obj['text']}  (~{_float_text(obj['float'])})"
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_leaf(v):
                lines.append(f"{pad}{k}:")
                lines.append(pretty(v, color, _indent + 1))
            else:
                lines.append(f"{pad}{k}: {_leaf_text(v, color)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _is_leaf(v):
                lines.append(f"{pad}-")
                lines.append(pretty(v, color, _indent + 1))
            else:
                lines.append(f"{pad}- {_leaf_text(v, color)}")
        return "\n".join(lines)
    return pad + _leaf_text(obj, color)


def _is_leaf(v) -> bool:
    if isinstance(v, dict):
        return set(v) == {"text", "float"}
    return all(not isinstance(x, (dict, list)) or _is_leaf(x) for x in v)


def _leaf_text(v, color: bool) -> str:
    if isinstance(v, bool):
        text = "yes" if v else "no"
        if color:
            return f"\033[32m{text}\033[0m" if v else f"\033[31m{text}\033[0m"
        return text
    if isinstance(v, float):
        return _float_text(v)
    if isinstance(v, dict):
        return f"{v['text']} (~{_float_text(v['float'])})"
    if isinstance(v, list):
        return "[" + ", ".join(_leaf_text(x, False) for x in v) + "]"
    return "null" if v is None else str(v)


# -- argument types -----------------------------------------------------------------


def scalar(text: str) -> QF13:
    try:
        return parse_qf13(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def scalar_list(text: str) -> tuple:
    parts = text.split(",")
    if not all(p.strip() for p in parts):
        raise argparse.ArgumentTypeError(f"empty entry in list {text!r}")
    return tuple(scalar(p) for p in parts)


def real_list(text: str) -> tuple:
    """Floats or exact scalars; exact ones are converted."""
    out = []
    for p in text.split(","):
        try:
            out.append(float(p))
        except ValueError:
            out.append(scalar_to_float(scalar(p)))
    return tuple(out)


# -- handlers -----------------------------------------------------------------------


def cmd_verify(args):
    from .verification import CHECKS, run_suite

    unknown = set(args.skip) - set(CHECKS)
    if unknown:
        raise DomainFailure(f"unknown checks {sorted(unknown)}; available: {', '.join(CHECKS)}")
    results = run_suite(skip=tuple(args.skip))
    rows = []
    for rep, dt in results:
        row = {"name": rep.name, "passed": rep.passed, "violations": list(rep.violations)}
        if args.timings:
            row["seconds"] = dt
        rows.append(row)
    passed = all(r["passed"] for r in rows)
    payload = {"passed": passed, "skipped": list(args.skip), "checks": rows}
    return payload, rows, EXIT_OK if passed else EXIT_FAILED


def cmd_flags(args):
    from .flags import FlagId, flag_data, flag_reports, flag_to_json

    thetas = list(FlagId) if args.theta == "all" else [FlagId.parse(args.theta)]
    out, rows = [], []
    for theta in thetas:
        data = flag_data(theta)
        entry = flag_to_json(data)
        reports = [r.to_dict() for r in flag_reports(theta)]
        entry["checks"] = reports
        out.append(entry)
        rows += [{"theta": theta.value, "dims": list(data.dims), **r} for r in reports]
    passed = all(r["passed"] for r in rows)
    return {"passed": passed, "flags": out}, rows, EXIT_OK if passed else EXIT_FAILED


def _default_vector(theta) -> tuple:
    from .flags import flag_data

    return (QF13(1),) * flag_data(theta).dim_m


def cmd_metric(args):
    from .flags import FlagId, kvec_text
    from .metrics import (
        MetricParams,
        TangentVector,
        go_lambda_formula,
        go_witness,
        is_go_closed_form,
        metric_is_valid,
    )

    p = MetricParams(args.theta, args.mu, args.offdiag or ())
    report = metric_is_valid(p)
    payload = {
        "theta": p.theta.value,
        "params": {"diag": list(p.diag), "offdiag": list(p.offdiag)},
        "valid": report.valid,
        "violations": list(report.violations),
        "eigenvalues": list(report.eigenvalues),
    }
    if not report.valid:
        raise DomainFailure(f"invalid {p.theta.value} metric: violates {', '.join(report.violations)}")
    x = TangentVector(p.theta, args.x or _default_vector(p.theta))
    w = go_witness(p, x)
    payload["go"] = is_go_closed_form(p)
    payload["vector"] = list(x.coeffs)
    payload["witness_found"] = w.found
    payload["witness_lambda"] = w.lam if w.found and w.coeffs else None
    payload["witness_z"] = kvec_text(w.z) if w.z is not None else None
    if p.theta is FlagId.ALPHA2:
        payload["lambda_formula"] = go_lambda_formula(p, x)
    row = {"theta": payload["theta"], "valid": report.valid, "go": payload["go"],
           "witness_found": w.found, "witness_lambda": to_plain(payload["witness_lambda"])}
    return payload, [row], EXIT_OK


def cmd_equigeodesic(args):
    from .metrics import TangentVector, equigeodesic_check, is_equigeodesic_closed_form

    x = TangentVector(args.theta, args.x)
    oracle = equigeodesic_check(x)
    closed = is_equigeodesic_closed_form(x)
    payload = {"theta": x.theta.value, "vector": list(x.coeffs), "equigeodesic": oracle, "closed_form": closed}
    return payload, [{"theta": x.theta.value, "equigeodesic": oracle, "closed_form": closed}], EXIT_OK


def cmd_ricci(args):
    from .ricci import ricci_besse, ricci_closed

    closed = ricci_closed(args.mu, args.variant).as_tuple()
    payload = {"mu": list(args.mu), "variant": args.variant, "ricci": list(closed)}
    rows = [{"component": f"ric{i + 1}", "closed": to_plain(c)} for i, c in enumerate(closed)]
    if args.besse:
        besse = ricci_besse(args.mu).as_tuple()
        payload["besse"] = list(besse)
        payload["agree"] = besse == closed
        for r, b in zip(rows, besse):
            r["besse"] = to_plain(b)
    return payload, rows, EXIT_OK


def cmd_flow(args):
    from .flow import Frame, integrate
    from .flow.collapse import collapse_diagnostics

    frame = Frame.parse(args.frame)
    samples = None
    if args.samples:
        samples = [args.t_end * i / args.samples for i in range(args.samples + 1)]
    traj = integrate(
        frame, args.init, args.t_end, rel_tol=args.rel_tol, abs_tol=args.abs_tol,
        sample_times=samples, max_steps=args.max_steps, variant=args.variant,
    )
    payload = {
        "frame": frame.value,
        "init": list(args.init),
        "t_end": args.t_end,
        "status": traj.status,
        "message": traj.message,
        "accepted": traj.accepted,
        "rejected": traj.rejected,
        "points": len(traj),
        "t_final": traj.times[-1],
        "final": list(traj.states[-1]),
    }
    if args.collapse:
        if frame is not Frame.MU:
            raise DomainFailure("--collapse needs --frame mu")
        payload["collapse"] = collapse_diagnostics(traj).to_dict()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(traj.to_csv())
        payload["out"] = args.out
    rows = [{"t": t, "c1": s[0], "c2": s[1], "c3": s[2], "frame": frame.value} for t, s in traj]
    return payload, rows, EXIT_OK


def cmd_equilibria(args):
    from .flow import Frame
    from .flow.equilibria import chart_equilibria, finite_equilibria

    frame = Frame.parse(args.frame)
    if frame is Frame.XYZ:
        eqs = finite_equilibria(args.z_star)
    elif frame is Frame.MU:
        raise DomainFailure("the mu frame has no equilibria; use xyz or a chart")
    else:
        eqs = chart_equilibria(frame, args.z_star)
    items = [e.to_dict() for e in eqs]
    rows = [
        {"label": e["label"], "frame": e["frame"], "point": e["point"],
         "eigenvalues": e["eigenvalues"], "classification": e["classification"]}
        for e in items
    ]
    return {"frame": frame.value, "equilibria": items}, rows, EXIT_OK


def cmd_darboux(args):
    from .flow.darboux import darboux_search, darboux_verify, sweep_report

    pairs = darboux_search(args.max_degree)
    items = [{**p.to_dict(), "degree": p.f.degree(), "verified": darboux_verify(p)} for p in pairs]
    payload = {"max_degree": args.max_degree, "pairs": items}
    if args.sweep:
        payload.update(sweep_report())
    ok = all(i["verified"] for i in items)
    return payload, items, EXIT_OK if ok else EXIT_FAILED


def cmd_chart(args):
    from .flow import Frame
    from .flow.charts import chart_diff, chart_system
    from .flow.field import COORD_NAMES

    chart = Frame.parse(args.chart)
    names = COORD_NAMES[chart]
    system = chart_system(chart)
    diff = chart_diff(chart)
    comps = [c.to_text(names) for c in system.components]
    payload = {
        "chart": chart.value,
        "coordinates": list(names),
        "system": {f"d{n}/dt": c for n, c in zip(names, comps)},
        "matches_printed": not diff,
        "differences": [
            {"component": n + 1, "monomial": list(e), "derived": d, "printed": p} for n, e, d, p in diff
        ],
    }
    rows = [{"component": f"d{n}/dt", "polynomial": c} for n, c in zip(names, comps)]
    return payload, rows, EXIT_OK if not diff else EXIT_FAILED


# -- parser ------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="g2flags", description="Invariant metrics and Ricci flow on the real flags of g2.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--config", metavar="PATH", help="flat key=value file mirroring the flags")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    parser.subcommands = sub.choices

    p = sub.add_parser("verify", parents=[common], help="run the exact invariant suite")
    p.add_argument("--skip", action="append", default=[], metavar="NAME", help="skip a named check (repeatable)")
    p.add_argument("--timings", action="store_true", help="include per-check run times")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("flags", parents=[common], help="isotropy modules and their checks")
    p.add_argument("--theta", choices=THETAS + ("all",), default="all")
    p.set_defaults(handler=cmd_flags)

    p = sub.add_parser("metric", parents=[common], help="validity, g.o. verdict and witness")
    p.add_argument("--theta", choices=THETAS, required=True)
    p.add_argument("--mu", type=scalar_list, required=True, help="diagonal parameters, comma separated")
    p.add_argument("--offdiag", type=scalar_list, help="off-diagonal parameters")
    p.add_argument("--x", type=scalar_list, help="tangent vector for the witness (default all ones)")
    p.set_defaults(handler=cmd_metric)

    p = sub.add_parser("equigeodesic", parents=[common], help="equigeodesic test for a vector")
    p.add_argument("--theta", choices=THETAS, required=True)
    p.add_argument("--x", type=scalar_list, required=True)
    p.set_defaults(handler=cmd_equigeodesic)

    p = sub.add_parser("ricci", parents=[common], help="Ricci components on the a2 flag")
    p.add_argument("--mu", type=scalar_list, required=True)
    p.add_argument("--variant", choices=("published", "corrected"), default="published")
    p.add_argument("--besse", action="store_true", help="also evaluate the general formula")
    p.set_defaults(handler=cmd_ricci)

    p = sub.add_parser("flow", parents=[common], help="integrate the flow")
    p.add_argument("--init", type=real_list, required=True)
    p.add_argument("--frame", choices=FRAMES, default="xyz")
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.add_argument("--max-steps", type=int, default=200_000)
    p.add_argument("--samples", type=int, default=0, help="record N+1 evenly spaced dense-output samples")
    p.add_argument("--variant", choices=("published", "corrected"), default="published")
    p.add_argument("--collapse", action="store_true", help="collapse diagnostics (mu frame)")
    p.add_argument("--out", metavar="PATH", help="write the trajectory as CSV")
    p.set_defaults(handler=cmd_flow)

    p = sub.add_parser("equilibria", parents=[common], help="equilibria with eigen data")
    p.add_argument("--frame", choices=FRAMES, default="xyz")
    p.add_argument("--z-star", type=scalar, default=QF13(1), help="parameter of the equilibrium families")
    p.set_defaults(handler=cmd_equilibria)

    p = sub.add_parser("darboux", parents=[common], help="Darboux polynomials and cofactors")
    p.add_argument("--max-degree", type=int, choices=(1, 2), default=2)
    p.add_argument("--sweep", action="store_true", help="include the completeness sweep")
    p.set_defaults(handler=cmd_darboux)

    p = sub.add_parser("chart", parents=[common], help="chart system and comparison with the printed one")
    p.add_argument("--chart", choices=CHART_NAMES, required=True)
    p.set_defaults(handler=cmd_chart)
    return parser


def read_config(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{n}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _config_path(argv) -> str | None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    return known.config


def _apply_config(parser, path: str, argv) -> None:
    """Config values become subcommand defaults, so explicit flags win."""
    command = next((a for a in argv if a in parser.subcommands), None)
    if command is None:
        return
    try:
        values = read_config(path)
    except (OSError, ValueError) as exc:
        parser.exit(EXIT_USAGE, f"g2flags: error: cannot read config: {exc}\n")
    sub = parser.subcommands[command]
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, raw in values.items():
        action = actions.get(key)
        if action is None or key in ("config", "help"):
            parser.exit(EXIT_USAGE, f"g2flags: error: unknown config key {key!r} for {command}\n")
        if action.nargs == 0:
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
        elif isinstance(action.default, list):
            defaults[key] = [v.strip() for v in raw.split(",") if v.strip()]
        else:
            value = action.type(raw) if action.type else raw
            if action.choices is not None and value not in action.choices:
                parser.exit(EXIT_USAGE, f"g2flags: error: invalid config value {key}={raw!r}\n")
            defaults[key] = value
        action.required = False
    sub.set_defaults(**defaults)


def _resolved(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("handler", "command")}


def run_command(argv=None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, run the subcommand, write output; returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        path = _config_path(argv)
        if path:
            _apply_config(parser, path, argv)
        args = parser.parse_args(argv)
    except argparse.ArgumentTypeError as exc:
        print(f"g2flags: error: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    from .flow.field import DomainError
    from .metrics import MetricError

    config = to_plain({"command": args.command, **_resolved(args)})
    try:
        payload, rows, code = args.handler(args)
    except (DomainFailure, DomainError, MetricError, ValueError, ArithmeticError) as exc:
        print(f"g2flags {args.command}: {exc}", file=stderr)
        return EXIT_DOMAIN
    if args.output == "json":
        stdout.write(dumps({"config": config, "result": to_plain(payload)}) + "\n")
    elif args.output == "csv":
        stdout.write("# config " + dumps(config, indent=None) + "\n")
        stdout.write(to_csv(to_plain(rows)))
    else:
        color = _use_color(stdout)
        stdout.write(pretty({"config": config}, color) + "\n")
        stdout.write(pretty(to_plain(payload), color) + "\n")
    return code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
