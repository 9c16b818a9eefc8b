"""Command-line front end.

Usage examples:
  hemifield probe --a-deg 0 --b-deg 60 --field hemisphere
  hemifield joint --a-deg 0 --b-deg 60 --route all
  hemifield sweep --delta-min 0 --delta-max 180 --steps 19 --out sweep.csv
  hemifield chsh --mode montecarlo --n 1000000 --seed 7
  hemifield sample --a-deg 0 --b-deg 60 --n 10000 --records
  hemifield check

Angles are degrees on the command line.  Exit codes: 0 success, 1 failed
check, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .checks import run_checks
from .field import (
    hemi_field,
    make_alpha,
    measure,
    measurement_amplitude_quadrature,
)
from .geometry import Axis, antipode
from .sampler import (
    BELL_BOUND,
    TSIRELSON,
    chsh,
    naive_batch,
    naive_correlation,
    run_experiment,
    sample_batch,
)
from .two_party import (
    JointSetting,
    joint_distribution,
    joint_via_conditional,
)

SIG_DIGITS = 12


def fmt(x: Any) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x) + 0.0, f".{SIG_DIGITS}g")
    return str(x)


def _json_value(x: Any) -> Any:
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(fmt(x))
    if isinstance(x, dict):
        return {k: _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_value(v) for v in x]
    return x


def render(rows: list[dict[str, Any]], params: dict[str, Any], fmt_name: str) -> str:
    if fmt_name == "json":
        doc = {"params": _json_value(params), "results": _json_value(rows)}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0]) if rows else []
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(row[k]) for k in header])
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _angle(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}")
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"angle must be finite: {s!r}")
    return v


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {s!r}")
    return v


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--u-deg", type=_angle, default=0.0, help="source construction axis")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--eq42-literal", action="store_true",
                   help="use the printed pi shift in the conditional law")
    return p


def cmd_probe(args) -> int:
    a, b = Axis.from_degrees(args.a_deg), Axis.from_degrees(args.b_deg)
    if args.field == "hemisphere":
        f = hemi_field(a)
    else:
        f = make_alpha(a, +1 if args.field == "alpha_plus" else -1)
    res = measure(f, b)
    wp = abs(measurement_amplitude_quadrature(f, b)) ** 2
    wm = abs(measurement_amplitude_quadrature(f, antipode(b))) ** 2
    residual = max(abs(res.prob_plus - wp / (wp + wm)), abs(res.prob_minus - wm / (wp + wm)))
    rows = [{"prob_plus": res.prob_plus, "prob_minus": res.prob_minus,
             "quadrature_residual": residual}]
    params = {"a_deg": args.a_deg, "b_deg": args.b_deg, "field": args.field}
    emit(render(rows, params, args.format), args.out)
    return 0


def _joint_row(route: str, jd) -> dict[str, Any]:
    return {"route": route, **jd.as_dict(),
            "marginal1_plus": jd.marginal(1)[0], "marginal2_plus": jd.marginal(2)[0],
            "correlation": jd.correlation}


def cmd_joint(args) -> int:
    s = JointSetting.from_degrees(args.a_deg, args.b_deg)
    u = Axis.from_degrees(args.u_deg)
    routes = {
        "aleph": lambda: joint_distribution(s, u),
        "cond1": lambda: joint_via_conditional(s, 1, args.eq42_literal),
        "cond2": lambda: joint_via_conditional(s, 2, args.eq42_literal),
    }
    names = list(routes) if args.route == "all" else [args.route]
    dists = {name: routes[name]() for name in names}
    rows = [_joint_row(name, jd) for name, jd in dists.items()]
    if args.route == "all":
        vals = list(dists.values())
        disc = max(x.max_abs_diff(y) for x in vals for y in vals)
        for row in rows:
            row["max_route_discrepancy"] = disc
    params = {"a_deg": args.a_deg, "b_deg": args.b_deg, "u_deg": args.u_deg,
              "route": args.route, "eq42_literal": args.eq42_literal}
    emit(render(rows, params, args.format), args.out)
    return 0


def cmd_sweep(args, parser) -> int:
    if args.steps < 2 or not args.delta_max > args.delta_min:
        parser.error("sweep needs delta-max > delta-min and steps >= 2")
    u = Axis.from_degrees(args.u_deg)
    rows = []
    for d in np.linspace(args.delta_min, args.delta_max, args.steps):
        s = JointSetting.from_degrees(args.a_deg, args.a_deg + float(d))
        jd = joint_distribution(s, u)
        rows.append({
            "delta": float(d),
            "p_pp": jd(1, 1),
            "p_pm": jd(1, -1),
            "E_model": jd.correlation,
            "E_naive": naive_correlation(s, "uniform"),
            "E_quantum": -math.cos(math.radians(float(d))),
        })
    params = {"a_deg": args.a_deg, "delta_min": args.delta_min, "delta_max": args.delta_max,
              "steps": args.steps, "u_deg": args.u_deg}
    emit(render(rows, params, args.format), args.out)
    return 0


def _u_policy(args):
    return "uniform" if args.u_policy == "uniform" else Axis.from_degrees(args.u_deg)


def cmd_chsh(args) -> int:
    a, a2, b, b2 = (Axis.from_degrees(x) for x in args.angles)
    r = chsh(a, a2, b, b2, mode=args.mode, n=args.n, seed=args.seed,
             baseline=args.baseline, u_policy=_u_policy(args),
             u=Axis.from_degrees(args.u_deg), chunks=args.chunks, literal=args.eq42_literal)
    e = r.correlations
    rows = [{"E_ab": e[0], "E_ab2": e[1], "E_a2b": e[2], "E_a2b2": e[3],
             "S": r.s_value, "S_se": r.s_se, "bell_bound": BELL_BOUND, "tsirelson": TSIRELSON}]
    params = {"angles_deg": list(args.angles), "mode": args.mode, "seed": args.seed,
              "baseline": args.baseline, "u_policy": args.u_policy, "u_deg": args.u_deg}
    if args.mode == "montecarlo":
        params["n"] = args.n
    emit(render(rows, params, args.format), args.out)
    return 0


def cmd_sample(args) -> int:
    s = JointSetting.from_degrees(args.a_deg, args.b_deg)
    params = {"a_deg": args.a_deg, "b_deg": args.b_deg, "n": args.n, "seed": args.seed,
              "baseline": args.baseline, "u_policy": args.u_policy, "u_deg": args.u_deg,
              "eq42_literal": args.eq42_literal}
    if args.records:
        rng = np.random.default_rng(np.random.SeedSequence(args.seed))
        if args.baseline:
            out = naive_batch(s, args.n, rng, _u_policy(args), args.eq42_literal)
            anchor = np.zeros(args.n, dtype=int)
        else:
            out = sample_batch(s, args.n, rng, literal=args.eq42_literal)
            anchor = out["anchor"]
        r1 = out["r1"]
        rows = [{"trial": i, "anchor": int(anchor[i]),
                 "r1_x": float(r1[i, 0]), "r1_y": float(r1[i, 1]), "r1_z": float(r1[i, 2]),
                 "eps1": int(out["eps1"][i]), "eps2": int(out["eps2"][i])}
                for i in range(args.n)]
    else:
        st = run_experiment(s, args.n, args.seed, chunks=args.chunks, baseline=args.baseline,
                            u_policy=_u_policy(args), literal=args.eq42_literal)
        p, se = st.joint, st.joint_se
        rows = [{
            "n": st.n,
            "count_pp": int(st.counts[0, 0]), "count_pm": int(st.counts[0, 1]),
            "count_mp": int(st.counts[1, 0]), "count_mm": int(st.counts[1, 1]),
            "p_pp": p[0, 0], "p_pm": p[0, 1], "p_mp": p[1, 0], "p_mm": p[1, 1],
            "se_pp": se[0, 0], "se_pm": se[0, 1], "se_mp": se[1, 0], "se_mm": se[1, 1],
            "marginal1_plus": st.marginal(1)[0], "marginal2_plus": st.marginal(2)[0],
            "correlation": st.correlation, "correlation_se": st.correlation_se,
        }]
    emit(render(rows, params, args.format), args.out)
    return 0


def cmd_check(args) -> int:
    results = run_checks(literal=args.eq42_literal)
    rows = [{"check": r.name, "residual": r.residual, "tol": r.tol,
             "status": "pass" if r.ok else "fail"} for r in results]
    params = {"eq42_literal": args.eq42_literal}
    emit(render(rows, params, args.format), args.out)
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="hemifield", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("probe", parents=[common], help="single-party measurement probabilities")
    p.add_argument("--a-deg", type=_angle, required=True, help="field axis")
    p.add_argument("--b-deg", type=_angle, required=True, help="measurement axis")
    p.add_argument("--field", choices=("hemisphere", "alpha_plus", "alpha_minus"),
                   default="hemisphere")

    p = sub.add_parser("joint", parents=[common], help="two-party joint distribution")
    p.add_argument("--a-deg", type=_angle, required=True)
    p.add_argument("--b-deg", type=_angle, required=True)
    p.add_argument("--route", choices=("aleph", "cond1", "cond2", "all"), default="aleph")

    p = sub.add_parser("sweep", parents=[common], help="correlation vs relative angle")
    p.add_argument("--delta-min", type=_angle, default=0.0)
    p.add_argument("--delta-max", type=_angle, default=180.0)
    p.add_argument("--steps", type=int, default=37)
    p.add_argument("--a-deg", type=_angle, default=0.0)

    def add_mc(p):
        p.add_argument("--n", type=_positive_int, default=1_000_000)
        p.add_argument("--chunks", type=_positive_int, default=1)
        p.add_argument("--baseline", action="store_true", help="naive factorizable model")
        p.add_argument("--u-policy", choices=("uniform", "fixed"), default="uniform",
                       help="baseline source axis: uniform per trial or fixed at --u-deg")

    p = sub.add_parser("chsh", parents=[common], help="CHSH S value")
    p.add_argument("--angles", type=_angle, nargs=4, default=[0.0, 90.0, 45.0, 135.0],
                   metavar=("A", "A2", "B", "B2"))
    p.add_argument("--mode", choices=("analytic", "montecarlo"), default="analytic")
    add_mc(p)

    p = sub.add_parser("sample", parents=[common], help="Monte Carlo outcome pairs")
    p.add_argument("--a-deg", type=_angle, required=True)
    p.add_argument("--b-deg", type=_angle, required=True)
    p.add_argument("--records", action="store_true", help="emit one row per trial")
    add_mc(p)
    p.set_defaults(n=10_000)

    sub.add_parser("check", parents=[common], help="run the invariant suite")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sweep":
        return cmd_sweep(args, parser)
    handler = {
        "probe": cmd_probe,
        "joint": cmd_joint,
        "chsh": cmd_chsh,
        "sample": cmd_sample,
        "check": cmd_check,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    raise SystemExit(main())
