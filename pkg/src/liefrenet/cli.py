"""Command line: ``liefrenet {integrate,verify,bench} --config run.json``.

Exit codes: 0 success, 1 failed verification check, 2 invalid configuration,
3 numerical precondition failure during a run.
"""

import argparse
import csv
import json
import logging
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, checks
from .config import ConfigError, load_config
from .errors import LieFrenetError, ProfileError
from .frenet_transport import integrate_frenet
from .lie_group import develop_curve, identity_point, point_defect
from .profiles import ArcGrid
from .spinor_transport import SIGMA_SIGN, integrate_spinor, spinor_from_frame

REPORT_SCHEMA = "liefrenet.report/1"

log = logging.getLogger("liefrenet")


def _setup_logging():
    level = os.environ.get("LIEFRENET_LOG", "warn").lower()
    level = {"warn": "warning"}.get(level, level)
    if level not in ("error", "warning", "info", "debug"):
        level = "warning"
    logging.basicConfig(stream=sys.stderr, level=level.upper(), format="%(levelname)s %(name)s: %(message)s")


def _fmt(x):
    return repr(float(x))


def _position_columns(kind):
    pk = kind.point_kind
    if pk == "vector":
        return ["x1", "x2", "x3"]
    if pk == "quaternion":
        return ["q0", "q1", "q2", "q3"]
    return [f"R{i}{j}" for i in range(1, 4) for j in range(1, 4)]


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([_fmt(v) for v in row] for row in rows)


def _finite(obj):
    """Replace non-finite floats with None so the report is strict JSON."""
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def _write_report(path, command, cfg, body, runtime, artifacts):
    doc = {
        "schema_version": REPORT_SCHEMA,
        "liefrenet_version": __version__,
        "command": command,
        "config": cfg.to_dict(),
        **body,
        "runtime": runtime,
        "artifacts": sorted(str(a) for a in artifacts),
    }
    with open(path, "w") as fh:
        json.dump(_finite(doc), fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_integrate(cfg, out):
    t0 = time.perf_counter()
    artifacts, diagnostics = [], {}
    kind = cfg.group
    start = identity_point(kind)
    runs = []
    if cfg.representation in ("frenet", "both"):
        res = integrate_frenet(cfg.profile, kind, cfg.frame, cfg.arc, cfg.method)
        cols = [f"{v}{i}" for v in "TNB" for i in (1, 2, 3)]
        runs.append(("frenet", res, cols, res.frames.reshape(len(res.s), 9)))
    if cfg.representation in ("spinor", "both"):
        res = integrate_spinor(cfg.profile, kind, spinor_from_frame(cfg.frame)[0], cfg.arc, cfg.method)
        sp = res.spinors
        data = np.stack([sp[:, 0].real, sp[:, 0].imag, sp[:, 1].real, sp[:, 1].imag], axis=1)
        runs.append(("spinor", res, ["phi1_re", "phi1_im", "phi2_re", "phi2_im"], data))

    for name, res, cols, data in runs:
        header = ["s"] + cols
        columns = [res.s[:, None], data]
        diag = {
            "samples": int(len(res.s)),
            "orthonormality_defect": res.orthonormality_defect,
            ("norm_defect" if name == "spinor" else "unit_defect"): res.norm_defect,
        }
        if cfg.develop:
            pos = develop_curve(kind, start, res.frames[:, 0, :], res.s, cfg.develop_method)
            header += _position_columns(kind)
            columns.append(pos.reshape(len(res.s), -1))
            diag["position_group_defect"] = float(np.max(point_defect(kind, pos)))
        path = out / cfg.output[f"{name}_csv"]
        _write_csv(path, header, np.hstack(columns))
        artifacts.append(path)
        diagnostics[name] = diag
        log.info("wrote %s (%d rows)", path, len(res.s))

    runtime = {"wall_seconds": time.perf_counter() - t0}
    _write_report(out / cfg.output["report"], "integrate", cfg, {"diagnostics": diagnostics}, runtime, artifacts)
    return 0


def cmd_verify(cfg, out):
    t0 = time.perf_counter()
    results, rep = checks.run_all(cfg.profile, cfg.group, cfg.frame, cfg.arc, cfg.method, cfg.seed, cfg.samples)
    failed = [c.name for c in results if not c.passed]
    body = {
        "checks": [c.as_dict() for c in results],
        "diagnostics": rep.summary(),
        "sigma_sign": SIGMA_SIGN,
        "passed": not failed,
        "failed_checks": failed,
    }
    runtime = {"wall_seconds": time.perf_counter() - t0}
    _write_report(out / cfg.output["report"], "verify", cfg, body, runtime, [])
    for c in results:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} {c.name}: {c.value:.3e} {c.relation} {c.threshold:g}")
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def _endpoint_error(frames, ref):
    return float(np.max(np.abs(frames[-1] - ref[-1])))


def _loglog_slope(h, err):
    return float(np.polyfit(np.log(h), np.log(err), 1)[0])


def cmd_bench(cfg, out):
    kind, arc = cfg.group, cfg.arc
    steps = cfg.bench_steps or [arc.h, arc.h / 2, arc.h / 4]
    phi0 = spinor_from_frame(cfg.frame)[0]

    def frenet(grid):
        return integrate_frenet(cfg.profile, kind, cfg.frame, grid, cfg.method)

    def spinor(grid):
        return integrate_spinor(cfg.profile, kind, phi0, grid, cfg.method)

    ref_grid = ArcGrid(arc.s0, arc.s1, min(steps) / 8)
    reps = {"frenet": (frenet, 9), "spinor": (spinor, 4)}
    refs = {name: fn(ref_grid).frames for name, (fn, _) in reps.items()}

    rows, timing, errors = [], [], {name: [] for name in reps}
    for h in steps:
        grid = ArcGrid(arc.s0, arc.s1, h)
        for name, (fn, dim) in reps.items():
            best = math.inf
            for _ in range(cfg.reps):
                t = time.perf_counter()
                res = fn(grid)
                best = min(best, time.perf_counter() - t)
            err = _endpoint_error(res.frames, refs[name])
            errors[name].append(err)
            rows.append([name, grid.step, grid.n_steps, dim, err, res.orthonormality_defect, res.norm_defect])
            timing.append({"representation": name, "h": grid.step, "seconds_per_step": best / grid.n_steps})

    path = out / cfg.output["bench_csv"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["representation", "h", "n_steps", "state_components", "endpoint_error",
                         "orthonormality_defect", "norm_defect"])
        for row in rows:
            writer.writerow([row[0], _fmt(row[1]), row[2], row[3]] + [_fmt(v) for v in row[4:]])

    hs = [ArcGrid(arc.s0, arc.s1, h).step for h in steps]
    slopes = {name: _loglog_slope(hs, errs) for name, errs in errors.items()}
    per_step = {name: min(t["seconds_per_step"] for t in timing if t["representation"] == name) for name in reps}
    body = {
        "convergence_slopes": slopes,
        "endpoint_errors": errors,
        "reference_step": ref_grid.step,
    }
    runtime = {
        "timings": timing,
        "reps": cfg.reps,
        "spinor_to_frenet_time_ratio": per_step["spinor"] / per_step["frenet"],
    }
    _write_report(out / cfg.output["report"], "bench", cfg, body, runtime, [path])
    for name in reps:
        print(f"{name}: slope {slopes[name]:.3f}, {per_step[name] * 1e6:.2f} us/step")
    return 0


COMMANDS = {"integrate": cmd_integrate, "verify": cmd_verify, "bench": cmd_bench}


def build_parser():
    parser = argparse.ArgumentParser(prog="liefrenet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--out", default=".", help="output directory (default: current)")
        p.add_argument("--method", choices=("rk4", "rk4_renorm"), help="override the config's method")
        p.add_argument("--seed", type=int, help="seed for randomized property checks")
        if name == "bench":
            p.add_argument("--reps", type=int, help="timing repetitions")
    return parser


def main(argv=None):
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"{args.config}: {exc}", file=sys.stderr)
        return 2
    if args.method:
        cfg.method = args.method
    if args.seed is not None:
        if args.seed < 0:
            print("--seed must be non-negative", file=sys.stderr)
            return 2
        cfg.seed = args.seed
    if getattr(args, "reps", None) is not None:
        if args.reps < 1:
            print("--reps must be >= 1", file=sys.stderr)
            return 2
        cfg.reps = args.reps
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        return COMMANDS[args.command](cfg, out)
    except ProfileError as exc:
        where = f" at s={exc.s!r}" if exc.s is not None else ""
        print(f"numerical precondition failed{where}: {exc}", file=sys.stderr)
        return 3
    except LieFrenetError as exc:
        print(f"numerical precondition failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
