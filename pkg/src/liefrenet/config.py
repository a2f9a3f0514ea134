"""Run configuration: a JSON document validated strictly before any computation."""

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import LieFrenetError
from .frenet_transport import METHODS
from .lie_group import GroupKind, check_frame
from .profiles import ArcGrid, CurvatureProfile

REPRESENTATIONS = ("frenet", "spinor", "both")
DEVELOP_METHODS = ("exp_midpoint", "rk4_project")
SINUSOID_KEYS = {"offset", "sin", "cos", "frequency"}

_TOP_KEYS = {
    "group", "profile", "frame", "arc", "method", "representation",
    "develop", "develop_method", "seed", "samples", "reps", "bench_steps", "output",
}
_OUTPUT_DEFAULTS = {
    "frenet_csv": "frenet.csv",
    "spinor_csv": "spinor.csv",
    "bench_csv": "bench.csv",
    "report": "report.json",
}


class ConfigError(LieFrenetError):
    """Invalid configuration; carries the offending field and, if found, its line."""

    def __init__(self, field, message, line=None):
        self.field = field
        self.line = line
        where = f"line {line}: " if line else ""
        super().__init__(f"{where}field '{field}': {message}")


@dataclass
class RunConfig:
    group: GroupKind
    profile: CurvatureProfile
    frame: np.ndarray
    arc: ArcGrid
    method: str = "rk4"
    representation: str = "both"
    develop: bool = False
    develop_method: str = "exp_midpoint"
    seed: int = 0
    samples: int = 1000
    reps: int = 3
    bench_steps: list = None
    output: dict = field(default_factory=lambda: dict(_OUTPUT_DEFAULTS))
    frame_spec: object = "identity"

    def to_dict(self):
        """Canonical JSON-ready form; ``parse_config(to_dict())`` reproduces the config."""
        group = {"kind": self.group.tag, "c": self.group.c}
        return {
            "group": group,
            "profile": dict(self.profile.spec),
            "frame": self.frame_spec,
            "arc": {"s0": self.arc.s0, "s1": self.arc.s1, "h": self.arc.h},
            "method": self.method,
            "representation": self.representation,
            "develop": self.develop,
            "develop_method": self.develop_method,
            "seed": self.seed,
            "samples": self.samples,
            "reps": self.reps,
            "bench_steps": self.bench_steps,
            "output": dict(self.output),
        }


def _line_of(text, key):
    if text is None:
        return None
    needle = f'"{key}"'
    for i, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return i
    return None


class _Reader:
    def __init__(self, text):
        self.text = text

    def fail(self, path, message):
        return ConfigError(path, message, _line_of(self.text, path.split(".")[-1]))

    def obj(self, value, path, allowed):
        if not isinstance(value, dict):
            raise self.fail(path, "must be an object")
        unknown = sorted(set(value) - set(allowed))
        if unknown:
            raise ConfigError(f"{path}.{unknown[0]}" if path else unknown[0], "unknown key",
                              _line_of(self.text, unknown[0]))
        return value

    def number(self, value, path, positive=False):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise self.fail(path, "must be a finite number")
        if positive and value <= 0:
            raise self.fail(path, "must be > 0")
        return float(value)

    def integer(self, value, path, minimum=0):
        if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
            raise self.fail(path, f"must be an integer >= {minimum}")
        return value

    def choice(self, value, path, options):
        if value not in options:
            raise self.fail(path, f"must be one of {list(options)}")
        return value


def _parse_group(r, raw):
    raw = r.obj(raw, "group", {"kind", "c"})
    if "kind" not in raw:
        raise r.fail("group.kind", "missing")
    kind = r.choice(str(raw["kind"]).lower(), "group.kind", ("abelian", "so3", "s3", "custom"))
    c = raw.get("c")
    if c is not None:
        c = r.number(c, "group.c")
        if c < 0:
            raise r.fail("group.c", "must be >= 0")
    elif kind == "custom":
        raise r.fail("group.c", "required for a custom group")
    return GroupKind.named(kind, c)


def _load_table(r, path, base):
    full = Path(path) if Path(path).is_absolute() else Path(base) / path
    try:
        with open(full, newline="") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise r.fail("profile.path", f"cannot read table: {exc}") from None
    try:
        s = [float(row["s"]) for row in rows]
        kappa = [float(row["kappa"]) for row in rows]
        tau = [float(row["tau"]) for row in rows]
    except (KeyError, ValueError, TypeError):
        raise r.fail("profile.path", "table needs numeric columns s, kappa, tau") from None
    if min(kappa, default=0.0) <= 0:
        raise r.fail("profile.path", "table curvature must be > 0 everywhere")
    try:
        return CurvatureProfile.sampled(s, kappa, tau, source=path)
    except LieFrenetError as exc:
        raise r.fail("profile.path", str(exc)) from None


def _parse_profile(r, raw, base):
    if not isinstance(raw, dict) or "form" not in raw:
        raise r.fail("profile.form", "profile must be an object with a 'form'")
    form = r.choice(raw["form"], "profile.form", ("constant", "polynomial", "sinusoidal", "table"))
    keys = {"table": {"form", "path", "tau_shift"}}.get(form, {"form", "kappa", "tau", "tau_shift"})
    raw = r.obj(raw, "profile", keys)
    for k in keys - {"tau_shift"}:
        if k not in raw:
            raise r.fail(f"profile.{k}", "missing")

    if form == "constant":
        kappa = r.number(raw["kappa"], "profile.kappa", positive=True)
        prof = CurvatureProfile.constant(kappa, r.number(raw["tau"], "profile.tau"))
    elif form == "polynomial":
        coeffs = {}
        for k in ("kappa", "tau"):
            if not isinstance(raw[k], list) or not raw[k]:
                raise r.fail(f"profile.{k}", "must be a non-empty list of coefficients")
            coeffs[k] = [r.number(x, f"profile.{k}") for x in raw[k]]
        prof = CurvatureProfile.polynomial(coeffs["kappa"], coeffs["tau"])
    elif form == "sinusoidal":
        parts = {}
        for k in ("kappa", "tau"):
            sub = r.obj(raw[k], f"profile.{k}", SINUSOID_KEYS)
            parts[k] = {name: r.number(v, f"profile.{k}.{name}") for name, v in sub.items()}
        kp = parts["kappa"]
        if kp.get("offset", 0.0) - math.hypot(kp.get("sin", 0.0), kp.get("cos", 0.0)) <= 0:
            raise r.fail("profile.kappa", "sinusoidal curvature must stay > 0 (offset > amplitude)")
        prof = CurvatureProfile.sinusoidal(parts["kappa"], parts["tau"])
    else:
        if not isinstance(raw["path"], str):
            raise r.fail("profile.path", "must be a string")
        prof = _load_table(r, raw["path"], base)
    if raw.get("tau_shift"):
        prof = prof.shifted(r.number(raw["tau_shift"], "profile.tau_shift"))
    return prof


def _parse_frame(r, raw):
    if raw == "identity":
        return np.eye(3), "identity"
    if not isinstance(raw, list) or len(raw) != 9:
        raise r.fail("frame", "must be \"identity\" or a list of nine reals (rows T, N, B)")
    vals = [r.number(x, "frame") for x in raw]
    frame = np.array(vals).reshape(3, 3)
    try:
        check_frame(frame)
    except LieFrenetError as exc:
        raise r.fail("frame", str(exc)) from None
    return frame, vals


def parse_config(data, text=None, base="."):
    """Validate a decoded config document and build a ``RunConfig``."""
    r = _Reader(text)
    data = r.obj(data, "", _TOP_KEYS)
    for k in ("group", "profile", "arc"):
        if k not in data:
            raise r.fail(k, "missing")
    group = _parse_group(r, data["group"])
    profile = _parse_profile(r, data["profile"], base)
    frame, frame_spec = _parse_frame(r, data.get("frame", "identity"))
    arc_raw = r.obj(data["arc"], "arc", {"s0", "s1", "h"})
    for k in ("s0", "s1", "h"):
        if k not in arc_raw:
            raise r.fail(f"arc.{k}", "missing")
    try:
        arc = ArcGrid(*(r.number(arc_raw[k], f"arc.{k}") for k in ("s0", "s1", "h")))
    except LieFrenetError as exc:
        raise r.fail("arc", str(exc)) from None

    bench_steps = data.get("bench_steps")
    if bench_steps is not None:
        if not isinstance(bench_steps, list) or len(bench_steps) < 2:
            raise r.fail("bench_steps", "must be a list of at least two step sizes")
        bench_steps = [r.number(h, "bench_steps", positive=True) for h in bench_steps]

    output = dict(_OUTPUT_DEFAULTS)
    for k, v in r.obj(data.get("output", {}), "output", set(_OUTPUT_DEFAULTS)).items():
        if not isinstance(v, str) or not v:
            raise r.fail(f"output.{k}", "must be a non-empty file name")
        output[k] = v

    develop = data.get("develop", False)
    if not isinstance(develop, bool):
        raise r.fail("develop", "must be true or false")

    return RunConfig(
        group=group,
        profile=profile,
        frame=frame,
        frame_spec=frame_spec,
        arc=arc,
        method=r.choice(data.get("method", "rk4"), "method", METHODS),
        representation=r.choice(data.get("representation", "both"), "representation", REPRESENTATIONS),
        develop=develop,
        develop_method=r.choice(data.get("develop_method", "exp_midpoint"), "develop_method", DEVELOP_METHODS),
        seed=r.integer(data.get("seed", 0), "seed"),
        samples=r.integer(data.get("samples", 1000), "samples", 1),
        reps=r.integer(data.get("reps", 3), "reps", 1),
        bench_steps=bench_steps,
        output=output,
    )


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError("<file>", f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<document>", f"invalid JSON: {exc.msg}", exc.lineno) from None
    return parse_config(data, text, base=path.parent)
