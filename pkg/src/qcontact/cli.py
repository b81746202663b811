"""Command-line front end.

Exit codes: 0 no contact (or success), 10 contact, 2 input or
configuration error, 3 violated precondition (smallness, unsupported
class, numerical inconsistency).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .classifier import discriminants, is_transversal_contact, relative_position
from .ellipsoid import ellipsoid_from_quadric
from .errors import (AllZeroError, DegenerateError, NotAnEllipsoidError, NotAPlaneError, QContactError,
                     SmallnessViolatedError)
from .invariants import REDUCIBLE, classify, invariant_set, orientation, reduced_form
from .oracle import concordance
from .pencil import char_poly, coefficient_scales
from .plane import Plane, plane_contact
from .quadric import Quadric
from .scene import Scene, detect_contact
from .smallness import is_small
from .tolerances import Tolerances, from_env

EXIT_OK, EXIT_CONFIG, EXIT_PRECONDITION, EXIT_CONTACT = 0, 2, 3, 10

SUBCOMMANDS = ("classify", "invariants", "smallness", "charpoly", "contact", "position",
               "plane", "scene", "oracle", "sweep")


# input that parses but is the wrong kind of surface counts as a config error
_INPUT_ERRORS = (AllZeroError, NotAnEllipsoidError, NotAPlaneError, DegenerateError)


class ConfigError(Exception):
    """Bad input file or option; the message names the offending field."""


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    eps_rel: float | None = None
    tau_scale: float = 1.0
    fmt: str = "json"
    verify: bool = False
    resolution: int = 512
    one_sided: bool = False

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"subcommand: unknown {self.subcommand!r}")
        if self.eps_rel is not None and not self.eps_rel > 0:
            raise ConfigError(f"--eps-rel: must be positive, got {self.eps_rel}")
        if not self.tau_scale > 0:
            raise ConfigError(f"--tau-scale: must be positive, got {self.tau_scale}")
        if self.resolution < 64:
            raise ConfigError(f"--resolution: must be at least 64, got {self.resolution}")
        if self.fmt not in ("json", "text", "csv"):
            raise ConfigError(f"--format: unknown {self.fmt!r}")

    def tolerances(self) -> Tolerances:
        try:
            tol = from_env()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.eps_rel is not None:
            tol = Tolerances(**{**tol.as_dict(), "eps_rel": self.eps_rel})
        return tol.scaled(self.tau_scale) if self.tau_scale != 1.0 else tol


def _read_json(path: str, what: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"{what}: cannot read {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{what}: {path!r} is not valid JSON ({exc.msg}, line {exc.lineno})") from None


def _surface(obj, what: str):
    """A quadric ({"a","b","c"}) or a plane ({"n","d"})."""
    try:
        if isinstance(obj, dict) and "n" in obj:
            return Plane.from_json(obj)
        return Quadric.from_json(obj)
    except KeyError as exc:
        raise ConfigError(f"{what}: missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{what}: {exc}") from None


def load_surface(path: str, what: str):
    return _surface(_read_json(path, what), what)


def load_quadric(path: str, what: str) -> Quadric:
    s = load_surface(path, what)
    return s.quadric if isinstance(s, Plane) else s


def load_scene(path: str, tol: Tolerances) -> Scene:
    obj = _read_json(path, "--scene")
    try:
        return Scene.from_json(obj, tol)
    except KeyError as exc:
        raise ConfigError(f"--scene: missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"--scene: {exc}") from None


def _vec3(text: str, what: str) -> tuple[float, float, float]:
    try:
        v = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"{what}: expected x,y,z, got {text!r}") from None
    if len(v) != 3:
        raise ConfigError(f"{what}: expected 3 components, got {len(v)}")
    return v


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, (list, tuple)) and obj and isinstance(obj[0], (dict, list, tuple)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    if fmt == "text":
        return "\n".join(f"{k}: {v}" for k, v in _flatten(report))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in _flatten(report):
        w.writerow([k, v if isinstance(v, str) else json.dumps(v)])
    return buf.getvalue().rstrip("\n")


def _ellipsoid(cfg: RunConfig, tol: Tolerances):
    return ellipsoid_from_quadric(load_quadric(cfg.inputs["e"], "--e"), tol)


def _cmd_classify(cfg, tol):
    q = load_quadric(cfg.inputs["q"], "--q")
    cls = classify(q, tol)
    return {"class": cls.value, "orientation": orientation(q, cls, tol)}, EXIT_OK


def _cmd_invariants(cfg, tol):
    q = load_quadric(cfg.inputs["q"], "--q")
    cls = classify(q, tol)
    out = {"class": cls.value, "invariants": invariant_set(q, tol).as_dict()}
    if cls in REDUCIBLE:
        out["reduced_form"] = reduced_form(q, tol).as_dict()
    return out, EXIT_OK


def _cmd_smallness(cfg, tol):
    e = _ellipsoid(cfg, tol)
    q = load_quadric(cfg.inputs["q"], "--q")
    return is_small(e, q, tol).as_dict(), EXIT_OK


def _cmd_charpoly(cfg, tol):
    e = load_quadric(cfg.inputs["e"], "--e")
    q = load_quadric(cfg.inputs["q"], "--q")
    p = char_poly(e, q)
    d = discriminants(p, tol, coefficient_scales(e, q))
    return {"coefficients": p.as_list(), "discriminants": d.as_dict()}, EXIT_OK


def _cmd_contact(cfg, tol):
    e = _ellipsoid(cfg, tol)
    q = load_surface(cfg.inputs["q"], "--q")
    report = is_transversal_contact(e, q, require_smallness=not cfg.one_sided, tol=tol)
    out = report.as_dict()
    if cfg.verify:
        c = concordance(e, q, cfg.resolution, tol)
        out["oracle"] = {k: c[k] for k in ("roots", "sampling", "roots_agree", "sampling_agree")}
    return out, EXIT_CONTACT if report.transversal else EXIT_OK


def _cmd_position(cfg, tol):
    e = _ellipsoid(cfg, tol)
    q = load_quadric(cfg.inputs["q"], "--q")
    return relative_position(e, q, tol=tol).as_dict(), EXIT_OK


def _cmd_plane(cfg, tol):
    e = _ellipsoid(cfg, tol)
    p = load_surface(cfg.inputs["plane"], "--plane")
    report = plane_contact(e, p, tol)
    return report.as_dict(), EXIT_CONTACT if report.transversal else EXIT_OK


def _cmd_scene(cfg, tol):
    scene = load_scene(cfg.inputs["scene"], tol)
    e = ellipsoid_from_quadric(load_quadric(cfg.inputs["ellipsoid"], "--ellipsoid"), tol)
    report = detect_contact(scene, e, one_sided=cfg.one_sided)
    return report.as_dict(), EXIT_CONTACT if report.contact else EXIT_OK


def _cmd_oracle(cfg, tol):
    e = _ellipsoid(cfg, tol)
    q = load_surface(cfg.inputs["q"], "--q")
    return concordance(e, q, cfg.resolution, tol), EXIT_OK


SWEEP_COLUMNS = ("step", "cx", "cy", "cz", "c4", "c3", "c2", "c1", "c0", "d3", "d4", "verdict", "region")


def sweep_rows(e, q, start, end, steps: int, one_sided: bool, tol: Tolerances):
    """One row per center on the segment from ``start`` to ``end``."""
    a, b = np.asarray(start, dtype=float), np.asarray(end, dtype=float)
    for i in range(steps):
        center = a + (b - a) * (i / (steps - 1) if steps > 1 else 0.0)
        moved = e.centered_at(center, tol)
        try:
            r = is_transversal_contact(moved, q, require_smallness=not one_sided, tol=tol)
            p, d = r.poly, r.discriminants
            verdict = "transversal" if r.transversal else "none"
            region = r.region.value
        except SmallnessViolatedError:
            raise
        except QContactError as exc:
            qq = q.quadric if isinstance(q, Plane) else q
            p = char_poly(moved, qq)
            d = discriminants(p, tol, coefficient_scales(moved, qq))
            verdict, region = "error", type(exc).__name__
        yield (i, *(float(x) for x in center), *p.coeffs, d.d3, d.d4, verdict, region)


def _cmd_sweep(cfg, tol):
    e = _ellipsoid(cfg, tol)
    q = load_surface(cfg.inputs["q"], "--q")
    start = _vec3(cfg.inputs["start"], "--start")
    end = _vec3(cfg.inputs["end"], "--end")
    steps = cfg.inputs["steps"]
    if steps < 1:
        raise ConfigError(f"--steps: must be at least 1, got {steps}")
    rows = list(sweep_rows(e, q, start, end, steps, cfg.one_sided, tol))
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for r in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in r])
        return buf.getvalue().rstrip("\n"), EXIT_OK
    return {"columns": list(SWEEP_COLUMNS), "rows": [list(r) for r in rows]}, EXIT_OK


COMMANDS = {name: globals()[f"_cmd_{name}"] for name in SUBCOMMANDS}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", default="json", choices=("json", "text", "csv"))
    common.add_argument("--eps-rel", type=float, default=None,
                        help="relative zero tolerance (also QCONTACT_EPS_REL)")
    common.add_argument("--tau-scale", type=float, default=1.0,
                        help="factor applied to the discriminant and coefficient bands")
    common.add_argument("--one-sided", "--no-smallness", dest="one_sided", action="store_true",
                        help="do not require smallness; negative verdicts become inconclusive")

    parser = argparse.ArgumentParser(prog="qcontact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    two = {"classify": ("q",), "invariants": ("q",), "smallness": ("e", "q"), "charpoly": ("e", "q"),
           "contact": ("e", "q"), "position": ("e", "q"), "plane": ("e", "plane"),
           "scene": ("scene", "ellipsoid"), "oracle": ("e", "q"), "sweep": ("e", "q")}
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, parents=[common])
        for arg in two[name]:
            sp.add_argument(f"--{arg}", required=True, metavar="FILE")
        if name in ("contact", "oracle"):
            sp.add_argument("--resolution", type=int, default=512)
        if name == "contact":
            sp.add_argument("--verify", action="store_true", help="add oracle cross-checks")
        if name == "sweep":
            sp.add_argument("--start", required=True, metavar="X,Y,Z")
            sp.add_argument("--end", required=True, metavar="X,Y,Z")
            sp.add_argument("--steps", type=int, default=11)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    keys = ("q", "e", "plane", "scene", "ellipsoid", "start", "end", "steps")
    inputs = {k: getattr(ns, k) for k in keys if getattr(ns, k, None) is not None}
    return RunConfig(ns.subcommand, inputs, ns.eps_rel, ns.tau_scale, ns.fmt,
                     getattr(ns, "verify", False), getattr(ns, "resolution", 512), ns.one_sided)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
        tol = cfg.tolerances()
        report, code = COMMANDS[cfg.subcommand](cfg, tol)
    except ConfigError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG
    except SmallnessViolatedError as exc:
        print(f"precondition: {exc}", file=err)
        return EXIT_PRECONDITION
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG
    except QContactError as exc:
        print(f"precondition: {exc}", file=err)
        return EXIT_PRECONDITION
    if isinstance(report, dict):
        report = {**report, "tolerances": tol.as_dict()}
        text = render(report, cfg.fmt)
    else:
        # plot-ready CSV; the tolerances go in a leading comment line
        text = f"# tolerances: {json.dumps(tol.as_dict())}\n{report}"
    print(text, file=out)
    return code


def main() -> None:
    sys.exit(run())
