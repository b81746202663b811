"""Scenes: quadric pieces gated by separating planes.

Each zone is a cell of the plane arrangement named by a sign vector (one
'+' or '-' per plane) and holds one quadric piece. A query first locates
the ellipsoid with plane tests only, then checks the piece of its zone;
pieces of other zones are never touched. An ellipsoid crossing some
planes is checked against every zone that agrees with it on the planes it
does not cross.

Zone ids number the sign vectors of ``itertools.product('+-', repeat=k)``
from 1, so with one plane the positive side is zone 1 and the negative
side zone 2; zone 0 means the ellipsoid crosses at least one plane.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .classifier import ContactReport, is_transversal_contact
from .ellipsoid import ellipsoid_from_quadric
from .errors import NoMatchingZoneError, SmallnessViolatedError, UnsupportedClassError
from .invariants import QuadricClass, classify
from .plane import Plane, plane_contact
from .quadric import Quadric
from .smallness import SmallnessVerdict, is_small_shape
from .tolerances import DEFAULT_TOL, Tolerances

# classes a zone may hold: those with a sign-pattern row, plus single planes
SUPPORTED = frozenset({
    QuadricClass.ELLIPSOID, QuadricClass.HYPERBOLOID_ONE_SHEET, QuadricClass.HYPERBOLOID_TWO_SHEETS,
    QuadricClass.ELLIPTIC_PARABOLOID, QuadricClass.HYPERBOLIC_PARABOLOID,
    QuadricClass.ELLIPTIC_CYLINDER, QuadricClass.HYPERBOLIC_CYLINDER,
    QuadricClass.PARABOLIC_CYLINDER, QuadricClass.PARALLEL_PLANES, QuadricClass.SINGLE_PLANE,
})


def zone_id(signs: str) -> int:
    """1-based position of ``signs`` among all sign vectors of its length."""
    for i, cand in enumerate(itertools.product("+-", repeat=len(signs)), start=1):
        if "".join(cand) == signs:
            return i
    raise ValueError(f"not a sign vector: {signs!r}")


@dataclass(frozen=True)
class Zone:
    signs: str
    quadric: Quadric | None = None

    @property
    def id(self) -> int:
        return zone_id(self.signs)

    def to_json(self) -> dict:
        out = {"signs": self.signs}
        if self.quadric is not None:
            out["quadric"] = self.quadric.to_json()
        return out


@dataclass(frozen=True)
class Scene:
    planes: tuple[Plane, ...]
    zones: tuple[Zone, ...] = ()
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        planes, zones = tuple(self.planes), tuple(self.zones)
        object.__setattr__(self, "planes", planes)
        object.__setattr__(self, "zones", zones)
        k = len(planes)
        seen = set()
        for i, z in enumerate(zones):
            if len(z.signs) != k or set(z.signs) - {"+", "-"}:
                raise ValueError(f"zones[{i}].signs: expected {k} of '+'/'-', got {z.signs!r}")
            if z.signs in seen:
                raise ValueError(f"zones[{i}].signs: duplicate sign vector {z.signs!r}")
            seen.add(z.signs)
            if z.quadric is not None:
                cls = classify(z.quadric, self.tol)
                if cls not in SUPPORTED:
                    raise UnsupportedClassError(f"zones[{i}].quadric: unsupported class {cls.value}")

    def zone(self, signs: str) -> Zone | None:
        for z in self.zones:
            if z.signs == signs:
                return z
        return None

    def to_json(self) -> dict:
        return {"planes": [p.to_json() for p in self.planes], "zones": [z.to_json() for z in self.zones]}

    @classmethod
    def from_json(cls, obj: dict, tol: Tolerances = DEFAULT_TOL) -> "Scene":
        planes = tuple(Plane.from_json(p) for p in obj["planes"])
        zones = tuple(Zone(z["signs"], Quadric.from_json(z["quadric"]) if "quadric" in z else None)
                      for z in obj.get("zones", []))
        return cls(planes, zones, tol)


@dataclass(frozen=True)
class ZoneVerdict:
    """Where the ellipsoid is: a zone, or across the planes in ``crossed``.

    ``signs`` has '*' at crossed planes."""

    zone_id: int
    signs: str
    crossed: tuple[int, ...]
    plane_reports: tuple[ContactReport, ...]

    @property
    def straddling(self) -> bool:
        return bool(self.crossed)

    def as_dict(self) -> dict:
        return {"zone": self.zone_id, "signs": self.signs, "crossed": list(self.crossed),
                "planes": [r.as_dict() for r in self.plane_reports]}


def detect_zone(scene: Scene, e) -> ZoneVerdict:
    """Locate the ellipsoid using plane tests only.

    Raises:
        NoMatchingZoneError: the side signs name a zone the scene lacks.
    """
    tol = scene.tol
    e = ellipsoid_from_quadric(e, tol)
    reports = tuple(plane_contact(e, p, tol) for p in scene.planes)
    signs, crossed = [], []
    for i, r in enumerate(reports):
        if r.transversal:
            crossed.append(i)
            signs.append("*")
        else:
            signs.append("+" if r.region.value == "RPlus" else "-")
    sv = "".join(signs)
    if crossed:
        return ZoneVerdict(0, sv, tuple(crossed), reports)
    if scene.zones and scene.zone(sv) is None:
        raise NoMatchingZoneError(f"ellipsoid lies in cell {sv!r}, which is not a zone of the scene")
    return ZoneVerdict(zone_id(sv), sv, (), reports)


@dataclass(frozen=True)
class SurfaceCheck:
    zone_id: int
    signs: str
    report: ContactReport

    def as_dict(self) -> dict:
        return {"zone": self.zone_id, "signs": self.signs, **self.report.as_dict()}


@dataclass(frozen=True)
class SceneReport:
    zone: ZoneVerdict
    contact: bool
    checks: tuple[SurfaceCheck, ...]
    computed: tuple[str, ...]     # labels of the characteristic polynomials evaluated
    smallness: tuple[tuple[int, SmallnessVerdict | None], ...] = ()

    def as_dict(self) -> dict:
        return {
            "zone": self.zone.zone_id,
            "signs": self.zone.signs,
            "crossed": list(self.zone.crossed),
            "contact": self.contact,
            "checks": [c.as_dict() for c in self.checks],
            "computed": list(self.computed),
            "smallness": [{"zone": z, "verdict": v.as_dict() if v else None} for z, v in self.smallness],
        }


@lru_cache(maxsize=1024)
def _scene_smallness(scene: Scene, shape: tuple) -> tuple[tuple[int, SmallnessVerdict | None], ...]:
    out = []
    for z in scene.zones:
        if z.quadric is None or classify(z.quadric, scene.tol) is QuadricClass.SINGLE_PLANE:
            out.append((z.id, None))
        else:
            out.append((z.id, is_small_shape(shape, z.quadric, scene.tol)))
    return tuple(out)


def scene_smallness(scene: Scene, e) -> tuple[tuple[int, SmallnessVerdict | None], ...]:
    """Smallness of the ellipsoid against every piece; cached per shape,
    so moving the ellipsoid does not recompute it. Plane pieces give None."""
    e = ellipsoid_from_quadric(e, scene.tol)
    return _scene_smallness(scene, e.shape_key)


def detect_contact(scene: Scene, e, one_sided: bool = False) -> SceneReport:
    """Zone detection followed by contact checks on the selected pieces.

    Raises:
        SmallnessViolatedError: the ellipsoid is not small with respect to
            some piece and ``one_sided`` is off.
    """
    tol = scene.tol
    e = ellipsoid_from_quadric(e, tol)
    small = scene_smallness(scene, e)
    if not one_sided:
        for zid, v in small:
            if v is not None and not v.small:
                raise SmallnessViolatedError(
                    f"ellipsoid is not small with respect to the piece of zone {zid}: failed {v.failed()}",
                    verdict=v, piece=zid)
    zv = detect_zone(scene, e)
    computed = [f"plane {i}" for i in range(len(scene.planes))]
    if zv.straddling:
        targets = [z for z in scene.zones
                   if all(s == "*" or s == t for s, t in zip(zv.signs, z.signs))]
    else:
        z = scene.zone(zv.signs)
        targets = [z] if z is not None else []
    checks = []
    for z in targets:
        if z.quadric is None:
            continue
        report = is_transversal_contact(e, z.quadric, require_smallness=not one_sided, tol=tol)
        computed.append(f"zone {z.id}")
        checks.append(SurfaceCheck(z.id, z.signs, report))
    contact = any(c.report.transversal for c in checks)
    return SceneReport(zv, contact, tuple(checks), tuple(computed), small)
