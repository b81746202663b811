"""Ellipsoid against a plane.

A plane has no quadratic part, so the pencil always has zero as a double
root and its polynomial reduces to λ²(c4 λ² + c3 λ + c2). The surfaces
cross iff the remaining quadratic has non-real roots (Δ3 < 0), with no
smallness hypothesis; otherwise the sign of c3 names the side.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NotAPlaneError, NumericalError
from .invariants import QuadricClass
from .pencil import Sign, banded_sign
from .quadric import Quadric
from .tolerances import DEFAULT_TOL, Tolerances


@dataclass(frozen=True)
class Plane:
    """The plane n·p - d = 0; positive side where n·p > d."""

    n: tuple[float, float, float]
    d: float

    def __post_init__(self):
        n = tuple(float(v) for v in self.n)
        if len(n) != 3:
            raise ValueError(f"plane normal needs 3 components, got {len(n)}")
        if not any(n):
            raise ValueError("plane normal must be nonzero")
        if not all(np.isfinite(n + (float(self.d),))):
            raise ValueError("plane coefficients must be finite")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", float(self.d))

    @property
    def quadric(self) -> Quadric:
        return Quadric((0.0,) * 6, tuple(v / 2.0 for v in self.n), -self.d)

    @classmethod
    def from_quadric(cls, q: Quadric, tol: Tolerances = DEFAULT_TOL) -> "Plane":
        """Read a plane back from a quadric with vanishing quadratic part."""
        if isinstance(q, Plane):
            return q
        lin = float(np.linalg.norm(q.b))
        quad = float(np.abs(q.A).max())
        if quad > tol.eps_rel * max(lin, abs(q.c)) or lin == 0:
            raise NotAPlaneError(f"quadric has a quadratic part (max |a_ij| = {quad:.3g})")
        return cls(tuple(2.0 * v for v in q.b), -q.c)

    def value(self, point: Sequence[float]) -> float:
        return float(np.dot(self.n, point) - self.d)

    def to_json(self) -> dict:
        return {"n": list(self.n), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> "Plane":
        return cls(obj["n"], obj["d"])


def side_of_plane(p: Plane, point: Sequence[float], tol: Tolerances = DEFAULT_TOL) -> Sign:
    """Banded sign of n·point - d."""
    x = np.asarray(point, dtype=float)
    band = tol.eps_rel * (float(np.linalg.norm(p.n) * np.linalg.norm(x)) + abs(p.d))
    return banded_sign(p.value(x), band)


def plane_contact(e, p, tol: Tolerances = DEFAULT_TOL):
    """Contact and side of an ellipsoid against a plane.

    ``p`` may be a :class:`Plane` or a quadric without quadratic part. The
    region is read from c3; the side of the ellipsoid center is computed as
    a cross-check and breaks ties when c3 falls in its zero band.

    Raises:
        NotAPlaneError: ``p`` has a quadratic part.
        NumericalError: c1 or c0 fails to vanish, or c3 and the center
            disagree.
    """
    from .classifier import (ContactReport, Region, coefficient_bands, discriminants, pencil,
                             strip_structural)
    from .ellipsoid import ellipsoid_from_quadric

    e = ellipsoid_from_quadric(e, tol)
    plane = Plane.from_quadric(p, tol)
    q = plane.quadric if isinstance(p, Plane) else p
    raw, scales = pencil(e, q)
    bands = coefficient_bands(scales, tol)
    poly = strip_structural(raw, (0, 1), bands)
    d = discriminants(poly, tol, scales)
    transversal = d.s3 is Sign.NEG
    s3 = banded_sign(poly.c3, bands[1])
    center_side = side_of_plane(plane, e.center, tol)
    extra = {"c3_sign": s3.symbol, "center_side": center_side.symbol}
    if s3 is not Sign.ZERO and center_side is not Sign.ZERO and s3 != center_side:
        raise NumericalError(f"sign of c3 ({s3.symbol}) disagrees with the side of the center "
                             f"({center_side.symbol})")
    if transversal:
        return ContactReport(True, Region.STRADDLING, True, QuadricClass.SINGLE_PLANE, poly, d,
                             note="non-real characteristic roots: the plane cuts the ellipsoid",
                             extra=extra)
    side = s3 if s3 is not Sign.ZERO else center_side
    if side is Sign.ZERO:
        raise NumericalError("ellipsoid does not cross the plane but its center lies on it")
    region = Region.R_PLUS if side is Sign.POS else Region.R_MINUS
    return ContactReport(False, region, True, QuadricClass.SINGLE_PLANE, poly, d,
                         note="real characteristic roots: the ellipsoid is on one side", extra=extra)
