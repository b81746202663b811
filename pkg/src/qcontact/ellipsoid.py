"""Ellipsoids: sign-normalized quadrics with cached shape parameters."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateError, NotAnEllipsoidError
from .invariants import QuadricClass, _canonical, classify
from .quadric import Quadric, RigidMotion, Vec3, axis_quadric, transform
from .tolerances import DEFAULT_TOL, Tolerances


@dataclass(frozen=True)
class Ellipsoid(Quadric):
    """An ellipsoid whose matrix is oriented so the interior is X^T E X < 0.

    ``axes_p`` and ``delta_p`` are the parameters of the reduced equation
    x²/α'² + y²/β'² + z²/γ'² = δ'², so the semi-axes are α'δ' >= β'δ' >= γ'δ'.
    ``directions`` holds the matching principal directions as columns
    (flattened row-major). ``flipped`` records that the input was negated.
    """

    axes_p: Vec3 = (1.0, 1.0, 1.0)
    delta_p: float = 1.0
    center: Vec3 = (0.0, 0.0, 0.0)
    directions: tuple[float, ...] = (1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0)
    flipped: bool = False

    @property
    def semi_axes(self) -> Vec3:
        return tuple(v * self.delta_p for v in self.axes_p)

    @property
    def rotation(self) -> np.ndarray:
        return np.asarray(self.directions).reshape(3, 3)

    @property
    def quadric(self) -> Quadric:
        return Quadric(self.a, self.b, self.c)

    @property
    def shape_key(self) -> tuple[float, ...]:
        """Motion-invariant shape identity, rounded so round-off from moving
        the ellipsoid does not change it."""
        return tuple(float(f"{v:.12g}") for v in (*self.axes_p, self.delta_p))

    @classmethod
    def from_axes(cls, center: Sequence[float], semi_axes: Sequence[float],
                  rotation=None, tol: Tolerances = DEFAULT_TOL) -> "Ellipsoid":
        """Ellipsoid with the given center, semi-axes and axis directions
        (columns of ``rotation``)."""
        inv_sq = [1.0 / (s * s) for s in semi_axes]
        return ellipsoid_from_quadric(axis_quadric(center, inv_sq, 1.0, rotation), tol)

    def moved(self, m: RigidMotion, tol: Tolerances = DEFAULT_TOL) -> "Ellipsoid":
        return ellipsoid_from_quadric(transform(self.quadric, m), tol)

    def centered_at(self, center: Sequence[float], tol: Tolerances = DEFAULT_TOL) -> "Ellipsoid":
        shift = np.asarray(center, dtype=float) - np.asarray(self.center)
        return self.moved(RigidMotion.translation(shift), tol)

    def surface_points(self, u: np.ndarray) -> np.ndarray:
        """Map unit vectors (rows of ``u``) onto the surface."""
        return np.asarray(self.center) + (u * np.asarray(self.semi_axes)) @ self.rotation.T


def ellipsoid_from_quadric(q: Quadric, tol: Tolerances = DEFAULT_TOL) -> Ellipsoid:
    """Normalize ``q`` into an :class:`Ellipsoid`.

    Raises:
        DegenerateError: the quadratic part is definite but the surface is
            empty or a single point.
        NotAnEllipsoidError: any other non-ellipsoid.
    """
    if isinstance(q, Ellipsoid):
        return q
    cls = classify(q, tol)
    if cls is not QuadricClass.ELLIPSOID:
        cf = _canonical(q, tol)
        nz = cf.mu[cf.nonzero]
        if nz.size == 3 and (np.all(nz > 0) or np.all(nz < 0)):
            raise DegenerateError("definite quadratic part but empty or point ellipsoid")
        raise NotAnEllipsoidError(f"quadric is a {cls.value}, not an ellipsoid")
    cf = _canonical(q, tol)
    sign = 1.0 if np.all(cf.mu > 0) else -1.0
    e = q.scaled(sign) if sign < 0 else q
    # eigenvalues of the positive-definite part in ascending order, so the
    # longest axis comes first; cf.mu is descending
    if sign > 0:
        mu, vec = cf.mu[::-1], cf.vectors[:, ::-1]
    else:
        mu, vec = -cf.mu, cf.vectors
    axes_p = tuple(1.0 / math.sqrt(v) for v in mu)
    # det of a 4x4 matrix is unchanged by the sign flip
    det = float(np.linalg.det(q.matrix))
    delta_sq = -(axes_p[0] * axes_p[1] * axes_p[2]) ** 2 * det
    if not delta_sq > 0:
        raise DegenerateError(f"delta'^2 = {delta_sq!r} is not positive")
    center = -np.linalg.solve(e.A, np.asarray(e.b))
    return Ellipsoid(
        e.a, e.b, e.c,
        axes_p=axes_p,
        delta_p=math.sqrt(delta_sq),
        center=tuple(center),
        directions=tuple(vec.ravel()),
        flipped=sign < 0,
    )
