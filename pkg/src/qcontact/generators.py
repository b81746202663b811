"""Random test configurations: quadrics in standard form, moved rigidly,
with small ellipsoids placed near their surface.

Used by the test suite and the experiment scripts. Each standard form is
written with the sign whose negative region is the bounded or "inner"
side, as in the tables the classifier encodes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ellipsoid import Ellipsoid
from .errors import QContactError
from .invariants import QuadricClass
from .quadric import Quadric, RigidMotion, axis_quadric, random_rotation, transform
from .smallness import is_small_shape
from .tolerances import DEFAULT_TOL, Tolerances

C = QuadricClass

TABLE_CLASSES = (C.ELLIPSOID, C.HYPERBOLOID_ONE_SHEET, C.HYPERBOLOID_TWO_SHEETS,
                 C.ELLIPTIC_PARABOLOID, C.HYPERBOLIC_PARABOLOID, C.ELLIPTIC_CYLINDER,
                 C.HYPERBOLIC_CYLINDER, C.PARABOLIC_CYLINDER, C.PARALLEL_PLANES)


def standard_quadric(cls: QuadricClass, a: float, b: float = 1.0, c: float = 1.0) -> Quadric:
    """The standard equation of ``cls`` with parameters a, b, c, written as
    ``X^T Q X = lhs - rhs``."""
    ia, ib, ic = 1 / a ** 2, 1 / b ** 2, 1 / c ** 2
    z = (0.0, 0.0, 0.0)
    if cls is C.ELLIPSOID:
        return axis_quadric(z, (ia, ib, ic))
    if cls is C.HYPERBOLOID_ONE_SHEET:
        return axis_quadric(z, (ia, ib, -ic))
    if cls is C.HYPERBOLOID_TWO_SHEETS:
        return axis_quadric(z, (ia, ib, -ic), rhs=-1.0)
    if cls is C.ELLIPTIC_PARABOLOID:
        return Quadric((ia, ib, 0, 0, 0, 0), (0, 0, -0.5), 0.0)
    if cls is C.HYPERBOLIC_PARABOLOID:
        return Quadric((ia, -ib, 0, 0, 0, 0), (0, 0, -0.5), 0.0)
    if cls is C.ELLIPTIC_CYLINDER:
        return axis_quadric(z, (ia, ib, 0.0))
    if cls is C.HYPERBOLIC_CYLINDER:
        return axis_quadric(z, (ia, -ib, 0.0))
    if cls is C.PARABOLIC_CYLINDER:
        return Quadric((ia, 0, 0, 0, 0, 0), (0, 0, -0.5), 0.0)
    if cls is C.PARALLEL_PLANES:
        return axis_quadric(z, (ia, 0.0, 0.0))
    raise ValueError(f"no standard form for {cls}")


def random_params(cls: QuadricClass, rng: np.random.Generator) -> dict:
    """Parameters respecting the ordering each standard form assumes."""
    a, b, c = np.sort(rng.uniform(1.0, 4.0, size=3))[::-1]
    if cls is C.ELLIPSOID:
        return {"a": a, "b": b, "c": c}
    if cls in (C.HYPERBOLOID_ONE_SHEET, C.HYPERBOLOID_TWO_SHEETS):
        return {"a": a, "b": b, "c": rng.uniform(1.0, 4.0)}
    if cls in (C.ELLIPTIC_PARABOLOID, C.HYPERBOLIC_PARABOLOID, C.ELLIPTIC_CYLINDER):
        return {"a": a, "b": b}
    if cls is C.HYPERBOLIC_CYLINDER:
        return {"a": rng.uniform(1.0, 4.0), "b": rng.uniform(1.0, 4.0)}
    return {"a": a}


def surface_point(cls: QuadricClass, p: dict, rng: np.random.Generator) -> np.ndarray:
    """A random point on the standard surface, kept near its vertex region."""
    a, b, c = p.get("a", 1.0), p.get("b", 1.0), p.get("c", 1.0)
    phi = rng.uniform(0, 2 * math.pi)
    u = rng.uniform(-1.0, 1.0)
    sgn = rng.choice([-1.0, 1.0])
    if cls is C.ELLIPSOID:
        th = math.acos(rng.uniform(-1, 1))
        return np.array([a * math.sin(th) * math.cos(phi), b * math.sin(th) * math.sin(phi), c * math.cos(th)])
    if cls is C.HYPERBOLOID_ONE_SHEET:
        return np.array([a * math.cosh(u) * math.cos(phi), b * math.cosh(u) * math.sin(phi), c * math.sinh(u)])
    if cls is C.HYPERBOLOID_TWO_SHEETS:
        return np.array([a * math.sinh(u) * math.cos(phi), b * math.sinh(u) * math.sin(phi),
                         sgn * c * math.cosh(u)])
    if cls is C.ELLIPTIC_PARABOLOID:
        r = rng.uniform(0, 1.5)
        x, y = a * r * math.cos(phi), b * r * math.sin(phi)
        return np.array([x, y, x * x / a ** 2 + y * y / b ** 2])
    if cls is C.HYPERBOLIC_PARABOLOID:
        x, y = rng.uniform(-1.5, 1.5, size=2) * (a, b)
        return np.array([x, y, x * x / a ** 2 - y * y / b ** 2])
    if cls is C.ELLIPTIC_CYLINDER:
        return np.array([a * math.cos(phi), b * math.sin(phi), rng.uniform(-2, 2)])
    if cls is C.HYPERBOLIC_CYLINDER:
        return np.array([sgn * a * math.cosh(u), b * math.sinh(u), rng.uniform(-2, 2)])
    if cls is C.PARABOLIC_CYLINDER:
        x = rng.uniform(-1.5, 1.5) * a
        return np.array([x, rng.uniform(-2, 2), x * x / a ** 2])
    if cls is C.PARALLEL_PLANES:
        return np.array([sgn * a, rng.uniform(-2, 2), rng.uniform(-2, 2)])
    raise ValueError(f"no surface for {cls}")


def unit_normal(q: Quadric, point: np.ndarray) -> np.ndarray:
    g = 2.0 * (q.A @ point + np.asarray(q.b))
    return g / np.linalg.norm(g)


@dataclass(frozen=True)
class Config:
    """One generated pair: the ellipsoid, the quadric (both moved by the same
    motion), and how it was built."""

    cls: QuadricClass
    ellipsoid: Ellipsoid
    quadric: Quadric
    params: dict
    offset: float          # signed distance of the center from the surface, along the normal
    flipped: bool          # quadric matrix negated relative to the standard form


def random_ellipsoid_shape(rng: np.random.Generator, max_axis: float) -> tuple[float, float, float]:
    alpha = rng.uniform(0.05, 1.0) * max_axis
    beta = alpha * rng.uniform(0.6, 1.0)
    gamma = beta * rng.uniform(0.6, 1.0)
    return alpha, beta, gamma


def random_config(cls: QuadricClass, rng: np.random.Generator, offset_range: float = 2.0,
                  flip: bool | None = None, tol: Tolerances = DEFAULT_TOL,
                  max_tries: int = 200, offset: float | None = None) -> Config:
    """A small ellipsoid near a random quadric of class ``cls``.

    The center sits at ``offset * gamma`` along the surface normal from a
    random surface point, offset uniform in [-offset_range, offset_range]
    unless given; both surfaces then undergo one random rigid motion.
    """
    for _ in range(max_tries):
        params = random_params(cls, rng)
        std = standard_quadric(cls, **params)
        axes = random_ellipsoid_shape(rng, 1.0)
        try:
            # axes are drawn in descending order with delta' = 1
            if not is_small_shape((*axes, 1.0), std, tol).small:
                continue
        except QContactError:
            continue
        rot = random_rotation(rng)
        p0 = surface_point(cls, params, rng)
        off = float(rng.uniform(-offset_range, offset_range)) if offset is None else float(offset)
        center = p0 + off * axes[2] * unit_normal(std, p0)
        m = RigidMotion.random(rng, translation_scale=2.0)
        do_flip = bool(rng.random() < 0.5) if flip is None else flip
        q = transform(std, m)
        if do_flip:
            q = -q
        e = Ellipsoid.from_axes(m.apply(center), axes, m.rotation @ rot, tol)
        return Config(cls, e, q, params, off, do_flip)
    raise RuntimeError(f"could not draw a small ellipsoid for {cls.value}")


def tangent_config(cls: QuadricClass, rng: np.random.Generator, tol: Tolerances = DEFAULT_TOL,
                   max_tries: int = 200) -> Config:
    """A small sphere touching a random quadric of class ``cls`` at one point.

    The sphere sits on the surface normal at a distance of exactly its
    radius, on a random side, so the pair is tangent by construction.
    """
    for _ in range(max_tries):
        params = random_params(cls, rng)
        std = standard_quadric(cls, **params)
        r = float(rng.uniform(0.05, 1.0))
        try:
            if not is_small_shape((r, r, r, 1.0), std, tol).small:
                continue
        except QContactError:
            continue
        p0 = surface_point(cls, params, rng)
        side = float(rng.choice([-1.0, 1.0]))
        center = p0 + side * r * unit_normal(std, p0)
        m = RigidMotion.random(rng, translation_scale=2.0)
        do_flip = bool(rng.random() < 0.5)
        q = transform(std, m)
        if do_flip:
            q = -q
        e = Ellipsoid.from_axes(m.apply(center), (r, r, r), tol=tol)
        return Config(cls, e, q, params, side, do_flip)
    raise RuntimeError(f"could not draw a small sphere for {cls.value}")
