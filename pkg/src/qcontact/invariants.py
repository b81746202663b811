"""Euclidean invariants, classification and reduced forms of quadrics.

The invariants (det Q, the eigenvalues of the quadratic block, J, K and
J') are unchanged by rigid motions, so they determine the type of the
surface and the parameters of its reduced equation without moving it
into standard position.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from enum import Enum

import numpy as np

from .errors import DegenerateError, NumericalError, UnsupportedClassError
from .quadric import Quadric
from .tolerances import DEFAULT_TOL, Tolerances


class QuadricClass(str, Enum):
    ELLIPSOID = "Ellipsoid"
    HYPERBOLOID_ONE_SHEET = "HyperboloidOneSheet"
    HYPERBOLOID_TWO_SHEETS = "HyperboloidTwoSheets"
    ELLIPTIC_PARABOLOID = "EllipticParaboloid"
    HYPERBOLIC_PARABOLOID = "HyperbolicParaboloid"
    ELLIPTIC_CYLINDER = "EllipticCylinder"
    HYPERBOLIC_CYLINDER = "HyperbolicCylinder"
    PARABOLIC_CYLINDER = "ParabolicCylinder"
    PARALLEL_PLANES = "ParallelPlanes"
    SINGLE_PLANE = "SinglePlane"
    CONE = "Cone"
    INTERSECTING_PLANES = "IntersectingPlanes"
    OTHER = "Other"

    def __str__(self):
        return self.value


# classes with a reduced-equation row (and a smallness rule)
REDUCIBLE = frozenset({
    QuadricClass.ELLIPSOID,
    QuadricClass.HYPERBOLOID_ONE_SHEET,
    QuadricClass.HYPERBOLOID_TWO_SHEETS,
    QuadricClass.ELLIPTIC_PARABOLOID,
    QuadricClass.HYPERBOLIC_PARABOLOID,
    QuadricClass.ELLIPTIC_CYLINDER,
    QuadricClass.HYPERBOLIC_CYLINDER,
    QuadricClass.PARABOLIC_CYLINDER,
    QuadricClass.PARALLEL_PLANES,
})


def _rotation(app: float, aqq: float, apq: float) -> tuple[float, float]:
    """Cosine and sine of the Jacobi rotation that annihilates a_pq."""
    theta = (aqq - app) / (2.0 * apq)
    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    cs = 1.0 / math.sqrt(t * t + 1.0)
    return cs, t * cs


def eigh_sym3(A) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric 3x3 matrix by cyclic Jacobi.

    Returns eigenvalues in descending order and the matching unit
    eigenvectors as columns. Jacobi keeps full accuracy for clustered
    and repeated eigenvalues, which the trigonometric cubic does not.
    """
    m = np.asarray(A, dtype=float)
    a = m.tolist()
    v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    for _ in range(50):
        off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]
        diag = a[0][0] * a[0][0] + a[1][1] * a[1][1] + a[2][2] * a[2][2]
        if off <= 1e-36 * diag or off == 0.0:
            break
        for p, q, r in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            apq = a[p][q]
            if apq == 0.0:
                continue
            cs, sn = _rotation(a[p][p], a[q][q], apq)
            app, aqq, arp, arq = a[p][p], a[q][q], a[r][p], a[r][q]
            a[p][p] = cs * cs * app - 2.0 * cs * sn * apq + sn * sn * aqq
            a[q][q] = sn * sn * app + 2.0 * cs * sn * apq + cs * cs * aqq
            a[p][q] = a[q][p] = 0.0
            a[r][p] = a[p][r] = cs * arp - sn * arq
            a[r][q] = a[q][r] = sn * arp + cs * arq
            for row in v:
                vp, vq = row[p], row[q]
                row[p] = cs * vp - sn * vq
                row[q] = sn * vp + cs * vq
    w = np.array([a[0][0], a[1][1], a[2][2]])
    # stable sort keeps solver order among ties
    order = np.argsort(-w, kind="stable")
    return w[order], np.array(v)[:, order]


def eigenvalues_sym3(A) -> tuple[float, float, float]:
    """Eigenvalues of a symmetric 3x3 matrix, descending."""
    w, _ = eigh_sym3(A)
    return tuple(float(x) for x in w)


@dataclass(frozen=True)
class InvariantSet:
    detQ: float
    mu: tuple[float, float, float]
    trQ00: float
    detQ00: float
    J: float
    K: float
    Jp: float

    def as_dict(self) -> dict:
        return {"detQ": self.detQ, "mu": list(self.mu), "trQ00": self.trQ00,
                "detQ00": self.detQ00, "J": self.J, "K": self.K, "Jp": self.Jp}


_KEEP = (np.array([1, 2, 3]), np.array([0, 2, 3]), np.array([0, 1, 3]))


def _minor3(m: np.ndarray, drop: int) -> float:
    keep = _KEEP[drop]
    return float(np.linalg.det(m[keep[:, None], keep]))


@lru_cache(maxsize=8192)
def invariant_set(q: Quadric, tol: Tolerances = DEFAULT_TOL) -> InvariantSet:
    """Rigid-motion invariants of ``q``, cross-checked between routes."""
    m = q.matrix
    a = q.A
    mu = eigenvalues_sym3(a)
    J = (a[0, 0] * a[1, 1] - a[0, 1] ** 2) + (a[0, 0] * a[2, 2] - a[0, 2] ** 2) \
        + (a[1, 1] * a[2, 2] - a[1, 2] ** 2)
    K = _minor3(m, 0) + _minor3(m, 1) + _minor3(m, 2)
    c = m[3, 3]
    Jp = sum(a[i, i] * c - m[i, 3] ** 2 for i in range(3))
    detQ00 = mu[0] * mu[1] * mu[2]
    # the eigen route and the minor route must agree
    s = max(np.abs(a).max(), 1e-300)
    J_eig = mu[0] * mu[1] + mu[0] * mu[2] + mu[1] * mu[2]
    if abs(J - J_eig) > tol.eps_rel * 3 * s * s:
        raise NumericalError(f"J cross-check failed: minors {J!r} vs eigenvalues {J_eig!r}")
    if abs(detQ00 - np.linalg.det(a)) > tol.eps_rel * 6 * s ** 3:
        raise NumericalError("det(Q00) cross-check failed")
    return InvariantSet(
        detQ=float(np.linalg.det(m)), mu=mu, trQ00=float(sum(mu)), detQ00=float(detQ00),
        J=float(J), K=float(K), Jp=float(Jp),
    )


@dataclass(frozen=True)
class _Canonical:
    """Quadric after rotating to the eigenbasis of A and centering along the
    non-null directions; all zero tests are made here because this frame is
    rigid-invariant, unlike the raw matrix entries."""

    mu: np.ndarray          # descending
    vectors: np.ndarray     # columns
    nonzero: np.ndarray     # bool mask over mu
    b_null: np.ndarray      # linear part along null directions of A
    b_null_zero: bool
    c_center: float         # constant term after centering
    c_zero: bool


@lru_cache(maxsize=8192)
def _canonical(q: Quadric, tol: Tolerances) -> _Canonical:
    mu, vec = eigh_sym3(q.A)
    b = np.asarray(q.b)
    sA = np.abs(mu).max()
    nonzero = np.abs(mu) > tol.eps_rel * sA if sA > 0 else np.zeros(3, dtype=bool)
    bt = vec.T @ b
    shift = float(np.sum(bt[nonzero] ** 2 / mu[nonzero]))
    c_center = q.c - shift
    cancelled = abs(q.c) + float(np.sum(bt[nonzero] ** 2 / np.abs(mu[nonzero])))
    b_null = bt[~nonzero]
    bscale = np.linalg.norm(b) + math.sqrt(sA * cancelled)
    b_null_zero = bool(np.linalg.norm(b_null) <= tol.eps_rel * bscale) if b_null.size else True
    c_zero = abs(c_center) <= tol.eps_rel * cancelled
    for arr in (mu, vec, nonzero, b_null):
        arr.setflags(write=False)   # shared through the cache
    return _Canonical(mu, vec, nonzero, b_null, b_null_zero, c_center, c_zero)


def _classify_canonical(cf: _Canonical) -> QuadricClass:
    C = QuadricClass
    nz = cf.mu[cf.nonzero]
    rank = nz.size
    if rank == 0:
        return C.SINGLE_PLANE if not cf.b_null_zero else C.OTHER
    npos = int(np.sum(nz > 0))
    definite = npos in (0, rank)
    # orient so that the majority of the nonzero eigenvalues are positive
    s = 1.0 if 2 * npos >= rank else -1.0
    if rank == 3:
        if definite:
            if cf.c_zero or s * cf.c_center > 0:
                return C.OTHER  # point or imaginary ellipsoid
            return C.ELLIPSOID
        if cf.c_zero:
            return C.CONE
        return C.HYPERBOLOID_ONE_SHEET if s * cf.c_center < 0 else C.HYPERBOLOID_TWO_SHEETS
    if rank == 2:
        if not cf.b_null_zero:
            return C.ELLIPTIC_PARABOLOID if definite else C.HYPERBOLIC_PARABOLOID
        if definite:
            return C.ELLIPTIC_CYLINDER if (not cf.c_zero and s * cf.c_center < 0) else C.OTHER
        return C.INTERSECTING_PLANES if cf.c_zero else C.HYPERBOLIC_CYLINDER
    # rank 1
    if not cf.b_null_zero:
        return C.PARABOLIC_CYLINDER
    return C.PARALLEL_PLANES if (not cf.c_zero and s * cf.c_center < 0) else C.OTHER


def classify(q: Quadric, tol: Tolerances = DEFAULT_TOL) -> QuadricClass:
    """Euclidean type of ``q``; unclassifiable or imaginary cases give ``Other``."""
    return _classify_canonical(_canonical(q, tol))


@dataclass(frozen=True)
class ReducedForm:
    """Parameters of the reduced equation of a quadric.

    ``params`` uses the names a, b, c (axis parameters) and d, L or M as the
    reduced equation of the class prescribes. ``orientation`` is the sign
    the matrix was multiplied by for the formulas to apply.
    """

    cls: QuadricClass
    params: dict
    orientation: int

    def __getitem__(self, key):
        return self.params[key]

    def as_dict(self) -> dict:
        return {"class": self.cls.value, "params": dict(self.params), "orientation": self.orientation}


def _ax(mu: float) -> float:
    return 1.0 / math.sqrt(abs(mu))


def _positive(name: str, value: float, cls: QuadricClass) -> float:
    if not value > 0:
        raise DegenerateError(f"{cls.value}: {name} = {value!r} is not positive")
    return value


def reduced_form(q: Quadric, tol: Tolerances = DEFAULT_TOL) -> ReducedForm:
    """Reduced-equation parameters computed from the invariants.

    Row by row:
      ellipsoid          x²/a²+y²/b²+z²/c² = d²,  d² = -a²b²c² det Q
      one-sheet          x²/a²+y²/b²-z²/c² = d²,  d² =  a²b²c² det Q
      two-sheet          x²/a²+y²/b²-z²/c² = -d², d² = -a²b²c² det Q
      paraboloids        x²/a² ± y²/b² = L z,     L² = -4 det Q / J
      cylinders          x²/a² ± y²/b² = M²,      M² = -K / J
      parabolic cylinder x²/a² = d z,             d² = 4 K a²  (K > 0 orientation)
      parallel planes    x²/a² = d²,              d² = -a² J'
    """
    C = QuadricClass
    cls = classify(q, tol)
    if cls not in REDUCIBLE:
        raise UnsupportedClassError(f"no reduced form for class {cls.value}")
    inv = invariant_set(q, tol)
    mu = np.array(inv.mu)
    cf = _canonical(q, tol)
    nz = mu[cf.nonzero]
    npos = int(np.sum(nz > 0))
    s = 1 if 2 * npos >= nz.size else -1
    smu = np.sort(s * nz)[::-1]    # oriented nonzero eigenvalues, descending
    p: dict[str, float] = {}
    if cls is C.ELLIPSOID:
        a, b, c = sorted((_ax(v) for v in smu), reverse=True)
        p = {"a": a, "b": b, "c": c}
        p["d"] = math.sqrt(_positive("d'^2", -(a * b * c) ** 2 * inv.detQ, cls))
    elif cls in (C.HYPERBOLOID_ONE_SHEET, C.HYPERBOLOID_TWO_SHEETS):
        a, b = sorted((_ax(v) for v in smu[:2]), reverse=True)
        c = _ax(smu[2])
        sign = 1.0 if cls is C.HYPERBOLOID_ONE_SHEET else -1.0
        p = {"a": a, "b": b, "c": c}
        p["d"] = math.sqrt(_positive("d'^2", sign * (a * b * c) ** 2 * inv.detQ, cls))
    elif cls in (C.ELLIPTIC_PARABOLOID, C.HYPERBOLIC_PARABOLOID):
        a, b = sorted((_ax(v) for v in smu), reverse=True)
        p = {"a": a, "b": b}
        p["L"] = math.sqrt(_positive("L^2", -4.0 * inv.detQ / inv.J, cls))
    elif cls is C.ELLIPTIC_CYLINDER:
        a, b = sorted((_ax(v) for v in smu), reverse=True)
        p = {"a": a, "b": b}
        p["M"] = math.sqrt(_positive("M^2", -s * inv.K / inv.J, cls))
    elif cls is C.HYPERBOLIC_CYLINDER:
        # the orientation with K > 0 makes M² positive; the positive
        # eigenvalue then names the transverse axis a
        s = 1 if inv.K > 0 else -1
        pos = [v for v in s * nz if v > 0]
        neg = [v for v in s * nz if v < 0]
        p = {"a": _ax(pos[0]), "b": _ax(neg[0])}
        p["M"] = math.sqrt(_positive("M^2", -s * inv.K / inv.J, cls))
    elif cls is C.PARABOLIC_CYLINDER:
        s = 1 if inv.K > 0 else -1
        a = _ax(nz[0])
        p = {"a": a, "d": math.sqrt(_positive("d'^2", 4.0 * s * inv.K * a * a, cls))}
    elif cls is C.PARALLEL_PLANES:
        a = _ax(nz[0])
        p = {"a": a, "d": math.sqrt(_positive("d'^2", -a * a * inv.Jp, cls))}
    return ReducedForm(cls, p, s)


def orientation(q: Quadric, cls: QuadricClass | None = None, tol: Tolerances = DEFAULT_TOL) -> int:
    """Sign that brings ``q`` to the orientation of its standard equation.

    Standard equations: ellipsoid, paraboloids, cylinders and planes with
    the (majority of) nonzero eigenvalues positive; the hyperbolic cylinder
    as x²/a² - y²/b² - 1; the one-sheet hyperboloid and hyperbolic
    paraboloid as given (their sign tables are symmetric).
    """
    C = QuadricClass
    cls = cls or classify(q, tol)
    if cls in (C.HYPERBOLOID_ONE_SHEET, C.HYPERBOLIC_PARABOLOID):
        return 1
    cf = _canonical(q, tol)
    if cls is C.HYPERBOLIC_CYLINDER:
        K = _minor3(q.matrix, 0) + _minor3(q.matrix, 1) + _minor3(q.matrix, 2)
        return 1 if K > 0 else -1
    nz = cf.mu[cf.nonzero]
    if nz.size == 0:
        return 1
    return 1 if 2 * int(np.sum(nz > 0)) >= nz.size else -1


def canonical_frame(q: Quadric, tol: Tolerances = DEFAULT_TOL):
    """(eigenvalues, eigenvector columns, center-or-None) of ``q``'s quadratic part."""
    cf = _canonical(q, tol)
    center = None
    if cf.nonzero.all():
        center = -np.linalg.solve(q.A, np.asarray(q.b))
    return cf.mu, cf.vectors, center
