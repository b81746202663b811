"""Independent checks for the classifier: numeric roots and surface sampling.

Nothing here is used by the decision procedures themselves. The roots come
from the eigenvalues of a companion matrix; the sampling test evaluates
the quadric's form over a grid on the ellipsoid surface and looks for both
signs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .ellipsoid import ellipsoid_from_quadric
from .errors import LeadingZeroError
from .pencil import QuarticPoly
from .quadric import Quadric
from .tolerances import DEFAULT_TOL, Tolerances


@dataclass(frozen=True)
class RootSet:
    """Roots sorted by real part, then imaginary part.

    Roots whose imaginary part is within the clustering radius are snapped
    to the real axis; ``radius`` is relative to ``1 + |root|``.
    """

    roots: tuple[complex, ...]
    radius: float

    @property
    def real(self) -> list[float]:
        return [r.real for r in self.roots if r.imag == 0]

    @property
    def n_nonreal(self) -> int:
        return sum(1 for r in self.roots if r.imag != 0)

    @property
    def has_nonreal(self) -> bool:
        return self.n_nonreal > 0

    def zero_band(self) -> float:
        scale = max((abs(r) for r in self.roots), default=1.0)
        return self.radius * max(scale, 1.0)

    def sign_string(self) -> str:
        """Signs of the real roots in ascending order, '0' for zero roots;
        e.g. '--++'. Non-real roots are shown as 'c'."""
        band = self.zero_band()
        out = []
        for r in sorted(self.real):
            out.append("0" if abs(r) <= band else ("+" if r > 0 else "-"))
        return "".join(out) + "c" * self.n_nonreal

    def counts(self) -> dict:
        s = self.sign_string()
        return {"positive": s.count("+"), "negative": s.count("-"), "zero": s.count("0"),
                "nonreal": s.count("c")}

    def as_dict(self) -> dict:
        return {"roots": [[r.real, r.imag] for r in self.roots], "signs": self.sign_string()}


def _cluster(roots: np.ndarray, monic: np.ndarray) -> np.ndarray:
    """Merge roots that belong to one multiple root.

    Companion eigenvalues of an m-fold root scatter by about eps^(1/m) while
    their mean stays accurate. Nearby roots are replaced by their mean when
    the polynomial and its first m-1 derivatives vanish there to the
    accuracy an m-fold root allows; distinct close roots fail that test.
    """
    n = len(roots)
    groups: list[list[int]] = []
    for i in range(n):
        for g in groups:
            if any(abs(roots[i] - roots[j]) <= 1e-2 * (1.0 + abs(roots[j])) for j in g):
                g.append(i)
                break
        else:
            groups.append([i])
    out = roots.copy()
    for g in groups:
        m = len(g)
        if m < 2:
            continue
        z = roots[g].mean()
        poly = monic.astype(complex)
        ok = True
        for j in range(m):
            size = float(np.polyval(np.abs(poly), abs(z)))
            if abs(np.polyval(poly, z)) > 1e-12 ** ((m - j) / m) * size:
                ok = False
                break
            poly = np.polyder(poly)
        if ok:
            out[g] = z
    return out


def _companion_roots(c: np.ndarray) -> np.ndarray:
    """Roots of c[0] x^n + ... + c[n] via the companion matrix of the monic
    polynomial, after rescaling x so the roots are near unit size."""
    n = len(c) - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    nz = [k for k in range(n + 1) if c[n - k] != 0]   # powers with nonzero coefficient
    lo = nz[0]
    sigma = 1.0
    if lo < n:
        sigma = 2.0 ** round(math.log2(abs(c[n - lo] / c[0])) / (n - lo))
    monic = np.array([c[i] * sigma ** (n - i) for i in range(n + 1)]) / (c[0] * sigma ** n)
    comp = np.zeros((n, n))
    comp[0, :] = -monic[1:]
    comp[1:, :-1] = np.eye(n - 1)
    return _cluster(np.linalg.eigvals(comp).astype(complex), monic) * sigma


def quartic_roots(p: QuarticPoly, zero_roots: int = 0, tol: Tolerances = DEFAULT_TOL) -> RootSet:
    """All four roots of ``p``.

    Args:
        zero_roots: number of structural zero roots (two for plane pencils);
            those trailing coefficients are dropped and exact zeros added.

    Raises:
        LeadingZeroError: c4 is negligible.
    """
    coeffs = np.array(p.coeffs, dtype=float)
    if abs(coeffs[0]) <= 1e-12 * np.abs(coeffs).max():
        raise LeadingZeroError(f"leading coefficient {coeffs[0]!r} is negligible")
    core = coeffs[: 5 - zero_roots]
    roots = list(_companion_roots(core)) + [0j] * zero_roots
    snapped = []
    for r in roots:
        r = complex(r)
        if abs(r.imag) <= tol.root_cluster * (1.0 + abs(r)):
            r = complex(r.real, 0.0)
        snapped.append(r)
    snapped.sort(key=lambda z: (z.real, z.imag))
    return RootSet(tuple(snapped), tol.root_cluster)


class SampleVerdict(str, Enum):
    SEPARATED = "SeparatedSign"
    MIXED = "MixedSign"


@dataclass(frozen=True)
class SampleResult:
    verdict: SampleVerdict
    min: float
    max: float
    eta: float
    scale: float
    n: int

    @property
    def mixed(self) -> bool:
        return self.verdict is SampleVerdict.MIXED

    def tangency_gap(self) -> float:
        """Distance of the form from a sign change, relative to ``scale``:
        zero means the samples touch or cross the quadric."""
        if self.mixed:
            return 0.0
        return min(abs(self.min), abs(self.max)) / self.scale

    def as_dict(self) -> dict:
        return {"verdict": self.verdict.value, "min": self.min, "max": self.max,
                "eta": self.eta, "n": self.n}


def _form(q: Quadric, pts: np.ndarray) -> np.ndarray:
    A, b = q.A, np.asarray(q.b)
    return ((pts @ A) * pts).sum(axis=1) + 2.0 * pts @ b + q.c


@lru_cache(maxsize=8)
def surface_grid(n: int) -> np.ndarray:
    """n*n unit vectors on a spherical-angle grid (poles included)."""
    theta = np.linspace(0.0, math.pi, n)
    phi = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    st, ct = np.sin(theta)[:, None], np.cos(theta)[:, None]
    u = np.stack([st * np.cos(phi), st * np.sin(phi), np.broadcast_to(ct, (n, n))], axis=-1)
    u = u.reshape(-1, 3)
    u.setflags(write=False)
    return u


def sample_intersection(e, q: Quadric, n: int = 512, tol: Tolerances = DEFAULT_TOL) -> SampleResult:
    """Evaluate X^T Q X over an n x n grid on the ellipsoid surface.

    MixedSign iff the minimum is below -η and the maximum above η, with
    η = 1e-9 times ‖Q‖_F (1 + max |p|)².
    """
    if n < 64:
        raise ValueError(f"grid resolution must be at least 64, got {n}")
    e = ellipsoid_from_quadric(e, tol)
    pts = e.surface_points(surface_grid(n))
    vals = _form(q, pts)
    scale = float(np.linalg.norm(q.matrix)) * (1.0 + float(np.abs(pts).max())) ** 2
    eta = 1e-9 * scale
    lo, hi = float(vals.min()), float(vals.max())
    verdict = SampleVerdict.MIXED if (lo < -eta and hi > eta) else SampleVerdict.SEPARATED
    return SampleResult(verdict, lo, hi, eta, scale, n)


def concordance(e, q, n: int = 512, tol: Tolerances = DEFAULT_TOL) -> dict:
    """Classifier verdict next to both oracles, for diagnostics."""
    from .classifier import is_transversal_contact
    from .plane import Plane

    e = ellipsoid_from_quadric(e, tol)
    report = is_transversal_contact(e, q, require_smallness=False, tol=tol)
    qq = q.quadric if isinstance(q, Plane) else q
    # structural zeros were set exactly to zero by the classifier
    zero_roots = 0
    for c in (report.poly.c0, report.poly.c1):
        if c != 0.0:
            break
        zero_roots += 1
    roots = quartic_roots(report.poly, zero_roots, tol)
    sample = sample_intersection(e, qq, n, tol)
    return {
        "classifier": report.as_dict(),
        "roots": roots.as_dict(),
        "sampling": sample.as_dict(),
        "roots_agree": roots.has_nonreal == report.transversal,
        "sampling_agree": sample.mixed == report.transversal,
    }
