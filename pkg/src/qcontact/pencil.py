"""Characteristic polynomial det(λE + Q) of a pencil of quadrics.

Coefficients are recovered by evaluation and interpolation: the
determinant is computed at five nodes and the fixed Vandermonde system is
solved with its exact inverse. Both matrices are first scaled by powers of
two so their entries are of order one; the rescaling is undone exactly on
the coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .quadric import Quadric

_NODES = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
# 24 * inverse Vandermonde is an integer matrix; rows give c0..c4
_W24 = np.rint(24.0 * np.linalg.inv(np.vander(_NODES, 5, increasing=True)))


class Sign(IntEnum):
    NEG = -1
    ZERO = 0
    POS = 1

    @property
    def symbol(self) -> str:
        return "-0+"[self.value + 1]


def banded_sign(value: float, band: float) -> Sign:
    """Sign of ``value`` with ``|value| <= band`` read as zero."""
    if abs(value) <= band:
        return Sign.ZERO
    return Sign.POS if value > 0 else Sign.NEG


@dataclass(frozen=True)
class QuarticPoly:
    """c4 λ⁴ + c3 λ³ + c2 λ² + c1 λ + c0."""

    c4: float
    c3: float
    c2: float
    c1: float
    c0: float

    @classmethod
    def from_coeffs(cls, coeffs) -> "QuarticPoly":
        """From (c4, c3, c2, c1, c0)."""
        c = [float(v) for v in coeffs]
        if len(c) != 5:
            raise ValueError(f"expected five coefficients, got {len(c)}")
        return cls(*c)

    @classmethod
    def from_roots(cls, roots, lead: float = 1.0) -> "QuarticPoly":
        coeffs = lead * np.real_if_close(np.poly(np.asarray(roots)))
        return cls.from_coeffs(np.real(coeffs))

    @property
    def coeffs(self) -> tuple[float, float, float, float, float]:
        return (self.c4, self.c3, self.c2, self.c1, self.c0)

    def coefficient(self, k: int) -> float:
        """Coefficient of λ^k."""
        return self.coeffs[4 - k]

    def reversed(self) -> "QuarticPoly":
        """λ⁴ p(1/λ): the polynomial of the pencil with swapped roles."""
        return QuarticPoly(*self.coeffs[::-1])

    def negated_argument(self) -> "QuarticPoly":
        """p(-λ): the polynomial after negating the second quadric."""
        return QuarticPoly(self.c4, -self.c3, self.c2, -self.c1, self.c0)

    def with_zeros(self, ks) -> "QuarticPoly":
        """Copy with the coefficients of λ^k, k in ``ks``, set to exactly zero."""
        c = list(self.coeffs)
        for k in ks:
            c[4 - k] = 0.0
        return QuarticPoly(*c)

    def __call__(self, lam):
        return eval_quartic(self, lam)

    def as_list(self) -> list[float]:
        return list(self.coeffs)


def eval_quartic(p: QuarticPoly, lam):
    """Horner evaluation; works for scalars, complex values and arrays."""
    acc = p.c4
    for c in (p.c3, p.c2, p.c1, p.c0):
        acc = acc * lam + c
    return acc


def _pow2_near(x: float) -> float:
    return 2.0 ** round(math.log2(x)) if x > 0 else 1.0


def _interpolate(Es: np.ndarray, Qs: np.ndarray) -> np.ndarray:
    """c0..c4 of det(μ Es + Qs)."""
    f = np.linalg.det(_NODES[:, None, None] * Es + Qs)
    return (_W24 @ f) / 24.0


def _balance(t: np.ndarray) -> float:
    """Power of two σ that brings the outermost significant coefficients of
    t(μ) to comparable size under μ -> σμ, i.e. roots near unit magnitude."""
    big = np.abs(t).max()
    if big == 0:
        return 1.0
    ks = [k for k in range(5) if abs(t[k]) > 1e-10 * big]
    lo, hi = ks[0], ks[-1]
    if lo == hi:
        return 1.0
    return _pow2_near((abs(t[lo]) / abs(t[hi])) ** (1.0 / (hi - lo)))


def char_poly(e: Quadric, q: Quadric) -> QuarticPoly:
    """Coefficients of det(λE + Q), E = ``e`` and Q = ``q``."""
    E, Q = e.matrix, q.matrix
    sE = _pow2_near(float(np.abs(E).max()))
    sQ = _pow2_near(float(np.abs(Q).max()))
    Es, Qs = E / sE, Q / sQ
    # second pass with nodes rescaled to the magnitude of the roots
    sigma = _balance(_interpolate(Es, Qs))
    t = _interpolate(Es * sigma, Qs)
    # det(λE + Q) = sQ⁴ det(μ σEs + Qs) with μ = λ sE/(σ sQ); powers of two
    out = [float(t[k] * sQ ** (4 - k) * (sE / sigma) ** k) for k in range(5)]
    return QuarticPoly(*out[::-1])


def coefficient_scales(e: Quadric, q: Quadric) -> tuple[float, ...]:
    """Natural magnitude of each coefficient, (c4 .. c0).

    The coefficient of λ^k is a sum of C(4,k)-many mixed 4x4 determinants
    built from k columns of E and 4-k of Q; each is bounded by
    ‖E‖^k ‖Q‖^(4-k) in the Frobenius norm.
    """
    nE = float(np.linalg.norm(e.matrix))
    nQ = float(np.linalg.norm(q.matrix))
    return tuple(math.comb(4, k) * nE ** k * nQ ** (4 - k) for k in range(4, -1, -1))
