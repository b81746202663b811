"""Quadrics as symmetric homogeneous 4x4 matrices.

A quadric is stored through the coefficients of its general equation

    sum_ij a_ij x_i x_j + sum_i 2 b_i x_i + c = 0,   a_ij = a_ji

so that with X = (x, y, z, 1) the left side equals X^T Q X where

    Q = [[A, b], [b^T, c]].

Note the doubling: the linear term of ``x^2 + y^2 + 8z`` is stored as
``b = (0, 0, 4)``, and an off-diagonal ``a12`` contributes ``2 a12 xy``.
Quadrics keep the sign the user gave them; the regions X^T Q X <= 0 and
X^T Q X >= 0 are named after that sign.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import AllZeroError, InvalidMotionError
from .tolerances import DEFAULT_TOL, Tolerances

Vec3 = tuple[float, float, float]

# (row, col) of the six unique entries of A, in storage order
_A_INDEX = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))


def _frozen(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class Quadric:
    """Quadric surface ``X^T Q X = 0``.

    Attributes:
        a: the six unique entries of A as (a11, a22, a33, a12, a13, a23).
        b: linear coefficients (b1, b2, b3), each appearing doubled.
        c: constant term.
    """

    a: tuple[float, ...]
    b: Vec3
    c: float

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        b = tuple(float(v) for v in self.b)
        if len(a) != 6 or len(b) != 3:
            raise ValueError(f"expected 6 quadratic and 3 linear coefficients, got {len(a)} and {len(b)}")
        c = float(self.c)
        values = a + b + (c,)
        if not all(np.isfinite(values)):
            raise ValueError("quadric coefficients must be finite")
        if not any(values):
            raise AllZeroError("all ten quadric coefficients are zero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @classmethod
    def from_matrix(cls, m) -> "Quadric":
        """Build from a 4x4 matrix; the upper triangle is taken as authoritative."""
        m = np.asarray(m, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        a = tuple(m[i, j] for i, j in _A_INDEX)
        return cls(a, tuple(m[:3, 3]), m[3, 3])

    @cached_property
    def A(self) -> np.ndarray:
        out = np.empty((3, 3))
        for v, (i, j) in zip(self.a, _A_INDEX):
            out[i, j] = out[j, i] = v
        return _frozen(out)

    @cached_property
    def matrix(self) -> np.ndarray:
        out = np.empty((4, 4))
        out[:3, :3] = self.A
        out[:3, 3] = out[3, :3] = self.b
        out[3, 3] = self.c
        return _frozen(out)

    def coefficients(self) -> tuple[float, ...]:
        """The ten coefficients in ``quadric_from_coefficients`` order."""
        return self.a + self.b + (self.c,)

    def scaled(self, k: float) -> "Quadric":
        return Quadric(tuple(k * v for v in self.a), tuple(k * v for v in self.b), k * self.c)

    def __neg__(self) -> "Quadric":
        return self.scaled(-1.0)

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "c": self.c}

    @classmethod
    def from_json(cls, obj: dict) -> "Quadric":
        return cls(obj["a"], obj["b"], obj["c"])


def quadric_from_coefficients(a11, a22, a33, a12, a13, a23, b1, b2, b3, c) -> Quadric:
    """Quadric ``a11 x^2 + ... + 2 a12 xy + ... + 2 b1 x + ... + c = 0``."""
    return Quadric((a11, a22, a33, a12, a13, a23), (b1, b2, b3), c)


def sphere(center: Sequence[float], radius: float) -> Quadric:
    """``|p - center|^2 - radius^2``, negative inside."""
    x0 = np.asarray(center, dtype=float)
    return Quadric((1, 1, 1, 0, 0, 0), tuple(-x0), float(x0 @ x0) - radius * radius)


def axis_quadric(center: Sequence[float], inv_sq: Sequence[float], rhs: float = 1.0,
                 rotation=None) -> Quadric:
    """``sum_i w_i u_i^2 - rhs`` with ``u = R^T (p - center)``.

    ``inv_sq`` holds the weights w_i (``1/a^2`` for an ellipsoid axis,
    negative for hyperbolic axes, zero for a cylinder axis).
    """
    R = np.eye(3) if rotation is None else np.asarray(rotation, dtype=float)
    x0 = np.asarray(center, dtype=float)
    A = R @ np.diag(np.asarray(inv_sq, dtype=float)) @ R.T
    m = np.zeros((4, 4))
    m[:3, :3] = A
    m[:3, 3] = m[3, :3] = -A @ x0
    m[3, 3] = x0 @ A @ x0 - rhs
    return Quadric.from_matrix(m)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform proper rotation from the QR factorization of a Gaussian matrix."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


@dataclass(frozen=True)
class RigidMotion:
    """Proper rigid motion ``p -> R p + t``."""

    R: tuple[float, ...]
    t: Vec3 = (0.0, 0.0, 0.0)
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        R = np.asarray(self.R, dtype=float).reshape(3, 3)
        t = tuple(float(v) for v in np.asarray(self.t, dtype=float).reshape(3))
        err = np.abs(R.T @ R - np.eye(3)).max()
        if not err <= self.tol.orth:
            raise InvalidMotionError(f"rotation is not orthogonal: max|R^T R - I| = {err:.3e}")
        det = np.linalg.det(R)
        if abs(det - 1.0) > self.tol.orth:
            raise InvalidMotionError(f"rotation is not proper: det R = {det:.12g}")
        object.__setattr__(self, "R", tuple(R.ravel()))
        object.__setattr__(self, "t", t)

    @classmethod
    def identity(cls) -> "RigidMotion":
        return cls(tuple(np.eye(3).ravel()))

    @classmethod
    def translation(cls, t: Sequence[float]) -> "RigidMotion":
        return cls(tuple(np.eye(3).ravel()), tuple(t))

    @classmethod
    def random(cls, rng: np.random.Generator, translation_scale: float = 1.0) -> "RigidMotion":
        """Uniformly random rotation and Gaussian translation."""
        q = random_rotation(rng)
        return cls(tuple(q.ravel()), tuple(translation_scale * rng.normal(size=3)))

    @property
    def rotation(self) -> np.ndarray:
        return np.asarray(self.R).reshape(3, 3)

    @property
    def translation_vector(self) -> np.ndarray:
        return np.asarray(self.t)

    @property
    def homogeneous(self) -> np.ndarray:
        h = np.eye(4)
        h[:3, :3] = self.rotation
        h[:3, 3] = self.t
        return h

    def apply(self, p) -> np.ndarray:
        return self.rotation @ np.asarray(p, dtype=float) + self.translation_vector

    def compose(self, first: "RigidMotion") -> "RigidMotion":
        """``self ∘ first``: apply ``first``, then ``self``."""
        R = self.rotation @ first.rotation
        # re-orthonormalize so long chains stay within tolerance
        u, _, vt = np.linalg.svd(R)
        R = u @ vt
        return RigidMotion(tuple(R.ravel()), tuple(self.apply(first.t)), self.tol)

    def inverse(self) -> "RigidMotion":
        Rt = self.rotation.T
        return RigidMotion(tuple(Rt.ravel()), tuple(-Rt @ self.translation_vector), self.tol)


def evaluate(q: Quadric, p: Sequence[float]) -> float:
    """X^T Q X at X = (p, 1)."""
    x = np.append(np.asarray(p, dtype=float), 1.0)
    return float(x @ q.matrix @ x)


def transform(q: Quadric, m: RigidMotion) -> Quadric:
    """The quadric moved by ``m``: ``evaluate(transform(q, m), m.apply(p)) == evaluate(q, p)``."""
    if not isinstance(m, RigidMotion):
        raise InvalidMotionError(f"expected a RigidMotion, got {type(m).__name__}")
    Rt = m.rotation.T
    hinv = np.eye(4)
    hinv[:3, :3] = Rt
    hinv[:3, 3] = -Rt @ m.translation_vector
    return Quadric.from_matrix(hinv.T @ q.matrix @ hinv)


def translated(q: Quadric, shift: Sequence[float]) -> Quadric:
    """The quadric moved by the pure translation ``p -> p + shift``."""
    s = np.asarray(shift, dtype=float)
    A, b = q.A, np.asarray(q.b)
    # q'(x) = q(x - s)
    b2 = b - A @ s
    c2 = float(s @ A @ s - 2.0 * b @ s + q.c)
    return Quadric(q.a, tuple(b2), c2)
