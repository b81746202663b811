"""Smallness of an ellipsoid with respect to another quadric.

An ellipsoid is small with respect to a quadric when the two surfaces can
never meet in two separate curves, whatever their relative placement.
The test compares a size condition (the ellipsoid fits between the
relevant parts of the quadric) and a curvature condition (the ellipsoid
bends at least as much as the quadric anywhere).

``is_small`` works from the invariants of arbitrary matrices;
``is_small_standard`` takes semi-axes of quadrics in standard position.
The two agree on every class except where the invariant table and the
standard-form table state different rules:

* two-sheet hyperboloid, curvature: invariant rule ``c'/(d'c'²)`` versus
  standard rule ``c/a²``;
* hyperbolic cylinder, size: invariant rule ``M b' >= δ'α'`` versus
  standard rule ``a >= α``.

Both rules are kept as written; see ``DISCREPANT_ROWS``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .ellipsoid import Ellipsoid, ellipsoid_from_quadric
from .errors import BadOrderingError, UnsupportedClassError
from .invariants import REDUCIBLE, QuadricClass, reduced_form
from .quadric import Quadric
from .tolerances import DEFAULT_TOL, Tolerances

C = QuadricClass

DISCREPANT_ROWS = {
    C.HYPERBOLOID_TWO_SHEETS: "curvature",
    C.HYPERBOLIC_CYLINDER: "size",
}


@dataclass(frozen=True)
class SmallnessCheck:
    name: str
    left: float
    right: float
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "left": self.left, "right": self.right, "passed": self.passed}


@dataclass(frozen=True)
class SmallnessVerdict:
    small: bool
    checks: tuple[SmallnessCheck, ...]

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {"small": self.small, "checks": [c.as_dict() for c in self.checks]}


def _leq(left: float, right: float, eps: float) -> bool:
    return left <= right + eps * max(abs(left), abs(right), 1.0)


def _verdict(rows, eps: float) -> SmallnessVerdict:
    """``rows`` holds (name, left, right, relation) with relation '<=' or '>='."""
    checks = []
    for name, left, right, rel in rows:
        ok = _leq(left, right, eps) if rel == "<=" else _leq(right, left, eps)
        checks.append(SmallnessCheck(name, float(left), float(right), ok))
    return SmallnessVerdict(all(c.passed for c in checks), tuple(checks))


def _invariant_rows(ep: tuple, rf_cls: QuadricClass, p: dict):
    ap, bp, gp, dp = ep
    size = dp * ap                  # δ'α'
    curv = gp / (dp * ap * ap)      # γ'/(δ'α'²)
    if rf_cls is C.ELLIPSOID:
        return [("d'c' >= delta'alpha'", p["d"] * p["c"], size, ">="),
                ("a'/(d'c'^2) <= gamma'/(delta'alpha'^2)", p["a"] / (p["d"] * p["c"] ** 2), curv, "<=")]
    if rf_cls is C.HYPERBOLOID_ONE_SHEET:
        return [("b'd' >= delta'alpha'", p["b"] * p["d"], size, ">="),
                ("a'/(d'c'^2) <= gamma'/(delta'alpha'^2)", p["a"] / (p["d"] * p["c"] ** 2), curv, "<=")]
    if rf_cls is C.HYPERBOLOID_TWO_SHEETS:
        return [("c'd' >= delta'alpha'", p["c"] * p["d"], size, ">="),
                ("c'/(d'c'^2) <= gamma'/(delta'alpha'^2)", p["c"] / (p["d"] * p["c"] ** 2), curv, "<=")]
    if rf_cls in (C.ELLIPTIC_PARABOLOID, C.HYPERBOLIC_PARABOLOID):
        return [("2/(L b'^2) <= gamma'/(delta'alpha'^2)", 2.0 / (p["L"] * p["b"] ** 2), curv, "<=")]
    if rf_cls in (C.ELLIPTIC_CYLINDER, C.HYPERBOLIC_CYLINDER):
        return [("M b' >= delta'alpha'", p["M"] * p["b"], size, ">="),
                ("a'/(M b'^2) <= gamma'/(delta'alpha'^2)", p["a"] / (p["M"] * p["b"] ** 2), curv, "<=")]
    if rf_cls is C.PARABOLIC_CYLINDER:
        return [("2/(d' a'^2) <= gamma'/(delta'alpha'^2)", 2.0 / (p["d"] * p["a"] ** 2), curv, "<=")]
    if rf_cls is C.PARALLEL_PLANES:
        return [("a'd' >= alpha'delta'", p["a"] * p["d"], size, ">=")]
    raise UnsupportedClassError(f"no smallness rule for class {rf_cls.value}")


@lru_cache(maxsize=4096)
def _small_cached(shape: tuple, q: Quadric, tol: Tolerances) -> SmallnessVerdict:
    rf = reduced_form(q, tol)
    return _verdict(_invariant_rows(shape, rf.cls, rf.params), tol.eps_rel)


def is_small(e, q: Quadric, tol: Tolerances = DEFAULT_TOL) -> SmallnessVerdict:
    """Smallness of ellipsoid ``e`` with respect to ``q`` from invariants.

    Raises:
        UnsupportedClassError: ``q`` is a cone, intersecting planes, a single
            plane or unclassifiable; the notion does not apply there.
        DegenerateError: propagated from the reduced form.
    """
    e = ellipsoid_from_quadric(e, tol)
    shape = (*e.axes_p, e.delta_p)
    if isinstance(q, Ellipsoid):
        q = q.quadric
    return _small_cached(shape, q, tol)


def is_small_shape(shape_key: tuple, q: Quadric, tol: Tolerances = DEFAULT_TOL) -> SmallnessVerdict:
    """As :func:`is_small` for an ellipsoid given by ``Ellipsoid.shape_key``."""
    return _small_cached(tuple(shape_key), q, tol)


def is_small_standard(e_params, q_class: QuadricClass, q_params: dict,
                      tol: Tolerances = DEFAULT_TOL) -> SmallnessVerdict:
    """Smallness for quadrics in standard position.

    Args:
        e_params: semi-axes (α, β, γ) of the ellipsoid, α >= β >= γ > 0.
        q_class: class of the other quadric.
        q_params: its standard-form parameters ``a``, ``b``, ``c`` as used
            by that class (``x²/a² + y²/b² - z = 0`` and so on).
    """
    alpha, beta, gamma = (float(v) for v in e_params)
    if not (alpha >= beta >= gamma > 0):
        raise BadOrderingError(f"ellipsoid semi-axes must satisfy α >= β >= γ > 0, got {e_params}")
    p = {k: float(v) for k, v in q_params.items()}
    if any(v <= 0 for v in p.values()):
        raise BadOrderingError(f"quadric parameters must be positive, got {q_params}")
    ordered = {
        C.ELLIPSOID: ("a", "b", "c"), C.HYPERBOLOID_ONE_SHEET: ("a", "b"),
        C.HYPERBOLOID_TWO_SHEETS: ("a", "b"), C.ELLIPTIC_PARABOLOID: ("a", "b"),
        C.HYPERBOLIC_PARABOLOID: ("a", "b"), C.ELLIPTIC_CYLINDER: ("a", "b"),
    }.get(q_class, ())
    vals = [p[k] for k in ordered]
    if any(x < y for x, y in zip(vals, vals[1:])):
        raise BadOrderingError(f"{q_class.value}: expected {' >= '.join(ordered)}, got {q_params}")
    curv = gamma / alpha ** 2
    a, b, c = p.get("a"), p.get("b"), p.get("c")
    rows = {
        C.ELLIPSOID: lambda: [("c >= alpha", c, alpha, ">="), ("a/c^2 <= gamma/alpha^2", a / c ** 2, curv, "<=")],
        C.HYPERBOLOID_ONE_SHEET: lambda: [("b >= alpha", b, alpha, ">="),
                                          ("a/c^2 <= gamma/alpha^2", a / c ** 2, curv, "<=")],
        C.HYPERBOLOID_TWO_SHEETS: lambda: [("c >= alpha", c, alpha, ">="),
                                           ("c/a^2 <= gamma/alpha^2", c / a ** 2, curv, "<=")],
        C.ELLIPTIC_PARABOLOID: lambda: [("2/b^2 <= gamma/alpha^2", 2 / b ** 2, curv, "<=")],
        C.HYPERBOLIC_PARABOLOID: lambda: [("2/b^2 <= gamma/alpha^2", 2 / b ** 2, curv, "<=")],
        C.ELLIPTIC_CYLINDER: lambda: [("b >= alpha", b, alpha, ">="), ("a/b^2 <= gamma/alpha^2", a / b ** 2, curv, "<=")],
        C.HYPERBOLIC_CYLINDER: lambda: [("a >= alpha", a, alpha, ">="),
                                        ("a/b^2 <= gamma/alpha^2", a / b ** 2, curv, "<=")],
        C.PARABOLIC_CYLINDER: lambda: [("2/a^2 <= gamma/alpha^2", 2 / a ** 2, curv, "<=")],
        C.PARALLEL_PLANES: lambda: [("a >= alpha", a, alpha, ">=")],
    }
    if q_class not in REDUCIBLE:
        raise UnsupportedClassError(f"no smallness rule for class {q_class.value}")
    return _verdict(rows[q_class](), tol.eps_rel)
