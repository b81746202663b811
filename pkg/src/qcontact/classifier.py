"""Contact and relative position from the characteristic polynomial.

Contact: the pencil of a small ellipsoid and a quadric has non-real
characteristic roots exactly when the surfaces cross. Two members of the
discrimination system of the quartic decide this without solving it:
the crossing is transversal iff Δ4 < 0, or Δ4 = 0 and Δ3 < 0.

Position: when the surfaces do not cross, every root is real and the
number of positive roots, read off the coefficient signs by Descartes'
rule, tells on which side of the quadric the ellipsoid lies.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .ellipsoid import Ellipsoid, ellipsoid_from_quadric
from .errors import NumericalError, PatternMismatchError, SmallnessViolatedError, UnsupportedClassError
from .invariants import REDUCIBLE, QuadricClass, classify, orientation
from .pencil import QuarticPoly, Sign, banded_sign, char_poly, coefficient_scales
from .quadric import Quadric, translated
from .smallness import SmallnessVerdict, is_small
from .tolerances import DEFAULT_TOL, Tolerances

C = QuadricClass


class Region(str, Enum):
    R_MINUS = "RMinus"
    R_PLUS = "RPlus"
    STRADDLING = "Straddling"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class PositionRow:
    """One row of the sign-pattern table: the root signs (sorted, with
    structural zero roots as '0') for the two regions of a class family."""

    family: str
    classes: frozenset
    structural_zeros: tuple[int, ...]   # powers of λ whose coefficient vanishes
    minus: str
    plus: str

    def positive_roots(self, region: Region) -> int:
        return (self.minus if region is Region.R_MINUS else self.plus).count("+")


POSITION_TABLE = (
    PositionRow("central-or-elliptic",
                frozenset({C.ELLIPSOID, C.HYPERBOLOID_TWO_SHEETS, C.ELLIPTIC_PARABOLOID}),
                (), "----", "--++"),
    PositionRow("saddle-like",
                frozenset({C.HYPERBOLOID_ONE_SHEET, C.HYPERBOLIC_PARABOLOID}),
                (), "---+", "-+++"),
    PositionRow("elliptic-or-parabolic-cylinder",
                frozenset({C.ELLIPTIC_CYLINDER, C.PARABOLIC_CYLINDER}),
                (0,), "---0", "-0++"),
    PositionRow("hyperbolic-cylinder", frozenset({C.HYPERBOLIC_CYLINDER}), (0,), "--0+", "0+++"),
    PositionRow("parallel-planes", frozenset({C.PARALLEL_PLANES}), (0, 1), "--00", "00++"),
)


def position_row(cls: QuadricClass) -> PositionRow:
    for row in POSITION_TABLE:
        if cls in row.classes:
            return row
    raise UnsupportedClassError(f"no sign-pattern row for class {cls.value}")


@dataclass(frozen=True)
class Discriminants:
    d3: float
    d4: float
    s3: Sign
    s4: Sign
    band3: float
    band4: float

    @property
    def transversal(self) -> bool:
        return self.s4 is Sign.NEG or (self.s4 is Sign.ZERO and self.s3 is Sign.NEG)

    def as_dict(self) -> dict:
        return {"d3": self.d3, "d4": self.d4, "s3": self.s3.symbol, "s4": self.s4.symbol,
                "band3": self.band3, "band4": self.band4}


# Δ3 and Δ4 as (coefficient, exponents of c4, c3, c2, c1, c0) monomials
_DELTA3 = (
    (16, (2, 0, 1, 0, 1)), (-18, (2, 0, 0, 2, 0)), (-4, (1, 0, 3, 0, 0)),
    (14, (1, 1, 1, 1, 0)), (-6, (1, 2, 0, 0, 1)), (1, (0, 2, 2, 0, 0)),
    (-3, (0, 3, 0, 1, 0)),
)
_DELTA4 = (
    (256, (3, 0, 0, 0, 3)), (-192, (2, 1, 0, 1, 2)), (-128, (2, 0, 2, 0, 2)),
    (144, (1, 2, 1, 0, 2)), (-27, (0, 4, 0, 0, 2)), (144, (2, 0, 1, 2, 1)),
    (-6, (1, 2, 0, 2, 1)), (-4, (0, 3, 0, 3, 0)), (-80, (1, 1, 2, 1, 1)),
    (18, (0, 3, 1, 1, 1)), (16, (1, 0, 4, 0, 1)), (-4, (0, 2, 3, 0, 1)),
    (-27, (2, 0, 0, 4, 0)), (18, (1, 1, 1, 3, 0)), (-4, (1, 0, 3, 2, 0)),
    (1, (0, 2, 2, 2, 0)),
)
# rounding in the term sums themselves, relative to sum |terms|
_ROUNDING = 64 * 2.0 ** -52


def _terms(table, c) -> list[float]:
    return [k * c[0] ** e[0] * c[1] ** e[1] * c[2] ** e[2] * c[3] ** e[3] * c[4] ** e[4]
            for k, e in table]


def _gradient_bound(table, c) -> list[float]:
    """|dΔ/dc_i| bounded term by term, for each coefficient c_i."""
    a = [abs(v) for v in c]
    out = []
    for i in range(5):
        g = 0.0
        for k, e in table:
            if e[i] == 0:
                continue
            t = abs(k) * e[i] * a[i] ** (e[i] - 1)
            for j in range(5):
                if j != i:
                    t *= a[j] ** e[j]
            g += t
        out.append(g)
    return out


def _band(table, c, err) -> tuple[float, float]:
    terms = _terms(table, c)
    value = float(sum(terms))
    propagated = sum(g * r for g, r in zip(_gradient_bound(table, c), err))
    return value, float(propagated + _ROUNDING * sum(abs(t) for t in terms))


def delta3(p: QuarticPoly) -> float:
    return float(sum(_terms(_DELTA3, p.coeffs)))


def delta4(p: QuarticPoly) -> float:
    return float(sum(_terms(_DELTA4, p.coeffs)))


def discriminants(p: QuarticPoly, tol: Tolerances = DEFAULT_TOL,
                  scales: tuple[float, ...] | None = None) -> Discriminants:
    """Δ3 and Δ4 with signs banded by their propagated uncertainty.

    Each coefficient c_k is taken as uncertain by ``tol.tau_disc`` times
    its scale (``scales``, from :func:`coefficient_scales`; default the
    largest coefficient). The band is that uncertainty carried to first
    order through the monomials, plus the rounding of the sum itself.
    Values inside the band read as zero.
    """
    c = p.coeffs
    if scales is None:
        scales = (max(abs(v) for v in c),) * 5
    err = [tol.tau_disc * s for s in scales]
    d3, band3 = _band(_DELTA3, c, err)
    d4, band4 = _band(_DELTA4, c, err)
    return Discriminants(d3, d4, banded_sign(d3, band3), banded_sign(d4, band4), band3, band4)


def sign_changes(values) -> int:
    """Descartes count: sign changes over the nonzero entries."""
    nz = [v for v in values if v != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if (a > 0) != (b > 0))


@dataclass(frozen=True)
class Position:
    region: Region
    row: PositionRow
    orientation: int
    signs: str              # banded signs of (c4..c0) in the standard orientation
    positive_roots: int
    negative_roots: int

    def as_dict(self) -> dict:
        return {"region": self.region.value, "row": self.row.family, "orientation": self.orientation,
                "signs": self.signs, "positive_roots": self.positive_roots,
                "negative_roots": self.negative_roots,
                "root_signs": self.row.minus if self._std_region() is Region.R_MINUS else self.row.plus}

    def _std_region(self) -> Region:
        if self.orientation > 0:
            return self.region
        return Region.R_PLUS if self.region is Region.R_MINUS else Region.R_MINUS


def coefficient_bands(scales, tol: Tolerances = DEFAULT_TOL) -> tuple[float, ...]:
    """Zero bands of (c4..c0) for the given coefficient scales."""
    return tuple(tol.tau_coeff * s for s in scales)


def centered_pair(e: Ellipsoid, q: Quadric) -> tuple[Quadric, Quadric]:
    """Both quadrics translated so the ellipsoid is centered at the origin.

    The pencil polynomial is unchanged by a common rigid motion, but in
    this frame the matrix entries reflect the geometry near the ellipsoid
    rather than its distance from the origin, which keeps the coefficient
    bands tight and the determinants well conditioned.
    """
    shift = -np.asarray(e.center)
    return translated(e.quadric, shift), translated(q, shift)


def pencil(e: Ellipsoid, q: Quadric) -> tuple[QuarticPoly, tuple[float, ...]]:
    """Characteristic polynomial and coefficient scales, in the centered frame."""
    ec, qc = centered_pair(e, q)
    return char_poly(ec, qc), coefficient_scales(ec, qc)


def strip_structural(p: QuarticPoly, zeros, bands) -> QuarticPoly:
    """Zero the coefficients of λ^k, k in ``zeros``, after checking they are
    within their band."""
    for k in zeros:
        v, band = p.coefficient(k), bands[4 - k]
        if abs(v) > band:
            raise NumericalError(f"coefficient of λ^{k} should vanish but is {v:.6g} (band {band:.3g})")
    return p.with_zeros(zeros)


def relative_position(e, q: Quadric, p: QuarticPoly | None = None,
                      tol: Tolerances = DEFAULT_TOL) -> Position:
    """Side of ``q`` holding ``e``, from the coefficient signs of ``p``.

    The quadric is read in its standard orientation (flipping the sign of
    the matrix maps λ to -λ and swaps the two regions), the structural zero
    roots of the class are removed, and the positive roots of the rest are
    counted by sign changes. Only meaningful when the pair does not cross.

    Raises:
        PatternMismatchError: the count fits neither region of the row.
        UnsupportedClassError: ``q`` has no row in the table.
    """
    e = ellipsoid_from_quadric(e, tol)
    cls = classify(q, tol)
    row = position_row(cls)
    if p is None:
        p, scales = pencil(e, q)
    else:
        scales = coefficient_scales(*centered_pair(e, q))
    bands = coefficient_bands(scales, tol)
    s = orientation(q, cls, tol)
    std = p if s > 0 else p.negated_argument()
    try:
        std = strip_structural(std, row.structural_zeros, bands)
    except NumericalError as exc:
        raise PatternMismatchError(str(exc), observed=p.coeffs,
                                   expected={"RMinus": row.minus, "RPlus": row.plus}) from exc
    signs = [banded_sign(c, b) for c, b in zip(std.coeffs, bands)]
    sign_str = "".join(x.symbol for x in signs)
    deg = 4 - len(row.structural_zeros)
    kept = [float(x) for x in signs[:deg + 1]]
    pos = sign_changes(kept)
    neg = sign_changes([v if (deg - i) % 2 == 0 else -v for i, v in enumerate(kept)])

    def mismatch(why: str):
        return PatternMismatchError(
            f"{cls.value}: coefficient signs {sign_str} {why}",
            observed=sign_str, expected={"RMinus": row.minus, "RPlus": row.plus})

    if signs[0] is not Sign.NEG:
        raise mismatch("do not start with c4 < 0")
    if signs[deg] is Sign.ZERO:
        raise mismatch("have a vanishing lowest non-structural coefficient")
    if pos + neg != deg:
        raise mismatch(f"give {pos} positive and {neg} negative roots, not {deg} real ones")
    if pos == row.positive_roots(Region.R_MINUS):
        std_region = Region.R_MINUS
    elif pos == row.positive_roots(Region.R_PLUS):
        std_region = Region.R_PLUS
    else:
        raise mismatch(f"give {pos} positive roots")
    region = std_region
    if s < 0:
        region = Region.R_PLUS if std_region is Region.R_MINUS else Region.R_MINUS
    return Position(region, row, s, sign_str, pos, neg)


@dataclass(frozen=True)
class ContactReport:
    transversal: bool
    region: Region
    conclusive: bool
    quadric_class: QuadricClass
    poly: QuarticPoly
    discriminants: Discriminants
    position: Position | None = None
    smallness: SmallnessVerdict | None = None
    note: str = ""
    extra: dict = field(default_factory=dict)

    # Δ signs cannot tell a tangent point, two tangent points, a tangent
    # curve and disjoint surfaces apart
    @property
    def nontransversal_note(self) -> bool:
        return not self.transversal

    def as_dict(self) -> dict:
        return {
            "transversal": self.transversal,
            "region": self.region.value,
            "conclusive": self.conclusive,
            "class": self.quadric_class.value,
            "poly": self.poly.as_list(),
            "discriminants": self.discriminants.as_dict(),
            "position": self.position.as_dict() if self.position else None,
            "smallness": self.smallness.as_dict() if self.smallness else None,
            "nontransversal_note": self.nontransversal_note,
            "note": self.note,
            **self.extra,
        }


def is_transversal_contact(e, q, require_smallness: bool = True,
                           tol: Tolerances = DEFAULT_TOL) -> ContactReport:
    """Decide whether ellipsoid ``e`` crosses quadric ``q``.

    With ``require_smallness`` the pair must be small (otherwise
    :class:`SmallnessViolatedError`). Without it a transversal verdict is
    still sound, since non-real roots always mean crossing surfaces, but a
    negative verdict for a pair that is not small is reported as
    inconclusive.
    """
    from .plane import Plane, plane_contact

    e = ellipsoid_from_quadric(e, tol)
    if isinstance(q, Plane):
        return plane_contact(e, q, tol)
    if isinstance(q, Ellipsoid):
        q = q.quadric
    cls = classify(q, tol)
    if cls is C.SINGLE_PLANE:
        return plane_contact(e, q, tol)
    verdict = None
    try:
        verdict = is_small(e, q, tol)
    except UnsupportedClassError:
        if require_smallness:
            raise
    small = verdict is not None and verdict.small
    if require_smallness and not small:
        raise SmallnessViolatedError(f"ellipsoid is not small with respect to the {cls.value}: "
                                     f"failed {verdict.failed()}", verdict=verdict)
    p, scales = pencil(e, q)
    zeros = position_row(cls).structural_zeros if cls in REDUCIBLE else ()
    if zeros:
        p = strip_structural(p, zeros, coefficient_bands(scales, tol))
    d = discriminants(p, tol, scales)
    if d.transversal:
        return ContactReport(True, Region.STRADDLING, True, cls, p, d, smallness=verdict,
                             note="non-real characteristic roots: the surfaces cross")
    if not small:
        return ContactReport(False, Region.INDETERMINATE, False, cls, p, d, smallness=verdict,
                             note="no crossing detected, but the ellipsoid is not small with "
                                  "respect to the quadric so this is not conclusive")
    pos = relative_position(e, q, p, tol)
    return ContactReport(False, pos.region, True, cls, p, d, position=pos, smallness=verdict,
                         note="real characteristic roots: no transversal contact")
