"""Batch experiments that cross-check the classifier against the oracles.

Shared by the acceptance tests and the scripts in ``scripts/``. Each trial
returns a small frozen record so callers can aggregate or print them.
"""
from __future__ import annotations

import collections
import time
from dataclasses import dataclass

import numpy as np

from .classifier import ContactReport, Region, is_transversal_contact, sign_changes
from .errors import QContactError
from .generators import TABLE_CLASSES, Config, random_config, tangent_config
from .invariants import QuadricClass
from .oracle import RootSet, quartic_roots, sample_intersection
from .pencil import Sign
from .quadric import evaluate
from .tolerances import DEFAULT_TOL, Tolerances


def structural_zero_roots(report: ContactReport) -> int:
    """Number of trailing coefficients the classifier set exactly to zero."""
    n = 0
    for c in (report.poly.c0, report.poly.c1):
        if c != 0.0:
            break
        n += 1
    return n


def in_discriminant_band(report: ContactReport) -> bool:
    """True when the deciding discriminant fell inside its zero band."""
    d = report.discriminants
    if structural_zero_roots(report) == 2:
        return d.s3 is Sign.ZERO
    return d.s4 is Sign.ZERO


@dataclass(frozen=True)
class Trial:
    """Outcome of one classifier-versus-oracles comparison."""

    cls: QuadricClass
    transversal: bool | None
    in_band: bool
    roots_agree: bool | None
    sampling_agree: bool | None
    refined: bool                  # the coarse grid disagreed and the fine grid was used
    tangency_gap: float | None     # fine-grid distance from tangency, for band cases
    error: str = ""


def concordance_trial(cfg: Config, coarse: int = 64, fine: int = 1024,
                      tol: Tolerances = DEFAULT_TOL) -> Trial:
    """Compare the classifier with the root and sampling oracles on ``cfg``.

    Sampling starts on a coarse grid; only a disagreement triggers the fine
    grid, whose verdict is final. Configurations in the discriminant band
    are not compared; instead the fine grid measures how close they are to
    tangency.
    """
    e, q = cfg.ellipsoid, cfg.quadric
    try:
        report = is_transversal_contact(e, q, tol=tol)
    except QContactError as exc:
        return Trial(cfg.cls, None, False, None, None, False, None, type(exc).__name__)
    if in_discriminant_band(report):
        gap = sample_intersection(e, q, fine, tol).tangency_gap()
        return Trial(cfg.cls, report.transversal, True, None, None, False, gap)
    roots = quartic_roots(report.poly, structural_zero_roots(report), tol)
    sample = sample_intersection(e, q, coarse, tol)
    refined = sample.mixed != report.transversal
    if refined:
        sample = sample_intersection(e, q, fine, tol)
    return Trial(cfg.cls, report.transversal, False, roots.has_nonreal == report.transversal,
                 sample.mixed == report.transversal, refined, None)


@dataclass
class ConcordanceSummary:
    per_class: dict
    trials: list
    seconds: float = 0.0

    @property
    def disagreements(self) -> int:
        return sum(1 for t in self.trials
                   if t.error or t.roots_agree is False or t.sampling_agree is False)

    def band_trials(self) -> list[Trial]:
        return [t for t in self.trials if t.in_band]


def run_concordance(n_per_class: int, seed: int = 0, classes=TABLE_CLASSES,
                    tol: Tolerances = DEFAULT_TOL, tangent: bool = False) -> ConcordanceSummary:
    """Draw ``n_per_class`` small configurations per class and compare.

    With ``tangent`` the configurations are spheres touching the quadric,
    which exercises the discriminant band.
    """
    draw = tangent_config if tangent else random_config
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    trials, per_class = [], {}
    for cls in classes:
        counts = collections.Counter()
        for _ in range(n_per_class):
            t = concordance_trial(draw(cls, rng, tol=tol), tol=tol)
            trials.append(t)
            if t.error:
                counts["error"] += 1
            elif t.in_band:
                counts["band"] += 1
            else:
                counts["transversal" if t.transversal else "separate"] += 1
                counts["roots_disagree"] += not t.roots_agree
                counts["sampling_disagree"] += not t.sampling_agree
                counts["refined"] += t.refined
        per_class[cls.value] = dict(counts)
    return ConcordanceSummary(per_class, trials, time.perf_counter() - t0)


@dataclass(frozen=True)
class PlacementTrial:
    """One interior or exterior placement checked against the sign table."""

    cls: QuadricClass
    side: Region                   # expected region, from the sign of the form at the center
    region: Region | None
    coeff_signs: str
    expected_roots: str
    root_signs: str
    changes_ok: bool
    error: str = ""

    @property
    def ok(self) -> bool:
        return (not self.error and self.region is self.side and self.changes_ok
                and self.root_signs == self.expected_roots)


def placed_config(cls: QuadricClass, rng: np.random.Generator, side: int,
                  tol: Tolerances = DEFAULT_TOL, max_tries: int = 500) -> Config:
    """A small ellipsoid wholly on one side of a random quadric of ``cls``.

    ``side`` is -1 for the side where the standard form is negative and +1
    for the other. The center is pushed at least 3.2 of the shortest
    semi-axes from the surface, which exceeds the longest semi-axis for the
    generated shapes; placements that still cross are redrawn, judged by
    sampling alone.
    """
    for _ in range(max_tries):
        off = side * float(rng.uniform(3.2, 6.0))
        cfg = random_config(cls, rng, tol=tol, offset=off)
        if not sample_intersection(cfg.ellipsoid, cfg.quadric, 128, tol).mixed:
            return cfg
    raise RuntimeError(f"could not place a separate ellipsoid for {cls.value}")


def placement_trial(cfg: Config, tol: Tolerances = DEFAULT_TOL) -> PlacementTrial:
    """Check the coefficient signs and root signs of a separate pair."""
    e, q = cfg.ellipsoid, cfg.quadric
    side = Region.R_MINUS if evaluate(q, e.center) < 0 else Region.R_PLUS
    try:
        report = is_transversal_contact(e, q, tol=tol)
    except QContactError as exc:
        return PlacementTrial(cfg.cls, side, None, "", "", "", False, type(exc).__name__)
    pos = report.position
    if pos is None:
        return PlacementTrial(cfg.cls, side, report.region, "", "", "", False, "no position")
    # the generator writes every standard form in the orientation the table
    # uses, so the side in that orientation follows from the flip alone;
    # rows that map onto themselves under λ -> -λ need no reorientation
    flip = cfg.flipped and not _self_dual(pos.row)
    std_side = side if not flip else (Region.R_PLUS if side is Region.R_MINUS else Region.R_MINUS)
    expected = pos.row.minus if std_side is Region.R_MINUS else pos.row.plus
    std = report.poly if not flip else report.poly.negated_argument()
    roots: RootSet = quartic_roots(std, structural_zero_roots(report), tol)
    nz = len(pos.row.structural_zeros)
    signs = "".join("0" if c == 0 else ("+" if c > 0 else "-") for c in std.coeffs)
    oriented = _self_dual(pos.row) or pos.orientation == (-1 if cfg.flipped else 1)
    changes_ok = (oriented and signs[0] == "-" and signs[5 - nz:] == "0" * nz
                  and "0" not in signs[:5 - nz]
                  and sign_changes(std.coeffs[:5 - nz]) == expected.count("+"))
    return PlacementTrial(cfg.cls, side, report.region, signs, expected,
                          roots.sign_string(), changes_ok)


def _self_dual(row) -> bool:
    """Negating every root of the R- pattern gives the R+ pattern."""
    negated = row.minus.translate(str.maketrans("+-", "-+"))
    return "".join(sorted(negated, key="-0+".index)) == row.plus
