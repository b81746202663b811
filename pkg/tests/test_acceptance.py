"""Acceptance checks, one test per criterion.

Each check returns ``(passed, detail)``; the test records a PASS/FAIL line
that is printed in the pytest terminal summary, then asserts. Running this
file directly prints the same lines without pytest.
"""
from __future__ import annotations

import json
import math
import statistics
import sys
import time
from pathlib import Path

import numpy as np
import pytest

import qcontact
from qcontact import (Ellipsoid, Plane, Quadric, Region, Scene, char_poly, detect_contact,
                      is_small, is_transversal_contact, quadric_from_coefficients, quartic_roots,
                      relative_position, sample_intersection, side_of_plane)
from qcontact.classifier import pencil
from qcontact.experiments import (in_discriminant_band, placed_config, placement_trial,
                                  run_concordance)
from qcontact.generators import TABLE_CLASSES, random_config, standard_quadric
from qcontact.invariants import QuadricClass, invariant_set
from qcontact.quadric import RigidMotion, transform

DATA = Path(__file__).resolve().parent.parent / "data"

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = {}

TITLES = {
    1: "worked example: transversal paraboloid pair",
    2: "composite scene: bee and tree",
    3: "sphere against a plane: closed form",
    4: "sphere against a two-sheet hyperboloid: roots",
    5: "oracle concordance, 2000 per class",
    6: "rigid-motion invariance, 1000 triples",
    7: "sign-pattern table, interior and exterior placements",
    8: "plane pencils: double zero root",
}


def _cold_median_ms(fn, repeats: int = 25) -> float:
    """Median wall time of ``fn`` with every memo cache emptied first."""
    times = []
    for _ in range(repeats):
        qcontact.clear_caches()
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return statistics.median(times) * 1e3


def _record(k: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k} ({TITLES[k]}): {detail}"
    ACCEPTANCE_LINES[k] = line
    print(line)


def _close(got, want, tol):
    return all(abs(g - w) <= tol for g, w in zip(got, want))


# -- 1 ----------------------------------------------------------------------

def check_worked_example():
    e = quadric_from_coefficients(2, 2, 3, 0, 0, 0, 0, 0, 0, -1)
    q = quadric_from_coefficients(1, 1, 0, 0, 0, 0, 0, 0, 4, 0)
    r = is_transversal_contact(e, q)
    d = r.discriminants
    ms = _cold_median_ms(lambda: is_transversal_contact(e, q))
    ok = (_close(r.poly.coeffs, (-12, -12, -67, -64, -16), 1e-9)
          and d.s4 is qcontact.Sign.ZERO and d.d3 < 0 and r.transversal and ms < 1.0)
    return ok, (f"poly={tuple(round(c, 12) for c in r.poly.coeffs)} d4={d.d4:.3g} (band {d.band4:.3g}) "
                f"d3={d.d3:.6g} transversal={r.transversal} time={ms:.3f} ms")


# -- 2 ----------------------------------------------------------------------

def check_bee_tree():
    bee = Quadric.from_json(json.loads((DATA / "bee.json").read_text()))
    scene = Scene.from_json(json.loads((DATA / "tree_scene.json").read_text()))
    rep = detect_contact(scene, bee)
    plane = rep.zone.plane_reports[0]
    s2 = rep.checks[0].report
    p0_ok = _close(plane.poly.coeffs, (-0.3, -1.5, -0.25, 0, 0), 1e-9)
    d3_ok = abs(plane.discriminants.d3 - 0.121875) <= 1e-9
    want2 = (-0.3, 45.7375, 34.125, -11.6625, 0.25)
    p2_ok = all(abs(g - w) <= 1e-6 * abs(w) for g, w in zip(s2.poly.coeffs, want2))
    d4_ok = abs(s2.discriminants.d4 / 6.90965e8 - 1) <= 5e-3
    c = s2.poly
    pos_ok = s2.region is Region.R_PLUS and c.c3 > 0 and c.c2 > 0 and c.c1 < 0
    small = dict(rep.smallness)
    v1, v2 = small[1], small[2]
    subs = (v1.checks[0].left, v1.checks[0].right, v1.checks[1].left, v1.checks[1].right,
            v2.checks[1].left)
    subs_ok = _close(subs, (2.58199, 0.316228, 0.67082, 1.82574, 0.25), 1e-4)
    ms = _cold_median_ms(lambda: detect_contact(scene, bee))
    ok = (p0_ok and d3_ok and rep.zone.zone_id == 2 and p2_ok and d4_ok and not rep.contact
          and pos_ok and subs_ok and ms < 10.0)
    return ok, (f"zone={rep.zone.zone_id} contact={rep.contact} d3={plane.discriminants.d3:.9g} "
                f"d4={s2.discriminants.d4:.6g} region={s2.region.value} "
                f"smallness={tuple(round(v, 6) for v in subs)} time={ms:.2f} ms")


# -- 3 ----------------------------------------------------------------------

def check_sphere_plane():
    plane = Plane((0.0, 0.0, 1.0), 0.0)
    worst, wrong, tested = 0.0, 0, 0
    for r in np.linspace(0.1, 2.0, 20):
        for zc in np.linspace(-3.0, 3.0, 20):
            e = Ellipsoid.from_axes((0.0, 0.0, zc), (r, r, r))
            rep = is_transversal_contact(e, plane)
            want = (-1 / r ** 6, zc / r ** 6, -1 / (4 * r ** 4), 0.0, 0.0)
            scale = max(abs(w) for w in want)
            for g, w in zip(rep.poly.coeffs, want):
                worst = max(worst, abs(g - w) / (abs(w) if w else scale))
            if abs(abs(zc) - r) > 1e-6:
                tested += 1
                wrong += rep.transversal != (abs(zc) < r)
    ok = worst <= 1e-9 and wrong == 0
    return ok, f"max relative coefficient error={worst:.2e}, verdict mismatches={wrong}/{tested}"


# -- 4 ----------------------------------------------------------------------

def check_sphere_h2s():
    q = standard_quadric(QuadricClass.HYPERBOLOID_TWO_SHEETS, 2.0, 2.0, 2.0)
    inside = Ellipsoid.from_axes((0, 0, 0), (1, 1, 1))
    above = Ellipsoid.from_axes((0, 0, 3), (1, 1, 1))
    r0 = quartic_roots(char_poly(inside, q))
    r3 = quartic_roots(char_poly(above, q))
    got0 = sorted(z.real for z in r0.roots)
    roots_ok = (not r0.has_nonreal and _close(got0, (-0.25, -0.25, 0.25, 1.0), 1e-6)
                and not r3.has_nonreal and all(z.real < 0 for z in r3.roots))
    p0, p3 = relative_position(inside, q), relative_position(above, q)
    ok = roots_ok and p0.region is Region.R_PLUS and p3.region is Region.R_MINUS
    return ok, (f"roots at origin={[round(x, 9) for x in got0]} "
                f"roots at (0,0,3)={[round(z.real, 6) for z in r3.roots]} "
                f"regions={p0.region.value},{p3.region.value}")


# -- 5 ----------------------------------------------------------------------

def _band_witnesses():
    """Pairs with a repeated pencil root and no contact: nested concentric
    spheres (triple root) and similar, parallel ellipsoids (double root)."""
    return [
        (Ellipsoid.from_axes((0, 0, 0), (0.5, 0.5, 0.5)), qcontact.sphere((0, 0, 0), 3.0)),
        (Ellipsoid.from_axes((0.3, 0, 0), (0.5, 0.4, 0.3)),
         Ellipsoid.from_axes((0, 0, 0), (2.5, 2.0, 1.5)).quadric),
    ]


def check_concordance(n_per_class: int = 2000, n_tangent: int = 15):
    summary = run_concordance(n_per_class, seed=20240501)
    # random draws rarely land in the band, so tangent spheres probe it
    tangent = run_concordance(n_tangent, seed=7, tangent=True)
    gaps = [t.tangency_gap for t in summary.band_trials() + tangent.band_trials()]
    for e, q in _band_witnesses():
        r = is_transversal_contact(e, q)
        if in_discriminant_band(r):
            gaps.append(sample_intersection(e, q, 1024).tangency_gap())
    far = [g for g in gaps if g > 1e-4]
    errors = sum(1 for t in summary.trials + tangent.trials if t.error)
    disagreements = summary.disagreements + tangent.disagreements
    core_ok = disagreements == 0 and errors == 0 and summary.seconds < 60.0
    compared = sum(1 for t in summary.trials if not t.in_band and not t.error)
    return core_ok and not far, (
        f"{compared} compared, {disagreements} disagreements, {errors} errors, "
        f"random run {summary.seconds:.1f} s; {len(gaps)} in band, {len(far)} farther than 1e-4 "
        f"from tangency (gaps {[f'{g:.2e}' for g in far]})")


# -- 6 ----------------------------------------------------------------------

K_CLASSES = frozenset({QuadricClass.ELLIPTIC_CYLINDER, QuadricClass.HYPERBOLIC_CYLINDER,
                       QuadricClass.PARABOLIC_CYLINDER, QuadricClass.PARALLEL_PLANES})


def _rel(a, b, scale):
    return abs(a - b) / scale


def check_rigid_invariance(n: int = 1000):
    rng = np.random.default_rng(99)
    bad = []
    for i in range(n):
        cfg = random_config(TABLE_CLASSES[i % len(TABLE_CLASSES)], rng)
        m = RigidMotion.random(rng, translation_scale=3.0)
        e1, q1 = cfg.ellipsoid, cfg.quadric
        e2, q2 = e1.moved(m), transform(q1, m)
        i1, i2 = invariant_set(q1), invariant_set(q2)
        s = float(np.linalg.norm(q1.matrix))
        pairs = [(i1.detQ, i2.detQ, s ** 4), (i1.trQ00, i2.trQ00, s), (i1.detQ00, i2.detQ00, s ** 3),
                 (i1.J, i2.J, s ** 2), *((a, b, s) for a, b in zip(i1.mu, i2.mu))]
        # K and J' are translation invariant only once det Q00 = det Q = 0
        # (and K = 0 for J'), which is where the reduced form uses them
        if cfg.cls in K_CLASSES:
            pairs.append((i1.K, i2.K, s ** 3))
        if cfg.cls is QuadricClass.PARALLEL_PLANES:
            pairs.append((i1.Jp, i2.Jp, s ** 2))
        if any(_rel(a, b, sc) > 1e-8 for a, b, sc in pairs):
            bad.append((i, "invariants"))
        if is_small(e1, q1).small != is_small(e2, q2).small:
            bad.append((i, "smallness"))
        (p1, sc1), (p2, _) = pencil(e1, q1), pencil(e2, q2)
        if any(abs(a - b) > 1e-9 * c for a, b, c in zip(p1.coeffs, p2.coeffs, sc1)):
            bad.append((i, "char_poly"))
        r1, r2 = is_transversal_contact(e1, q1), is_transversal_contact(e2, q2)
        d1, d2 = r1.discriminants, r2.discriminants
        if (d1.s3, d1.s4) != (d2.s3, d2.s4):
            bad.append((i, "discriminant signs"))
        if (r1.transversal, r1.region) != (r2.transversal, r2.region):
            bad.append((i, "verdict"))
    return not bad, f"{n} triples, {len(bad)} variant quantities {bad[:5]}"


# -- 7 ----------------------------------------------------------------------

def check_sign_patterns(n_per_side: int = 100):
    rng = np.random.default_rng(31)
    failures, mismatch_errors, total = [], 0, 0
    for cls in TABLE_CLASSES:
        for side in (-1, 1):
            for _ in range(n_per_side):
                t = placement_trial(placed_config(cls, rng, side))
                total += 1
                mismatch_errors += t.error == "PatternMismatchError"
                if not t.ok:
                    failures.append((cls.value, side, t.coeff_signs, t.root_signs, t.error))
    ok = not failures and mismatch_errors == 0
    return ok, (f"{total} placements over {len(TABLE_CLASSES)} classes, {len(failures)} failures, "
                f"{mismatch_errors} pattern mismatches {failures[:3]}")


# -- 8 ----------------------------------------------------------------------

def check_plane_pairs(n: int = 500):
    rng = np.random.default_rng(8)
    worst, wrong = 0.0, 0
    for _ in range(n):
        axes = np.sort(rng.uniform(0.1, 2.0, 3))[::-1]
        rot = qcontact.quadric.random_rotation(rng)
        e = Ellipsoid.from_axes(rng.uniform(-5, 5, 3), axes, rot)
        normal = rng.normal(size=3)
        normal *= rng.uniform(0.2, 5.0) / np.linalg.norm(normal)
        # support half-width of the ellipsoid along the normal
        m = rot @ np.diag(axes ** 2) @ rot.T
        h = math.sqrt(normal @ m @ normal)
        dist = rng.uniform(-2.0, 2.0) * h
        plane = Plane(tuple(normal), float(normal @ np.asarray(e.center) - dist))
        raw, scales = pencil(e, plane.quadric)
        worst = max(worst, abs(raw.c1) / scales[3], abs(raw.c0) / scales[4])
        rep = is_transversal_contact(e, plane)
        if abs(abs(dist) - h) <= 1e-9 * h:
            continue
        crossing = abs(dist) < h
        side = side_of_plane(plane, e.center)
        expected = Region.R_PLUS if side is qcontact.Sign.POS else Region.R_MINUS
        if rep.transversal != crossing or (not crossing and rep.region is not expected):
            wrong += 1
    return worst <= 1e-9 and wrong == 0, f"{n} pairs, max |c1|,|c0| / scale={worst:.2e}, mismatches={wrong}"


CHECKS = {1: check_worked_example, 2: check_bee_tree, 3: check_sphere_plane, 4: check_sphere_h2s,
          5: check_concordance, 6: check_rigid_invariance, 7: check_sign_patterns,
          8: check_plane_pairs}


@pytest.mark.acceptance
@pytest.mark.parametrize("k", sorted(CHECKS))
def test_criterion(k):
    ok, detail = CHECKS[k]()
    _record(k, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for k in sorted(CHECKS):
        ok, detail = CHECKS[k]()
        _record(k, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
