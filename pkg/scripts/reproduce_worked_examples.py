"""Recompute the worked examples and print the quantities they exercise."""
from pathlib import Path
import json

import numpy as np

from qcontact import (Plane, Quadric, QuadricClass, Scene, char_poly, detect_contact, is_small,
                      is_transversal_contact, plane_contact, quadric_from_coefficients,
                      quartic_roots, sphere)
from qcontact.generators import standard_quadric

DATA = Path(__file__).resolve().parents[1] / "data"


def load(name):
    return json.loads((DATA / name).read_text())


def main():
    e = quadric_from_coefficients(2, 2, 3, 0, 0, 0, 0, 0, 0, -1)
    q = quadric_from_coefficients(1, 1, 0, 0, 0, 0, 0, 0, 4, 0)
    r = is_transversal_contact(e, q)
    print("ellipsoid against paraboloid")
    print("  coefficients", r.poly.coeffs)
    print(f"  d3={r.discriminants.d3:.6g} d4={r.discriminants.d4:.3g} transversal={r.transversal}")

    bee = Quadric.from_json(load("bee.json"))
    tree = Scene.from_json(load("tree_scene.json"))
    s2 = tree.zone("-").quadric
    rep = detect_contact(tree, bee)
    print("bee and tree")
    print("  zone", rep.zone.zone_id, "contact", rep.contact, "computed", rep.computed)
    print("  smallness against S2", [(c.name, round(c.left, 6), round(c.right, 6)) for c in is_small(bee, s2).checks])
    print("  roots with S2", np.round(quartic_roots(char_poly(bee, s2)).roots, 6))
    p = plane_contact(bee, Plane.from_json(load("plane_z6.json")))
    print("  against z = 6:", p.poly.coeffs, f"d3={p.discriminants.d3:.6g}", p.region.value)

    h2 = standard_quadric(QuadricClass.HYPERBOLOID_TWO_SHEETS, 2.0, 2.0, 2.0)
    for center in ((0, 0, 0), (0, 0, 3)):
        r = is_transversal_contact(sphere(center, 1), h2)
        roots = sorted(quartic_roots(r.poly).real)
        print(f"sphere at {center} against two-sheet hyperboloid: region {r.region.value}, roots",
              np.round(roots, 6))


if __name__ == "__main__":
    main()
