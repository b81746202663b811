"""Lower the bee onto the one-sheet hyperboloid and print how the verdict changes."""
from pathlib import Path
import json

from qcontact import DEFAULT_TOL, Quadric, ellipsoid_from_quadric
from qcontact.cli import SWEEP_COLUMNS, sweep_rows

DATA = Path(__file__).resolve().parents[1] / "data"


def main():
    bee = Quadric.from_json(json.loads((DATA / "bee.json").read_text()))
    s2 = Quadric.from_json(json.loads((DATA / "s2_hyperboloid.json").read_text()))
    e = ellipsoid_from_quadric(bee)
    print(*SWEEP_COLUMNS, sep="\t")
    for row in sweep_rows(e, s2, (3, 3, 5.5), (1.2, 0, 3), 11, False, DEFAULT_TOL):
        print(*(f"{x:.4g}" if isinstance(x, float) else x for x in row), sep="\t")


if __name__ == "__main__":
    main()
