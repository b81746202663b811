"""Compare the classifier with root finding and surface sampling on random configurations."""
import argparse
import json

from qcontact.experiments import run_concordance


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=200, help="configurations per class")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tangent", action="store_true", help="draw touching spheres instead")
    args = ap.parse_args()
    s = run_concordance(args.n, seed=args.seed, tangent=args.tangent)
    print(json.dumps(s.per_class, indent=2, sort_keys=True))
    print(f"{len(s.trials)} trials, {s.disagreements} disagreements, "
          f"{len(s.band_trials())} in band, {s.seconds:.1f} s")
    gaps = sorted(t.tangency_gap for t in s.band_trials() if t.tangency_gap is not None)
    if gaps:
        print(f"band tangency gaps: median {gaps[len(gaps) // 2]:.2e}, max {gaps[-1]:.2e}")


if __name__ == "__main__":
    main()
