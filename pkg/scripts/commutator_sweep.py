"""Worst observed commutator ratios across s, against the closed-form caps."""
import argparse
import csv
from pathlib import Path

import numpy as np

from halfhopf import probe_lemma_A2, random_trig
from halfhopf.commutator import CSV_HEADER, lemma_a2_cap


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--probes", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="results/commutator")
    args = p.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    svals = np.linspace(0.05, 0.45, 9)
    with open(out / "probes.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for s in svals:
            worst = 0.0
            children = np.random.SeedSequence([args.seed, int(round(1000 * s))]).spawn(args.probes)
            for i, child in enumerate(children):
                rng = np.random.default_rng(child)
                decay = float(rng.uniform(0.0, 2.5))
                a = random_trig(rng, int(rng.integers(1, 33)), 1, decay)
                phi = random_trig(rng, int(rng.integers(1, 17)), 1, decay)
                pr = probe_lemma_A2(a, phi, float(s), seed=i)
                w.writerow(pr.csv_row())
                worst = max(worst, pr.ratio)
            print(f"s={s:.2f} worst ratio {worst:.4f} cap {lemma_a2_cap(s):.4f}")


if __name__ == "__main__":
    main()
