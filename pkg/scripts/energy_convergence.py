"""Gagliardo quadrature against the spectral energy, for smooth and rough inputs.

Trigonometric polynomials are integrated exactly; the rough family
``c[n] ~ |n|^-p`` truncated at growing N shows the spectral tail instead.
"""
import argparse

import numpy as np

from halfhopf import CircleFunction, energy_gagliardo, energy_spectral, random_trig


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = np.random.default_rng(args.seed)

    f = random_trig(rng, 12, 3)
    Es = energy_spectral(f)
    print("M/(2N+1)  relative gap")
    for m in (2, 4, 8, 32):
        M = m * (2 * f.bandwidth + 1)
        print(f"{m:8d}  {abs(energy_gagliardo(f, M) - Es) / Es:.2e}")

    print("\nN     E_N (c[n] = |n|^-1.25)")
    for N in (8, 32, 128, 512):
        n = np.arange(1, N + 1)
        f = CircleFunction.from_dict({**dict(zip(n, n ** -1.25)), **dict(zip(-n, n ** -1.25))}, real=True)
        print(f"{N:4d}  {energy_spectral(f):.10f}")


if __name__ == "__main__":
    main()
