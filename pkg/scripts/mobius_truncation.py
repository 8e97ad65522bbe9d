"""How the energy deficit of ``u o m_a`` depends on the resampling bandwidth.

For ``u = e^{i theta}`` the composed trace has ``|c[k]| = (1 - |a|^2) |a|^(k-1)``,
so the energy lost above ``N_out`` is known in closed form.
"""
import argparse

import numpy as np

from halfhopf import CircleFunction, MobiusMap, compose, energy_spectral


def analytic_tail(a: float, N_out: int) -> float:
    k = np.arange(N_out + 1, N_out + 400)
    return 2 * np.pi * float(np.sum(k * ((1 - a * a) * a ** (k - 1)) ** 2))


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--radius", type=float, default=0.4)
    args = p.parse_args()
    a = args.radius
    u = CircleFunction.stack([CircleFunction.from_dict({1: 0.5, -1: 0.5}),
                              CircleFunction.from_dict({1: -0.5j, -1: 0.5j})])
    E = energy_spectral(u)
    print("N_out  relative deficit  analytic tail / E")
    for N_out in (4, 8, 12, 16, 24, 32):
        g = compose(u, MobiusMap(a, 1.0), N_out=N_out, max_tail=np.inf)
        print(f"{N_out:5d}  {(E - energy_spectral(g)) / E:.3e}         {analytic_tail(a, N_out) / E:.3e}")


if __name__ == "__main__":
    main()
