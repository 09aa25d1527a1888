"""Feynman and retarded projections separate atomic from anomalous states.

Run:  python3 demos/bethe_salpeter_decoupling.py
"""

import numpy as np

from posdirac.bethe_salpeter import solve_projected
from posdirac.constants import DEFAULT
from posdirac.momentum import preset_basis


def main():
    rest = DEFAULT.rest_energy
    basis, quad = preset_basis("atomic", 0)
    feyn = solve_projected(1, basis, "feynman", quadrature=quad, window=(rest - 0.3, rest))
    print("Feynman projection, lowest atomic levels:")
    for e, w in zip(feyn.eigenvalues[:3], feyn.anomalous_weight[:3]):
        print(f"  E - 2mc^2 = {e - rest:.8f}   anomalous weight {w:.1e}")

    basis, quad = preset_basis("anomalous", 0)
    ret = solve_projected(1, basis, "retarded", quadrature=quad)
    rho = basis.rho0 * np.arange(1, basis.M + 1) / (basis.M + 1)
    print("\nRetarded projection, anomalous levels times rho_i:")
    for i in (0, 9, 19, 29, 38):
        print(f"  i={i + 1:2d}  E*rho_i = {ret.eigenvalues[i] * rho[i]:.6f}"
              f"   atomic weight {ret.atomic_weight[i]:.1e}")
    heavy = solve_projected(1, basis, "retarded", quadrature=quad,
                            constants=DEFAULT.with_mass_scale(10.0))
    shift = np.max(np.abs(heavy.eigenvalues[4:35] / ret.eigenvalues[4:35] - 1))
    print(f"\nrelative shift of interior levels when mc^2 grows tenfold: {shift:.2e}")


if __name__ == "__main__":
    main()
