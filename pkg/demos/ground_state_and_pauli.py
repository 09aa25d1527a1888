"""Positronium 1S0 from the finite-element solver next to the Pauli expansion.

Run:  python3 demos/ground_state_and_pauli.py
"""

from posdirac.angular import QuantumNumbers
from posdirac.constants import DEFAULT
from posdirac.fem import assemble_fem, build_grid, solve_pencil
from posdirac.pauli import fifth_order_shift, pauli_terms


def main():
    rest = DEFAULT.rest_energy
    grid = build_grid(1, "paper_default")
    print(f"grid: {grid.n_elements} elements, {grid.n_free} free nodes, outer {grid.outer:.4f} Bohr")
    levels = [s for _, s in solve_pencil(assemble_fem(1, 0, grid), (rest - 0.3, rest))
              if not s.suspect]
    state = QuantumNumbers(1, 0, 0, 0)
    ep = pauli_terms(state).EP
    ed = levels[0].energy - rest
    print(f"E_D - 2mc^2  (FEM)   = {ed:.10f} Hartree")
    print(f"E_P - 2mc^2  (Pauli) = {ep:.10f} Hartree")
    print(f"difference           = {(ed - ep) * DEFAULT.hartree_to_mhz:.2f} MHz")
    print(f"fifth-order estimate = {fifth_order_shift(state, unit='mhz'):.2f} MHz")
    # the n=1 grid ends near 40 Bohr, which is only wide enough for n <= 2
    print(f"2S level             = {levels[1].energy - rest:.8f} Hartree")


if __name__ == "__main__":
    main()
