"""Physical constants in atomic units.

Energies are in Hartree and lengths in Bohr with hbar = e = m_e = 1.  The
fine-structure constant defaults to exactly 1/137 so that the tabulated
Pauli energies are reproduced digit for digit; a CODATA value can be
passed explicitly but then the golden tables no longer apply.
"""

from __future__ import annotations

from dataclasses import dataclass

ALPHA_DEFAULT = 1.0 / 137.0
HARTREE_TO_MHZ = 6.579684e9


@dataclass(frozen=True)
class PhysicalConstants:
    """Unit system shared by every solver.

    Attributes
    ----------
    alpha : float
        Fine-structure constant.
    hartree_to_mhz : float
        MHz per Hartree.
    mass_scale : float
        Multiplier on the rest energy with c held fixed.  Only used to probe
        how a spectrum depends on mc^2; physical runs keep it at 1.
    """

    alpha: float = ALPHA_DEFAULT
    hartree_to_mhz: float = HARTREE_TO_MHZ
    mass_scale: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if self.mass_scale <= 0.0:
            raise ValueError(f"mass_scale must be positive, got {self.mass_scale!r}")

    @property
    def c(self) -> float:
        """Speed of light, 1/alpha."""
        return 1.0 / self.alpha

    @property
    def mc2(self) -> float:
        """Electron rest energy, 1/alpha**2 Hartree."""
        return self.mass_scale / self.alpha**2

    @property
    def rest_energy(self) -> float:
        """Two-body rest energy 2 mc^2."""
        return 2.0 * self.mc2

    def with_mass_scale(self, factor: float) -> "PhysicalConstants":
        """Copy with mc^2 multiplied by ``factor`` and c unchanged."""
        return PhysicalConstants(self.alpha, self.hartree_to_mhz, self.mass_scale * factor)


DEFAULT = PhysicalConstants()
