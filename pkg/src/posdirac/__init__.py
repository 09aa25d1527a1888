"""Bound states of positronium from the two-body Dirac equation.

Submodules
----------
angular        partial-wave cases, recoupling, Clebsch-Gordan, parities
special        spherical Bessel bases, roots and quadrature helpers
momentum       momentum-representation channel systems and their spectra
fem            coordinate-space finite-element solver
pauli          Pauli and Breit energy terms in exact arithmetic
dvr            discrete-variable anomalous states, Gaunt shifts, coupling profiles
bethe_salpeter Feynman and retarded projections of the ladder equation
addition       two-particle addition-theorem checks
io             configuration, artifacts and the command-line interface

Importing the package does not import numpy; submodules are loaded on use.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
