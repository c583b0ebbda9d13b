"""Numerical laboratory for the cubic derivative nonlinear Schrodinger equation.

i u_t + u_xx = i (|u|^2 u)_x on a periodic box, with its soliton families,
gauge transformations, conserved functionals, variational constants, ground
state solvers, pseudo-spectral time stepping, and orbit-fitting diagnostics.
"""

__version__ = "0.1.0"
