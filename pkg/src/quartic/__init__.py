"""Exact and numeric experiments on the coefficients of a quartic integral.

Submodules:

kernel      integers, rationals, binomials and p-adic valuations
poly        dense and Laurent polynomials, Taylor shifts, Sturm chains
core        d_{l,m} by three routes, P_m, T_m, the lattice-path oracle
identities  registry of exact identity checks
quadrature  numeric tie-back of the closed form
alphabeta   alpha_l, beta_l and the critical-line certificate
valuation   A_{l,m}, B_{l,m}, 2-adic block structure and reduction
tree        decision trees and piecewise valuation formulas
concavity   unimodality, log-concavity, the operator L
qanalogs    Gaussian and quantum binomials
emit, cli   serialization and the command-line front end
"""

from .core import d_coeff, d_row, d_table, p_poly
from .kernel import Rat, binomial, nu, nu2
from .poly import LaurentPoly, Poly
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "Rat",
    "binomial",
    "nu",
    "nu2",
    "Poly",
    "LaurentPoly",
    "Report",
    "d_coeff",
    "d_row",
    "d_table",
    "p_poly",
]
