"""Correlation functions of real and complex zeros of random polynomials.

The package evaluates the mixed (k,l)-correlation functions of the zero
point process of a random polynomial with independent, absolutely
continuous real coefficients.  Three routes are provided and cross-checked
against each other:

* an integration engine for the general correlation integral
  (:mod:`zerocorr.engine`),
* closed-form specializations when the configuration pins down all zeros
  (:mod:`zerocorr.closedforms`),
* a simulation lab that samples polynomials, finds their roots and
  estimates the same quantities empirically (:mod:`zerocorr.lab`).
"""

from .densities import CoefficientDensity, CoefficientModel
from .engine import BackendSettings, IntegralEstimate, rho_complex_density, rho_kl, rho_m, rho_real_density
from .symmetric import ZeroConfiguration

__all__ = [
    "BackendSettings",
    "CoefficientDensity",
    "CoefficientModel",
    "IntegralEstimate",
    "ZeroConfiguration",
    "rho_complex_density",
    "rho_kl",
    "rho_m",
    "rho_real_density",
]

__version__ = "0.1.0"
