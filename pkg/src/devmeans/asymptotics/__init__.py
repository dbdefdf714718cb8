"""Limit-theorem constants: CLT variance, LIL constant, large-deviation rates."""

from .constants import AsymptoticConstants, asymptotic_constants, bajraktarevic_sigma2, d2_deviation
from .large_deviations import LDResult, cramer_gamma, ld_rate, log_mgf, log_phi, mgf_phi
