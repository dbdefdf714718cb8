"""Laws of random variables, expectations and population deviation means."""

from .distributions import (
    PRESETS,
    DistributionSpec,
    bernoulli,
    discrete,
    exponential,
    inverse_quartic,
    lognormal,
    normal,
    pointmass,
    sampler_only,
    shifted_lognormal,
    truncated_normal,
    truncated_normal_mgf,
    uniform,
)
from .expectations import (
    DIVERGING,
    FINITE,
    INCONCLUSIVE,
    IntegrabilityProbe,
    PopulationMeanResult,
    argmin_oracle,
    bajraktarevic_expected_value,
    expect_deviation,
    integrability_probe,
    population_mean,
    population_rho,
    probe_function,
    quasi_arithmetic_expected_value,
    sample_rho,
)
from .quadrature import QuadratureConfig, expect, integrate_density
