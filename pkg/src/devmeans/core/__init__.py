"""Deviations, finite-sample deviation means and the classical means."""

from . import generators
from .deviations import (
    AxiomReport,
    Deviation,
    check_deviation_axioms,
    deviation_mean,
    exponential_kink,
    linear,
    make_bajraktarevic_deviation,
    power,
    quadratic_example,
    quasi_arithmetic_deviation,
    scaled,
)
from .generators import Generator, Weight
from .interval import Interval, chebyshev_grid
from .means import (
    bajraktarevic_mean,
    beta_type_mean,
    elementary_symmetric_mean,
    quasi_arithmetic_mean,
    sublevel_set_roots,
)
from .roots import RootResult, find_root_decreasing, golden_section_min

__all__ = [
    "AxiomReport",
    "Deviation",
    "Generator",
    "Interval",
    "RootResult",
    "Weight",
    "bajraktarevic_mean",
    "beta_type_mean",
    "chebyshev_grid",
    "check_deviation_axioms",
    "deviation_mean",
    "elementary_symmetric_mean",
    "exponential_kink",
    "find_root_decreasing",
    "generators",
    "golden_section_min",
    "linear",
    "make_bajraktarevic_deviation",
    "power",
    "quadratic_example",
    "quasi_arithmetic_deviation",
    "quasi_arithmetic_mean",
    "scaled",
    "sublevel_set_roots",
]
