"""Deviation means of samples and of random variables, with their limit theorems.

Subpackages:
    core: deviations, the sample deviation mean and classical means.
    population: laws, expectations and the population deviation mean.
    asymptotics: CLT variance, iterated-logarithm constant, large-deviation rates.
    montecarlo: seeded simulations of the four limit theorems.
    cli: the ``devmeans`` command.
"""

from . import asymptotics, core, montecarlo, population
from .errors import DevMeansError

__version__ = "0.1.0"
