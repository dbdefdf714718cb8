"""Command-line interface and reference checks."""

from .golden import GoldenCheck, format_table, verify_paper
from .main import RunSpec, main, parse_args, render, run
from .registry import UsageError, resolve_deviation, resolve_distribution
