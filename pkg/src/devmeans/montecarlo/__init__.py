"""Seeded simulations checking the limit theorems at finite sample sizes."""

from .experiments import CltReport, LilReport, SllnReport, run_clt, run_lil, run_slln
from .large_deviations import LdReport, exact_tail_log_probs, run_ld
from .sampling import (
    ExperimentConfig,
    dyadic_checkpoints,
    geometric_checkpoints,
    run_replications,
    sample,
    stream,
)
from .stats import ks_statistic, wilson_interval
