"""Shared fixtures: the expensive Monte Carlo batches are session-scoped
so that several acceptance criteria can share one run."""

import math

import pytest

from polychain import harness

MASTER_SEED = 2026
SQRT2 = math.sqrt(2.0)


@pytest.fixture(scope="session")
def batch_1000():
    """250 samples at n = 1000, exact solver."""
    cfg = harness.ExperimentConfig(n=1000, samples=250, width="exact",
                                   master_seed=MASTER_SEED)
    return cfg, harness.run_experiment(cfg)


@pytest.fixture(scope="session")
def batch_10k():
    """100 samples at n = 10^4, pruned to the tabulated neighborhood width."""
    cfg = harness.ExperimentConfig(n=10_000, samples=100, width=0.200 * SQRT2,
                                   master_seed=MASTER_SEED)
    return cfg, harness.run_experiment(cfg)


@pytest.fixture(scope="session")
def batch_100k():
    """A few samples at n = 10^5 for the limit-shape trend."""
    cfg = harness.ExperimentConfig(n=100_000, samples=3, width=0.060 * SQRT2,
                                   master_seed=MASTER_SEED)
    return cfg, harness.run_experiment(cfg)
