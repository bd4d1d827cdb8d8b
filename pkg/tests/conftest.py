import os
import sys

import numpy as np
import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from harness import EnvSpec, ExperimentConfig, PolicySpec  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run long benchmark reproductions")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def fixed_env():
    return EnvSpec(model="fixed", means=[0.9, 0.1])


@pytest.fixture
def tiny_config(fixed_env):
    """Two fixed arms, a handful of short replications."""
    return ExperimentConfig(
        env=fixed_env,
        policies=[PolicySpec(name="ucb"), PolicySpec(name="aff_ts"), PolicySpec(name="oracle")],
        horizon=200,
        replications=3,
        seed=7,
    )
