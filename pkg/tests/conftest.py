"""Shared fixtures for the test suite."""

import sys
from importlib import resources

import numpy as np
import pytest

from lingmap import Catalog, FuzzyInferenceSystem, TrainingSet, load_catalog, load_training_csv


def _fixture_path(name: str):
    return resources.files("lingmap").joinpath("fixtures", name)


@pytest.fixture(scope="session")
def individualism_data() -> TrainingSet:
    with resources.as_file(_fixture_path("hofstede_individualism.csv")) as path:
        return load_training_csv(path)


@pytest.fixture(scope="session")
def case1_catalog() -> Catalog:
    with resources.as_file(_fixture_path("case1_distance.json")) as path:
        return load_catalog(path)


@pytest.fixture(scope="session")
def case2_catalog() -> Catalog:
    with resources.as_file(_fixture_path("case2_distance_gender.json")) as path:
        return load_catalog(path)


@pytest.fixture(scope="session")
def case1_fis(case1_catalog) -> FuzzyInferenceSystem:
    return case1_catalog.fis


@pytest.fixture(scope="session")
def case2_fis(case2_catalog) -> FuzzyInferenceSystem:
    return case2_catalog.fis


@pytest.fixture(scope="session")
def two_blobs() -> np.ndarray:
    """40 samples in two well-separated groups (seeded, deterministic)."""
    rng = np.random.default_rng(20240817)
    return np.concatenate(
        [rng.normal(10.0, 1.5, size=20), rng.normal(50.0, 2.0, size=20)]
    )


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance-criteria verdict lines after the normal report."""
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULT_LINES", None) if module else None
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
