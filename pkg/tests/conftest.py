"""Shared fixtures: the three bundled scenarios and their (cached) traces."""

import pytest

from pursuitring import resolve_scenario, run


@pytest.fixture(scope="session")
def scenario_a():
    return resolve_scenario("scenario_a")


@pytest.fixture(scope="session")
def scenario_b():
    return resolve_scenario("scenario_b")


@pytest.fixture(scope="session")
def scenario_c():
    return resolve_scenario("scenario_c")


@pytest.fixture(scope="session")
def trace_a(scenario_a):
    return run(scenario_a)


@pytest.fixture(scope="session")
def trace_b(scenario_b):
    return run(scenario_b)


@pytest.fixture(scope="session")
def trace_c(scenario_c):
    return run(scenario_c)
