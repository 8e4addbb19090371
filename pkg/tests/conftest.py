"""Shared fixtures: the reference scenario and a fast variant for MC tests."""

from __future__ import annotations

import dataclasses

import pytest

from fran_tradeoff.config import default_scenario


@pytest.fixture
def defaults():
    return default_scenario()


@pytest.fixture
def fast_scenario():
    """Reference scenario shrunk to ~170 stations per scene.

    Keeps the density ratio (and hence the association split) of the
    reference setup while making per-realization work ~100x cheaper;
    used by tests that exercise mechanics rather than agreement with
    the analytical model.
    """
    scenario = default_scenario()
    return scenario.replace(network=dataclasses.replace(
        scenario.network, lambda_r=5e-5, lambda_f=5e-6, disc_radius=1000.0))
