"""Shared fixtures: a session-scoped warmup for the compiled shooting kernels."""

import pytest


@pytest.fixture(scope="session")
def warm_oracle():
    """Compile the shooting-integrator kernels once, outside any timed block."""
    from kghulthen import oracle

    oracle.warmup()
    return oracle
