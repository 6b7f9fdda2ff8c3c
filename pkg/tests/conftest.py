from __future__ import annotations

import numpy as np
import pytest

from trialgebra.session import Session


@pytest.fixture(scope="session")
def s3() -> Session:
    return Session("fp:3", (1, 1, 1), seed=0)


@pytest.fixture(scope="session")
def s5() -> Session:
    return Session("fp:5", (1, 2, 3), seed=0)


@pytest.fixture(scope="session")
def sq() -> Session:
    return Session("q", (1, 2, 3), seed=0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
