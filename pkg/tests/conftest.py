import numpy as np
import pytest

from crnkit import models


@pytest.fixture(scope="session")
def schmitz():
    return models.builtin("schmitz")


@pytest.fixture(scope="session")
def anderies_gt():
    return models.builtin("anderies-gt")


@pytest.fixture()
def rng():
    return np.random.default_rng(20240611)
