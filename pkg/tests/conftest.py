import sys
from pathlib import Path

import numpy as np
import pytest

SRC = Path(__file__).resolve().parents[1] / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from maffkit.numkernel import Tolerance  # noqa: E402


@pytest.fixture
def tol():
    return Tolerance()


@pytest.fixture
def jacobi_tol():
    return Tolerance(eig_backend="jacobi")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
