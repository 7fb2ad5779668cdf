"""
Shared fixtures; puts the repository root and shared/ on sys.path
"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT))
sys.path.insert(0, str(ROOT / "shared"))

from qspace.config import EngineParams, IntegralParams  # noqa: E402
from qspace.coords import coordinate_system  # noqa: E402


@pytest.fixture
def plane():
    return coordinate_system('plane')


@pytest.fixture
def lattice_params():
    return IntegralParams(q_real=1.1, trunc_K=500, tol=1e-10, x0=1.0)


@pytest.fixture
def small_params():
    """Reduced sweep sizes for running whole suites in the unit tests"""
    return EngineParams(K=300, degree=3, samples=3, N=4)
