"""Shared cached structures and irrep families for the test suite."""

from functools import lru_cache
from pathlib import Path

import pytest

from semifourier.harmonic import induced_irreps
from semifourier.semigroup import from_builtin, inverse_structure

REPO_ROOT = Path(__file__).resolve().parent.parent
SAMPLE_DATA = REPO_ROOT / "sample_data"

BUILTINS = (
    "builtin:matrix_units:1",
    "builtin:matrix_units:2",
    "builtin:matrix_units:3",
    "builtin:symmetric_inverse:1",
    "builtin:symmetric_inverse:2",
    "builtin:symmetric_inverse:3",
    "builtin:cyclic_with_zero:2",
    "builtin:cyclic_with_zero:3",
    "builtin:cyclic_with_zero:4",
    "builtin:cyclic_with_zero:5",
)


@lru_cache(maxsize=None)
def get_structure(ref: str):
    return inverse_structure(from_builtin(ref))


@lru_cache(maxsize=None)
def get_irreps(ref: str, seed: int = 0):
    return induced_irreps(get_structure(ref), seed=seed)


@pytest.fixture
def mu2():
    return get_structure("builtin:matrix_units:2")


@pytest.fixture
def i2():
    return get_structure("builtin:symmetric_inverse:2")


@pytest.fixture
def i3():
    return get_structure("builtin:symmetric_inverse:3")
