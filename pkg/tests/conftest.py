"""
Pytest configuration for toric_invariants tests.
"""

import os
from pathlib import Path

import pytest

from toric_invariants.corpus import corpus_dir
from toric_invariants.simplicial import build_complex, generator_boundary_simplex, generator_polygon


def pytest_addoption(parser):
    """Add command-line options to pytest."""
    parser.addoption("--jobs", action="store", help="Strands or subsets processed concurrently")
    parser.addoption("--corpus-dir", action="store", help="Directory of JSON documents used instead of the bundled corpus")


@pytest.fixture(scope="session")
def jobs(request):
    value = request.config.getoption("--jobs") or os.environ.get("MAX_CONCURRENT_STRANDS", "1")
    return int(value)


@pytest.fixture(scope="session")
def corpus_directory(request):
    value = request.config.getoption("--corpus-dir") or os.environ.get("TORIC_CORPUS_DIR")
    return Path(value) if value else corpus_dir()


@pytest.fixture
def pentagon():
    return generator_polygon(5)


@pytest.fixture
def triangle():
    return generator_boundary_simplex(2)


@pytest.fixture
def three_points():
    return build_complex(3, [[1], [2], [3]], name="three-points")


@pytest.fixture
def rp2():
    """Six-vertex real projective plane."""
    return build_complex(
        6,
        [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6], [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6]],
        name="rp2",
    )
