from __future__ import annotations

import math
from itertools import combinations

import numpy as np
import pytest

from simplicial_measure import fixtures
from simplicial_measure.simplicial import build_complex


@pytest.fixture
def boundary5():
    return build_complex(fixtures.boundary5())


@pytest.fixture
def glued_pair():
    return build_complex(fixtures.glued_pair())


@pytest.fixture
def single():
    return build_complex([(0, 1, 2, 3, 4)])


def coords_lengths(coords, vertices=None) -> dict:
    coords = np.asarray(coords, dtype=float)
    vertices = range(len(coords)) if vertices is None else vertices
    return {(i, j): float(np.sum((coords[i] - coords[j]) ** 2)) for i, j in combinations(sorted(vertices), 2)}


def cayley_menger_volume(points) -> float:
    """Volume of the simplex on ``points`` via the bordered distance determinant."""
    points = np.asarray(points, dtype=float)
    n = len(points)
    d = n - 1
    B = np.ones((n + 1, n + 1))
    B[0, 0] = 0.0
    for i in range(n):
        for j in range(n):
            B[i + 1, j + 1] = np.sum((points[i] - points[j]) ** 2)
    v2 = (-1) ** (d + 1) / (2**d * math.factorial(d) ** 2) * np.linalg.det(B)
    return float(np.sqrt(max(v2, 0.0)))


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
