"""Standard test triangulations."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .simplicial import Simplex


def boundary5() -> list[Simplex]:
    """Boundary of the 5-simplex: a closed triangulated 4-sphere."""
    return list(combinations(range(6), 5))


def glued_pair() -> list[Simplex]:
    return [(0, 1, 2, 3, 4), (1, 2, 3, 4, 5)]


def chain(k: int) -> list[Simplex]:
    """k 4-simplices on consecutive vertex windows; neighbours share a 3-face."""
    if k < 1:
        raise ValueError("chain length must be positive")
    return [tuple(range(i, i + 5)) for i in range(k)]


def unit_lengths(simplices) -> dict[Simplex, float]:
    return {e: 1.0 for s in simplices for e in combinations(sorted(s), 2)}


def lengths_from_coordinates(simplices, coords) -> dict[Simplex, float]:
    coords = np.asarray(coords, dtype=float)
    return {
        (i, j): float(np.sum((coords[i] - coords[j]) ** 2))
        for s in simplices
        for i, j in combinations(sorted(s), 2)
    }


# vertices 0..4 of a generic 4-simplex in R^4 and an interior point 5
SUBDIVIDED_COORDS = np.array([
    [0.0, 0.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 0.0],
    [0.2, 1.1, 0.0, 0.0],
    [0.3, 0.4, 0.9, 0.0],
    [0.1, 0.3, 0.2, 1.2],
    [0.32, 0.36, 0.22, 0.24],
])


def subdivided() -> list[Simplex]:
    """A 4-simplex coned from an interior point over its five 3-faces."""
    return [tuple(sorted((*f, 5))) for f in combinations(range(5), 4)]


def subdivided_lengths(coords=SUBDIVIDED_COORDS) -> dict[Simplex, float]:
    return lengths_from_coordinates(subdivided(), coords)


def fixture(name: str, k: int | None = None) -> tuple[list[Simplex], dict[Simplex, float]]:
    if name == "boundary5":
        s = boundary5()
        return s, unit_lengths(s)
    if name == "gluedpair":
        s = glued_pair()
        return s, unit_lengths(s)
    if name == "chain":
        s = chain(3 if k is None else k)
        return s, unit_lengths(s)
    if name == "subdivided":
        return subdivided(), subdivided_lengths()
    raise KeyError(f"unknown fixture {name!r}")


FIXTURES = ("boundary5", "gluedpair", "chain", "subdivided")
