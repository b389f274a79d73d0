"""Flat-simplex geometry from squared edge lengths.

All quantities are Euclidean.  A squared-length map is any mapping from a
sorted vertex pair to the squared length of that edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .simplicial import Simplex, SimplicialComplex, edges_of, faces_of, triangle_star

DET_TOL = 1e-12

SquaredLengthMap = Mapping[Simplex, float]


class SignatureError(ValueError):
    """Negative Gram determinant: lengths are not Euclidean."""


class DegeneracyError(ValueError):
    pass


class OpenStarError(ValueError):
    """Deficit angle requested on a triangle whose star is an open fan."""


def _l2(lengths: SquaredLengthMap, a: int, b: int) -> float:
    return lengths[(a, b) if a < b else (b, a)]


def gram_matrix(simplex: Simplex, lengths: SquaredLengthMap, origin: int = 0) -> np.ndarray:
    """G_ij = (l2(o,i) + l2(o,j) - l2(i,j)) / 2 with vertex ``simplex[origin]`` at the origin."""
    o = simplex[origin]
    rest = [v for v in simplex if v != o]
    d = len(rest)
    G = np.empty((d, d))
    for i, vi in enumerate(rest):
        for j in range(i, d):
            vj = rest[j]
            if i == j:
                G[i, i] = _l2(lengths, o, vi)
            else:
                G[i, j] = G[j, i] = 0.5 * (_l2(lengths, o, vi) + _l2(lengths, o, vj) - _l2(lengths, vi, vj))
    return G


def simplex_volume(simplex: Simplex, lengths: SquaredLengthMap, origin: int = 0) -> float:
    d = len(simplex) - 1
    if d == 0:
        return 1.0
    det = float(np.linalg.det(gram_matrix(simplex, lengths, origin)))
    if det < -DET_TOL:
        raise SignatureError(f"Gram determinant {det:.3e} < 0 for {simplex}")
    return math.sqrt(max(det, 0.0)) / math.factorial(d)


def hyperdihedral_angle(four_simplex: Simplex, triangle: Simplex, lengths: SquaredLengthMap) -> float:
    """Interior angle of ``four_simplex`` between its two 3-faces through ``triangle``.

    The two opposite vertices are projected onto the plane orthogonal to the
    triangle (a Schur complement of the Gram matrix); the angle between the
    projections is the hyperdihedral angle.
    """
    tri = tuple(sorted(triangle))
    others = [v for v in four_simplex if v not in tri]
    if len(tri) != 3 or len(others) != 2:
        raise ValueError(f"{triangle} is not a triangle of {four_simplex}")
    order = (tri[0], tri[1], tri[2], others[0], others[1])
    G = gram_matrix(order, lengths)
    G_tt, G_tx, G_xx = G[:2, :2], G[:2, 2:], G[2:, 2:]
    if np.linalg.det(G_tt) <= DET_TOL:
        raise DegeneracyError(f"triangle {tri} has zero area")
    P = G_xx - G_tx.T @ np.linalg.solve(G_tt, G_tx)
    if P[0, 0] <= DET_TOL or P[1, 1] <= DET_TOL:
        raise DegeneracyError(f"4-simplex {four_simplex} is degenerate")
    c = P[0, 1] / math.sqrt(P[0, 0] * P[1, 1])
    return math.acos(min(1.0, max(-1.0, c)))


def deficit_angle(complex_: SimplicialComplex, triangle: Simplex, lengths: SquaredLengthMap) -> float:
    star = triangle_star(complex_, triangle)
    if not star.closed:
        raise OpenStarError(f"deficit angle is defined only for interior triangles; {star.triangle} is on the boundary")
    return 2 * math.pi - sum(hyperdihedral_angle(s, star.triangle, lengths) for s in star.cycle)


@dataclass
class ActionParams:
    newton_constant: float = 1.0
    coefficient: float | None = None  # None means 1/(8 pi G)

    def __post_init__(self):
        if self.newton_constant <= 0:
            raise ValueError("newton_constant must be positive")

    @property
    def overall_coefficient(self) -> float:
        if self.coefficient is not None:
            return self.coefficient
        return 1.0 / (8 * math.pi * self.newton_constant)


@dataclass
class AngleData:
    triangle: Simplex
    per_simplex_angle: dict[Simplex, float]
    deficit: float
    area: float


def angle_data(complex_: SimplicialComplex, triangle: Simplex, lengths: SquaredLengthMap) -> AngleData:
    star = triangle_star(complex_, triangle)
    angles = {s: hyperdihedral_angle(s, star.triangle, lengths) for s in star.cycle}
    deficit = 2 * math.pi - sum(angles.values()) if star.closed else math.nan
    return AngleData(star.triangle, angles, deficit, simplex_volume(star.triangle, lengths))


def closed_triangles(complex_: SimplicialComplex) -> dict[Simplex, int]:
    """Interior triangles mapped to the number of 4-simplices around them."""
    out = {}
    for t in complex_.faces[2]:
        star = triangle_star(complex_, t)
        if star.closed:
            out[t] = star.n
    return out


def regge_action_global(complex_: SimplicialComplex, lengths: SquaredLengthMap,
                        params: ActionParams | None = None) -> float:
    params = params or ActionParams()
    total = 0.0
    for t in closed_triangles(complex_):
        total += deficit_angle(complex_, t, lengths) * simplex_volume(t, lengths)
    return params.overall_coefficient * total


@dataclass
class PerSimplexLengths:
    """Squared lengths assigned independently in every 4-simplex."""

    values: dict[Simplex, dict[Simplex, float]] = field(default_factory=dict)

    @classmethod
    def conformed(cls, complex_: SimplicialComplex, lengths: SquaredLengthMap) -> PerSimplexLengths:
        return cls({s: {e: float(lengths[e]) for e in edges_of(s)} for s in complex_.four_simplices})

    def __getitem__(self, four_simplex: Simplex) -> dict[Simplex, float]:
        return self.values[tuple(four_simplex)]

    def check(self, complex_: SimplicialComplex) -> None:
        for s in complex_.four_simplices:
            missing = [e for e in edges_of(s) if e not in self.values.get(s, {})]
            if missing:
                raise KeyError(f"4-simplex {s} lacks squared lengths for {missing}")

    def is_conformed(self, complex_: SimplicialComplex, tol: float = 0.0) -> bool:
        for e in complex_.faces[1]:
            vals = [self.values[s][e] for s in complex_.containing(e)]
            if max(vals) - min(vals) > tol:
                return False
        return True


def regge_action_split(complex_: SimplicialComplex, lengths: PerSimplexLengths,
                       params: ActionParams | None = None) -> float:
    """Sum over 4-simplices of (2 pi / N - alpha) * area, each simplex using its own lengths."""
    params = params or ActionParams()
    lengths.check(complex_)
    n_around = closed_triangles(complex_)
    total = 0.0
    for s in complex_.four_simplices:
        own = lengths[s]
        for t in (t for t in faces_of(s, 2) if t in n_around):
            alpha = hyperdihedral_angle(s, t, own)
            total += (2 * math.pi / n_around[t] - alpha) * simplex_volume(t, own)
    return params.overall_coefficient * total

