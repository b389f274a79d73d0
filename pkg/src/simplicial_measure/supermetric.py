"""DeWitt-like supermetric on 3-face metrics and the singular jump action.

Symmetric 3x3 matrices are flattened to 6-vectors of their independent
components in the order (11, 22, 33, 12, 13, 23).  The 6x6 supermetric is the
4-index form evaluated at these unordered index pairs, and quadratic forms are
plain ``v @ M @ v`` on the 6-vectors.  With this convention
``det M = -(det g)**-4 / 4`` holds exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

PAIRS = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))


class IntegrationError(ArithmeticError):
    pass


class FaceTypeError(ValueError):
    pass


def sym_to_vec(h) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    return np.array([h[a, b] for a, b in PAIRS])


def vec_to_sym(v) -> np.ndarray:
    h = np.zeros((3, 3))
    for (a, b), x in zip(PAIRS, v):
        h[a, b] = h[b, a] = x
    return h


def dewitt_supermetric(g) -> np.ndarray:
    """M^{(ab)(cd)} = (g^ac g^bd + g^ad g^bc)/2 - g^ab g^cd on unordered pairs."""
    g = np.asarray(g, dtype=float)
    if abs(np.linalg.det(g)) == 0.0:
        raise np.linalg.LinAlgError("singular face metric")
    gi = np.linalg.inv(g)
    gi = 0.5 * (gi + gi.T)
    M = np.empty((6, 6))
    for i, (a, b) in enumerate(PAIRS):
        for j, (c, d) in enumerate(PAIRS):
            M[i, j] = 0.5 * (gi[a, c] * gi[b, d] + gi[a, d] * gi[b, c]) - gi[a, b] * gi[c, d]
    return M


def det_and_inertia(M, tol: float = 1e-12) -> tuple[float, int]:
    """Determinant and number of negative eigenvalues."""
    M = np.asarray(M, dtype=float)
    eig = np.linalg.eigvalsh(0.5 * (M + M.T))
    scale = max(1.0, float(np.max(np.abs(eig))))
    return float(np.linalg.det(M)), int(np.sum(eig < -tol * scale))


def quadratic_form(M, dg) -> float:
    v = sym_to_vec(dg)
    return float(v @ np.asarray(M) @ v)


# -- jump profiles -----------------------------------------------------------

@dataclass(frozen=True)
class Profile:
    """A jump shape f on [-1/2, 1/2] with f(-1/2) = 0 and f(1/2) = 1."""

    name: str
    f: Callable[[float], float]
    df: Callable[[float], float]
    df2_integral: float | None = None  # closed form of the integral of f'^2, if known
    symmetric: bool = False

    def __post_init__(self):
        if abs(self.f(-0.5)) > 1e-12 or abs(self.f(0.5) - 1.0) > 1e-12:
            raise ValueError(f"profile {self.name!r} violates f(-1/2)=0, f(1/2)=1")
        if self.symmetric:
            taus = np.linspace(-0.5, 0.5, 41)
            if any(abs(self.f(t) - 1.0 + self.f(-t)) > 1e-12 for t in taus):
                raise ValueError(f"profile {self.name!r} is not symmetric: f(t) != 1 - f(-t)")


LINEAR = Profile("linear", lambda t: t + 0.5, lambda t: 1.0 + 0.0 * t, 1.0, symmetric=True)
SMOOTHSTEP = Profile(
    "smoothstep",
    lambda t: 0.5 + 1.5 * t - 2.0 * t**3,
    lambda t: 1.5 - 6.0 * t**2,
    6.0 / 5.0,
    symmetric=True,
)
SINE = Profile(
    "sine",
    lambda t: 0.5 * (1.0 + np.sin(np.pi * t)),
    lambda t: 0.5 * np.pi * np.cos(np.pi * t),
    np.pi**2 / 8.0,
    symmetric=True,
)
PROFILES = {p.name: p for p in (LINEAR, SMOOTHSTEP, SINE)}


def profile_integral(profile: Profile, quadrature: bool = False) -> float:
    """Integral of f'(t)^2 over [-1/2, 1/2]; never below 1."""
    if profile.df2_integral is not None and not quadrature:
        return float(profile.df2_integral)
    val, err = integrate.quad(lambda t: profile.df(t) ** 2, -0.5, 0.5, epsabs=1e-13, epsrel=1e-12, limit=200)
    if not math.isfinite(val):
        raise IntegrationError(f"integral of f'^2 diverges for {profile.name!r}")
    return val


def heaviside(t: float) -> float:
    return 1.0 if t >= 0 else 0.0


@dataclass
class JumpProfile:
    """Shape and coordinate data of a smoothed metric jump across a 3-face.

    ``face_type`` fixes signs: a spacelike face has det g > 0 and g_nn < 0, a
    timelike face det g < 0 and g_nn > 0.  Either way -det g / g_nn > 0.
    """

    profile: Profile = SMOOTHSTEP
    theta: Callable[[float], float] = heaviside
    normal_thickness: float = 1.0   # Delta x^n
    transverse_volume: float = 1.0  # Delta^3 x
    g_nn: tuple[float, float] = (-1.0, -1.0)
    face_type: str = "spacelike"

    def __post_init__(self):
        if self.face_type not in ("spacelike", "timelike"):
            raise FaceTypeError(f"unknown face type {self.face_type!r}")
        want = -1.0 if self.face_type == "spacelike" else 1.0
        if any(np.sign(x) != want for x in self.g_nn):
            raise FaceTypeError(f"g_nn {self.g_nn} has the wrong sign for a {self.face_type} face")
        if self.normal_thickness <= 0:
            raise ValueError("normal thickness must be positive")

    def check_metric(self, g) -> float:
        det = float(np.linalg.det(g))
        want = 1.0 if self.face_type == "spacelike" else -1.0
        if np.sign(det) != want:
            raise FaceTypeError(f"det g = {det:.3g} has the wrong sign for a {self.face_type} face")
        return det

    def g_nn_at(self, tau: float) -> float:
        g1, g2 = self.g_nn
        return self.theta(tau) * (g2 - g1) + g1

    def mean_inverse_root_gnn(self) -> float:
        # sqrt(-det g) * g_nn^(-1/2) on principal branches equals sqrt(|det g| / |g_nn|)
        return 0.5 * sum(abs(x) ** -0.5 for x in self.g_nn)


def _gauss_halves(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    # map [-1,1] onto [-1/2,0] and [0,1/2]; the split keeps theta's jump off the nodes
    left, right = 0.25 * (x - 1.0), 0.25 * (x + 1.0)
    return np.concatenate([left, right]), np.concatenate([0.25 * w, 0.25 * w])


def _tilM(g1, g2, jump: JumpProfile, n: int) -> np.ndarray:
    dg = g2 - g1
    taus, ws = _gauss_halves(n)
    acc = np.zeros((6, 6))
    for t, w in zip(taus, ws):
        g = jump.profile.f(t) * dg + g1
        ratio = -np.linalg.det(g) / jump.g_nn_at(t)
        if not ratio > 0:
            raise IntegrationError(f"interpolated metric leaves the face type at tau={t:.4f}")
        acc += w * math.sqrt(ratio) * dewitt_supermetric(g) * jump.profile.df(t) ** 2
    return acc


def tilM_integral(g1, g2, jump: JumpProfile, tol: float = 1e-10) -> np.ndarray:
    """Profile-weighted supermetric averaged through the jump layer."""
    g1 = np.asarray(g1, dtype=float)
    g2 = np.asarray(g2, dtype=float)
    coarse = _tilM(g1, g2, jump, 32)
    fine = _tilM(g1, g2, jump, 64)
    scale = max(1.0, float(np.max(np.abs(fine))))
    if np.max(np.abs(fine - coarse)) > tol * scale:
        raise IntegrationError("quadrature for the averaged supermetric did not converge")
    return 0.5 * (fine + fine.T)


@dataclass
class EpsilonParams:
    epsilon: float
    ingredients: dict[str, float] = field(default_factory=dict)


def _inverse_epsilon(transverse_volume, root_det, mean_inv_root_gnn, df2, newton_constant, normal_thickness):
    return -transverse_volume * root_det * mean_inv_root_gnn * df2 / (64 * math.pi * newton_constant * normal_thickness)


def epsilon_parameter(jump: JumpProfile, g1, newton_constant: float) -> EpsilonParams:
    """Dimensionless jump-width parameter.

    The sign follows the defining formula, so ``epsilon`` is negative for real
    ingredients; ``exp(i/epsilon * dg.M.dg)`` is then the singular factor.
    """
    det = jump.check_metric(np.asarray(g1, dtype=float))
    root_det = math.sqrt(abs(det))
    mean = jump.mean_inverse_root_gnn()
    df2 = profile_integral(jump.profile)
    inv = _inverse_epsilon(jump.transverse_volume, root_det, mean, df2, newton_constant, jump.normal_thickness)
    return EpsilonParams(
        1.0 / inv,
        {
            "transverse_volume": jump.transverse_volume,
            "det_g1": det,
            "mean_inverse_root_gnn": mean,
            "profile_integral": df2,
            "newton_constant": newton_constant,
            "normal_thickness": jump.normal_thickness,
        },
    )


def epsilon_from_face_volume(volume3: float, jump: JumpProfile, newton_constant: float) -> float:
    """Same parameter written through the 3-face volume, 6 V = sqrt(det g) Delta^3 x."""
    inv = _inverse_epsilon(6.0 * volume3, 1.0, jump.mean_inverse_root_gnn(), profile_integral(jump.profile),
                           newton_constant, jump.normal_thickness)
    return 1.0 / inv


def singular_action(dg, tilM, jump: JumpProfile, newton_constant: float) -> float:
    return -jump.transverse_volume / (64 * math.pi * newton_constant * jump.normal_thickness) * quadratic_form(tilM, dg)


def face_prefactor(g, epsilon: float) -> complex:
    """Stationary-phase value of the 6-dimensional integral of exp(i v.M.v / epsilon).

    Equals pi^3 |epsilon|^3 |det M|^(-1/2) times the phase exp(i pi (N+ - N-) / 4)
    of the form M / epsilon; its magnitude is 2 (pi epsilon)^3 (det g)^2.
    """
    M = dewitt_supermetric(g)
    det, n_neg = det_and_inertia(M)
    if epsilon < 0:
        n_neg = 6 - n_neg
    n_pos = 6 - n_neg
    mag = math.pi**3 * abs(epsilon) ** 3 / math.sqrt(abs(det))
    return mag * np.exp(1j * math.pi * (n_pos - n_neg) / 4)


def random_metrics(n: int, rng: np.random.Generator, det_range=(0.1, 10.0)) -> list[np.ndarray]:
    """Symmetric 3x3 matrices with |det| log-uniform in ``det_range``, alternating det sign."""
    out = []
    lo, hi = np.log(det_range[0]), np.log(det_range[1])
    for i in range(n):
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        lam = np.exp(rng.uniform(np.log(0.5), np.log(2.0), size=3))
        lam[rng.integers(3)] *= -1 if i % 2 else 1
        g = q @ np.diag(lam) @ q.T
        g = 0.5 * (g + g.T)
        target = np.exp(rng.uniform(lo, hi))
        g *= (target / abs(np.linalg.det(g))) ** (1.0 / 3.0)
        out.append(g)
    return out
