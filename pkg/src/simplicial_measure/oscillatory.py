"""Fresnel-type delta limits and the toy jump model.

Probes are Gaussians ``a * exp(-((x - mu) / s)**2)``, so every oscillatory
integral has a closed complex-Gaussian value.  A second, numerical route
rotates the contour onto the steepest-descent directions and integrates the
now damped integrand; it is kept as an independent cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import product
from typing import Callable

import numpy as np
from scipy import integrate

from .supermetric import LINEAR, Profile


@dataclass(frozen=True)
class ProbeFunction:
    mu: float = 0.0
    s: float = 1.0
    a: float = 1.0

    def __call__(self, x):
        return self.a * np.exp(-(((x - self.mu) / self.s) ** 2))


@dataclass
class FresnelResult:
    value: complex
    predicted: complex
    rel_error: float
    epsilon: float

    @property
    def magnitude_ratio(self) -> float:
        return abs(self.value) / abs(self.predicted)

    @property
    def phase_error(self) -> float:
        return abs(cmath.phase(self.value / self.predicted))


def _rel(value: complex, predicted: complex) -> float:
    if predicted == 0:
        return abs(value)
    return abs(value - predicted) / abs(predicted)


def fresnel_1d_exact(epsilon: float, probe: ProbeFunction) -> complex:
    """Integral of exp(i x^2 / eps) * probe(x) over the real line."""
    A = 1.0 / probe.s**2 - 1j / epsilon
    B = 2.0 * probe.mu / probe.s**2
    C = probe.mu**2 / probe.s**2
    return probe.a * cmath.sqrt(math.pi / A) * cmath.exp(B * B / (4 * A) - C)


def fresnel_1d_quadrature(epsilon: float, probe: ProbeFunction) -> complex:
    # x = e^{i pi/4} y turns exp(i x^2/eps) into exp(-y^2/eps)
    rot = cmath.exp(0.25j * math.pi)

    def integrand(y):
        return cmath.exp(-y * y / epsilon) * complex(probe(rot * y))

    half = 12.0 * math.sqrt(epsilon)
    opts = dict(epsabs=0.0, epsrel=1e-12, limit=400)
    re, _ = integrate.quad(lambda y: integrand(y).real, -half, half, **opts)
    im, _ = integrate.quad(lambda y: integrand(y).imag, -half, half, **opts)
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ArithmeticError("Fresnel quadrature did not converge")
    return rot * complex(re, im)


def fresnel_1d(epsilon: float, probe: ProbeFunction = ProbeFunction(), method: str = "exact") -> FresnelResult:
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if method == "exact":
        value = fresnel_1d_exact(epsilon, probe)
    elif method == "quadrature":
        value = fresnel_1d_quadrature(epsilon, probe)
    else:
        raise ValueError(f"unknown method {method!r}")
    predicted = math.sqrt(math.pi * epsilon) * cmath.exp(0.25j * math.pi) * float(probe(0.0))
    return FresnelResult(value, predicted, _rel(value, predicted), epsilon)


def _product_probe(probe, n: int) -> list[ProbeFunction]:
    if isinstance(probe, ProbeFunction):
        return [probe] * n
    probes = list(probe)
    if len(probes) != n:
        raise ValueError("one probe factor per dimension")
    return probes


def _complex_sqrt_det(A: np.ndarray) -> complex:
    # every eigenvalue has positive real part, so the product of principal
    # roots is the analytic continuation from the real positive case
    return complex(np.prod(np.sqrt(np.linalg.eigvals(A).astype(complex))))


def fresnel_nd_exact(M, epsilon: float, probes) -> complex:
    """Integral of exp(i/(2 eps) x.M.x) * prod_k probe_k(x_k) over R^N."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    n = M.shape[0]
    probes = _product_probe(probes, n)
    D = np.diag([1.0 / p.s**2 for p in probes])
    A = D - 0.5j / epsilon * M
    b = np.array([2.0 * p.mu / p.s**2 for p in probes])
    c = sum(p.mu**2 / p.s**2 for p in probes)
    amp = np.prod([p.a for p in probes])
    expo = 0.25 * b @ np.linalg.solve(A, b) - c
    return complex(amp * math.pi ** (n / 2) / _complex_sqrt_det(A) * np.exp(expo))


def fresnel_nd_quadrature(M, epsilon: float, probes, order: int = 48) -> complex:
    """Tensor Gauss-Hermite evaluation after rotating each eigen-direction."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    n = M.shape[0]
    if n > 3:
        raise ValueError("numerical N-D Fresnel integrals are limited to N <= 3")
    probes = _product_probe(probes, n)
    lam, Q = np.linalg.eigh(M)
    if np.any(lam == 0):
        raise np.linalg.LinAlgError("degenerate matrix")
    rot = np.exp(0.25j * np.pi * np.sign(lam))
    # along y_k = rot_k z_k: exp(i lam y^2 / 2eps) = exp(-|lam| z^2 / 2eps)
    scale = np.sqrt(2.0 * epsilon / np.abs(lam))
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    grid = np.stack(np.meshgrid(*([nodes] * n), indexing="ij"), axis=-1).reshape(-1, n)
    wgrid = np.prod(np.stack(np.meshgrid(*([weights] * n), indexing="ij"), axis=-1).reshape(-1, n), axis=1)
    x = (grid * scale * rot) @ Q.T
    vals = np.ones(len(grid), dtype=complex)
    for k, p in enumerate(probes):
        vals *= p.a * np.exp(-(((x[:, k] - p.mu) / p.s) ** 2))
    return complex(np.sum(wgrid * vals) * np.prod(rot * scale) * abs(np.linalg.det(Q)))


def fresnel_prefactor(M, epsilon: float) -> complex:
    """(2 pi eps)^(N/2) e^{i pi N/4} [det M]^(-1/2) with arg det M = N_- pi."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    n = M.shape[0]
    lam = np.linalg.eigvalsh(M)
    if np.any(np.abs(lam) < 1e-14 * max(1.0, np.max(np.abs(lam)))):
        raise np.linalg.LinAlgError("degenerate matrix")
    n_neg = int(np.sum(lam < 0))
    det_root = math.sqrt(abs(float(np.prod(lam)))) * cmath.exp(0.5j * math.pi * n_neg)
    return (2 * math.pi * epsilon) ** (n / 2) * cmath.exp(0.25j * math.pi * n) / det_root


def fresnel_nd(M, epsilon: float, probes=ProbeFunction(), method: str = "exact") -> FresnelResult:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    n = M.shape[0]
    if method == "exact":
        value = fresnel_nd_exact(M, epsilon, probes)
    elif method == "quadrature":
        value = fresnel_nd_quadrature(M, epsilon, probes)
    else:
        raise ValueError(f"unknown method {method!r}")
    phi0 = float(np.prod([p(0.0) for p in _product_probe(probes, n)]))
    predicted = fresnel_prefactor(M, epsilon) * phi0
    return FresnelResult(value, predicted, _rel(value, predicted), epsilon)


# -- toy model with one sharp jump -------------------------------------------

MassField = Callable[[np.ndarray], np.ndarray]


@dataclass
class ToyTrajectory:
    """Straight segments start -> x1 on [-T, 0) and x2 -> end on (0, T], joined by a jump.

    The jump is x(t) = f(t / eps) (x2 - x1) + x1 inside |t| < eps/2; outside the
    layer the two segments are traversed over [-T, -eps/2] and [eps/2, T].
    """

    x1: np.ndarray
    x2: np.ndarray
    mass: MassField
    start: np.ndarray | None = None
    end: np.ndarray | None = None
    duration: float = 1.0
    profile: Profile = LINEAR

    def __post_init__(self):
        self.x1 = np.atleast_1d(np.asarray(self.x1, dtype=float))
        self.x2 = np.atleast_1d(np.asarray(self.x2, dtype=float))
        self.start = self.x1.copy() if self.start is None else np.atleast_1d(np.asarray(self.start, dtype=float))
        self.end = self.x2.copy() if self.end is None else np.atleast_1d(np.asarray(self.end, dtype=float))

    @property
    def jump(self) -> np.ndarray:
        return self.x2 - self.x1


def constant_mass(M) -> MassField:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    return lambda x: M


def _gl(a: float, b: float, n: int = 64):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def toy_jump_split(traj: ToyTrajectory, epsilon: float) -> tuple[float, float]:
    """Return (S_sing, S_ind): the 1/eps jump term and the action of the two segments."""
    dx = traj.jump
    taus, ws = _gl(-0.5, 0.5)
    kernel = sum(w * traj.profile.df(t) ** 2 * traj.mass(traj.profile.f(t) * dx + traj.x1) for t, w in zip(taus, ws))
    s_sing = 0.5 * float(dx @ np.atleast_2d(kernel) @ dx) / epsilon

    s_ind = 0.0
    T, h = traj.duration, 0.5 * epsilon
    for a, b in ((traj.start, traj.x1), (traj.x2, traj.end)):
        vel = (b - a) / (T - h)
        ss, ws_ = _gl(0.0, 1.0)
        s_ind += 0.5 * (T - h) * sum(w * float(vel @ np.atleast_2d(traj.mass(a + u * (b - a))) @ vel)
                                     for u, w in zip(ss, ws_))
    return s_sing, s_ind


def glue_consistency_check(mass: MassField, x_minus, width: float = 1e-3, order: int = 40) -> float:
    """Integrate delta_w(x+ - x-) sqrt(det M(x+) / det M(x-)) over x+.

    The delta function is a normalised Gaussian of standard deviation ``width``.
    A result of 1 means gluing two measure pieces with the jump factor returns
    the undivided measure.
    """
    x_minus = np.atleast_1d(np.asarray(x_minus, dtype=float))
    n = x_minus.size
    det_minus = float(np.linalg.det(np.atleast_2d(mass(x_minus))))
    if det_minus == 0:
        raise np.linalg.LinAlgError("det M vanishes at x-")
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    total = 0.0
    for idx in product(range(order), repeat=n):
        x_plus = x_minus + math.sqrt(2.0) * width * nodes[list(idx)]
        det_plus = float(np.linalg.det(np.atleast_2d(mass(x_plus))))
        total += np.prod(weights[list(idx)]) * math.sqrt(det_plus / det_minus)
    return total / math.pi ** (n / 2)
