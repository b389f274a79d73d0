"""Numeric verification suites behind ``simplicial-measure verify``.

Each suite returns a dict of named checks; a check records the measured
value, its tolerance and whether it passed.  Default tolerances are the
acceptance thresholds; a single ``tolerance`` override replaces the suite's
primary tolerance.
"""

from __future__ import annotations

import math

import numpy as np

from . import constraints as cons
from . import fixtures
from .geometry import deficit_angle, closed_triangles
from .oscillatory import ProbeFunction, fresnel_1d, fresnel_nd, glue_consistency_check
from .simplicial import build_complex
from .supermetric import det_and_inertia, dewitt_supermetric, face_prefactor, random_metrics

SEED = 20091


def _check(value, tol, passed) -> dict:
    return {"value": value, "tolerance": tol, "passed": bool(passed)}


def suite_detM(tolerance: float | None = None, n: int = 1000) -> dict:
    tol = 1e-9 if tolerance is None else tolerance
    rng = np.random.default_rng(SEED)
    worst = 0.0
    n_neg_sign = 0
    for g in random_metrics(n, rng):
        d = np.linalg.det(g)
        n_neg_sign += d < 0
        want = -(d ** -4) / 4
        worst = max(worst, abs(np.linalg.det(dewitt_supermetric(g)) - want) / abs(want))
    M = dewitt_supermetric(np.eye(3))
    det, n_neg = det_and_inertia(M)
    eig = np.sort(np.linalg.eigvalsh(M))
    eig_err = float(np.max(np.abs(eig - np.array([-2.0, 0.5, 0.5, 0.5, 1.0, 1.0]))))
    return {
        "random_metrics": _check(n, None, n_neg_sign not in (0, n)),
        "max_relative_deviation": _check(worst, tol, worst <= tol),
        "det_at_identity": _check(det, 1e-12, abs(det + 0.25) <= 1e-12),
        "negative_eigenvalues_at_identity": _check(n_neg, 0, n_neg == 1),
        "eigenvalue_error_at_identity": _check(eig_err, 1e-10, eig_err <= 1e-10),
    }


def observed_order(epsilons, errors) -> float:
    slope, _ = np.polyfit(np.log(epsilons), np.log(errors), 1)
    return float(slope)


def suite_fresnel(tolerance: float | None = None) -> dict:
    tol_1d = 0.01 if tolerance is None else tolerance
    probe = ProbeFunction()
    r = fresnel_1d(1e-3, probe)
    eps = [1e-2, 1e-3, 1e-4]
    order = observed_order(eps, [fresnel_1d(e, probe).rel_error for e in eps])
    out = {
        "1d_relative_error": _check(r.rel_error, tol_1d, r.rel_error <= tol_1d),
        "1d_convergence_order": _check(order, 0.9, order >= 0.9),
    }
    cases = {"N1_identity": [[1.0]], "N2_diag_1_-1": [[1.0, 0.0], [0.0, -1.0]], "N2_identity": np.eye(2)}
    tol_mag = 0.02 if tolerance is None else tolerance
    for name, M in cases.items():
        res = fresnel_nd(M, 1e-3, probe)
        dev = abs(res.magnitude_ratio - 1.0)
        out[f"{name}_magnitude_deviation"] = _check(dev, tol_mag, dev <= tol_mag)
        out[f"{name}_phase_error"] = _check(res.phase_error, 0.05, res.phase_error <= 0.05)
    epsilon = 1e-3
    pre = face_prefactor(np.eye(3), epsilon)
    want = 2 * (math.pi * epsilon) ** 3
    dev = abs(abs(pre) - want) / want
    out["face_prefactor_magnitude"] = _check(dev, 1e-10, dev <= 1e-10)
    out["face_prefactor_phase"] = _check(math.atan2(pre.imag, pre.real), None, True)
    return out


def _kernel_case(simplices) -> dict:
    c = build_complex(simplices)
    full = cons.constraint_matrix(c)
    kept = cons.select_kept(c)
    r_full = cons.constraint_rank(full)
    r_kept = cons.constraint_rank(cons.constraint_matrix(c, kept.kept))
    n_var, n_edges = c.n_extended_variables(), len(c.faces[1])
    return {
        "variables": n_var,
        "constraints": len(full.rows),
        "kept": len(kept.kept),
        "rank_full": r_full,
        "rank_kept": r_kept,
        "global_edges": n_edges,
        "passed": r_full == r_kept == len(kept.kept) == n_var - n_edges,
    }


def suite_rank(tolerance: float | None = None) -> dict:
    out = {}
    b5 = _kernel_case(fixtures.boundary5())
    want = {"variables": 60, "constraints": 90, "kept": 45, "rank_full": 45, "rank_kept": 45}
    out["boundary5"] = _check(b5, None, b5["passed"] and all(b5[k] == v for k, v in want.items()))
    c = build_complex(fixtures.boundary5())
    ledger = cons.delta_zero_ledger(c)
    pattern = (sorted(set(ledger.face_exponents.values())), len(ledger.face_exponents),
               sorted(set(ledger.triangle_exponents.values())), len(ledger.triangle_exponents),
               sorted(set(ledger.edge_exponents.values())), len(ledger.edge_exponents))
    out["boundary5_exponents"] = _check(list(pattern), None, pattern == ([4], 15, [-3], 20, [2], 15))
    for name, simplices in [("gluedpair", fixtures.glued_pair())] + [(f"chain{k}", fixtures.chain(k)) for k in range(1, 6)]:
        case = _kernel_case(simplices)
        out[name] = _check(case, None, case["passed"])
    return out


def suite_glue(tolerance: float | None = None) -> dict:
    tol = 1e-5 if tolerance is None else tolerance
    fields = {
        "N1_quadratic": (lambda x: np.array([[1.0 + 0.1 * x[0] ** 2]]), [0.7]),
        "N2_diagonal": (lambda x: np.diag([1.0 + 0.1 * x[0] ** 2 + 0.2 * x[1], 2.0 + np.sin(x[0] * x[1])]), [0.7, 0.3]),
        "N2_full": (lambda x: np.array([[2.0 + x[0], 0.3 * x[1]], [0.3 * x[1], 1.0 + 0.5 * x[0] ** 2]]), [0.4, -0.8]),
    }
    out = {}
    for name, (field, x) in fields.items():
        v = glue_consistency_check(field, x, width=1e-3)
        out[name] = _check(v, tol, abs(v - 1.0) <= tol)
    return out


def suite_flatness(tolerance: float | None = None) -> dict:
    tol = 1e-9 if tolerance is None else tolerance
    c = build_complex(fixtures.subdivided())
    lengths = fixtures.subdivided_lengths()
    interior = closed_triangles(c)
    worst = max(abs(deficit_angle(c, t, lengths)) for t in interior)
    return {
        "interior_triangles": _check(len(interior), None, len(interior) == 10),
        "max_abs_deficit": _check(worst, tol, worst <= tol),
    }


SUITES = {
    "detM": suite_detM,
    "fresnel": suite_fresnel,
    "rank": suite_rank,
    "glue": suite_glue,
    "flatness": suite_flatness,
}


def run_suites(names=None, tolerance: float | None = None) -> dict:
    names = list(SUITES) if not names else list(names)
    out = {}
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        checks = SUITES[name](tolerance)
        out[name] = {"passed": all(c["passed"] for c in checks.values()), "checks": checks}
    return out
