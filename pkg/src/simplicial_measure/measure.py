"""Assembly of the simplicial path-integral measure.

The measure is reported structurally: integer volume exponents per simplex,
the list of kept continuity deltas and a declared per-4-simplex local measure.
Numbers enter only through :func:`evaluate_volume_factor`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constraints import Constraint, DeltaZeroLedger, KeptSet, delta_zero_exponent, delta_zero_ledger, select_kept
from .geometry import PerSimplexLengths, SquaredLengthMap, simplex_volume
from .simplicial import Simplex, SimplicialComplex, validate


class DivergenceError(ArithmeticError):
    def __init__(self, simplex: Simplex, exponent: int):
        super().__init__(f"zero volume of {simplex} raised to power {exponent}")
        self.simplex = simplex
        self.exponent = exponent


@dataclass(frozen=True)
class LocalMeasureSpec:
    """Declared per-4-simplex measure factor; only recorded, never evaluated."""

    kind: str = "product_dl2"
    description: str = "product of d(l^2) over the 10 edges of each 4-simplex (non-canonical default)"


LOCAL_MEASURES = {"product_dl2": LocalMeasureSpec()}


def register_local_measure(spec: LocalMeasureSpec) -> None:
    LOCAL_MEASURES[spec.kind] = spec


@dataclass(frozen=True)
class RegularizationTag:
    kind: str = "delta_of_zero"

    @staticmethod
    def exponent(dim: int) -> int:
        return delta_zero_exponent(dim)


@dataclass
class MeasureReport:
    volume_exponents: dict[Simplex, int]
    kept_deltas: list[Constraint]
    local_measure: LocalMeasureSpec
    notes: list[str] = field(default_factory=list)
    n_four_simplices: int = 0

    def exponents_by_dim(self) -> dict[int, dict[int, int]]:
        """dim -> {exponent: count}."""
        out: dict[int, dict[int, int]] = {}
        for s, k in self.volume_exponents.items():
            bucket = out.setdefault(len(s) - 1, {})
            bucket[k] = bucket.get(k, 0) + 1
        return out

    def scaling_power(self) -> float:
        """Power p with factor -> lambda^p factor under l2 -> lambda l2."""
        return sum(k * (len(s) - 1) / 2 for s, k in self.volume_exponents.items())


def assemble_measure_report(complex_: SimplicialComplex, kept: KeptSet | None = None,
                            ledger: DeltaZeroLedger | None = None,
                            local: LocalMeasureSpec | None = None) -> MeasureReport:
    kept = select_kept(complex_) if kept is None else kept
    ledger = delta_zero_ledger(complex_) if ledger is None else ledger
    local = local or LocalMeasureSpec()

    known = set(complex_.cofacets)
    for c in kept.kept:
        if c.face not in known or c.plus not in complex_.index or c.minus not in complex_.index:
            raise ValueError(f"kept delta {c} does not belong to this complex")
    for s in (*ledger.face_exponents, *ledger.triangle_exponents, *ledger.edge_exponents):
        if s not in known:
            raise ValueError(f"ledger entry {s} does not belong to this complex")
    if set(ledger.excess) != set(complex_.faces[1]):
        raise ValueError("ledger and complex have different edge sets")

    exps: dict[Simplex, int] = {}
    for part in (ledger.face_exponents, ledger.triangle_exponents, ledger.edge_exponents):
        for s in sorted(part):
            exps[s] = part[s]

    notes = []
    report = validate(complex_)
    if report.n_boundary_faces:
        notes.append(f"boundary: {report.n_boundary_faces} 3-faces with one cofacet carry no delta factors")
    n_open = len(complex_.faces[2]) - len(ledger.triangle_exponents)
    if n_open:
        notes.append(f"boundary: {n_open} triangles with open stars contribute no delta(0)")
    if not report.valid:
        notes.append("non-pseudomanifold: " + "; ".join(report.violations))
    odd = [e for e, x in ledger.excess.items() if x < 0 or (report.closed and x != 1)]
    if odd:
        notes.append(f"edge links not 2-spheres: excess differs from 1 at {len(odd)} edges")
    return MeasureReport(exps, list(kept.kept), local, notes, len(complex_.four_simplices))


def evaluate_volume_factor(report: MeasureReport, lengths: SquaredLengthMap) -> float:
    """Natural log of the product of V^exponent over the report's simplices."""
    total = 0.0
    for s, k in report.volume_exponents.items():
        if k == 0:
            continue
        v = simplex_volume(s, lengths)
        if v <= 0.0:
            raise DivergenceError(s, k)
        total += k * math.log(v)
    return total


def delta_arguments(report: MeasureReport, lengths: PerSimplexLengths) -> list[float]:
    return [c.residual(lengths) for c in report.kept_deltas]


def free_variable_count(complex_: SimplicialComplex, report: MeasureReport) -> int:
    return complex_.n_extended_variables() - len(report.kept_deltas)
