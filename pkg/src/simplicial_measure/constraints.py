"""Continuity constraints on per-simplex squared lengths and their reduction.

Every interior 3-face contributes one constraint per edge: the squared
length of that edge must agree in the two 4-simplices sharing the face.
Around a given edge these constraints are the arcs of the edge-star graph,
so an independent subset is a spanning forest of that graph and the
redundant ones are counted by its cycle rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .simplicial import Simplex, SimplicialComplex, UnionFind, edge_star_graph, edges_of, triangle_star


@dataclass(frozen=True, order=True)
class Constraint:
    face: Simplex
    edge: Simplex
    plus: Simplex   # first cofacet of the face
    minus: Simplex  # second cofacet

    def residual(self, lengths) -> float:
        """l2(plus, edge) - l2(minus, edge) for a PerSimplexLengths-like mapping."""
        return lengths[self.plus][self.edge] - lengths[self.minus][self.edge]


def extended_variables(complex_: SimplicialComplex) -> list[tuple[Simplex, Simplex]]:
    return [(s, e) for s in complex_.four_simplices for e in edges_of(s)]


def enumerate_constraints(complex_: SimplicialComplex) -> list[Constraint]:
    out = []
    for face in complex_.interior_faces():
        a, b = complex_.cofacets[face]
        out.extend(Constraint(face, e, a, b) for e in edges_of(face))
    return out


@dataclass
class ConstraintMatrix:
    rows: list[Constraint]
    columns: list[tuple[Simplex, Simplex]]
    entries: list[list[int]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)


def constraint_matrix(complex_: SimplicialComplex, rows: list[Constraint] | None = None) -> ConstraintMatrix:
    rows = enumerate_constraints(complex_) if rows is None else list(rows)
    columns = extended_variables(complex_)
    col = {c: j for j, c in enumerate(columns)}
    entries = []
    for c in rows:
        r = [0] * len(columns)
        r[col[(c.plus, c.edge)]] = 1
        r[col[(c.minus, c.edge)]] = -1
        entries.append(r)
    return ConstraintMatrix(rows, columns, entries)


def integer_rank(entries: list[list[int]]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination on Python integers."""
    m = [list(map(int, r)) for r in entries if any(r)]
    if not m:
        return 0
    n_cols = len(m[0])
    rank, prev = 0, 1
    for c in range(n_cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for r in range(rank + 1, len(m)):
            a = m[r][c]
            row_r, row_p = m[r], m[rank]
            for k in range(c, n_cols):
                row_r[k] = (p * row_r[k] - a * row_p[k]) // prev
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def constraint_rank(matrix: ConstraintMatrix) -> int:
    return integer_rank(matrix.entries)


@dataclass
class KeptSet:
    kept: list[Constraint]
    redundant: list[Constraint]
    witness: dict[Simplex, list[Simplex]] = field(default_factory=dict)  # edge -> forest faces

    def kept_per_edge(self) -> dict[Simplex, int]:
        return {e: len(faces) for e, faces in self.witness.items()}


def select_kept(complex_: SimplicialComplex) -> KeptSet:
    """Per edge, keep the arcs of a spanning forest of its edge-star graph.

    Arcs are offered in lexicographic order of their 3-face, so the choice is
    fully deterministic.
    """
    kept, redundant, witness = [], [], {}
    for e in complex_.faces[1]:
        g = edge_star_graph(complex_, e)
        uf = UnionFind(g.nodes)
        forest = []
        for face, a, b in sorted(g.arcs):
            con = Constraint(face, e, a, b)
            if uf.union(a, b):
                forest.append(face)
                kept.append(con)
            else:
                redundant.append(con)
        witness[e] = forest
    kept.sort()
    redundant.sort()
    return KeptSet(kept, redundant, witness)


@dataclass
class DeltaZeroLedger:
    """Volume exponents generated by delta functions of zero argument.

    ``face_exponents`` come from the per-face prefactor, ``triangle_exponents``
    from one delta^3(0) per interior triangle, ``edge_exponents`` from removing
    the surplus delta(0) factors counted per edge by ``excess``.
    """

    face_exponents: dict[Simplex, int]
    triangle_exponents: dict[Simplex, int]
    edge_exponents: dict[Simplex, int]
    excess: dict[Simplex, int]
    cycle_rank: dict[Simplex, int]
    closed_triangles_at_edge: dict[Simplex, int]


def delta_zero_exponent(dim: int) -> int:
    """delta^{d(d+1)/2}(0) of a d-face scales as V^-(d+1)."""
    return -(dim + 1)


def delta_zero_ledger(complex_: SimplicialComplex) -> DeltaZeroLedger:
    closed = {t for t in complex_.faces[2] if triangle_star(complex_, t).closed}
    faces = {f: -delta_zero_exponent(3) for f in complex_.interior_faces()}
    triangles = {t: delta_zero_exponent(2) for t in sorted(closed)}
    edges, excess, ranks, n_closed = {}, {}, {}, {}
    for e in complex_.faces[1]:
        g = edge_star_graph(complex_, e)
        k = sum(1 for t in complex_.faces_containing(e, 2) if t in closed)
        ranks[e] = g.cycle_rank
        n_closed[e] = k
        excess[e] = k - g.cycle_rank
        if excess[e]:
            edges[e] = -delta_zero_exponent(1) * excess[e]
    return DeltaZeroLedger(faces, triangles, edges, excess, ranks, n_closed)
