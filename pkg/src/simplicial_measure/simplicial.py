"""Face lattice of a 4-dimensional simplicial complex.

Simplices are plain sorted tuples of vertex ids.  Identity is by vertex set;
orientation is never tracked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

Simplex = tuple[int, ...]

TOP_DIM = 4


class ComplexError(ValueError):
    """Malformed input to :func:`build_complex`."""


class StructuralError(ValueError):
    """A star that is not a single fan or cycle."""


def simplex(vertices: Iterable[int]) -> Simplex:
    s = tuple(sorted(int(v) for v in vertices))
    if len(set(s)) != len(s):
        raise ComplexError(f"repeated vertex in {s}")
    if any(v < 0 for v in s):
        raise ComplexError(f"negative vertex id in {s}")
    return s


def faces_of(s: Simplex, dim: int) -> list[Simplex]:
    return list(combinations(s, dim + 1))


def edges_of(s: Simplex) -> list[Simplex]:
    return faces_of(s, 1)


class UnionFind:
    def __init__(self, items: Iterable = ()):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # deterministic: smaller representative wins
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def n_components(self) -> int:
        return len({self.find(x) for x in self.parent})


@dataclass
class SimplicialComplex:
    """A set of 4-simplices together with their full face lattice.

    ``faces[d]`` is the sorted list of d-faces; ``cofacets[s]`` lists the
    (d+1)-faces containing the d-face ``s``, sorted.  The top-dimensional
    simplices keep their input order in ``four_simplices``.
    """

    four_simplices: list[Simplex]
    faces: dict[int, list[Simplex]]
    cofacets: dict[Simplex, tuple[Simplex, ...]]

    def __post_init__(self):
        self.index = {s: i for i, s in enumerate(self.four_simplices)}
        self._containing: dict[Simplex, tuple[Simplex, ...]] = {}

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.faces[d]) for d in range(TOP_DIM + 1))

    def __contains__(self, s) -> bool:
        return tuple(s) in self.cofacets or tuple(s) in self.index

    def facets(self, s: Simplex) -> list[Simplex]:
        return faces_of(s, len(s) - 2) if len(s) > 1 else []

    def containing(self, s: Simplex) -> tuple[Simplex, ...]:
        """4-simplices containing ``s``, in input order."""
        s = tuple(s)
        if s not in self._containing:
            vs = set(s)
            self._containing[s] = tuple(t for t in self.four_simplices if vs.issubset(t))
        return self._containing[s]

    def faces_containing(self, s: Simplex, dim: int) -> list[Simplex]:
        vs = set(s)
        return [f for f in self.faces[dim] if vs.issubset(f)]

    def is_interior(self, face3: Simplex) -> bool:
        return len(self.cofacets[tuple(face3)]) == 2

    def interior_faces(self) -> list[Simplex]:
        return [f for f in self.faces[3] if len(self.cofacets[f]) == 2]

    def boundary_faces(self) -> list[Simplex]:
        return [f for f in self.faces[3] if len(self.cofacets[f]) == 1]

    def n_extended_variables(self) -> int:
        return 10 * len(self.four_simplices)


def build_complex(four_simplex_vertex_tuples: Sequence[Sequence[int]]) -> SimplicialComplex:
    tops: list[Simplex] = []
    seen: set[Simplex] = set()
    if not four_simplex_vertex_tuples:
        raise ComplexError("no 4-simplices given")
    for raw in four_simplex_vertex_tuples:
        if len(raw) != TOP_DIM + 1:
            raise ComplexError(f"4-simplex needs 5 vertices, got {tuple(raw)}")
        s = simplex(raw)
        if s in seen:
            raise ComplexError(f"duplicate 4-simplex {s}")
        seen.add(s)
        tops.append(s)

    cof: dict[Simplex, set[Simplex]] = {}
    layer = set(tops)
    for d in range(TOP_DIM, 0, -1):
        lower: set[Simplex] = set()
        for s in layer:
            for f in faces_of(s, d - 1):
                cof.setdefault(f, set()).add(s)
                lower.add(f)
        layer = lower

    faces = {d: sorted(f for f in cof if len(f) == d + 1) for d in range(TOP_DIM)}
    faces[TOP_DIM] = sorted(tops)
    cofacets = {f: tuple(sorted(c)) for f, c in cof.items()}
    return SimplicialComplex(tops, faces, cofacets)


@dataclass
class TriangleStar:
    triangle: Simplex
    cycle: list[Simplex]
    # connectors[k] joins cycle[k] and cycle[k+1]; for closed stars the last
    # entry joins cycle[-1] back to cycle[0]
    connectors: list[Simplex]
    closed: bool

    @property
    def n(self) -> int:
        return len(self.cycle)


def _require(complex_: SimplicialComplex, s: Simplex, dim: int) -> Simplex:
    s = tuple(sorted(s))
    if len(s) != dim + 1 or s not in complex_.cofacets:
        raise KeyError(f"{s} is not a {dim}-face of the complex")
    return s


def triangle_star(complex_: SimplicialComplex, triangle: Simplex) -> TriangleStar:
    """Order the 4-simplices around ``triangle`` into a fan or a cycle."""
    tri = _require(complex_, triangle, 2)
    nodes = sorted(complex_.containing(tri))
    adj: dict[Simplex, list[tuple[Simplex, Simplex]]] = {s: [] for s in nodes}
    n_arcs = 0
    for face in complex_.faces_containing(tri, 3):
        cof = complex_.cofacets[face]
        if len(cof) > 2:
            raise StructuralError(f"3-face {face} around {tri} has {len(cof)} cofacets")
        if len(cof) == 2:
            a, b = cof
            adj[a].append((face, b))
            adj[b].append((face, a))
            n_arcs += 1
    for s in nodes:
        adj[s].sort()

    closed = n_arcs == len(nodes)
    if n_arcs not in (len(nodes), len(nodes) - 1):
        raise StructuralError(f"star of {tri} is not a single fan or cycle")
    if closed:
        start = nodes[0]
    else:
        ends = [s for s in nodes if len(adj[s]) < 2]
        start = ends[0]

    cycle, connectors = [start], []
    used: set[Simplex] = set()
    cur = start
    while True:
        step = next(((f, t) for f, t in adj[cur] if f not in used), None)
        if step is None:
            break
        face, nxt = step
        used.add(face)
        connectors.append(face)
        if nxt == start:
            break
        cycle.append(nxt)
        cur = nxt
    if len(cycle) != len(nodes) or len(connectors) != n_arcs:
        raise StructuralError(f"star of {tri} is not connected")
    return TriangleStar(tri, cycle, connectors, closed)


@dataclass
class EdgeStarGraph:
    edge: Simplex
    nodes: list[Simplex]
    arcs: list[tuple[Simplex, Simplex, Simplex]]  # (3-face, simplex a, simplex b)
    dangling: list[Simplex]
    singular: list[Simplex] = field(default_factory=list)  # 3-faces with >2 cofacets
    components: int = 0

    @property
    def cycle_rank(self) -> int:
        return len(self.arcs) - len(self.nodes) + self.components


def edge_star_graph(complex_: SimplicialComplex, edge: Simplex) -> EdgeStarGraph:
    e = _require(complex_, edge, 1)
    nodes = sorted(complex_.containing(e))
    arcs, dangling, singular = [], [], []
    uf = UnionFind(nodes)
    for face in complex_.faces_containing(e, 3):
        cof = complex_.cofacets[face]
        if len(cof) == 2:
            arcs.append((face, cof[0], cof[1]))
            uf.union(cof[0], cof[1])
        elif len(cof) == 1:
            dangling.append(face)
        else:
            singular.append(face)
    return EdgeStarGraph(e, nodes, arcs, dangling, singular, uf.n_components())


@dataclass
class ValidationReport:
    valid: bool
    closed: bool
    n_boundary_faces: int
    violations: list[str]


def validate(complex_: SimplicialComplex) -> ValidationReport:
    violations = []
    for face in complex_.faces[3]:
        n = len(complex_.cofacets[face])
        if n > 2:
            violations.append(f"3-face {face} has {n} cofacets")
    all_closed = True
    for tri in complex_.faces[2]:
        try:
            all_closed &= triangle_star(complex_, tri).closed
        except StructuralError as exc:
            violations.append(str(exc))
            all_closed = False
    for e in complex_.faces[1]:
        g = edge_star_graph(complex_, e)
        if g.components != 1:
            violations.append(f"edge star of {e} has {g.components} components")
    n_boundary = len(complex_.boundary_faces())
    return ValidationReport(
        valid=not violations,
        closed=not violations and all_closed and n_boundary == 0,
        n_boundary_faces=n_boundary,
        violations=violations,
    )
