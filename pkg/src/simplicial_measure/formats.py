"""Plain-text complex files and JSON report documents.

Complex file grammar, one statement per line, ``#`` starts a comment::

    simplex v0 v1 v2 v3 v4
    length  vi vj x          # global squared length
    plength s vi vj x        # squared length inside simplex line s (0-based)
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .geometry import PerSimplexLengths
from .simplicial import Simplex, SimplicialComplex, build_complex, edges_of


class FormatError(ValueError):
    pass


@dataclass
class ComplexFile:
    simplices: list[tuple[int, ...]] = field(default_factory=list)
    lengths: dict[Simplex, float] = field(default_factory=dict)
    plengths: dict[int, dict[Simplex, float]] = field(default_factory=dict)

    def complex(self) -> SimplicialComplex:
        return build_complex(self.simplices)

    def global_lengths(self, complex_: SimplicialComplex) -> dict[Simplex, float]:
        """Global squared lengths; per-simplex values fill gaps only if they agree."""
        out = dict(self.lengths)
        for e in complex_.faces[1]:
            if e in out:
                continue
            vals = {self.plengths.get(i, {}).get(e) for i, s in enumerate(self.simplices) if set(e) <= set(s)}
            vals.discard(None)
            if len(vals) != 1:
                raise FormatError(f"no unambiguous squared length for edge {e}")
            out[e] = vals.pop()
        return out

    def per_simplex_lengths(self, complex_: SimplicialComplex) -> PerSimplexLengths:
        values = {}
        for i, raw in enumerate(self.simplices):
            s = tuple(sorted(raw))
            own = {}
            for e in edges_of(s):
                if e in self.plengths.get(i, {}):
                    own[e] = self.plengths[i][e]
                elif e in self.lengths:
                    own[e] = self.lengths[e]
                else:
                    raise FormatError(f"simplex line {i} lacks a squared length for edge {e}")
            values[s] = own
        return PerSimplexLengths(values)

    @property
    def has_lengths(self) -> bool:
        return bool(self.lengths or self.plengths)


def _edge(a: str, b: str) -> Simplex:
    i, j = int(a), int(b)
    if i == j or i < 0 or j < 0:
        raise FormatError(f"bad edge {a} {b}")
    return (i, j) if i < j else (j, i)


def _number(tok: str) -> float:
    x = float(tok)
    if not math.isfinite(x):
        raise FormatError(f"non-finite length {tok}")
    return x


def parse_complex_text(text: str) -> ComplexFile:
    cf = ComplexFile()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "simplex" and len(tok) == 6:
                vs = tuple(int(t) for t in tok[1:])
                if len(set(vs)) != 5 or min(vs) < 0:
                    raise FormatError("a simplex needs 5 distinct non-negative vertices")
                cf.simplices.append(vs)
            elif tok[0] == "length" and len(tok) == 4:
                cf.lengths[_edge(tok[1], tok[2])] = _number(tok[3])
            elif tok[0] == "plength" and len(tok) == 5:
                cf.plengths.setdefault(int(tok[1]), {})[_edge(tok[2], tok[3])] = _number(tok[4])
            else:
                raise FormatError(f"unrecognised statement {tok[0]!r}")
        except (ValueError, IndexError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    for i in cf.plengths:
        if not 0 <= i < len(cf.simplices):
            raise FormatError(f"plength refers to missing simplex line {i}")
    return cf


def read_complex(path) -> ComplexFile:
    return parse_complex_text(Path(path).read_text(encoding="utf-8"))


def parse_inline_lengths(spec: str) -> tuple[dict[Simplex, float], float | None]:
    """``"*=1.0,0-1=2.5"`` -> ({(0, 1): 2.5}, 1.0)."""
    out, default = {}, None
    for item in filter(None, (p.strip() for p in spec.split(","))):
        try:
            key, val = item.split("=")
            if key.strip() == "*":
                default = _number(val)
            else:
                a, b = key.split("-")
                out[_edge(a, b)] = _number(val)
        except ValueError as exc:
            raise FormatError(f"bad inline length {item!r}") from exc
    return out, default


def apply_lengths_option(cf: ComplexFile, option: str | None) -> None:
    """Merge ``--lengths`` (a file with length/plength lines, or inline) into ``cf``."""
    if not option:
        return
    if Path(option).is_file():
        extra = read_complex(option)
        cf.lengths.update(extra.lengths)
        for i, d in extra.plengths.items():
            cf.plengths.setdefault(i, {}).update(d)
        return
    explicit, default = parse_inline_lengths(option)
    if default is not None:
        for s in cf.simplices:
            for e in edges_of(tuple(sorted(s))):
                cf.lengths.setdefault(e, default)
    cf.lengths.update(explicit)


def write_complex_text(simplices, lengths: dict[Simplex, float] | None = None,
                       comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.extend("simplex " + " ".join(map(str, s)) for s in simplices)
    for e in sorted(lengths or {}):
        lines.append(f"length {e[0]} {e[1]} {lengths[e]!r}")
    return "\n".join(lines) + "\n"


# -- reports -----------------------------------------------------------------

def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return repr(obj)
        return obj
    if hasattr(obj, "item"):  # numpy scalar
        return _plain(obj.item())
    return obj


def dumps_report(report: dict) -> str:
    """Deterministic UTF-8 JSON: insertion order kept, shortest round-trip floats."""
    return json.dumps(_plain(report), indent=2, ensure_ascii=False) + "\n"


def loads_report(text: str) -> dict:
    return json.loads(text)
