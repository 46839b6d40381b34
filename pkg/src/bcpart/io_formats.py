"""Parse and emit graphs, point sets, and solution documents.

Graph files are DIMACS-like: a header line ``p <n> <m>`` followed by m
lines ``e <u> <v>`` with 1 <= u < v <= n; ``#`` starts a comment line.
Vertices are 1-indexed in files and 0-indexed in memory; the boundary
converts exactly once, here.

Point files carry one ``x y`` pair of decimal reals per line, no header.
Coordinates are parsed exactly (as rationals) so that unit-disk adjacency
never depends on floating-point rounding.

Solutions are single JSON documents with keys: answer, side_one or
edge_side_one, engine, n1, stats{states, elapsed_ms, seed, ...}.
"""

from __future__ import annotations

import json
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from .graph import Graph

Point = Tuple[Fraction, Fraction]


class FormatError(ValueError):
    """Syntax or consistency error in an input file; carries a line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _lines(text: Union[str, bytes]) -> List[Tuple[int, str]]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((i, stripped))
    return out


def parse_graph(text: Union[str, bytes]) -> Graph:
    """Parse a DIMACS-like graph file into a Graph.

    Edge ids are assigned in file order.  Duplicate edges, self-loops,
    out-of-range endpoints, and count mismatches are rejected.
    """
    lines = _lines(text)
    if not lines:
        raise FormatError("empty graph file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "p":
        raise FormatError("expected header 'p <n> <m>'", lineno)
    try:
        n, m = int(parts[1]), int(parts[2])
    except ValueError:
        raise FormatError("non-integer counts in header", lineno) from None
    if n < 0 or m < 0:
        raise FormatError("negative counts in header", lineno)

    edges: List[Tuple[int, int]] = []
    seen = set()
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "e":
            raise FormatError("expected edge line 'e <u> <v>'", lineno)
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise FormatError("non-integer endpoint", lineno) from None
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"endpoint out of range in edge ({u}, {v})", lineno)
        if u > v:
            raise FormatError(f"edge ({u}, {v}) violates u < v ordering", lineno)
        if (u, v) in seen:
            raise FormatError(f"duplicate edge ({u}, {v})", lineno)
        seen.add((u, v))
        edges.append((u - 1, v - 1))
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges but file has {len(edges)}")
    return Graph(n, edges)


def emit_graph(g: Graph) -> str:
    """Emit a graph in the DIMACS-like format (edges in id order)."""
    out = [f"p {g.n} {g.m}"]
    for u, v in g.edges:
        out.append(f"e {u + 1} {v + 1}")
    return "\n".join(out) + "\n"


def _parse_real(token: str, lineno: int) -> Fraction:
    try:
        value = Fraction(Decimal(token))
    except (InvalidOperation, ValueError):
        raise FormatError(f"bad coordinate {token!r}", lineno) from None
    return value


def parse_points(text: Union[str, bytes]) -> List[Point]:
    """Parse a points file: one 'x y' pair of decimal reals per line."""
    points: List[Point] = []
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise FormatError("expected a line with exactly 'x y'", lineno)
        points.append((_parse_real(parts[0], lineno), _parse_real(parts[1], lineno)))
    if not points:
        raise FormatError("empty points file")
    return points


def _fmt_coord(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return str(Decimal(x.numerator) / Decimal(x.denominator))


def emit_points(points: List[Point]) -> str:
    return "\n".join(f"{_fmt_coord(x)} {_fmt_coord(y)}" for x, y in points) + "\n"


def emit_solution(
    witness: Optional[FrozenSet[int]],
    engine: str,
    n1: int,
    stats: Dict[str, object],
    edge: bool = False,
) -> str:
    """Emit the deterministic solution JSON document.

    The witness, when present, must already have been re-checked by the
    relevant verifier; this function does formatting only.
    """
    doc: Dict[str, object] = {
        "answer": "yes" if witness is not None else "no",
        "engine": engine,
        "n1": n1,
        "stats": stats,
    }
    if witness is not None:
        key = "edge_side_one" if edge else "side_one"
        doc[key] = sorted(witness)
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def parse_solution(text: Union[str, bytes]) -> Dict[str, object]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    doc = json.loads(text)
    if "answer" not in doc:
        raise FormatError("solution document missing 'answer'")
    return doc
