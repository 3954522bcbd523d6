"""Exact data model for directed-graph IFSs on the unit interval.

Vertices carry a copy of [0, 1]; each directed edge carries a contracting
similarity of the line.  Following the usual convention the similarity
attached to an edge maps *against* the edge direction: the map of an edge
u -> v sends the unit interval copy at v into the copy at u.

All geometry is exact: ratios and offsets are `fractions.Fraction`.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .errors import (
    GraphStructureError,
    ResourceCapError,
    UnsupportedFeatureError,
)

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

#: Default cap on the number of paths an enumeration may produce.
DEFAULT_PATH_CAP = 10**6


def as_rational(value) -> Fraction:
    """Coerce ints/strings/Fractions to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse a canonical 'p/q' (or integer 'p') string."""
    return Fraction(text.strip())


def format_rational(x: Fraction) -> str:
    """Render a Fraction canonically: 'p/q', or 'p' when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Similarity:
    """A contracting similarity x -> ratio*x + offset (or -ratio*x + offset
    when reflecting), with 0 < ratio < 1."""

    ratio: Fraction
    offset: Fraction
    reflect: bool = False

    def __post_init__(self):
        object.__setattr__(self, "ratio", as_rational(self.ratio))
        object.__setattr__(self, "offset", as_rational(self.offset))
        if not (ZERO < self.ratio < ONE):
            raise ValueError(f"similarity ratio must lie in (0,1), got {self.ratio}")

    @property
    def coefficient(self) -> Fraction:
        return -self.ratio if self.reflect else self.ratio

    def __call__(self, x) -> Fraction:
        return self.coefficient * as_rational(x) + self.offset

    def map_interval(self, lo, hi) -> tuple[Fraction, Fraction]:
        a, b = self(lo), self(hi)
        return (b, a) if self.reflect else (a, b)

    def hull(self) -> tuple[Fraction, Fraction]:
        """Image of the unit interval."""
        return self.map_interval(ZERO, ONE)

    def compose(self, other: "Similarity") -> "Similarity":
        """self after other: (self.compose(other))(x) == self(other(x))."""
        c = self.coefficient * other.coefficient
        return Similarity(abs(c), self.coefficient * other.offset + self.offset, c < 0)

    def invert_point(self, y) -> Fraction:
        return (as_rational(y) - self.offset) / self.coefficient


@dataclass(frozen=True)
class Edge:
    """Directed edge src -> dst whose map sends the copy at dst into the
    copy at src."""

    id: str
    src: str
    dst: str
    map: Similarity


@dataclass(frozen=True)
class Path:
    """A nonempty sequence of consecutive edge ids."""

    edges: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if not self.edges:
            raise ValueError("a path must contain at least one edge")

    def __len__(self):
        return len(self.edges)

    def concat(self, other: "Path") -> "Path":
        return Path(self.edges + other.edges)


@dataclass(frozen=True)
class GraphIFS:
    """A directed-graph IFS: ordered vertices plus ordered edges."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _by_id: dict = field(init=False, repr=False, compare=False, hash=False)
    _out: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphStructureError("duplicate vertex ids")
        declared = set(self.vertices)
        by_id = {}
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.id in by_id:
                raise GraphStructureError(f"duplicate edge id {e.id!r}")
            if e.src not in declared:
                raise GraphStructureError(
                    f"edge {e.id!r} leaves undeclared vertex {e.src!r}")
            if e.dst not in declared:
                raise GraphStructureError(
                    f"edge {e.id!r} enters undeclared vertex {e.dst!r}")
            by_id[e.id] = e
            out[e.src].append(e)
        for v in out:
            out[v].sort(key=lambda e: e.id)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_out", out)

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise GraphStructureError(f"unknown edge id {edge_id!r}") from None

    def out_edges(self, vertex: str) -> tuple[Edge, ...]:
        """Edges leaving `vertex`, sorted by edge id."""
        try:
            return tuple(self._out[vertex])
        except KeyError:
            raise GraphStructureError(f"unknown vertex {vertex!r}") from None

    def vertex_rank(self, vertex: str) -> int:
        return self.vertices.index(vertex)

    def has_reflecting_edges(self) -> bool:
        return any(e.map.reflect for e in self.edges)


def graph_digest(ifs: GraphIFS) -> str:
    """SHA-256 of a canonical structural dump (vertices and edges only,
    no metadata); identifies the system a certificate refers to."""
    doc = {
        "vertices": list(ifs.vertices),
        "edges": [
            [e.id, e.src, e.dst,
             format_rational(e.map.ratio), format_rational(e.map.offset),
             e.map.reflect]
            for e in ifs.edges
        ],
    }
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ValidationReport:
    """Structural invariant violations; empty means valid."""

    issues: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.issues


# ---------------------------------------------------------------------------
# path helpers

def path_vertices(ifs: GraphIFS, path: Path) -> tuple[str, ...]:
    """The vertex list i(e1) t(e1) ... t(ek); raises on non-consecutive edges."""
    edges = [ifs.edge(eid) for eid in path.edges]
    verts = [edges[0].src]
    for e in edges:
        if e.src != verts[-1]:
            raise ValueError(
                f"path is not consecutive at edge {e.id!r}: "
                f"expected source {verts[-1]!r}, got {e.src!r}")
        verts.append(e.dst)
    return tuple(verts)


def path_initial(ifs: GraphIFS, path: Path) -> str:
    return ifs.edge(path.edges[0]).src


def path_terminal(ifs: GraphIFS, path: Path) -> str:
    return path_vertices(ifs, path)[-1]


def path_similarity(ifs: GraphIFS, path: Path) -> Similarity:
    """Composed map S_e1 ∘ S_e2 ∘ ... ∘ S_ek along a consecutive path."""
    path_vertices(ifs, path)  # consecutiveness check
    sim = ifs.edge(path.edges[0]).map
    for eid in path.edges[1:]:
        sim = sim.compose(ifs.edge(eid).map)
    return sim


def path_ratio(ifs: GraphIFS, path: Path) -> Fraction:
    r = ONE
    for eid in path.edges:
        r *= ifs.edge(eid).map.ratio
    return r


def is_simple_path(ifs: GraphIFS, path: Path) -> bool:
    verts = path_vertices(ifs, path)
    return len(set(verts)) == len(path.edges) + 1


def is_simple_cycle(ifs: GraphIFS, path: Path) -> bool:
    verts = path_vertices(ifs, path)
    return verts[0] == verts[-1] and len(set(verts)) == len(path.edges)


def is_attached(ifs: GraphIFS, path: Path, vertex: str) -> bool:
    return vertex in path_vertices(ifs, path)


# ---------------------------------------------------------------------------
# validation

def _reachable(ifs: GraphIFS, start: str, edges: Iterable[Edge]) -> set[str]:
    out = {v: [] for v in ifs.vertices}
    for e in edges:
        out[e.src].append(e.dst)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in out[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def validate_graph(ifs: GraphIFS) -> ValidationReport:
    """Check the structural invariants of a directed-graph IFS.

    Reported: strong connectivity, out-degree >= 2 at every vertex, edge
    ratio range, and containment of every level-1 hull in [0, 1].
    Malformed edge references raise GraphStructureError at construction.
    """
    issues = []
    if not ifs.vertices:
        issues.append("graph has no vertices")
        return ValidationReport(tuple(issues))
    for v in ifs.vertices:
        deg = len(ifs.out_edges(v))
        if deg < 2:
            issues.append(f"vertex {v!r} has out-degree {deg}, need >= 2")
    for e in ifs.edges:
        if not (ZERO < e.map.ratio < ONE):
            issues.append(f"edge {e.id!r} ratio {e.map.ratio} outside (0,1)")
        lo, hi = e.map.hull()
        if lo < ZERO or hi > ONE:
            issues.append(
                f"edge {e.id!r} level-1 hull [{lo}, {hi}] escapes [0,1]")
    root = ifs.vertices[0]
    fwd = _reachable(ifs, root, ifs.edges)
    if fwd != set(ifs.vertices):
        missing = sorted(set(ifs.vertices) - fwd)
        issues.append(f"not strongly connected: unreachable from {root!r}: {missing}")
    else:
        reversed_edges = [Edge(e.id, e.dst, e.src, e.map) for e in ifs.edges]
        bwd = _reachable(ifs, root, reversed_edges)
        if bwd != set(ifs.vertices):
            missing = sorted(set(ifs.vertices) - bwd)
            issues.append(
                f"not strongly connected: cannot reach {root!r} from {missing}")
    return ValidationReport(tuple(issues))


# ---------------------------------------------------------------------------
# enumeration

def path_count(ifs: GraphIFS, u: str, k: int) -> int:
    """|E^k_u| via the k-th power of the edge-count adjacency matrix."""
    n = len(ifs.vertices)
    index = {v: i for i, v in enumerate(ifs.vertices)}
    adj = [[0] * n for _ in range(n)]
    for e in ifs.edges:
        adj[index[e.src]][index[e.dst]] += 1
    row = [1 if i == index[u] else 0 for i in range(n)]
    for _ in range(k):
        row = [sum(row[i] * adj[i][j] for i in range(n)) for j in range(n)]
    return sum(row)


def paths_from(ifs: GraphIFS, u: str, k: int,
               cap: int = DEFAULT_PATH_CAP) -> list[Path]:
    """All length-k paths starting at u, in lexicographic edge-id order."""
    if k < 1:
        raise ValueError("path length k must be >= 1")
    if u not in ifs.vertices:
        raise GraphStructureError(f"unknown vertex {u!r}")
    total = path_count(ifs, u, k)
    if total > cap:
        raise ResourceCapError(
            f"{total} paths of length {k} from {u!r} exceed cap {cap}",
            bound=total)
    result: list[Path] = []

    def extend(prefix: list[str], at: str, remaining: int):
        if remaining == 0:
            result.append(Path(tuple(prefix)))
            return
        for e in ifs.out_edges(at):
            prefix.append(e.id)
            extend(prefix, e.dst, remaining - 1)
            prefix.pop()

    extend([], u, k)
    return result


def simple_cycles(ifs: GraphIFS) -> list[Path]:
    """All simple cycles, each rotated to start at its smallest-rank vertex,
    sorted by (length, edge ids)."""
    rank = {v: i for i, v in enumerate(ifs.vertices)}
    cycles: list[Path] = []

    def search(start: str, at: str, prefix: list[str], visited: set[str]):
        for e in ifs.out_edges(at):
            if e.dst == start:
                cycles.append(Path(tuple(prefix + [e.id])))
            elif e.dst not in visited and rank[e.dst] > rank[start]:
                visited.add(e.dst)
                prefix.append(e.id)
                search(start, e.dst, prefix, visited)
                prefix.pop()
                visited.remove(e.dst)

    for start in ifs.vertices:
        search(start, start, [], {start})
    cycles.sort(key=lambda p: (len(p.edges), p.edges))
    return cycles


def simple_path(ifs: GraphIFS, u: str, w: str) -> Optional[Path]:
    """A simple path u -> w found by BFS with lexicographic tie-breaking."""
    if u == w:
        raise ValueError("simple_path requires distinct endpoints")
    for v in (u, w):
        if v not in ifs.vertices:
            raise GraphStructureError(f"unknown vertex {v!r}")
    frontier: list[tuple[str, tuple[str, ...]]] = [(u, ())]
    seen = {u}
    while frontier:
        nxt: list[tuple[str, tuple[str, ...]]] = []
        for at, prefix in frontier:
            for e in ifs.out_edges(at):
                if e.dst == w:
                    return Path(prefix + (e.id,))
                if e.dst not in seen:
                    seen.add(e.dst)
                    nxt.append((e.dst, prefix + (e.id,)))
        frontier = nxt
    return None


# ---------------------------------------------------------------------------
# endpoint fixing / unit-interval normalization

def _on_cycle_vertices(ifs: GraphIFS, edges: list[Edge]) -> set[str]:
    on_cycle = set()
    for v in ifs.vertices:
        reach = _reachable_via(ifs, v, edges, exclude_start=True)
        if v in reach:
            on_cycle.add(v)
    return on_cycle


def _reachable_via(ifs: GraphIFS, start: str, edges: list[Edge],
                   exclude_start: bool = False) -> set[str]:
    out = {v: [] for v in ifs.vertices}
    for e in edges:
        out[e.src].append(e.dst)
    seen: set[str] = set() if exclude_start else {start}
    stack = list(out[start]) if exclude_start else [start]
    seen |= set(stack)
    while stack:
        v = stack.pop()
        for w in out[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def endpoint_fixed_check(ifs: GraphIFS) -> dict[str, tuple[bool, bool]]:
    """For each vertex u, whether 0 and 1 are points of F_u.

    The endpoint p is in F_u iff u reaches a cycle inside the subgraph of
    edges whose maps fix p.  Reflecting maps are unsupported here.
    """
    if ifs.has_reflecting_edges():
        raise UnsupportedFeatureError(
            "endpoint_fixed_check does not support reflecting similarities")
    result = {}
    subgraphs = {}
    for p in (ZERO, ONE):
        edges = [e for e in ifs.edges if e.map(p) == p]
        on_cycle = _on_cycle_vertices(ifs, edges)
        subgraphs[p] = (edges, on_cycle)
    for u in ifs.vertices:
        flags = []
        for p in (ZERO, ONE):
            edges, on_cycle = subgraphs[p]
            reach = _reachable_via(ifs, u, edges)
            flags.append(bool(reach & on_cycle))
        result[u] = (flags[0], flags[1])
    return result


def is_unit_interval(ifs: GraphIFS) -> bool:
    """True when every component contains both endpoints and every level-1
    hull stays inside [0, 1]."""
    if not validate_graph(ifs).ok:
        return False
    return all(zero and one for zero, one in endpoint_fixed_check(ifs).values())
