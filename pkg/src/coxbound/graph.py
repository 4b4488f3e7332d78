"""Rooted graphs: graph order, cylinders, o-convergence, meets and Gromov products.

Every query works on a finite graph.  The graph order x <=_o y holds when some
geodesic from the root to y passes through x, which is the same as
d(o, x) + d(x, y) = d(o, y).
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteRootedGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    root: str
    _adj: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        if self.root not in vs:
            raise GraphError(f"root {self.root!r} is not a vertex")
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"loop or malformed edge {sorted(e)}")
            u, v = sorted(e)
            if u not in vs or v not in vs:
                raise GraphError(f"edge {u} {v} uses an unknown vertex")
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        object.__setattr__(self, "_adj", adj)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]], root: str) -> "FiniteRootedGraph":
        seen = []
        index = set()
        es = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at {u}")
            e = frozenset((u, v))
            if e in es:
                raise GraphError(f"double edge {u} {v}")
            es.add(e)
            for x in (u, v):
                if x not in index:
                    index.add(x)
                    seen.append(x)
        if root not in index:
            seen.insert(0, root)
        return cls(tuple(seen), frozenset(es), root)

    def neighbors(self, v: str) -> list[str]:
        return self._adj[v]

    def __len__(self) -> int:
        return len(self.vertices)


def parse_graph(text: str) -> FiniteRootedGraph:
    """Read the fixture format: a ``root <id>`` line, then one ``u v`` line per edge."""
    root = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if parts[0] == "root":
            if len(parts) != 2:
                raise GraphError(f"line {lineno}: expected 'root <id>'")
            root = parts[1]
        elif len(parts) == 2:
            edges.append((parts[0], parts[1]))
        else:
            raise GraphError(f"line {lineno}: expected an edge 'u v', got {body!r}")
    if root is None:
        raise GraphError("missing 'root <id>' line")
    g = FiniteRootedGraph.from_edges(edges, root)
    bfs_distances(g, root)
    return g


def load_graph(path) -> FiniteRootedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def format_graph(g: FiniteRootedGraph) -> str:
    lines = [f"root {g.root}"]
    for e in sorted(tuple(sorted(e)) for e in g.edges):
        lines.append(f"{e[0]} {e[1]}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DistanceTable:
    source: str
    dist: dict[str, int]


def bfs_distances(graph: FiniteRootedGraph, source: str) -> DistanceTable:
    if source not in graph._adj:
        raise GraphError(f"unknown vertex {source!r}")
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in graph.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    if len(dist) != len(graph.vertices):
        missing = next(v for v in graph.vertices if v not in dist)
        raise GraphError(f"graph is disconnected: {missing!r} is unreachable from {source!r}")
    return DistanceTable(source, dist)


class DistanceTables:
    """Lazily computed all-pairs BFS tables for one graph."""

    def __init__(self, graph: FiniteRootedGraph):
        self.graph = graph
        self._tables: dict[str, dict[str, int]] = {}

    def d(self, x: str, y: str) -> int:
        t = self._tables.get(x)
        if t is None:
            t = bfs_distances(self.graph, x).dist
            self._tables[x] = t
        return t[y]

    def root_dist(self, x: str) -> int:
        return self.d(self.graph.root, x)


def graph_leq(x: str, y: str, tables: DistanceTables) -> bool:
    return tables.root_dist(x) + tables.d(x, y) == tables.root_dist(y)


@dataclass(frozen=True)
class CylinderReport:
    base: tuple[str, str]
    members: tuple[str, ...]
    minimal_elements: tuple[str, ...]


def _ball(tables: DistanceTables, radius: int) -> list[str]:
    return [v for v in tables.graph.vertices if tables.root_dist(v) <= radius]


def cylinder_minimals(x: str, y: str, radius: int, tables: DistanceTables) -> CylinderReport:
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    members = [z for z in _ball(tables, radius) if graph_leq(x, z, tables) and graph_leq(y, z, tables)]
    minimal = [z for z in members if not any(w != z and graph_leq(w, z, tables) for w in members)]
    key = lambda v: (tables.root_dist(v), v)
    return CylinderReport((x, y), tuple(sorted(members, key=key)), tuple(sorted(minimal, key=key)))


@dataclass(frozen=True)
class NoMeet:
    maximal_lower_bounds: tuple[str, ...]


def meet_on_ball(x: str, y: str, radius: int, tables: DistanceTables) -> str | NoMeet:
    lower = [z for z in _ball(tables, radius) if graph_leq(z, x, tables) and graph_leq(z, y, tables)]
    maximal = [z for z in lower if not any(w != z and graph_leq(z, w, tables) for w in lower)]
    if len(maximal) == 1:
        return maximal[0]
    return NoMeet(tuple(sorted(maximal, key=lambda v: (tables.root_dist(v), v))))


class Convergence(enum.Enum):
    EVENTUALLY_BELOW = "EventuallyBelow"
    EVENTUALLY_NOT_BELOW = "EventuallyNotBelow"
    OSCILLATING = "Oscillating"


def o_convergence_scan(
    sequence: Sequence[str], radius: int, tables: DistanceTables, tail: int | None = None
) -> dict[str, Convergence]:
    """Classify each vertex z of the ball by the behaviour of z <= x_i along the sequence.

    Stabilisation is judged on the last ``tail`` terms (default: the second
    half of the window).  Only the finite window is inspected.
    """
    if not sequence:
        raise ValueError("sequence must be nonempty")
    if tail is None:
        tail = max(1, len(sequence) // 2)
    window = list(sequence)[-tail:]
    out = {}
    for z in _ball(tables, radius):
        flags = {graph_leq(z, x, tables) for x in window}
        if flags == {True}:
            out[z] = Convergence.EVENTUALLY_BELOW
        elif flags == {False}:
            out[z] = Convergence.EVENTUALLY_NOT_BELOW
        else:
            out[z] = Convergence.OSCILLATING
    return out


def gromov_product(x: str, y: str, o: str, tables: DistanceTables) -> Fraction:
    return Fraction(tables.d(o, x) + tables.d(o, y) - tables.d(x, y), 2)


def delta_estimate(graph: FiniteRootedGraph) -> Fraction:
    """Four-point hyperbolicity constant of a finite graph (max over all quadruples)."""
    tables = DistanceTables(graph)
    vs = list(graph.vertices)
    d = {v: {w: tables.d(v, w) for w in vs} for v in vs}
    best = 0
    for a, b, c, e in combinations(vs, 4):
        s1 = d[a][b] + d[c][e]
        s2 = d[a][c] + d[b][e]
        s3 = d[a][e] + d[b][c]
        hi, mid, _ = sorted((s1, s2, s3), reverse=True)
        best = max(best, hi - mid)
    return Fraction(best, 2)


def geodesic_path_exists(x: str, y: str, graph: FiniteRootedGraph) -> bool:
    """Brute-force oracle: enumerate all geodesics from the root to y and check whether one visits x."""
    tables = DistanceTables(graph)
    target = tables.root_dist(y)
    frontier = [(graph.root,)]
    for _ in range(target):
        nxt = []
        for path in frontier:
            for w in graph.neighbors(path[-1]):
                if tables.root_dist(w) == len(path) and tables.d(w, y) == target - len(path):
                    nxt.append(path + (w,))
        frontier = nxt
    return any(x in path for path in frontier)


# -- example graphs for the graph order, truncated at finite depth ----------------------


def broom_graph(width: int = 5, depth: int = 4) -> FiniteRootedGraph:
    """o - z, then ``width`` geodesic branches above z, each ``depth`` edges long, ending in z_i."""
    edges = [("o", "z")]
    for i in range(1, width + 1):
        prev = "z"
        for k in range(1, depth):
            node = f"p{i}_{k}"
            edges.append((prev, node))
            prev = node
        edges.append((prev, f"z{i}"))
    return FiniteRootedGraph.from_edges(edges, "o")


def two_parent_graph(width: int = 5) -> FiniteRootedGraph:
    """o joined to z and z'; every b_i is joined to both z and z'."""
    edges = [("o", "z"), ("o", "z'")]
    for i in range(1, width + 1):
        edges.append(("z", f"b{i}"))
        edges.append(("z'", f"b{i}"))
    return FiniteRootedGraph.from_edges(edges, "o")


def ladder_graph(depth: int = 6) -> FiniteRootedGraph:
    """Two chains x = a1, a2, ... and y = b1, b2, ... from o; x_i is joined to a_i and b_i."""
    def a(i):
        return "x" if i == 1 else f"a{i}"

    def b(i):
        return "y" if i == 1 else f"b{i}"

    edges = [("o", "x"), ("o", "y")]
    for i in range(1, depth + 1):
        if i < depth:
            edges.append((a(i), a(i + 1)))
            edges.append((b(i), b(i + 1)))
        edges.append((a(i), f"x{i}"))
        edges.append((b(i), f"x{i}"))
    return FiniteRootedGraph.from_edges(edges, "o")


def path_graph(n: int) -> FiniteRootedGraph:
    return FiniteRootedGraph.from_edges([(f"v{i}", f"v{i + 1}") for i in range(n)], "v0")
