"""Immutable undirected graphs in CSR form with lazy-walk transition probabilities."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

COMMENT_PREFIXES = ("#", "%")


class EdgeListParseError(ValueError):
    """Raised for a malformed edge-list line; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class EmptyGraphError(ValueError):
    """Raised when an edge-list source contains no edges at all."""


@dataclass(frozen=True)
class LoadReport:
    """Counts of items normalized away during loading."""

    duplicate_edges: int = 0
    self_loops: int = 0


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph: CSR adjacency, degree array, label table.

    Vertices are dense integer indices; ``labels[i]`` is the external label of
    vertex ``i``. Neighbor lists are sorted. The graph is immutable and safe to
    share across threads.
    """

    indptr: np.ndarray
    indices: np.ndarray
    degrees: np.ndarray
    labels: tuple[str, ...]
    load_report: LoadReport = field(default=LoadReport(), compare=False)

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return int(self.indices.size) // 2

    @property
    def total_degree(self) -> int:
        """Volume of the whole graph, 2m."""
        return int(self.indices.size)

    def __post_init__(self):
        object.__setattr__(self, "_label_index", {s: i for i, s in enumerate(self.labels)})

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def degree(self, u: int) -> int:
        return int(self.degrees[u])

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        k = np.searchsorted(row, v)
        return bool(k < row.size and row[k] == v)

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"unknown vertex label {label!r}") from None

    def label_of(self, u: int) -> str:
        return self.labels[u]

    def check_vertex(self, u: int) -> int:
        if not 0 <= u < self.vertex_count:
            raise IndexError(f"vertex index {u} out of range [0, {self.vertex_count})")
        return int(u)


def from_edges(pairs: Iterable[tuple[object, object]], labels: Sequence[str] | None = None) -> Graph:
    """Build a Graph from (u, v) pairs; labels default to str() of first appearance."""
    text = "\n".join(f"{u} {v}" for u, v in pairs)
    g = load_edge_list(io.StringIO(text))
    if labels is not None:
        if len(labels) != g.vertex_count:
            raise ValueError("label count does not match vertex count")
        g = Graph(g.indptr, g.indices, g.degrees, tuple(labels), g.load_report)
    return g


def load_edge_list(source) -> Graph:
    """Parse a whitespace-separated edge list into a Graph.

    ``source`` may be a path, a text stream, or a string of edge-list content
    only when it contains a newline (paths never do). One edge per line, two
    labels per edge; '#'/'%' comment lines and blank lines are skipped.
    Duplicate edges collapse, self-loops are dropped (reported in
    ``load_report``); labels are interned in first-appearance order.
    """
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    elif isinstance(source, (str, Path)) and "\n" not in str(source):
        lines = Path(source).read_text().splitlines()
    else:
        lines = str(source).splitlines()

    label_index: dict[str, int] = {}
    labels: list[str] = []
    us: list[int] = []
    vs: list[int] = []
    self_loops = 0

    def intern(tok: str) -> int:
        i = label_index.get(tok)
        if i is None:
            i = len(labels)
            label_index[tok] = i
            labels.append(tok)
        return i

    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(line_no, f"expected 2 tokens, got {len(parts)}: {raw!r}")
        u, v = intern(parts[0]), intern(parts[1])
        if u == v:
            self_loops += 1
            continue
        us.append(u)
        vs.append(v)

    if not labels:
        raise EmptyGraphError("edge-list source contains no edges")

    n = len(labels)
    a = np.array(us, dtype=np.int64)
    b = np.array(vs, dtype=np.int64)
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    keys = lo * n + hi
    uniq = np.unique(keys)
    duplicates = int(keys.size - uniq.size)
    lo, hi = uniq // n, uniq % n

    heads = np.concatenate([lo, hi])
    tails = np.concatenate([hi, lo])
    order = np.argsort(heads * n + tails, kind="stable")
    heads, tails = heads[order], tails[order]

    degrees = np.bincount(heads, minlength=n).astype(np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degrees, out=indptr[1:])

    return Graph(
        indptr=indptr,
        indices=tails.astype(np.int64),
        degrees=degrees,
        labels=tuple(labels),
        load_report=LoadReport(duplicate_edges=duplicates, self_loops=self_loops),
    )


def transition_prob(g: Graph, x: int, y: int) -> float:
    """Lazy-walk transition probability: 1/2 on the self-loop, 1/(2d_x) per neighbor."""
    x, y = g.check_vertex(x), g.check_vertex(y)
    d = g.degree(x)
    if d == 0:
        raise ValueError(f"vertex {x} is isolated; lazy walk undefined")
    if x == y:
        return 0.5
    if g.has_edge(x, y):
        return 1.0 / (2.0 * d)
    return 0.0


@dataclass(frozen=True)
class TransitionView:
    """Lazy transition rule over a Graph, row by row."""

    graph: Graph

    def prob(self, x: int, y: int) -> float:
        return transition_prob(self.graph, x, y)

    def row(self, x: int) -> tuple[np.ndarray, np.ndarray]:
        """Nonzero transition targets and probabilities from x (self-loop first)."""
        x = self.graph.check_vertex(x)
        d = self.graph.degree(x)
        if d == 0:
            raise ValueError(f"vertex {x} is isolated; lazy walk undefined")
        nbrs = self.graph.neighbors(x)
        targets = np.concatenate([[x], nbrs])
        probs = np.full(targets.shape, 1.0 / (2.0 * d))
        probs[0] = 0.5
        return targets, probs


def gather_neighbors(g: Graph, vertices: np.ndarray) -> np.ndarray:
    """Concatenated neighbor lists of ``vertices`` (with multiplicity)."""
    starts = g.indptr[vertices]
    lens = g.indptr[vertices + 1] - starts
    total = int(lens.sum())
    cum = np.cumsum(lens)
    pos = np.arange(total, dtype=np.int64) - np.repeat(cum - lens, lens) + np.repeat(starts, lens)
    return g.indices[pos]


def component_of(g: Graph, v: int) -> np.ndarray:
    """Sorted vertex indices of the connected component containing v (BFS)."""
    v = g.check_vertex(v)
    seen = np.zeros(g.vertex_count, dtype=bool)
    seen[v] = True
    frontier = [v]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    nxt.append(int(w))
        frontier = nxt
    return np.flatnonzero(seen)
