"""Immutable bitset graphs plus the subgraph operations everything else uses.

Vertices are integers 0..n-1 and vertex sets are plain ints used as bitmasks,
which caps n at 64.  Every operation that picks a vertex breaks ties toward
the smallest index so downstream searches and certificates are reproducible.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence, Union

MAX_VERTICES = 64

VertexSet = int  # bitmask alias, purely documentary


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph with bitmask adjacency rows.

    adj[v] is the neighborhood of v as a bitmask.  Instances are immutable
    and hashable; all editing operations return new graphs.
    """

    __slots__ = ("n", "labels", "adj", "_hash")

    def __init__(self, spec: Union[int, Sequence[str]], edges: Iterable = ()):
        if isinstance(spec, int):
            n = spec
            labels = tuple(str(i) for i in range(n))
            by_label = None
        else:
            labels = tuple(str(x) for x in spec)
            n = len(labels)
            by_label = {lab: i for i, lab in enumerate(labels)}
            if len(by_label) != n:
                raise ValueError("duplicate vertex labels")
        if n < 0 or n > MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside supported range 0..{MAX_VERTICES}")
        adj = [0] * n
        for a, b in edges:
            if by_label is not None:
                if a not in by_label or b not in by_label:
                    raise ValueError(f"unknown vertex label in edge ({a!r}, {b!r})")
                i, j = by_label[a], by_label[b]
            else:
                i, j = a, b
                if not (0 <= i < n and 0 <= j < n):
                    raise ValueError(f"vertex index out of range in edge ({a}, {b})")
            if i == j:
                raise ValueError(f"self-loop at vertex {labels[i]!r}")
            if adj[i] >> j & 1:
                raise ValueError(f"duplicate edge ({labels[i]!r}, {labels[j]!r})")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "_hash", hash((n, self.adj, labels)))

    @classmethod
    def from_rows(cls, labels: Sequence[str], adj: Sequence[int]) -> "Graph":
        """Build from prevalidated adjacency rows (internal fast path)."""
        g = cls.__new__(cls)
        labels = tuple(labels)
        adj = tuple(adj)
        object.__setattr__(g, "n", len(labels))
        object.__setattr__(g, "labels", labels)
        object.__setattr__(g, "adj", adj)
        object.__setattr__(g, "_hash", hash((g.n, adj, labels)))
        return g

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj and self.labels == other.labels

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def signature(self):
        """Label-free key for caches: vertex count plus adjacency rows."""
        return (self.n, self.adj)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def edges(self) -> list:
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i]) if i < j]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"unknown vertex label {label!r}") from None


def induced_subgraph(g: Graph, w: Union[int, Iterable[int]]) -> Graph:
    """Induced subgraph on w, reindexed to 0..|w|-1 in ascending vertex order."""
    mask = w if isinstance(w, int) else mask_of(w)
    if mask & ~g.vertex_mask:
        raise ValueError("vertex set outside graph")
    verts = list(bits(mask))
    pos = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        row = g.adj[v] & mask
        adj.append(sum(1 << pos[u] for u in bits(row)))
    return Graph.from_rows(tuple(g.labels[v] for v in verts), adj)


def delete_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return induced_subgraph(g, g.vertex_mask & ~(1 << v))


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph.from_rows(g.labels, [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)])


def connected_components(g: Graph) -> list:
    """Vertex masks of the components, ordered by smallest member."""
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= g.adj[v]
            frontier = grow & ~comp
            comp |= grow
        comps.append(comp)
        seen |= comp
    return comps


def is_complete(g: Graph) -> bool:
    """True when every pair is adjacent; vacuously true for n <= 1."""
    full = g.vertex_mask
    return all(row == full & ~(1 << v) for v, row in enumerate(g.adj))


def min_degree_vertex(g: Graph) -> Optional[int]:
    """Smallest-index vertex of minimum degree, None for the empty graph."""
    if g.n == 0:
        return None
    return min(range(g.n), key=lambda v: (g.adj[v].bit_count(), v))


def open_neighborhood(g: Graph, v: int) -> Graph:
    """Induced subgraph on the neighbors of v (v itself excluded)."""
    return induced_subgraph(g, g.adj[v])


def closed_neighborhood(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, g.adj[v] | (1 << v))


def _normalize_edge_set(g: Graph, edges: Iterable) -> list:
    pairs = []
    seen = set()
    for a, b in edges:
        i, j = (a, b) if a < b else (b, a)
        if not (0 <= i < g.n and 0 <= j < g.n) or i == j:
            raise ValueError(f"bad edge ({a}, {b})")
        if not g.has_edge(i, j):
            raise ValueError(f"({a}, {b}) is not an edge of the graph")
        if (i, j) in seen:
            raise ValueError(f"edge ({a}, {b}) listed twice")
        seen.add((i, j))
        pairs.append((i, j))
    return pairs

def delete_edges(g: Graph, edges: Iterable) -> Graph:
    """Remove the given edges, keeping all vertices."""
    adj = list(g.adj)
    for i, j in _normalize_edge_set(g, edges):
        adj[i] &= ~(1 << j)
        adj[j] &= ~(1 << i)
    return Graph.from_rows(g.labels, adj)


def m_closure(g: Graph, edges: Iterable) -> Graph:
    """Induced subgraph on the edge set's endpoints plus their common neighbors.

    A vertex k joins the closure when some listed edge ij has both ik and jk
    in the graph.
    """
    keep = 0
    for i, j in _normalize_edge_set(g, edges):
        keep |= (1 << i) | (1 << j)
        keep |= g.adj[i] & g.adj[j]
    return induced_subgraph(g, keep)
