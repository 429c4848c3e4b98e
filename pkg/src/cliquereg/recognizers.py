"""Structural predicates that gate the bound theorems.

Chordality, hole searches, perfection, fans, and the bipartite-complement
machinery.  The induced-cycle search is plain backtracking over ordered
vertex sequences with bitmask non-adjacency pruning; exponential in the
worst case, which is fine at the intended graph sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from .errors import CapExceeded
from .graph import Graph, bits, complement, open_neighborhood

DEFAULT_RECOGNIZER_CAP = 16


def perfect_elimination_ordering(g: Graph) -> Optional[List[int]]:
    """Vertex order with each neighborhood-to-the-right a clique, or None.

    Repeatedly removes the smallest simplicial vertex.  Such an ordering
    exists exactly for chordal graphs, so None certifies a hole somewhere.
    """
    remaining = g.vertex_mask
    order = []
    while remaining:
        found = None
        for v in bits(remaining):
            nb = g.adj[v] & remaining
            if all(nb & ~g.adj[u] & ~(1 << u) == 0 for u in bits(nb)):
                found = v
                break
        if found is None:
            return None
        order.append(found)
        remaining &= ~(1 << found)
    return order


def is_chordal(g: Graph) -> bool:
    return perfect_elimination_ordering(g) is not None


def _induced_cycles(g: Graph, max_len: int) -> Iterator[Tuple[int, ...]]:
    """Yield every induced cycle of length 4..max_len exactly once.

    Cycles are rooted at their smallest vertex, oriented so the second
    vertex is smaller than the last.
    """
    n = g.n
    adj = g.adj
    if n < 4 or max_len < 4:
        return
    for s in range(n):
        above = -(2 << s)  # vertices strictly greater than s
        adj_s = adj[s]

        def extend(path, path_mask, forb):
            last = path[-1]
            cand = adj[last] & above & ~forb & ~path_mask
            if len(path) >= 3:
                for w in bits(cand & adj_s):
                    if w > path[1]:
                        yield path + (w,)
            if len(path) + 2 <= max_len:
                new_forb = forb | adj[last]
                for w in bits(cand & ~adj_s):
                    yield from extend(path + (w,), path_mask | (1 << w), new_forb)

        for u in bits(adj_s & above):
            yield from extend((s, u), (1 << s) | (1 << u), 0)


@dataclass
class HoleReport:
    smallest: Optional[int]
    lengths_found: Tuple[int, ...]
    even_free: bool
    odd_free: bool


def hole_report(g: Graph, max_len: Optional[int] = None) -> HoleReport:
    """Exhaustive induced-cycle census up to max_len (default: all of g)."""
    if max_len is None:
        max_len = max(g.n, 4)
    if max_len < 4:
        raise ValueError("max_len must be at least 4")
    lengths = set()
    for c in _induced_cycles(g, max_len):
        lengths.add(len(c))
    return HoleReport(
        smallest=min(lengths) if lengths else None,
        lengths_found=tuple(sorted(lengths)),
        even_free=not any(l % 2 == 0 for l in lengths),
        odd_free=not any(l % 2 == 1 for l in lengths),
    )


def has_hole(g: Graph) -> bool:
    """True when some induced cycle of length >= 4 exists."""
    return next(_induced_cycles(g, g.n), None) is not None


def smallest_hole(g: Graph) -> Optional[int]:
    """Length of the shortest hole, by iterative deepening; None if chordal."""
    for length in range(4, g.n + 1):
        if next(_induced_cycles(g, length), None) is not None:
            return length
    return None


def n2p_parameter(g: Graph):
    """Largest p >= 1 with no hole of length <= p + 2; infinity when chordal.

    Values >= 2 certify that the non-edge ideal's resolution is linear for
    the first p steps.
    """
    s = smallest_hole(g)
    if s is None:
        return math.inf
    return s - 3


def is_even_hole_free(g: Graph) -> bool:
    return all(len(c) % 2 for c in _induced_cycles(g, g.n))


def _has_odd_hole(g: Graph) -> bool:
    return any(len(c) % 2 for c in _induced_cycles(g, g.n))


def is_perfect(g: Graph, cap: int = DEFAULT_RECOGNIZER_CAP) -> bool:
    """No odd hole in the graph or its complement (used as the definition)."""
    if g.n > cap:
        raise CapExceeded(f"perfection search capped at {cap} vertices")
    return not (_has_odd_hole(g) or _has_odd_hole(complement(g)))


def _induced_paths(g: Graph, allowed: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Induced k-vertex paths inside the allowed set, each listed once."""
    if k == 1:
        for v in bits(allowed):
            yield (v,)
        return
    adj = g.adj

    def extend(path, path_mask, forb):
        if len(path) == k:
            if path[0] < path[-1]:
                yield path
            return
        last = path[-1]
        cand = adj[last] & allowed & ~forb & ~path_mask
        new_forb = forb | adj[last]
        for w in bits(cand):
            yield from extend(path + (w,), path_mask | (1 << w), new_forb)

    for v in bits(allowed):
        yield from extend((v,), 1 << v, 0)


def contains_fan(g: Graph, i: int) -> bool:
    """Induced copy of the fan F_i: isolated vertex + path on i+1 vertices
    joined to an apex.  F_2 is the fan of the two-triangles-plus-point rule.
    """
    if i < 1:
        raise ValueError("fans are defined for i >= 1")
    if g.n < i + 3:
        return False
    full = g.vertex_mask
    for w in range(g.n):
        nb = g.adj[w]
        if nb.bit_count() < i + 1:
            continue
        for p in _induced_paths(g, nb, i + 1):
            fan_mask = (1 << w)
            for v in p:
                fan_mask |= 1 << v
            for u in bits(full & ~fan_mask):
                if g.adj[u] & fan_mask == 0:
                    return True
    return False


def chordal_neighborhood_vertex(g: Graph) -> Optional[int]:
    """Smallest vertex whose open neighborhood induces a chordal graph."""
    for v in range(g.n):
        if is_chordal(open_neighborhood(g, v)):
            return v
    return None


def _two_coloring(g: Graph) -> Optional[Tuple[int, int]]:
    """Bipartition masks (x, y) via BFS, or None on an odd cycle.

    Components are processed smallest vertex first; each component's
    smallest vertex lands on the x side, which pins the coloring down.
    """
    x = y = seen = 0
    for s in range(g.n):
        if seen >> s & 1:
            continue
        frontier = 1 << s
        x |= frontier
        seen |= frontier
        side = 0  # frontier currently on x
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= g.adj[v]
            if grow & (x if side == 0 else y):
                return None  # neighbor on the frontier's own side: odd cycle
            frontier = grow & ~seen
            seen |= frontier
            side ^= 1
            if side == 0:
                x |= frontier
            else:
                y |= frontier
    # final sanity: no edge inside either side
    for v in bits(x):
        if g.adj[v] & x:
            return None
    for v in bits(y):
        if g.adj[v] & y:
            return None
    return x, y


@dataclass
class BipartiteComplementStructure:
    """Witness that the complement is bipartite with parts (x_side, y_side).

    bipartite_part keeps every vertex of the original graph but only its
    edges running between the two sides.
    """

    x_side: int
    y_side: int
    bipartite_part: Graph


def bipartite_complement_structure(g: Graph) -> Optional[BipartiteComplementStructure]:
    coloring = _two_coloring(complement(g))
    if coloring is None:
        return None
    x, y = coloring
    rows = [g.adj[v] & (y if x >> v & 1 else x) for v in range(g.n)]
    return BipartiteComplementStructure(x, y, Graph.from_rows(g.labels, rows))


def _require_bipartite(b: Graph) -> Tuple[int, int]:
    coloring = _two_coloring(b)
    if coloring is None:
        raise ValueError("input graph is not bipartite")
    return coloring


def is_chordal_bipartite(b: Graph) -> bool:
    """Bipartite with no induced cycle longer than four."""
    _require_bipartite(b)
    return all(len(c) == 4 for c in _induced_cycles(b, b.n))


def find_bisimplicial_edge(b: Graph) -> Optional[Tuple[int, int]]:
    """Smallest edge whose endpoint neighborhoods induce complete bipartite.

    Such an edge always exists in a chordal bipartite graph with at least
    one edge, and deleting it keeps the graph chordal bipartite.
    """
    _require_bipartite(b)
    for i, j in b.edges():
        ni = b.adj[i]
        if all(ni & ~b.adj[x] == 0 for x in bits(b.adj[j])):
            return (i, j)
    return None
