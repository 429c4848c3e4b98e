"""Exact Betti tables and regularity of a graph's non-edge ideal.

Everything rests on one identity: the graded Betti number beta_{i,t} of the
ideal generated by the non-edges of g (over a field of characteristic zero)
is the sum, over all size-t vertex subsets W, of the degree t-i-2 reduced
homology rank of the clique complex of g[W].  Regularity is the largest d+2
over nonvanishing degrees d, and defaults to 1 when every subset is acyclic.

Subset homology is cached by the induced subgraph's adjacency rows, so
sweeps over many graphs or repeated vertex deletions share nearly all work.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Optional, Tuple

from .errors import CapExceeded
from .graph import Graph, delete_vertex
from .homology import DEFAULT_FACE_CAP, clique_complex, has_dominating_vertex, reduced_homology

DEFAULT_EXACT_CAP = 14

# induced-subgraph adjacency rows -> homology ranks of the clique complex
_RANK_CACHE: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
# graph signature -> (regularity, witness)
_REG_CACHE: Dict[tuple, tuple] = {}


def clear_caches():
    _RANK_CACHE.clear()
    _REG_CACHE.clear()


def cache_sizes():
    return {"homology": len(_RANK_CACHE), "regularity": len(_REG_CACHE)}


def _check_cap(g: Graph, cap: int):
    if g.n > cap:
        raise CapExceeded(f"graph has {g.n} vertices, exact cap is {cap}")


def _ranks_of_rows(rows: Tuple[int, ...], face_cap: int) -> Tuple[int, ...]:
    ranks = _RANK_CACHE.get(rows)
    if ranks is None:
        sub = Graph.from_rows(tuple(map(str, range(len(rows)))), rows)
        ranks = reduced_homology(clique_complex(sub, face_cap)).ranks
        _RANK_CACHE[rows] = ranks
    return ranks


def _subset_profiles(g: Graph, face_cap: int):
    """Yield (mask, size, ranks) for subsets with some nonvanishing homology.

    Subsets are visited by ascending size, lexicographically within a size.
    Subsets whose induced subgraph has a dominating vertex span cones and are
    skipped without computing anything.
    """
    adj = g.adj
    for t in range(2, g.n + 1):
        for comb in combinations(range(g.n), t):
            mask = 0
            for v in comb:
                mask |= 1 << v
            dominated = False
            for v in comb:
                if adj[v] & mask == mask ^ (1 << v):
                    dominated = True
                    break
            if dominated:
                continue
            rows = []
            for v in comb:
                row = adj[v]
                s = 0
                for k, u in enumerate(comb):
                    if row >> u & 1:
                        s |= 1 << k
                rows.append(s)
            ranks = _ranks_of_rows(tuple(rows), face_cap)
            if any(ranks):
                yield mask, t, ranks


@dataclass
class BettiTable:
    """Nonzero graded Betti numbers of the non-edge ideal, plus witnesses.

    entries maps (i, t) to beta_{i,t}; witnesses records, for each nonzero
    entry, the first vertex subset (as a bitmask) that contributed to it.
    """

    n: int
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)
    witnesses: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def regularity(self) -> int:
        if not self.entries:
            return 1
        return max(t - i for i, t in self.entries)


@dataclass
class RegularityResult:
    value: int
    # (subset mask, homology degree) certifying value = degree + 2
    witness: Optional[Tuple[int, int]]
    exhaustive: bool = True


def betti_table(g: Graph, cap: int = DEFAULT_EXACT_CAP,
                face_cap: int = DEFAULT_FACE_CAP) -> BettiTable:
    """Full table of nonzero beta_{i,t}, by exhaustive subset enumeration."""
    _check_cap(g, cap)
    table = BettiTable(g.n)
    for mask, t, ranks in _subset_profiles(g, face_cap):
        for d, r in enumerate(ranks):
            if r:
                key = (t - d - 2, t)
                table.entries[key] = table.entries.get(key, 0) + r
                table.witnesses.setdefault(key, mask)
    return table


def regularity_exact(g: Graph, cap: int = DEFAULT_EXACT_CAP,
                     face_cap: int = DEFAULT_FACE_CAP) -> RegularityResult:
    """Exact regularity with a witness subset, by exhaustive enumeration.

    Returns 1 with no witness when every subset is acyclic (in particular for
    complete graphs and the empty graph).
    """
    _check_cap(g, cap)
    cached = _REG_CACHE.get(g.signature)
    if cached is not None:
        return RegularityResult(cached[0], cached[1])
    value = 1
    witness = None
    for mask, t, ranks in _subset_profiles(g, face_cap):
        for d in range(len(ranks) - 1, -1, -1):
            if ranks[d]:
                if d + 2 > value:
                    value = d + 2
                    witness = (mask, d)
                break
    _REG_CACHE[g.signature] = (value, witness)
    return RegularityResult(value, witness)


def regularity_lower_bound_witness(g: Graph, r: int, cap: int = DEFAULT_EXACT_CAP,
                                   face_cap: int = DEFAULT_FACE_CAP) -> Optional[int]:
    """First subset whose homology alone certifies regularity >= r, if any.

    The returned bitmask W satisfies dim H_{r-2} of the clique complex of
    g[W] > 0.  Subsets are scanned in the same order as regularity_exact.
    """
    if r < 2:
        raise ValueError("lower-bound witnesses only exist for r >= 2")
    _check_cap(g, cap)
    for mask, t, ranks in _subset_profiles(g, face_cap):
        if len(ranks) > r - 2 and ranks[r - 2]:
            return mask
    return None


def trim(g: Graph, cap: int = DEFAULT_EXACT_CAP,
         face_cap: int = DEFAULT_FACE_CAP) -> Graph:
    """Delete vertices that do not lower regularity until none remains.

    Greedy, smallest index first, restarting after each deletion.  The result
    has the same regularity, and deleting any of its vertices drops the value
    by exactly one (asserted).  A single vertex is never deleted, so
    regularity-one graphs trim to one vertex rather than to nothing.
    """
    _check_cap(g, cap)
    r = regularity_exact(g, cap, face_cap).value
    changed = True
    while changed and g.n > 1:
        changed = False
        for y in range(g.n):
            h = delete_vertex(g, y)
            if regularity_exact(h, cap, face_cap).value == r:
                g = h
                changed = True
                break
    if g.n > 1:
        for v in range(g.n):
            dropped = regularity_exact(delete_vertex(g, v), cap, face_cap).value
            assert dropped == r - 1, "vertex deletion did not drop regularity by one"
    return g
