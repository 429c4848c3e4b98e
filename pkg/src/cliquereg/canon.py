"""Canonical labeling for memoization keys.

Color refinement plus individualization search, small-graph grade: refine by
neighbor-color multisets until stable, then branch on the first ambiguous
class and keep the lexicographically least adjacency key over all leaves.
The returned permutation lets callers translate cached per-vertex data
between isomorphic graphs.
"""

from __future__ import annotations

from typing import List, Tuple

from .graph import Graph, bits


def _refine(g: Graph, colors: List[int]) -> List[int]:
    while True:
        sig = [
            (colors[v], tuple(sorted(colors[u] for u in bits(g.adj[v]))))
            for v in range(g.n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [rank[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            return new  # partition stable (same class count means no split)
        colors = new


def canonical_form(g: Graph) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Canonical adjacency rows and the permutation realizing them.

    Returns (key, perm) with perm[v] = canonical position of vertex v; two
    graphs are isomorphic iff their keys are equal.
    """
    n = g.n
    if n == 0:
        return (), ()
    best_key = None
    best_perm = None

    def leaf(colors):
        nonlocal best_key, best_perm
        inv = [0] * n
        for v in range(n):
            inv[colors[v]] = v
        key = tuple(
            sum(1 << colors[u] for u in bits(g.adj[inv[p]])) for p in range(n)
        )
        if best_key is None or key < best_key:
            best_key = key
            best_perm = tuple(colors)

    def search(colors):
        colors = _refine(g, colors)
        target = None
        counts = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        for c in sorted(counts):
            if counts[c] > 1:
                target = c
                break
        if target is None:
            leaf(colors)
            return
        for v in range(n):
            if colors[v] == target:
                # individualize v below the rest of its class
                branched = [2 * c + 1 for c in colors]
                branched[v] = 2 * target
                search(branched)

    search([0] * n)
    return best_key, best_perm
