"""Named graph families, seeded random ensembles, and graph I/O.

Random graphs use an explicit splitmix64 generator rather than the stdlib
Mersenne twister so that corpora are reproducible bit-for-bit from the seed
alone, independent of Python version; the identifier below names the stream
for output metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

from .errors import ParseError
from .graph import MAX_VERTICES, Graph, bits

PRNG_NAME = "splitmix64/v1"
_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Tiny 64-bit PRNG with a one-word state; fast and trivially portable."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next64()
            if r < limit:
                return r % bound

    def chance(self, p: float) -> bool:
        """True with probability p (p quantized to 1/2^64 steps)."""
        return self.next64() < int(p * (1 << 64))


# --- deterministic families ---------------------------------------------


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_multipartite(sizes) -> Graph:
    sizes = list(sizes)
    if any(s < 0 for s in sizes):
        raise ValueError("part sizes must be nonnegative")
    part = []
    for k, s in enumerate(sizes):
        part.extend([k] * s)
    n = len(part)
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if part[i] != part[j]])


def kn2(m: int) -> Graph:
    """Complete multipartite graph with m parts of size two; part k = {2k, 2k+1}."""
    if m < 1:
        raise ValueError("need at least one part")
    return complete_multipartite([2] * m)


def fan(i: int) -> Graph:
    """Fan F_i: path 0..i, apex i+1 joined to the whole path, isolated i+2."""
    if i < 1:
        raise ValueError("fans are defined for i >= 1")
    edges = [(k, k + 1) for k in range(i)] + [(k, i + 1) for k in range(i + 1)]
    return Graph(i + 3, edges)


def genus_k_m2(m: int) -> Optional[int]:
    """Orientable genus (m-3)(m-1)/3 of the m-part size-two multipartite
    graph, available only when m is not 2 mod 3."""
    if m < 3:
        raise ValueError("formula applies for m >= 3")
    if m % 3 == 2:
        return None
    return (m - 3) * (m - 1) // 3


# --- random families ----------------------------------------------------


def random_gnp(n: int, p: float, seed: int) -> Graph:
    """Each of the n(n-1)/2 pairs kept with probability p, row-major order."""
    if not 0 <= p <= 1:
        raise ValueError("probability out of range")
    rng = SplitMix64(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.chance(p)]
    return Graph(n, edges)


def random_chordal(n: int, seed: int) -> Graph:
    """Chordal graph built along a random perfect elimination ordering.

    Vertex v attaches to a random subset of one existing clique, so reading
    the insertion order backwards is a perfect elimination ordering by
    construction.
    """
    rng = SplitMix64(seed)
    cliques = [0]
    edges = []
    for v in range(n):
        base = cliques[rng.below(len(cliques))]
        s = 0
        for u in bits(base):
            if rng.chance(0.5):
                s |= 1 << u
                edges.append((u, v))
        cliques.append(s | (1 << v))
    return Graph(n, edges)


def random_bipartite_complement(nx: int, ny: int, p: float, seed: int) -> Graph:
    """Complement of a random bipartite graph, bipartition recorded in labels.

    Vertices x0..x{nx-1} then y0..y{ny-1}; both sides come out complete, and
    each cross pair (xi, yj) is a non-edge with probability p (the bipartite
    graph being complemented keeps cross edges with probability p, scanned in
    row-major order).
    """
    if not 0 <= p <= 1:
        raise ValueError("probability out of range")
    rng = SplitMix64(seed)
    labels = [f"x{i}" for i in range(nx)] + [f"y{j}" for j in range(ny)]
    edges = [(i, j) for i in range(nx) for j in range(i + 1, nx)]
    edges += [(nx + i, nx + j) for i in range(ny) for j in range(i + 1, ny)]
    for i in range(nx):
        for j in range(ny):
            if not rng.chance(p):
                edges.append((i, nx + j))
    g = Graph(nx + ny, edges)
    return Graph.from_rows(tuple(labels), g.adj)


# --- named families -------------------------------------------------------

KINDS = {
    "Complete": ("n",),
    "CompleteMultipartite": ("sizes",),
    "Kn2": ("m",),
    "Cycle": ("n",),
    "Path": ("n",),
    "Fan": ("i",),
    "RandomGnp": ("n", "p", "seed"),
    "RandomChordal": ("n", "seed"),
    "RandomBipartiteComplement": ("nx", "ny", "p", "seed"),
}


@dataclass
class FamilyRequest:
    kind: str
    params: Dict = field(default_factory=dict)


def generate(req: FamilyRequest) -> Graph:
    """Deterministic graph for the requested family; validates parameters."""
    if req.kind not in KINDS:
        raise ValueError(f"unknown family kind {req.kind!r}")
    wanted = KINDS[req.kind]
    if set(req.params) != set(wanted):
        raise ValueError(f"{req.kind} needs parameters {wanted}, got {tuple(req.params)}")
    p = req.params
    if req.kind == "Complete":
        return complete(p["n"])
    if req.kind == "CompleteMultipartite":
        return complete_multipartite(p["sizes"])
    if req.kind == "Kn2":
        return kn2(p["m"])
    if req.kind == "Cycle":
        return cycle(p["n"])
    if req.kind == "Path":
        return path(p["n"])
    if req.kind == "Fan":
        return fan(p["i"])
    if req.kind == "RandomGnp":
        return random_gnp(p["n"], p["p"], p["seed"])
    if req.kind == "RandomChordal":
        return random_chordal(p["n"], p["seed"])
    return random_bipartite_complement(p["nx"], p["ny"], p["p"], p["seed"])


# --- graph6 codec -------------------------------------------------------


def graph6_encode(g: Graph) -> str:
    """Standard graph6: length header, then the upper triangle column-major
    in big-endian 6-bit groups, each offset by 63."""
    n = g.n
    if n <= 62:
        head = chr(63 + n)
    else:
        head = "~" + "".join(chr(63 + (n >> k & 63)) for k in (12, 6, 0))
    bits_out = []
    for j in range(1, n):
        for i in range(j):
            bits_out.append(g.adj[i] >> j & 1)
    while len(bits_out) % 6:
        bits_out.append(0)
    body = []
    for k in range(0, len(bits_out), 6):
        val = 0
        for b in bits_out[k:k + 6]:
            val = val << 1 | b
        body.append(chr(63 + val))
    return head + "".join(body)


def graph6_decode(s: str) -> Graph:
    s = s.strip()
    if not s:
        raise ParseError("empty graph6 string")
    if any(not 63 <= ord(ch) <= 126 for ch in s):
        raise ParseError("graph6 characters must be in the range 63..126")
    if s[0] == "~":
        if len(s) < 4:
            raise ParseError("truncated graph6 length header")
        n = 0
        for ch in s[1:4]:
            n = n << 6 | (ord(ch) - 63)
        rest = s[4:]
    else:
        n = ord(s[0]) - 63
        rest = s[1:]
    if n > MAX_VERTICES:
        raise ParseError(f"graph6 string encodes {n} vertices, limit is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    if len(rest) != nchars:
        raise ParseError(f"graph6 body has {len(rest)} characters, expected {nchars}")
    stream = []
    for ch in rest:
        val = ord(ch) - 63
        stream.extend(val >> k & 1 for k in (5, 4, 3, 2, 1, 0))
    if any(stream[nbits:]):
        raise ParseError("nonzero padding bits in graph6 string")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if stream[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


# --- edge list I/O ------------------------------------------------------


def edge_list_read(text: str) -> Graph:
    """Parse whitespace-separated edge lines; a lone label declares an
    isolated vertex.  Labels are indexed in order of first appearance."""
    labels = []
    index = {}
    edges = []
    edge_seen = set()

    def vertex(tok, lineno):
        if tok not in index:
            if len(labels) >= MAX_VERTICES:
                raise ParseError(f"line {lineno}: more than {MAX_VERTICES} vertices")
            index[tok] = len(labels)
            labels.append(tok)
        return index[tok]

    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = line.split()
        if not toks:
            continue
        if len(toks) == 1:
            vertex(toks[0], lineno)
        elif len(toks) == 2:
            a, b = toks
            if a == b:
                raise ParseError(f"line {lineno}: self-loop at {a!r}")
            i, j = vertex(a, lineno), vertex(b, lineno)
            key = (min(i, j), max(i, j))
            if key in edge_seen:
                raise ParseError(f"line {lineno}: duplicate edge {a!r} {b!r}")
            edge_seen.add(key)
            edges.append(key)
        else:
            raise ParseError(f"line {lineno}: expected one or two labels, got {len(toks)}")
    return Graph.from_rows(tuple(labels), _rows_from_edges(len(labels), edges))


def _rows_from_edges(n, edges):
    adj = [0] * n
    for i, j in edges:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return adj


def edge_list_write(g: Graph) -> str:
    """Inverse of edge_list_read: vertex declarations first, then edges.

    Declaring every vertex keeps the label order stable on a round trip.
    Labels containing whitespace cannot be represented and are rejected.
    """
    for lab in g.labels:
        if not lab or lab.split() != [lab]:
            raise ValueError(f"label {lab!r} cannot appear in an edge list")
    lines = list(g.labels)
    lines.extend(f"{g.labels[i]} {g.labels[j]}" for i, j in g.edges())
    return "\n".join(lines) + ("\n" if lines else "")
