"""Clique complexes and exact reduced simplicial homology over the rationals.

Ranks are computed by fraction-free (Bareiss) elimination on arbitrary
precision integers, with full pivoting that prefers unit pivots so boundary
matrices almost never leave machine-int territory.  No floating point is
involved anywhere.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from .errors import CapExceeded
from .graph import Graph

DEFAULT_FACE_CAP = 1 << 20

# When True, reduced_homology verifies that consecutive boundary maps compose
# to zero.  Costly, so it is off by default and switched on in tests.
CHECK_BOUNDARIES = False


class SimplicialComplex:
    """Faces grouped by dimension; every face is a sorted tuple of vertices.

    faces[d] lists the d-dimensional faces in lexicographic order.  The empty
    complex has no face lists at all (dimension -1).
    """

    __slots__ = ("faces",)

    def __init__(self, faces_by_dim):
        self.faces = tuple(tuple(level) for level in faces_by_dim)
        if self.faces and not self.faces[-1]:
            raise ValueError("top face list may not be empty")

    @property
    def dim(self) -> int:
        return len(self.faces) - 1

    def face_count(self, d: int) -> int:
        if 0 <= d < len(self.faces):
            return len(self.faces[d])
        return 0

    def total_faces(self) -> int:
        return sum(len(level) for level in self.faces)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.faces == other.faces

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, sizes={[len(l) for l in self.faces]})"


def clique_complex(g: Graph, face_cap: int = DEFAULT_FACE_CAP) -> SimplicialComplex:
    """Complex whose faces are the cliques of g, grown one vertex at a time.

    Cliques are extended only by higher-indexed vertices, so each face is
    enumerated exactly once and levels come out lexicographically sorted.
    Raises CapExceeded when the total face count would pass face_cap.
    """
    levels = []
    level = []
    for v in range(g.n):
        ext = g.adj[v] >> (v + 1) << (v + 1)
        level.append(((v,), ext))
    total = len(level)
    if total > face_cap:
        raise CapExceeded(f"clique complex exceeds face cap {face_cap}")
    while level:
        levels.append([face for face, _ in level])
        nxt = []
        for face, ext in level:
            e = ext
            while e:
                low = e & -e
                u = low.bit_length() - 1
                e ^= low
                nxt.append((face + (u,), ext & g.adj[u] & -(low << 1)))
        total += len(nxt)
        if total > face_cap:
            raise CapExceeded(f"clique complex exceeds face cap {face_cap}")
        level = nxt
    return SimplicialComplex(levels)


def boundary_matrix(c: SimplicialComplex, d: int) -> List[List[int]]:
    """Matrix of the d-th boundary map in the bases listed by the complex.

    Rows are indexed by (d-1)-faces, columns by d-faces.  d = 0 gives the
    augmentation row sending every vertex to the generator of the empty face.
    """
    if d < 0 or d > c.dim:
        raise ValueError(f"no boundary map in dimension {d}")
    cols = c.faces[d]
    if d == 0:
        return [[1] * len(cols)]
    rows = c.faces[d - 1]
    index = {face: i for i, face in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, face in enumerate(cols):
        sign = 1
        for k in range(d + 1):
            sub = face[:k] + face[k + 1:]
            mat[index[sub]][j] = sign
            sign = -sign
    return mat


def integer_rank(mat: List[List[int]]) -> int:
    """Rank over the rationals of an integer matrix, exactly.

    Bareiss one-step elimination with full pivoting.  Unit pivots are taken
    whenever available, which keeps entries small on boundary matrices.
    """
    m = [row[:] for row in mat if any(row)]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    r = 0
    prev = 1
    while r < nrows:
        # hunt for a unit pivot first, then settle for any nonzero
        piv_pos = None
        for i in range(r, nrows):
            row = m[i]
            for j in range(r, ncols):
                a = row[j]
                if a == 1 or a == -1:
                    piv_pos = (i, j)
                    break
                if a and piv_pos is None:
                    piv_pos = (i, j)
            if piv_pos and abs(m[piv_pos[0]][piv_pos[1]]) == 1:
                break
        if piv_pos is None:
            break
        pi, pj = piv_pos
        if pi != r:
            m[pi], m[r] = m[r], m[pi]
        if pj != r:
            for row in m:
                row[pj], row[r] = row[r], row[pj]
        piv = m[r][r]
        top = m[r]
        scale_only = piv == prev
        for i in range(r + 1, nrows):
            row = m[i]
            lead = row[r]
            if lead == 0:
                if scale_only:
                    continue
                q = piv // prev if piv % prev == 0 else None
                if q is not None:
                    m[i] = [a * q for a in row]
                else:
                    m[i] = [(piv * a) // prev for a in row]
            else:
                m[i] = [(piv * a - lead * b) // prev for a, b in zip(row, top)]
                m[i][r] = 0
        prev = piv
        r += 1
    return r


def rank_mod_p(mat: List[List[int]], p: int = 32003) -> int:
    """Rank of the matrix over the prime field GF(p); consistency check only.

    Reduction mod p can only lower the rank, so this gives a cheap lower
    bound on integer_rank, with equality for all but finitely many p.
    """
    m = [[a % p for a in row] for row in mat]
    m = [row for row in m if any(row)]
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [a * inv % p for a in m[r]]
        top = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                lead = m[i][c]
                m[i] = [(a - lead * b) % p for a, b in zip(m[i], top)]
        r += 1
        if r == len(m):
            break
    return r


class HomologyProfile:
    """Reduced rational homology ranks of a complex, degrees 0 through dim.

    The degree -1 slot is omitted: it is nonzero only for the empty complex,
    which never contributes to any computation in this package.
    """

    __slots__ = ("ranks",)

    def __init__(self, ranks: Tuple[int, ...]):
        self.ranks = tuple(ranks)

    @property
    def acyclic(self) -> bool:
        return all(r == 0 for r in self.ranks)

    def rank(self, d: int) -> int:
        if 0 <= d < len(self.ranks):
            return self.ranks[d]
        return 0

    def top_degree(self) -> Optional[int]:
        """Largest degree with nonzero rank, None when acyclic."""
        best = None
        for d, r in enumerate(self.ranks):
            if r:
                best = d
        return best

    def __repr__(self):
        return f"HomologyProfile(ranks={self.ranks})"


def _compose_is_zero(low, high):
    # low: matrix of d-th map, high: matrix of (d+1)-th map
    for col in range(len(high[0]) if high else 0):
        for i in range(len(low)):
            s = sum(low[i][k] * high[k][col] for k in range(len(high)))
            if s != 0:
                return False
    return True


def reduced_homology(c: SimplicialComplex, p: Optional[int] = None) -> HomologyProfile:
    """Ranks of reduced homology in every degree, by exact rank counting.

    rank H_d = #d-faces - rank B_d - rank B_{d+1}.  Passing a prime p adds a
    GF(p) recount of every boundary rank and raises if the two disagree.
    """
    dim = c.dim
    if dim < 0:
        return HomologyProfile(())
    mats = [boundary_matrix(c, d) for d in range(dim + 1)]
    b = [integer_rank(m) for m in mats]
    if p is not None:
        for d, m in enumerate(mats):
            if rank_mod_p(m, p) != b[d]:
                raise ArithmeticError(f"rank mismatch over GF({p}) in dimension {d}")
    if CHECK_BOUNDARIES:
        for d in range(dim):
            assert _compose_is_zero(mats[d], mats[d + 1]), f"d o d != 0 at dimension {d}"
    b.append(0)
    ranks = [c.face_count(d) - b[d] - b[d + 1] for d in range(dim + 1)]
    # reduced Euler characteristic must match the alternating rank sum
    euler = sum((-1) ** d * c.face_count(d) for d in range(dim + 1)) - 1
    homological = sum((-1) ** d * r for d, r in enumerate(ranks))
    assert euler == homological, "Euler characteristic mismatch"
    return HomologyProfile(tuple(ranks))


def has_dominating_vertex(g: Graph) -> Optional[int]:
    """Smallest vertex adjacent to all others, None if no such vertex.

    A dominating vertex makes the clique complex a cone, hence acyclic, so
    callers use this as a skip test before computing any homology.
    """
    full = g.vertex_mask
    for v, row in enumerate(g.adj):
        if row == full ^ (1 << v):
            return v
    return None
