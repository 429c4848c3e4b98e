"""Certified upper bounds on regularity: decompositions and closed forms.

Every bound here returns a BoundCertificate: an integer together with a tree
of steps.  Leaves carry their own evidence (a completeness check, a perfect
elimination ordering, a supplied oracle value, a closed-form input); internal
nodes name the decomposition applied and hold the child certificates.
`replay` recomputes each node's max-formula from its children;
`check_certificate` additionally re-derives every child graph from the parent
and verifies leaf evidence, so a certificate can be audited without trusting
the code that produced it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, ClassVar, Dict, List, Optional, Tuple, Union

from .canon import canonical_form
from .errors import CapExceeded
from .graph import (
    Graph,
    bits,
    mask_of,
    induced_subgraph,
    delete_vertex,
    delete_edges,
    m_closure,
    open_neighborhood,
    is_complete,
    min_degree_vertex,
)
from .homology import DEFAULT_FACE_CAP, clique_complex
from .hochster import DEFAULT_EXACT_CAP, RegularityResult, regularity_exact
from .recognizers import (
    DEFAULT_RECOGNIZER_CAP,
    perfect_elimination_ordering,
    is_chordal,
    chordal_neighborhood_vertex,
    hole_report,
    n2p_parameter,
    is_even_hole_free,
    is_perfect,
    contains_fan,
    bipartite_complement_structure,
    is_chordal_bipartite,
    find_bisimplicial_edge,
)
from .families import graph6_encode

DEFAULT_ENGINE_BUDGET = 50_000

VertexSet = Union[int, "list[int]", "tuple[int, ...]", "set[int]"]


class Strategy(enum.Enum):
    MIN_DEGREE = "MinDegree"
    CHORDAL_NEIGHBORHOOD_FIRST = "ChordalNeighborhoodFirst"


DEFAULT_STRATEGY = Strategy.CHORDAL_NEIGHBORHOOD_FIRST


# ---------------------------------------------------------------------------
# certificate nodes


@dataclass(frozen=True)
class CompleteBase:
    """Complete graph on n vertices: regularity 1 (also covers n <= 1)."""

    TAG: ClassVar[str] = "CompleteBase"
    n: int


@dataclass(frozen=True)
class ChordalBase:
    """Perfect elimination ordering: regularity at most 2."""

    TAG: ClassVar[str] = "ChordalBase"
    peo: Tuple[int, ...]


@dataclass(frozen=True)
class ExactLeaf:
    """A caller-supplied regularity value, trusted as evidence."""

    TAG: ClassVar[str] = "ExactLeaf"
    value: int
    note: str = "supplied"


@dataclass(frozen=True)
class VertexDecomp:
    """reg(G) <= max(reg(G - v), reg(N(v)) + 1)."""

    TAG: ClassVar[str] = "VertexDecomp"
    v: int
    deletion: "BoundCertificate"
    neighborhood: "BoundCertificate"


@dataclass(frozen=True)
class Separator:
    """reg(G) <= max(max_i reg(G[C_i + T]), reg(G[T]) + 1).

    parts pairs each component mask C_i of G - T with the certificate for
    G[C_i + T]; masks are in the parent graph's vertex indexing.
    """

    TAG: ClassVar[str] = "Separator"
    t: int
    t_cert: "BoundCertificate"
    parts: Tuple[Tuple[int, "BoundCertificate"], ...]


@dataclass(frozen=True)
class EdgeDecomp:
    """reg(G) <= max(reg(G - e), reg(G_e - e) + 1)."""

    TAG: ClassVar[str] = "EdgeDecomp"
    e: Tuple[int, int]
    deletion: "BoundCertificate"
    closure_minus: "BoundCertificate"


@dataclass(frozen=True)
class SubgraphDecomp:
    """reg(G) <= max(reg(G - M), reg(G_M), reg(G_M - M) + 1)."""

    TAG: ClassVar[str] = "SubgraphDecomp"
    m: Tuple[Tuple[int, int], ...]
    minus: "BoundCertificate"
    closure: "BoundCertificate"
    closure_minus: "BoundCertificate"


@dataclass(frozen=True)
class CliqueCover:
    """reg(G) <= max(reg(G1), reg(G2), reg(G1 cap G2) + 1) for a clique cover.

    g1 and g2 are subgraphs identified with G by vertex labels; their
    regularities (and the intersection's) arrive as ExactLeaf children.
    """

    TAG: ClassVar[str] = "CliqueCover"
    g1: Graph
    g2: Graph
    g1_cert: "BoundCertificate"
    g2_cert: "BoundCertificate"
    intersection_cert: "BoundCertificate"


@dataclass(frozen=True)
class ClosedForm:
    """A formula bound; inputs are (name, value) pairs, sorted by name."""

    TAG: ClassVar[str] = "ClosedForm"
    formula: str
    inputs: Tuple[Tuple[str, int], ...]


@dataclass(frozen=True)
class BoundCertificate:
    bound: int
    step: object


class CoverError(ValueError):
    """Clique cover condition failed; carries a witness clique (labels)."""

    def __init__(self, witness: Tuple[str, ...]):
        self.witness = witness
        super().__init__(
            f"clique {witness} is a clique of neither covering subgraph"
        )


# ---------------------------------------------------------------------------
# replay and audit


def replay(cert: BoundCertificate) -> int:
    """Recompute the bound from the certificate alone (no graph needed)."""
    step = cert.step
    if isinstance(step, CompleteBase):
        return 1
    if isinstance(step, ChordalBase):
        return 2
    if isinstance(step, ExactLeaf):
        return step.value
    if isinstance(step, VertexDecomp):
        return max(replay(step.deletion), replay(step.neighborhood) + 1)
    if isinstance(step, Separator):
        best = replay(step.t_cert) + 1
        for _, part in step.parts:
            best = max(best, replay(part))
        return best
    if isinstance(step, EdgeDecomp):
        return max(replay(step.deletion), replay(step.closure_minus) + 1)
    if isinstance(step, SubgraphDecomp):
        return max(
            replay(step.minus),
            replay(step.closure),
            replay(step.closure_minus) + 1,
        )
    if isinstance(step, CliqueCover):
        return max(
            replay(step.g1_cert),
            replay(step.g2_cert),
            replay(step.intersection_cert) + 1,
        )
    if isinstance(step, ClosedForm):
        return _closed_form_value(step.formula, dict(step.inputs))
    raise TypeError(f"unknown certificate node {step!r}")


def _closed_form_value(formula: str, inputs: Dict[str, int]) -> int:
    if formula == "nvertex":
        return nvertex_bound(inputs["n"])
    if formula == "genus":
        return genus_bound(inputs["genus"])
    if formula == "n2p_log":
        return best_n2p_bound(inputs["n"], inputs["p"])
    raise ValueError(f"unknown closed form {formula!r}")


def _map_edges_by_label(src: Graph, dst: Graph, edges) -> List[Tuple[int, int]]:
    return [
        (dst.index_of(src.labels[i]), dst.index_of(src.labels[j]))
        for i, j in edges
    ]


def _check_peo(g: Graph, peo: Tuple[int, ...]) -> bool:
    if sorted(peo) != list(range(g.n)):
        return False
    remaining = g.vertex_mask
    for v in peo:
        nb = g.adj[v] & remaining
        for u in bits(nb):
            if nb & ~g.adj[u] & ~(1 << u):
                return False
        remaining &= ~(1 << v)
    return True


def check_certificate(cert: BoundCertificate, g: Graph) -> None:
    """Audit a certificate against the graph it claims to bound.

    Re-derives every child graph from the parent and the node's stated
    inputs, verifies leaf evidence, and confirms each node's max-formula.
    Raises ValueError on the first discrepancy.
    """
    step = cert.step
    if isinstance(step, CompleteBase):
        if step.n != g.n:
            raise ValueError(f"CompleteBase n={step.n} but graph has {g.n}")
        if not is_complete(g):
            raise ValueError("CompleteBase on a non-complete graph")
        if cert.bound != 1:
            raise ValueError("CompleteBase bound must be 1")
    elif isinstance(step, ChordalBase):
        if not _check_peo(g, step.peo):
            raise ValueError("ChordalBase ordering is not a valid elimination order")
        if cert.bound != 2:
            raise ValueError("ChordalBase bound must be 2")
    elif isinstance(step, ExactLeaf):
        if cert.bound != step.value:
            raise ValueError("ExactLeaf bound differs from its value")
    elif isinstance(step, VertexDecomp):
        if not 0 <= step.v < g.n:
            raise ValueError(f"vertex {step.v} out of range")
        check_certificate(step.deletion, delete_vertex(g, step.v))
        check_certificate(step.neighborhood, open_neighborhood(g, step.v))
        want = max(step.deletion.bound, step.neighborhood.bound + 1)
        if cert.bound != want:
            raise ValueError(f"VertexDecomp bound {cert.bound} != {want}")
    elif isinstance(step, Separator):
        if step.t & ~g.vertex_mask:
            raise ValueError("separator outside the graph")
        comps = _components_avoiding(g, step.t)
        if [comp for comp, _ in step.parts] != comps:
            raise ValueError("separator parts do not match the components")
        if len(comps) < 2:
            raise ValueError("separator does not disconnect the graph")
        check_certificate(step.t_cert, induced_subgraph(g, step.t))
        for comp, part in step.parts:
            check_certificate(part, induced_subgraph(g, comp | step.t))
        want = max(
            [part.bound for _, part in step.parts] + [step.t_cert.bound + 1]
        )
        if cert.bound != want:
            raise ValueError(f"Separator bound {cert.bound} != {want}")
    elif isinstance(step, EdgeDecomp):
        closure = m_closure(g, [step.e])
        check_certificate(step.deletion, delete_edges(g, [step.e]))
        cm = delete_edges(closure, _map_edges_by_label(g, closure, [step.e]))
        check_certificate(step.closure_minus, cm)
        want = max(step.deletion.bound, step.closure_minus.bound + 1)
        if cert.bound != want:
            raise ValueError(f"EdgeDecomp bound {cert.bound} != {want}")
    elif isinstance(step, SubgraphDecomp):
        closure = m_closure(g, step.m)
        check_certificate(step.minus, delete_edges(g, step.m))
        check_certificate(step.closure, closure)
        cm = delete_edges(closure, _map_edges_by_label(g, closure, step.m))
        check_certificate(step.closure_minus, cm)
        want = max(
            step.minus.bound,
            step.closure.bound,
            step.closure_minus.bound + 1,
        )
        if cert.bound != want:
            raise ValueError(f"SubgraphDecomp bound {cert.bound} != {want}")
    elif isinstance(step, CliqueCover):
        _check_cover(g, step.g1, step.g2)
        want = max(
            step.g1_cert.bound,
            step.g2_cert.bound,
            step.intersection_cert.bound + 1,
        )
        if cert.bound != want:
            raise ValueError(f"CliqueCover bound {cert.bound} != {want}")
    elif isinstance(step, ClosedForm):
        inputs = dict(step.inputs)
        if "n" in inputs and inputs["n"] != g.n:
            raise ValueError("closed form n differs from the graph")
        if step.formula == "genus":
            check_genus_claim(g, inputs["genus"])
        if step.formula == "n2p_log":
            p = n2p_parameter(g)
            if p < inputs["p"]:
                raise ValueError(
                    f"graph has a hole of length {p + 3} < {inputs['p'] + 3}"
                )
        if cert.bound != _closed_form_value(step.formula, inputs):
            raise ValueError("closed form bound does not recompute")
    else:
        raise TypeError(f"unknown certificate node {step!r}")
    if replay(cert) != cert.bound:
        raise ValueError("replayed bound differs from stored bound")


# ---------------------------------------------------------------------------
# JSON serialization


def certificate_to_json(cert: BoundCertificate) -> dict:
    """Plain-dict form of a certificate (vertex sets as sorted index lists)."""
    step = cert.step
    out = {"tag": step.TAG, "bound": cert.bound}
    if isinstance(step, CompleteBase):
        out["n"] = step.n
    elif isinstance(step, ChordalBase):
        out["peo"] = list(step.peo)
    elif isinstance(step, ExactLeaf):
        out["value"] = step.value
        out["note"] = step.note
    elif isinstance(step, VertexDecomp):
        out["vertex"] = step.v
        out["deletion"] = certificate_to_json(step.deletion)
        out["neighborhood"] = certificate_to_json(step.neighborhood)
    elif isinstance(step, Separator):
        out["separator"] = list(bits(step.t))
        out["separator_cert"] = certificate_to_json(step.t_cert)
        out["parts"] = [
            {"component": list(bits(comp)), "cert": certificate_to_json(part)}
            for comp, part in step.parts
        ]
    elif isinstance(step, EdgeDecomp):
        out["edge"] = list(step.e)
        out["deletion"] = certificate_to_json(step.deletion)
        out["closure_minus"] = certificate_to_json(step.closure_minus)
    elif isinstance(step, SubgraphDecomp):
        out["m"] = [list(e) for e in step.m]
        out["minus"] = certificate_to_json(step.minus)
        out["closure"] = certificate_to_json(step.closure)
        out["closure_minus"] = certificate_to_json(step.closure_minus)
    elif isinstance(step, CliqueCover):
        out["g1"] = {"labels": list(step.g1.labels), "graph6": graph6_encode(step.g1)}
        out["g2"] = {"labels": list(step.g2.labels), "graph6": graph6_encode(step.g2)}
        out["g1_cert"] = certificate_to_json(step.g1_cert)
        out["g2_cert"] = certificate_to_json(step.g2_cert)
        out["intersection_cert"] = certificate_to_json(step.intersection_cert)
    elif isinstance(step, ClosedForm):
        out["formula"] = step.formula
        out["inputs"] = dict(step.inputs)
    else:
        raise TypeError(f"unknown certificate node {step!r}")
    return out


# ---------------------------------------------------------------------------
# the recursive vertex-decomposition engine

# exact-signature cache: (strategy, signature) -> certificate
_EXACT_MEMO: Dict[tuple, BoundCertificate] = {}
# canonical cache: (strategy, canonical key) -> (certificate, graph, perm)
_CANON_MEMO: Dict[tuple, tuple] = {}


def clear_caches() -> None:
    _EXACT_MEMO.clear()
    _CANON_MEMO.clear()


def cache_sizes() -> Dict[str, int]:
    return {"exact": len(_EXACT_MEMO), "canonical": len(_CANON_MEMO)}


class _EngineState:
    __slots__ = ("expansions", "budget")

    def __init__(self, budget: int):
        self.expansions = 0
        self.budget = budget


def _pick_vertex(g: Graph, strategy: Strategy) -> int:
    if strategy is Strategy.CHORDAL_NEIGHBORHOOD_FIRST:
        v = chordal_neighborhood_vertex(g)
        if v is not None:
            return v
    return min_degree_vertex(g)


def _relabel(cert: BoundCertificate, h: Graph, g: Graph,
             mapping: List[int]) -> BoundCertificate:
    """Translate a certificate for h into one for g via mapping[h_v] = g_v.

    Only engine-produced nodes occur in the canonical cache, so only those
    three tags need translation.  Child index spaces are re-derived on both
    sides because subgraph construction reindexes vertices.
    """
    step = cert.step
    if isinstance(step, CompleteBase):
        return cert
    if isinstance(step, ChordalBase):
        return BoundCertificate(
            cert.bound, ChordalBase(tuple(mapping[v] for v in step.peo))
        )
    if not isinstance(step, VertexDecomp):
        raise TypeError(f"cannot relabel certificate node {step!r}")
    v_h = step.v
    v_g = mapping[v_h]

    keep_h = [u for u in range(h.n) if u != v_h]
    pos_g = {w: b for b, w in enumerate(sorted(mapping[u] for u in keep_h))}
    del_map = [pos_g[mapping[u]] for u in keep_h]
    deletion = _relabel(
        step.deletion, delete_vertex(h, v_h), delete_vertex(g, v_g), del_map
    )

    nb_h = list(bits(h.adj[v_h]))
    pos_n = {w: b for b, w in enumerate(sorted(mapping[u] for u in nb_h))}
    nb_map = [pos_n[mapping[u]] for u in nb_h]
    neighborhood = _relabel(
        step.neighborhood,
        open_neighborhood(h, v_h),
        open_neighborhood(g, v_g),
        nb_map,
    )
    return BoundCertificate(
        cert.bound, VertexDecomp(v_g, deletion, neighborhood)
    )


def _engine(g: Graph, strategy: Strategy, state: _EngineState) -> BoundCertificate:
    if is_complete(g):
        return BoundCertificate(1, CompleteBase(g.n))
    peo = perfect_elimination_ordering(g)
    if peo is not None:
        return BoundCertificate(2, ChordalBase(tuple(peo)))

    skey = (strategy.value, g.signature)
    hit = _EXACT_MEMO.get(skey)
    if hit is not None:
        return hit
    key, perm = canonical_form(g)
    ckey = (strategy.value, key)
    stored = _CANON_MEMO.get(ckey)
    if stored is not None:
        cert_h, h, perm_h = stored
        inv = [0] * g.n
        for v in range(g.n):
            inv[perm[v]] = v
        mapping = [inv[perm_h[u]] for u in range(g.n)]
        cert = _relabel(cert_h, h, g, mapping)
        _EXACT_MEMO[skey] = cert
        return cert

    state.expansions += 1
    if state.expansions > state.budget:
        raise CapExceeded(
            f"decomposition budget of {state.budget} expansions exceeded"
        )
    v = _pick_vertex(g, strategy)
    deletion = _engine(delete_vertex(g, v), strategy, state)
    neighborhood = _engine(open_neighborhood(g, v), strategy, state)
    cert = BoundCertificate(
        max(deletion.bound, neighborhood.bound + 1),
        VertexDecomp(v, deletion, neighborhood),
    )
    _EXACT_MEMO[skey] = cert
    _CANON_MEMO[ckey] = (cert, g, perm)
    return cert


def vertex_bound(g: Graph, strategy: Strategy = DEFAULT_STRATEGY,
                 budget: int = DEFAULT_ENGINE_BUDGET) -> BoundCertificate:
    """Recursive bound via max(reg(G - v), reg(N(v)) + 1).

    Base cases: complete graphs are 1, chordal graphs 2.  Otherwise the
    strategy picks v (a vertex with chordal neighborhood when available under
    the default) and both children recurse.  Results are memoized up to
    isomorphism; `budget` caps the number of expanded nodes.
    """
    return _engine(g, strategy, _EngineState(budget))


# ---------------------------------------------------------------------------
# decompositions around an explicit split


def _components_avoiding(g: Graph, t_mask: int) -> List[int]:
    """Component masks of g - t_mask, in g's indexing, smallest member first."""
    rest = g.vertex_mask & ~t_mask
    comps = []
    todo = rest
    while todo:
        comp = todo & -todo
        frontier = comp
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= g.adj[v]
            frontier = grow & rest & ~comp
            comp |= frontier
        comps.append(comp)
        todo &= ~comp
    return comps


def separator_bound(g: Graph, t: VertexSet,
                    strategy: Strategy = DEFAULT_STRATEGY,
                    budget: int = DEFAULT_ENGINE_BUDGET) -> BoundCertificate:
    """Bound through a separating vertex set t (t = empty set allowed).

    Each component C of G - t contributes reg(G[C + t]); the separator
    itself contributes reg(G[t]) + 1, with reg of the empty graph taken
    to be 1.  Raises ValueError when G - t is connected.
    """
    t_mask = t if isinstance(t, int) else mask_of(t)
    if t_mask & ~g.vertex_mask:
        raise ValueError("separator contains vertices outside the graph")
    comps = _components_avoiding(g, t_mask)
    if len(comps) < 2:
        raise ValueError("the given set does not separate the graph")
    state = _EngineState(budget)
    parts = tuple(
        (comp, _engine(induced_subgraph(g, comp | t_mask), strategy, state))
        for comp in comps
    )
    t_cert = _engine(induced_subgraph(g, t_mask), strategy, state)
    bound = max([part.bound for _, part in parts] + [t_cert.bound + 1])
    return BoundCertificate(bound, Separator(t_mask, t_cert, parts))


def subgraph_m_bound(g: Graph, m, strategy: Strategy = DEFAULT_STRATEGY,
                     budget: int = DEFAULT_ENGINE_BUDGET) -> BoundCertificate:
    """Bound through an edge subset M: G - M, the closure G_M, and G_M - M.

    G_M is the induced subgraph on M's endpoints and their common neighbors;
    the three terms are engine bounds on G - M, G_M, and G_M - M (+1).
    """
    pairs = tuple(
        sorted((i, j) if i < j else (j, i) for i, j in m)
    )
    state = _EngineState(budget)
    minus = _engine(delete_edges(g, pairs), strategy, state)
    closure_graph = m_closure(g, pairs)
    closure = _engine(closure_graph, strategy, state)
    cm = delete_edges(closure_graph, _map_edges_by_label(g, closure_graph, pairs))
    closure_minus = _engine(cm, strategy, state)
    bound = max(minus.bound, closure.bound, closure_minus.bound + 1)
    return BoundCertificate(
        bound, SubgraphDecomp(pairs, minus, closure, closure_minus)
    )


def edge_bound(g: Graph, e, strategy: Strategy = DEFAULT_STRATEGY,
               budget: int = DEFAULT_ENGINE_BUDGET) -> BoundCertificate:
    """Single-edge bound: max(reg(G - e), reg(G_e - e) + 1)."""
    i, j = e
    if i > j:
        i, j = j, i
    state = _EngineState(budget)
    deletion = _engine(delete_edges(g, [(i, j)]), strategy, state)
    closure_graph = m_closure(g, [(i, j)])
    cm = delete_edges(
        closure_graph, _map_edges_by_label(g, closure_graph, [(i, j)])
    )
    closure_minus = _engine(cm, strategy, state)
    bound = max(deletion.bound, closure_minus.bound + 1)
    return BoundCertificate(bound, EdgeDecomp((i, j), deletion, closure_minus))


# ---------------------------------------------------------------------------
# clique covers


def _require_subgraph(g: Graph, h: Graph, name: str) -> None:
    idx = {}
    for k, lbl in enumerate(h.labels):
        idx[k] = g.index_of(lbl)
    for a, b in h.edges():
        if not g.has_edge(idx[a], idx[b]):
            raise ValueError(
                f"{name} has edge ({h.labels[a]}, {h.labels[b]}) missing from g"
            )


def _clique_checker(h: Graph) -> Callable[[Tuple[str, ...]], bool]:
    lookup = {lbl: i for i, lbl in enumerate(h.labels)}

    def covered(labels: Tuple[str, ...]) -> bool:
        try:
            idx = [lookup[x] for x in labels]
        except KeyError:
            return False
        return all(
            h.has_edge(a, b) for k, a in enumerate(idx) for b in idx[k + 1:]
        )

    return covered


def _check_cover(g: Graph, g1: Graph, g2: Graph,
                 face_cap: int = DEFAULT_FACE_CAP) -> None:
    _require_subgraph(g, g1, "g1")
    _require_subgraph(g, g2, "g2")
    in1 = _clique_checker(g1)
    in2 = _clique_checker(g2)
    for dim_faces in clique_complex(g, face_cap).faces:
        for face in dim_faces:
            labels = tuple(g.labels[v] for v in face)
            if not in1(labels) and not in2(labels):
                raise CoverError(labels)


def clique_cover_bound(g: Graph, g1: Graph, g2: Graph, reg1: int, reg2: int,
                       reg12: int,
                       face_cap: int = DEFAULT_FACE_CAP) -> BoundCertificate:
    """Bound from two subgraphs that jointly cover every clique of g.

    g1 and g2 are identified with parts of g by vertex label; every clique
    of g (enumerated exhaustively) must be a clique of g1 or of g2, else
    CoverError reports a witness.  The piece regularities reg1, reg2 and the
    intersection regularity reg12 are supplied by the caller and recorded as
    ExactLeaf evidence; bound = max(reg1, reg2, reg12 + 1).
    """
    _check_cover(g, g1, g2, face_cap)
    step = CliqueCover(
        g1,
        g2,
        BoundCertificate(reg1, ExactLeaf(reg1, "supplied reg(g1)")),
        BoundCertificate(reg2, ExactLeaf(reg2, "supplied reg(g2)")),
        BoundCertificate(reg12, ExactLeaf(reg12, "supplied reg(g1 cap g2)")),
    )
    return BoundCertificate(max(reg1, reg2, reg12 + 1), step)


# ---------------------------------------------------------------------------
# hereditary separator induction

SeparatorFinder = Callable[[Graph], Optional[Tuple[int, BoundCertificate]]]


def simplicial_separator(h: Graph) -> Optional[Tuple[int, BoundCertificate]]:
    """N(v) for the first non-dominating simplicial vertex v (reg 1 part)."""
    full = h.vertex_mask
    for v in range(h.n):
        nb = h.adj[v]
        if nb | (1 << v) == full:
            continue
        if all(nb & ~h.adj[u] & ~(1 << u) == 0 for u in bits(nb)):
            return nb, vertex_bound(induced_subgraph(h, nb))
    return None


def chordal_neighborhood_separator(h: Graph) -> Optional[Tuple[int, BoundCertificate]]:
    """N(v) for the first non-dominating v with chordal neighborhood (reg <= 2)."""
    full = h.vertex_mask
    for v in range(h.n):
        nb = h.adj[v]
        if nb | (1 << v) == full:
            continue
        if is_chordal(induced_subgraph(h, nb)):
            return nb, vertex_bound(induced_subgraph(h, nb))
    return None


def hereditary_bound(g: Graph, separator_finder: SeparatorFinder,
                     t: int) -> Optional[BoundCertificate]:
    """Nested separator induction: bound t + 1 when the finder never fails.

    The finder must return, for any non-complete induced subgraph reached, a
    separating vertex set with a certificate of regularity at most t (or
    None to give up, which propagates as a None result).  A vertex whose open
    neighborhood separates always exists for the built-in finders because
    dominating candidates are skipped.
    """
    if t < 1:
        raise ValueError("t must be at least 1 (regularity is never smaller)")

    def rec(h: Graph) -> Optional[BoundCertificate]:
        if is_complete(h):
            return BoundCertificate(1, CompleteBase(h.n))
        found = separator_finder(h)
        if found is None:
            return None
        t_set, t_cert = found
        t_mask = t_set if isinstance(t_set, int) else mask_of(t_set)
        if t_mask & ~h.vertex_mask:
            raise ValueError("finder returned vertices outside the graph")
        if t_cert.bound > t:
            raise ValueError(
                f"finder certificate bound {t_cert.bound} exceeds limit {t}"
            )
        check_certificate(t_cert, induced_subgraph(h, t_mask))
        comps = _components_avoiding(h, t_mask)
        if len(comps) < 2:
            raise ValueError("finder returned a non-separating set")
        parts = []
        for comp in comps:
            part = rec(induced_subgraph(h, comp | t_mask))
            if part is None:
                return None
            parts.append((comp, part))
        bound = max([part.bound for _, part in parts] + [t_cert.bound + 1])
        return BoundCertificate(bound, Separator(t_mask, t_cert, tuple(parts)))

    return rec(g)


# ---------------------------------------------------------------------------
# complement-of-bipartite chain


def bipartite_complement_bound(g: Graph,
                               strategy: Strategy = DEFAULT_STRATEGY
                               ) -> Optional[BoundCertificate]:
    """Edge-deletion chain through bisimplicial edges of the bipartite part.

    Applies when the complement of g is bipartite and the part between the
    two cliques is chordal bipartite: repeatedly deleting a bisimplicial
    edge of the part reaches the disjoint union of two cliques, and every
    closure term stays chordal, so the chain certifies at most 3.  Returns
    None when the structure is absent.
    """
    struct = bipartite_complement_structure(g)
    if struct is None:
        return None
    b = struct.bipartite_part
    if not is_chordal_bipartite(b):
        return None
    return _bisimplicial_chain(g, b, strategy)


def _bisimplicial_chain(g: Graph, b: Graph,
                        strategy: Strategy) -> BoundCertificate:
    if b.edge_count() == 0 or is_chordal(g):
        # hole-free already: the engine base case certifies 2 (or 1)
        return vertex_bound(g, strategy)
    e = find_bisimplicial_edge(b)
    if e is None:
        # not reachable for chordal bipartite parts; stay sound regardless
        return vertex_bound(g, strategy)
    deletion = _bisimplicial_chain(
        delete_edges(g, [e]), delete_edges(b, [e]), strategy
    )
    closure_graph = m_closure(g, [e])
    cm = delete_edges(closure_graph, _map_edges_by_label(g, closure_graph, [e]))
    closure_minus = vertex_bound(cm, strategy)
    bound = max(deletion.bound, closure_minus.bound + 1)
    return BoundCertificate(bound, EdgeDecomp(e, deletion, closure_minus))


# ---------------------------------------------------------------------------
# closed forms


def nvertex_bound(n: int) -> int:
    """Regularity is at most floor(n/2) + 1 on n vertices."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    return n // 2 + 1


def genus_bound(g_genus: int) -> int:
    """floor(1 + sqrt(1 + 3g)) + 2 for a graph embeddable in genus g."""
    if g_genus < 0:
        raise ValueError("genus must be nonnegative")
    return math.isqrt(1 + 3 * g_genus) + 3


def check_genus_claim(g: Graph, g_genus: int) -> None:
    """Reject genus claims that violate the Euler edge count bound.

    A simple graph on n >= 3 vertices embeddable in an orientable surface of
    genus g has at most 3n - 6 + 6g edges.  This is a necessary condition
    only; passing it does not prove embeddability.
    """
    if g_genus < 0:
        raise ValueError("genus must be nonnegative")
    if g.n >= 3 and g.edge_count() > 3 * g.n - 6 + 6 * g_genus:
        raise ValueError(
            f"genus {g_genus} impossible: {g.edge_count()} edges exceed "
            f"{3 * g.n - 6 + 6 * g_genus}"
        )


def _floor_log(base: Fraction, x: Fraction) -> int:
    """Largest k (possibly negative) with base**k <= x, exactly."""
    if base <= 1:
        raise ValueError("base must exceed 1")
    if x <= 0:
        raise ValueError("argument must be positive")
    k = 0
    power = Fraction(1)
    if x >= 1:
        while power * base <= x:
            power *= base
            k += 1
    else:
        while power > x:
            power /= base
            k -= 1
    return k


@dataclass(frozen=True)
class N2pLogBounds:
    """Floored logarithmic bounds for graphs whose holes all exceed p + 2.

    term1 and term2 are the two current bounds, prior the earlier
    single-term bound (None when its argument degenerates at n = 1); the
    *_value fields are float renderings of the unfloored expressions.
    """

    term1: int
    term2: int
    prior: Optional[int]
    best: int
    term1_value: float
    term2_value: float
    prior_value: Optional[float]


def n2p_log_bounds(n: int, p: int) -> N2pLogBounds:
    """Evaluate the logarithmic regularity bounds exactly, then floor.

    Floors are computed with rational arithmetic (largest integer power of
    the rational base below the argument), never floating point; the float
    fields are for display only.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    if n < 1:
        raise ValueError("n must be at least 1")
    arg1 = Fraction(n * (p + 1), p * (p + 3))
    arg2 = Fraction(n * (p + 2), (p + 1) * (p + 4))
    term1 = _floor_log(Fraction(p + 3, 2), arg1) + 3
    term2 = _floor_log(Fraction(p + 4, 2), arg2) + 4
    t1v = math.log(arg1, (p + 3) / 2) + 3
    t2v = math.log(arg2, (p + 4) / 2) + 4
    if n == 1:
        prior = None
        pv = None
    else:
        prior = _floor_log(Fraction(p + 3, 2), Fraction(n - 1, p)) + 3
        pv = math.log((n - 1) / p, (p + 3) / 2) + 3
    return N2pLogBounds(term1, term2, prior, min(term1, term2), t1v, t2v, pv)


def best_n2p_bound(n: int, p: int) -> int:
    """Smallest log bound over all admissible hole parameters 2..p.

    A graph whose smallest hole has length p + 3 satisfies the hypothesis
    for every i <= p, so the minimum over those i is sound.
    """
    return min(n2p_log_bounds(n, i).best for i in range(2, p + 1))


# ---------------------------------------------------------------------------
# the full report


@dataclass
class TheoremReport:
    name: str
    applicable: bool
    detail: str
    certificate: Optional[BoundCertificate] = None
    exact_claim: Optional[int] = None

    @property
    def bound(self) -> Optional[int]:
        return self.certificate.bound if self.certificate else None


@dataclass
class AnalysisReport:
    graph6: str
    n: int
    edge_count: int
    recognizers: dict
    theorems: List[TheoremReport]
    best_bound: int
    best_theorem: str
    best_certificate: BoundCertificate
    exact: Optional[RegularityResult]


def analyze(g: Graph, genus: Optional[int] = None,
            strategy: Strategy = DEFAULT_STRATEGY,
            cap: int = DEFAULT_EXACT_CAP,
            budget: int = DEFAULT_ENGINE_BUDGET) -> AnalysisReport:
    """Run every recognizer, apply every applicable theorem, report the best.

    Inapplicable theorems are recorded with the failed hypothesis rather
    than dropped.  The exact value is included whenever n <= cap; a supplied
    genus claim is validated against the Euler edge bound first.
    """
    holes = hole_report(g)
    chordal = holes.smallest is None
    p = n2p_parameter(g)
    p_finite = p if p != math.inf else None
    perfect = is_perfect(g) if g.n <= DEFAULT_RECOGNIZER_CAP else None
    struct = bipartite_complement_structure(g)
    part_cb = (
        is_chordal_bipartite(struct.bipartite_part)
        if struct is not None
        else None
    )
    recognizers = {
        "chordal": chordal,
        "smallest_hole": holes.smallest,
        "hole_lengths": list(holes.lengths_found),
        "n2p": p_finite,
        "even_hole_free": holes.even_free,
        "perfect": perfect,
        "complement_bipartite": struct is not None,
        "chordal_bipartite_part": part_cb,
    }

    theorems: List[TheoremReport] = []

    engine_cert = vertex_bound(g, strategy, budget)
    theorems.append(
        TheoremReport(
            "engine",
            True,
            f"vertex decomposition, strategy {strategy.value}",
            engine_cert,
        )
    )

    if chordal:
        theorems.append(
            TheoremReport(
                "chordal", True, "perfect elimination ordering found",
                engine_cert,
            )
        )
    else:
        theorems.append(
            TheoremReport(
                "chordal", False,
                f"graph has a hole of length {holes.smallest}",
            )
        )

    def hereditary_entry(name: str, ok: bool, why: str) -> None:
        if not ok:
            theorems.append(TheoremReport(name, False, why))
            return
        cert = hereditary_bound(g, chordal_neighborhood_separator, 2)
        if cert is None:
            cert = vertex_bound(g, Strategy.CHORDAL_NEIGHBORHOOD_FIRST, budget)
            detail = why + " (separator finder failed; engine bound instead)"
        else:
            detail = why
        theorems.append(TheoremReport(name, True, detail, cert))

    if perfect is None:
        theorems.append(
            TheoremReport(
                "perfect_no_c4", False,
                f"perfection not tested beyond {DEFAULT_RECOGNIZER_CAP} vertices",
            )
        )
    else:
        ok = perfect and 4 not in holes.lengths_found
        why = (
            "perfect with no four-hole"
            if ok
            else ("graph has a four-hole" if 4 in holes.lengths_found
                  else "graph is not perfect")
        )
        hereditary_entry("perfect_no_c4", ok, why)

    hereditary_entry(
        "even_hole_free",
        holes.even_free,
        "no even hole" if holes.even_free else "graph has an even hole",
    )

    if p >= 2:
        if contains_fan(g, 2):
            theorems.append(
                TheoremReport("two_fan", False, "graph contains a two-fan")
            )
        else:
            hereditary_entry("two_fan", True, "no four-hole and no two-fan")
    else:
        theorems.append(TheoremReport("two_fan", False, "graph has a four-hole"))

    if p_finite is None:
        theorems.append(
            TheoremReport("l_fan", False, "no hole to set the fan length")
        )
    elif p_finite < 2:
        theorems.append(TheoremReport("l_fan", False, "graph has a four-hole"))
    elif contains_fan(g, p_finite):
        theorems.append(
            TheoremReport(
                "l_fan", False, f"graph contains a fan of length {p_finite}"
            )
        )
    else:
        hereditary_entry(
            "l_fan", True,
            f"holes start at length {p_finite + 3}; no fan of length {p_finite}",
        )

    if struct is None:
        theorems.append(
            TheoremReport(
                "bipartite_complement", False, "complement is not bipartite"
            )
        )
    elif not part_cb:
        theorems.append(
            TheoremReport(
                "bipartite_complement", False,
                "bipartite part has an induced cycle of length at least six "
                "(regularity is then at least 4)",
            )
        )
    elif chordal:
        theorems.append(
            TheoremReport(
                "bipartite_complement", False,
                "no hole; the chordal bound is stronger",
            )
        )
    else:
        cert = bipartite_complement_bound(g, strategy)
        theorems.append(
            TheoremReport(
                "bipartite_complement", True,
                "chordal bipartite part and a hole: exact regularity 3",
                cert,
                exact_claim=3,
            )
        )

    theorems.append(
        TheoremReport(
            "nvertex", True, "vertex count bound",
            BoundCertificate(
                nvertex_bound(g.n), ClosedForm("nvertex", (("n", g.n),))
            ),
        )
    )

    if genus is None:
        theorems.append(
            TheoremReport("genus", False, "no genus supplied")
        )
    else:
        check_genus_claim(g, genus)
        theorems.append(
            TheoremReport(
                "genus", True, f"declared genus {genus}",
                BoundCertificate(
                    genus_bound(genus), ClosedForm("genus", (("genus", genus),))
                ),
            )
        )

    if p_finite is not None and p_finite >= 2:
        theorems.append(
            TheoremReport(
                "n2p_log", True,
                f"holes start at length {p_finite + 3}",
                BoundCertificate(
                    best_n2p_bound(g.n, p_finite),
                    ClosedForm("n2p_log", (("n", g.n), ("p", p_finite))),
                ),
            )
        )
    else:
        theorems.append(
            TheoremReport(
                "n2p_log", False,
                "chordal" if p_finite is None else "graph has a four-hole",
            )
        )

    best = None
    for entry in theorems:
        if entry.certificate is None:
            continue
        if best is None or entry.certificate.bound < best.certificate.bound:
            best = entry

    exact = regularity_exact(g, cap) if g.n <= cap else None
    if exact is not None and exact.value > best.certificate.bound:
        raise AssertionError(
            f"soundness violation: exact {exact.value} exceeds certified "
            f"bound {best.certificate.bound}"
        )

    return AnalysisReport(
        graph6=graph6_encode(g),
        n=g.n,
        edge_count=g.edge_count(),
        recognizers=recognizers,
        theorems=theorems,
        best_bound=best.certificate.bound,
        best_theorem=best.name,
        best_certificate=best.certificate,
        exact=exact,
    )
