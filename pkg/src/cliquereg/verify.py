"""Verification suites: oracle-equivalence and invariant checks at desk scale.

Each suite returns a SuiteResult summarizing what was checked and listing
counterexamples (graph6 plus a reason) when something fails.  The command
line front end runs these on demand; the acceptance tests run them at their
full documented sizes.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional

from .graph import (
    Graph,
    bits,
    closed_neighborhood,
    connected_components,
    delete_vertex,
    induced_subgraph,
    is_complete,
    open_neighborhood,
)
from .hochster import (
    betti_table,
    regularity_exact,
    regularity_lower_bound_witness,
    trim,
)
from .homology import clique_complex, reduced_homology
from .recognizers import (
    contains_fan,
    hole_report,
    is_chordal,
    is_chordal_bipartite,
    is_even_hole_free,
    is_perfect,
    n2p_parameter,
    bipartite_complement_structure,
)
from .bounds import (
    analyze,
    edge_bound,
    n2p_log_bounds,
    genus_bound,
    nvertex_bound,
    separator_bound,
    vertex_bound,
    Strategy,
)
from .families import (
    SplitMix64,
    complete,
    cycle,
    genus_k_m2,
    graph6_decode,
    graph6_encode,
    kn2,
    random_chordal,
    random_gnp,
    random_bipartite_complement,
)

MAX_RECORDED_FAILURES = 40


@dataclass
class SuiteResult:
    suite: str
    passed: bool
    checked: int
    failures: List[str]
    failure_count: int
    params: Dict = field(default_factory=dict)

    def summary(self) -> str:
        state = "pass" if self.passed else "FAIL"
        msg = f"{self.suite}: {state} ({self.checked} checks"
        if self.failure_count:
            msg += f", {self.failure_count} failures"
        msg += ")"
        if self.failures:
            msg += f"; first: {self.failures[0]}"
        return msg


class _Recorder:
    def __init__(self):
        self.checked = 0
        self.failures: List[str] = []
        self.failure_count = 0

    def check(self, ok: bool, detail: str) -> None:
        self.checked += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_RECORDED_FAILURES:
                self.failures.append(detail)

    def result(self, suite: str, params: Dict) -> SuiteResult:
        return SuiteResult(
            suite,
            self.failure_count == 0,
            self.checked,
            self.failures,
            self.failure_count,
            params,
        )


def labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on exactly n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for word in range(1 << len(pairs)):
        yield Graph(n, [pairs[k] for k in range(len(pairs)) if word >> k & 1])


def corpus(nmax: int) -> Iterator[Graph]:
    for n in range(nmax + 1):
        yield from labeled_graphs(n)


def _disjoint_union(g1: Graph, g2: Graph) -> Graph:
    edges = g1.edges() + [(g1.n + i, g1.n + j) for i, j in g2.edges()]
    return Graph(g1.n + g2.n, edges)


# ---------------------------------------------------------------------------
# suites


def suite_kn2(mmax: int = 5) -> SuiteResult:
    rec = _Recorder()
    for m in range(2, mmax + 1):
        g = kn2(m)
        value = regularity_exact(g).value
        rec.check(
            value == m + 1,
            f"{graph6_encode(g)}: K_{{{m}(2)}} regularity {value}, want {m + 1}",
        )
    return rec.result("kn2", {"mmax": mmax})


def suite_chordal(nmax: int = 6) -> SuiteResult:
    """reg <= 2 iff chordal and reg >= 3 iff a hole exists, exhaustively."""
    rec = _Recorder()
    for g in corpus(nmax):
        value = regularity_exact(g).value
        chordal = is_chordal(g)
        holed = hole_report(g).smallest is not None
        g6 = None
        if (value <= 2) != chordal or (value >= 3) != holed:
            g6 = graph6_encode(g)
        rec.check(
            (value <= 2) == chordal,
            f"{g6}: regularity {value} vs chordal={chordal}",
        )
        rec.check(
            (value >= 3) == holed,
            f"{g6}: regularity {value} vs hole={holed}",
        )
    return rec.result("chordal", {"nmax": nmax})


def _find_separator(g: Graph) -> Optional[int]:
    """Some separating vertex set: empty for disconnected graphs, else the
    open neighborhood of the first non-dominating vertex."""
    if len(connected_components(g)) > 1:
        return 0
    full = g.vertex_mask
    for v in range(g.n):
        if g.adj[v] | (1 << v) != full:
            return g.adj[v]
    return None  # complete graphs have no separator


def _soundness_check(args) -> List[str]:
    g6, edge_seed = args
    g = graph6_decode(g6)
    bad = []
    exact = regularity_exact(g).value
    for strategy in Strategy:
        cert = vertex_bound(g, strategy)
        if cert.bound < exact:
            bad.append(f"{g6}: vertex_bound[{strategy.value}] {cert.bound} < {exact}")
    edges = g.edges()
    if edges:
        rng = SplitMix64(edge_seed)
        e = edges[rng.below(len(edges))]
        cert = edge_bound(g, e)
        if cert.bound < exact:
            bad.append(f"{g6}: edge_bound{e} {cert.bound} < {exact}")
    t = _find_separator(g)
    if t is not None:
        cert = separator_bound(g, t)
        if cert.bound < exact:
            bad.append(f"{g6}: separator_bound {cert.bound} < {exact}")
    report = analyze(g)
    if report.best_bound < exact:
        bad.append(f"{g6}: analyze best {report.best_bound} < {exact}")
    for entry in report.theorems:
        if entry.certificate is not None and entry.certificate.bound < exact:
            bad.append(f"{g6}: analyze[{entry.name}] {entry.certificate.bound} < {exact}")
    return bad


def _soundness_instances(nmax: int, samples: int, seed: int):
    for g in corpus(nmax):
        yield graph6_encode(g)
    for idx in range(samples):
        n = 7 + idx % 3
        p = (0.25, 0.4, 0.5, 0.6, 0.75)[idx % 5]
        yield graph6_encode(random_gnp(n, p, seed + idx))


def suite_soundness(nmax: int = 6, samples: int = 1000,
                    seed: int = 20260823, jobs: int = 1) -> SuiteResult:
    """Every certificate bound is >= the oracle value, corpus plus random."""
    rec = _Recorder()
    work = [
        (g6, seed * 1000003 + idx)
        for idx, g6 in enumerate(_soundness_instances(nmax, samples, seed))
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_soundness_check, work, chunksize=256))
    else:
        results = [_soundness_check(item) for item in work]
    for bad in results:
        rec.check(not bad, bad[0] if bad else "")
    return rec.result(
        "soundness",
        {"nmax": nmax, "samples": samples, "seed": seed, "jobs": jobs},
    )


def suite_neighborhood(nmax: int = 6) -> SuiteResult:
    """reg(N[v]) = reg(N(v)) for every vertex of every small graph."""
    rec = _Recorder()
    for g in corpus(nmax):
        for v in range(g.n):
            closed = regularity_exact(closed_neighborhood(g, v)).value
            opened = regularity_exact(open_neighborhood(g, v)).value
            rec.check(
                closed == opened,
                f"{graph6_encode(g)}: vertex {v} closed {closed} != open {opened}",
            )
    return rec.result("neighborhood", {"nmax": nmax})


def _bipartite_complement_graph(nx_: int, ny_: int, cross: List) -> Graph:
    edges = [(i, j) for i in range(nx_) for j in range(i + 1, nx_)]
    edges += [
        (nx_ + i, nx_ + j) for i in range(ny_) for j in range(i + 1, ny_)
    ]
    edges += [(i, nx_ + j) for i, j in cross]
    return Graph(nx_ + ny_, edges)


def _bipartite_case(g: Graph, b: Graph, rec: _Recorder) -> None:
    g6 = graph6_encode(g)
    exact = regularity_exact(g).value
    holed = hole_report(g).smallest is not None
    cb = is_chordal_bipartite(b)
    rec.check(
        (exact == 3) == (holed and cb),
        f"{g6}: exact {exact}, hole={holed}, chordal-bipartite part={cb}",
    )
    if not cb:
        ok = exact >= 4 and regularity_lower_bound_witness(g, 4) is not None
        rec.check(
            ok,
            f"{g6}: part has a long cycle but no degree-2 homology witness "
            f"(exact {exact})",
        )


def suite_bipartite(samples: int = 200, seed: int = 7) -> SuiteResult:
    """Exact regularity 3 iff (hole and chordal bipartite part)."""
    rec = _Recorder()
    for word in range(1 << 9):
        cross = [(i, j) for i in range(3) for j in range(3)
                 if word >> (3 * i + j) & 1]
        g = _bipartite_complement_graph(3, 3, cross)
        b = Graph(6, [(i, 3 + j) for i, j in cross])
        _bipartite_case(g, b, rec)
    for idx in range(samples):
        nx_ = 2 + idx % 3
        ny_ = 2 + (idx // 3) % 3
        p = (0.3, 0.5, 0.7)[idx % 3]
        g = random_bipartite_complement(nx_, ny_, p, seed + idx)
        struct = bipartite_complement_structure(g)
        _bipartite_case(g, struct.bipartite_part, rec)
    return rec.result("bipartite", {"samples": samples, "seed": seed})


def _sample_stream(seed: int) -> Iterator[Graph]:
    """Deterministic mixed stream of small random graphs (n <= 10)."""
    idx = 0
    while True:
        kind = idx % 8
        n = 5 + idx % 5
        p = (0.15, 0.25, 0.35, 0.45)[idx % 4]
        if kind < 4:
            yield random_gnp(n, p, seed + idx)
        elif kind < 6:
            yield random_chordal(n, seed + idx)
        elif kind == 6:
            yield _disjoint_union(
                cycle(5 + idx % 4), random_chordal(3 + idx % 3, seed + idx)
            )
        else:
            yield _disjoint_union(
                cycle(5 + idx % 5), random_gnp(4, 0.3, seed + idx)
            )
        idx += 1


def suite_corollaries(quota: int = 100, seed: int = 1,
                      max_attempts: int = 60000) -> SuiteResult:
    """Hypothesis-filtered instances all have exact regularity at most 3."""
    rec = _Recorder()
    counts = {"even_hole_free": 0, "perfect_no_c4": 0, "two_fan": 0,
              "l_fan": 0}
    stream = _sample_stream(seed)
    for _ in range(max_attempts):
        if all(c >= quota for c in counts.values()):
            break
        g = next(stream)
        if g.n > 10:
            continue
        holes = hole_report(g)
        p = n2p_parameter(g)
        if counts["even_hole_free"] < quota and holes.even_free:
            counts["even_hole_free"] += 1
            value = regularity_exact(g).value
            rec.check(
                value <= 3,
                f"{graph6_encode(g)}: even-hole-free but regularity {value}",
            )
        if (counts["perfect_no_c4"] < quota and 4 not in holes.lengths_found
                and is_perfect(g)):
            counts["perfect_no_c4"] += 1
            value = regularity_exact(g).value
            rec.check(
                value <= 3,
                f"{graph6_encode(g)}: perfect, no 4-hole, regularity {value}",
            )
        if counts["two_fan"] < quota and p >= 2 and not contains_fan(g, 2):
            counts["two_fan"] += 1
            value = regularity_exact(g).value
            rec.check(
                value <= 3,
                f"{graph6_encode(g)}: no 4-hole, no 2-fan, regularity {value}",
            )
        if (counts["l_fan"] < quota and p != math.inf and p >= 2
                and not contains_fan(g, p)):
            counts["l_fan"] += 1
            value = regularity_exact(g).value
            rec.check(
                value <= 3,
                f"{graph6_encode(g)}: holes >= {p + 3}, no {p}-fan, "
                f"regularity {value}",
            )
    for name, got in counts.items():
        rec.check(got >= quota, f"only {got}/{quota} instances for {name}")
    return rec.result(
        "corollaries",
        {"quota": quota, "seed": seed, "found": dict(counts)},
    )


def suite_closedforms(nmax: int = 6) -> SuiteResult:
    rec = _Recorder()
    for m in (2, 3, 4):
        value = regularity_exact(kn2(m)).value
        rec.check(
            nvertex_bound(2 * m) == m + 1 == value,
            f"K_{{{m}(2)}}: nvertex bound {nvertex_bound(2 * m)} vs exact {value}",
        )
    rec.check(genus_bound(0) == 4, f"genus_bound(0) = {genus_bound(0)}")
    for m in (3, 4):
        got = genus_bound(genus_k_m2(m))
        rec.check(got == m + 1, f"genus_bound(genus_k_m2({m})) = {got}")
    c7 = regularity_exact(cycle(7)).value
    best = n2p_log_bounds(7, 4).best
    rec.check(best == 3 == c7, f"n2p_log_bounds(7,4).best = {best}, C_7 = {c7}")
    for g in corpus(nmax):
        value = regularity_exact(g).value
        rec.check(
            nvertex_bound(g.n) >= value,
            f"{graph6_encode(g)}: nvertex bound below exact {value}",
        )
        p = n2p_parameter(g)
        if p != math.inf and p >= 2:
            got = n2p_log_bounds(g.n, p).best
            rec.check(
                got >= value,
                f"{graph6_encode(g)}: log bound {got} < exact {value}",
            )
    for p in range(2, 13):
        for n in range(max(2, math.ceil((p + 3) / 2)), 140):
            r = n2p_log_bounds(n, p)
            rec.check(
                r.term1 <= r.prior,
                f"n={n} p={p}: term1 {r.term1} > prior {r.prior}",
            )
    return rec.result("closedforms", {"nmax": nmax})


def suite_betti(nmax: int = 5) -> SuiteResult:
    rec = _Recorder()
    table = betti_table(cycle(4))
    rec.check(
        table.entries == {(0, 2): 2, (1, 4): 1},
        f"C_4 table {table.entries}",
    )
    for n in range(1, 7):
        table = betti_table(complete(n))
        rec.check(not table.entries, f"K_{n} table {table.entries}")
    # Euler characteristic re-checked on every complex of the small corpus
    for g in corpus(nmax):
        c = clique_complex(g)
        profile = reduced_homology(c)
        euler = sum(
            (-1) ** d * len(faces) for d, faces in enumerate(c.faces)
        ) - 1
        homological = sum(
            (-1) ** d * profile.ranks[d] for d in range(len(profile.ranks))
        )
        if not c.faces:
            homological -= 1  # empty complex: reduced homology in degree -1
        rec.check(
            euler == homological,
            f"{graph6_encode(g)}: euler {euler} != homology sum {homological}",
        )
    return rec.result("betti", {"nmax": nmax})


def suite_trim(samples: int = 100, seed: int = 2) -> SuiteResult:
    rec = _Recorder()
    for idx in range(samples):
        n = 5 + idx % 5
        p = (0.3, 0.5, 0.7)[idx % 3]
        g = random_gnp(n, p, seed + idx)
        g6 = graph6_encode(g)
        t = trim(g)
        r_g = regularity_exact(g).value
        r_t = regularity_exact(t).value
        rec.check(
            r_t == r_g, f"{g6}: trim changed regularity {r_g} -> {r_t}"
        )
        if t.n == 1:
            # only regularity-1 inputs trim to a point; nothing to delete
            rec.check(r_t == 1, f"{g6}: single-vertex trim with regularity {r_t}")
            continue
        for v in range(t.n):
            dropped = regularity_exact(delete_vertex(t, v)).value
            rec.check(
                dropped == r_t - 1,
                f"{g6}: deleting {v} from the trim gives {dropped}, "
                f"want {r_t - 1}",
            )
    return rec.result("trim", {"samples": samples, "seed": seed})


SUITES = {
    "kn2": suite_kn2,
    "chordal": suite_chordal,
    "soundness": suite_soundness,
    "neighborhood": suite_neighborhood,
    "bipartite": suite_bipartite,
    "corollaries": suite_corollaries,
    "closedforms": suite_closedforms,
    "betti": suite_betti,
    "trim": suite_trim,
}
