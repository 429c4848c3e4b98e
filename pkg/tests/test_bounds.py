import itertools
import json
import math
import random

import networkx as nx
import pytest

from cliquereg.graph import Graph, complement, induced_subgraph, is_complete
from cliquereg import bounds as B
from cliquereg.bounds import (
    BoundCertificate,
    ChordalBase,
    ClosedForm,
    CompleteBase,
    CoverError,
    EdgeDecomp,
    ExactLeaf,
    Separator,
    Strategy,
    VertexDecomp,
    analyze,
    bipartite_complement_bound,
    best_n2p_bound,
    check_certificate,
    check_genus_claim,
    chordal_neighborhood_separator,
    clique_cover_bound,
    edge_bound,
    genus_bound,
    hereditary_bound,
    n2p_log_bounds,
    nvertex_bound,
    replay,
    separator_bound,
    simplicial_separator,
    subgraph_m_bound,
    vertex_bound,
)
from cliquereg.canon import canonical_form
from cliquereg.errors import CapExceeded
from cliquereg.families import (
    complete,
    cycle,
    fan,
    genus_k_m2,
    kn2,
    path,
    random_bipartite_complement,
    random_chordal,
    random_gnp,
)
from cliquereg.hochster import regularity_exact
from cliquereg.recognizers import has_hole, is_chordal_bipartite


def all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits_ in range(1 << len(pairs)):
        yield Graph(n, [pairs[k] for k in range(len(pairs)) if bits_ >> k & 1])


def test_canonical_form_detects_isomorphism():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(1, 8)
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.5
        ]
        g = Graph(n, edges)
        perm = list(range(n))
        rng.shuffle(perm)
        h = Graph(n, [(perm[i], perm[j]) for i, j in edges])
        key_g, perm_g = canonical_form(g)
        key_h, _ = canonical_form(h)
        assert key_g == key_h
        # the permutation realizes the key
        inv = [0] * n
        for v in range(n):
            inv[perm_g[v]] = v
        rows = tuple(
            sum(1 << perm_g[u] for u in range(n) if g.has_edge(inv[p], u))
            for p in range(n)
        )
        assert rows == key_g
    # non-isomorphic pairs get distinct keys (path vs star on 4 vertices)
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert canonical_form(path(4))[0] != canonical_form(star)[0]


def test_engine_base_cases():
    for n in range(6):
        cert = vertex_bound(complete(n))
        assert cert.bound == 1
        assert isinstance(cert.step, CompleteBase)
        check_certificate(cert, complete(n))
    for seed in range(5):
        g = random_chordal(8, seed)
        cert = vertex_bound(g)
        assert cert.bound <= 2
        check_certificate(cert, g)
        if not is_complete(g):
            assert isinstance(cert.step, ChordalBase)


def test_engine_c5():
    c5 = cycle(5)
    cert = vertex_bound(c5, Strategy.MIN_DEGREE)
    assert cert.bound == 3
    step = cert.step
    assert isinstance(step, VertexDecomp)
    # deleting any C_5 vertex leaves a path; the neighborhood is two
    # isolated vertices; both are chordal and non-complete
    assert isinstance(step.deletion.step, ChordalBase)
    assert step.deletion.bound == 2
    assert step.neighborhood.bound == 2
    check_certificate(cert, c5)
    assert vertex_bound(c5).bound == 3


def test_engine_kn2_matches_oracle():
    for m in (2, 3, 4):
        g = kn2(m)
        cert = vertex_bound(g)
        assert cert.bound == m + 1 == regularity_exact(g).value
        check_certificate(cert, g)


def test_engine_sound_exhaustive_small():
    for n in range(1, 5):
        for g in all_graphs(n):
            exact = regularity_exact(g).value
            for strategy in Strategy:
                cert = vertex_bound(g, strategy)
                assert cert.bound >= exact
                assert replay(cert) == cert.bound
                check_certificate(cert, g)


def test_engine_memoization_relabels_correctly():
    B.clear_caches()
    rng = random.Random(99)
    base_edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 5)]
    base = Graph(6, base_edges)
    want = vertex_bound(base).bound
    for _ in range(20):
        perm = list(range(6))
        rng.shuffle(perm)
        h = Graph(6, [(perm[i], perm[j]) for i, j in base_edges])
        cert = vertex_bound(h)
        assert cert.bound == want
        check_certificate(cert, h)
    sizes = B.cache_sizes()
    # isomorphs share canonical entries but get their own exact entries
    assert sizes["exact"] > sizes["canonical"]


def test_engine_budget():
    with pytest.raises(CapExceeded):
        vertex_bound(kn2(4), budget=2)


def test_edge_bound_examples():
    c4 = cycle(4)
    cert = edge_bound(c4, (0, 1))
    assert cert.bound == 3 == regularity_exact(c4).value
    assert isinstance(cert.step, EdgeDecomp)
    assert cert.step.deletion.bound == 2  # P_4
    assert cert.step.closure_minus.bound == 2  # two isolated vertices
    check_certificate(cert, c4)

    k3 = complete(3)
    cert = edge_bound(k3, (1, 0))
    assert cert.bound == 3  # sound but slack: exact is 1
    check_certificate(cert, k3)

    k2 = Graph(2, [(0, 1)])
    assert edge_bound(k2, (0, 1)).bound == 3

    with pytest.raises(ValueError):
        edge_bound(c4, (0, 2))


def test_separator_bound_examples():
    two_tri = Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    cert = separator_bound(two_tri, [2])
    assert cert.bound == 2
    assert isinstance(cert.step, Separator)
    assert cert.step.t == 0b00100
    assert [comp for comp, _ in cert.step.parts] == [0b00011, 0b11000]
    check_certificate(cert, two_tri)

    du = Graph(6, [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5)])
    cert = separator_bound(du, 0)  # empty separator on a disconnected graph
    assert cert.bound == 3
    assert cert.step.t_cert.bound == 1
    check_certificate(cert, du)

    assert separator_bound(path(3), [1]).bound == 2

    with pytest.raises(ValueError):
        separator_bound(cycle(4), [0])  # C_4 minus a vertex stays connected
    with pytest.raises(ValueError):
        separator_bound(path(3), [7])


def test_subgraph_m_bound_examples():
    k3 = complete(3)
    cert = subgraph_m_bound(k3, [(0, 1)])
    assert cert.step.minus.bound == 2  # path
    assert cert.step.closure.bound == 1  # the whole triangle
    assert cert.step.closure_minus.bound == 2  # path again
    assert cert.bound == 3  # sound but slack: exact is 1
    check_certificate(cert, k3)

    c4 = cycle(4)
    cert = subgraph_m_bound(c4, [])
    assert cert.bound == 3  # reduces to the engine bound on g itself
    check_certificate(cert, c4)

    with pytest.raises(ValueError):
        subgraph_m_bound(c4, [(0, 2)])


def test_clique_cover_path_example():
    g = path(3)
    g1 = induced_subgraph(g, [0, 1])
    g2 = induced_subgraph(g, [1, 2])
    cert = clique_cover_bound(g, g1, g2, 1, 1, 1)
    assert cert.bound == 2
    check_certificate(cert, g)
    assert replay(cert) == 2


def test_clique_cover_degenerate_and_failure():
    c4 = cycle(4)
    cert = clique_cover_bound(c4, c4, Graph(0), 3, 1, 1)
    assert cert.bound == 3  # max(reg(g), 1, 1+1)
    check_certificate(cert, c4)

    g = kn2(3)
    g1 = induced_subgraph(g, [0, 1, 2, 3])
    g2 = induced_subgraph(g, [2, 3, 4, 5])
    with pytest.raises(CoverError) as err:
        clique_cover_bound(g, g1, g2, 3, 3, 2)
    assert len(err.value.witness) in (2, 3)  # an uncovered edge or triangle

    cert = clique_cover_bound(g, g, Graph(0), 4, 1, 1)
    assert cert.bound == 4 == regularity_exact(g).value

    bad = Graph(2, [(0, 1)])  # labels 0,1 but that edge is absent below
    with pytest.raises(ValueError):
        clique_cover_bound(Graph(2, []), bad, Graph(0), 1, 1, 1)


def _maximal_cover_ok(g, g1, g2):
    """Cover check via maximal cliques only (reduction under test)."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    in1 = B._clique_checker(g1)
    in2 = B._clique_checker(g2)
    for clique in nx.find_cliques(h):
        labels = tuple(g.labels[v] for v in clique)
        if not in1(labels) and not in2(labels):
            return False
    return True


def test_clique_cover_maximal_reduction_agrees():
    rng = random.Random(5)
    agree_fail = agree_pass = 0
    for trial in range(120):
        n = rng.randint(2, 7)
        g = random_gnp(n, 0.5, trial)
        keep1 = [v for v in range(n) if rng.random() < 0.7]
        keep2 = [v for v in range(n) if rng.random() < 0.7 or v not in keep1]
        g1 = induced_subgraph(g, keep1)
        g2 = induced_subgraph(g, keep2)
        try:
            B._check_cover(g, g1, g2)
            full = True
        except CoverError:
            full = False
        assert full == _maximal_cover_ok(g, g1, g2)
        if full:
            agree_pass += 1
        else:
            agree_fail += 1
    assert agree_pass > 10 and agree_fail > 10


def test_hereditary_bound_chordal_simplicial():
    for seed in range(6):
        g = random_chordal(9, seed)
        cert = hereditary_bound(g, simplicial_separator, 1)
        assert cert is not None
        assert cert.bound <= 2
        assert cert.bound >= regularity_exact(g).value
        check_certificate(cert, g)
        if not is_complete(g):
            assert isinstance(cert.step, Separator)


def test_hereditary_bound_chordal_neighborhood():
    c4 = cycle(4)
    cert = hereditary_bound(c4, chordal_neighborhood_separator, 2)
    assert cert is not None and cert.bound == 3
    check_certificate(cert, c4)

    c7 = cycle(7)
    cert = hereditary_bound(c7, chordal_neighborhood_separator, 2)
    assert cert is not None and cert.bound == 3 == regularity_exact(c7).value
    check_certificate(cert, c7)


def test_hereditary_bound_contract_enforcement():
    with pytest.raises(ValueError):
        hereditary_bound(cycle(5), simplicial_separator, 0)
    assert hereditary_bound(cycle(5), lambda h: None, 2) is None

    def lying_finder(h):
        return h.adj[0], BoundCertificate(3, ExactLeaf(3, "too big"))

    with pytest.raises(ValueError):
        hereditary_bound(cycle(6), lying_finder, 2)


def test_bipartite_complement_chain():
    hits = 0
    for seed in range(30):
        g = random_bipartite_complement(3, 3, 0.5, seed)
        cert = bipartite_complement_bound(g)
        if cert is None:
            continue
        hits += 1
        check_certificate(cert, g)
        exact = regularity_exact(g).value
        assert cert.bound >= exact
        if has_hole(g):
            assert cert.bound == 3 == exact
        else:
            assert cert.bound <= 2
    assert hits >= 10
    # complement not bipartite: C_5 is self-complementary and odd
    assert bipartite_complement_bound(cycle(5)) is None
    # the octahedron's crossing part is a six-cycle: rejected
    assert bipartite_complement_bound(kn2(3)) is None
    # complement of C_6 is the prism: matching part, hole present, exact 3
    prism = complement(cycle(6))
    cert = bipartite_complement_bound(prism)
    assert cert is not None and cert.bound == 3 == regularity_exact(prism).value
    check_certificate(cert, prism)


def test_nvertex_and_genus_values():
    assert [nvertex_bound(n) for n in (0, 1, 7, 8)] == [1, 1, 4, 5]
    assert nvertex_bound(8) == regularity_exact(kn2(4)).value
    with pytest.raises(ValueError):
        nvertex_bound(-1)

    assert genus_bound(0) == 4
    assert genus_bound(1) == 5
    assert genus_bound(3) == 6
    for m in (3, 4, 6, 7):
        assert genus_bound(genus_k_m2(m)) == m + 1
    with pytest.raises(ValueError):
        genus_bound(-1)

    check_genus_claim(kn2(2), 0)  # C_4 is planar
    with pytest.raises(ValueError):
        check_genus_claim(complete(5), 0)  # K_5 has too many edges
    check_genus_claim(complete(5), 1)


def test_n2p_log_bounds_values():
    r = n2p_log_bounds(100, 2)
    assert (r.term1, r.term2, r.prior, r.best) == (6, 6, 7, 6)
    assert round(r.term1_value, 2) == 6.71
    assert round(r.term2_value, 2) == 6.82

    r = n2p_log_bounds(7, 4)
    assert (r.term1, r.term2, r.prior, r.best) == (3, 4, 3, 3)
    assert r.best == regularity_exact(cycle(7)).value

    # log argument exactly 1 floors to 0, so the term is its offset
    assert B._floor_log(__import__("fractions").Fraction(5, 2), 1) == 0
    assert n2p_log_bounds(1, 2).prior is None

    with pytest.raises(ValueError):
        n2p_log_bounds(10, 1)
    with pytest.raises(ValueError):
        n2p_log_bounds(0, 2)

    assert best_n2p_bound(7, 4) == 3


def test_n2p_term1_improves_on_prior():
    for p in range(2, 12):
        start = max(2, math.ceil((p + 3) / 2))
        for n in range(start, 160):
            r = n2p_log_bounds(n, p)
            assert r.term1 <= r.prior, (n, p, r)


def test_replay_matches_all_nodes():
    certs = [
        vertex_bound(cycle(5)),
        vertex_bound(kn2(3)),
        separator_bound(Graph(6, [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5)]), 0),
        edge_bound(cycle(4), (0, 1)),
        subgraph_m_bound(complete(3), [(0, 1)]),
        clique_cover_bound(path(3), induced_subgraph(path(3), [0, 1]),
                           induced_subgraph(path(3), [1, 2]), 1, 1, 1),
        BoundCertificate(4, ClosedForm("nvertex", (("n", 6),))),
        BoundCertificate(4, ClosedForm("genus", (("genus", 0),))),
        BoundCertificate(3, ClosedForm("n2p_log", (("n", 7), ("p", 4)))),
    ]
    for cert in certs:
        assert replay(cert) == cert.bound


def test_certificate_audit_catches_tampering():
    c5 = cycle(5)
    cert = vertex_bound(c5)
    wrong_bound = BoundCertificate(2, cert.step)
    with pytest.raises(ValueError):
        check_certificate(wrong_bound, c5)
    with pytest.raises(ValueError):
        check_certificate(cert, cycle(6))
    bad_peo = BoundCertificate(2, ChordalBase((0, 1, 2, 3, 4)))
    with pytest.raises(ValueError):
        check_certificate(bad_peo, c5)
    bad_form = BoundCertificate(9, ClosedForm("nvertex", (("n", 5),)))
    with pytest.raises(ValueError):
        check_certificate(bad_form, c5)
    hole_form = BoundCertificate(3, ClosedForm("n2p_log", (("n", 4), ("p", 2))))
    with pytest.raises(ValueError):
        check_certificate(hole_form, cycle(4))  # C_4 violates the p = 2 claim


def test_analyze_kn2():
    report = analyze(kn2(3))
    assert report.best_bound == 4 == report.exact.value
    names = {t.name for t in report.theorems}
    assert {"engine", "chordal", "nvertex", "n2p_log",
            "even_hole_free", "bipartite_complement"} <= names
    by_name = {t.name: t for t in report.theorems}
    assert not by_name["chordal"].applicable
    assert "hole" in by_name["chordal"].detail
    assert not by_name["even_hole_free"].applicable
    assert by_name["nvertex"].bound == 4
    assert not by_name["genus"].applicable  # none supplied
    # complement of K_{3(2)} is a perfect matching: bipartite, chordal
    # bipartite part, and the graph has a hole, so exact 3 would be claimed
    # only when true; here regularity is 4 so the hypothesis must fail
    assert by_name["bipartite_complement"].exact_claim is None


def test_analyze_chordal_and_c7():
    g = random_chordal(9, 3)
    report = analyze(g)
    assert report.best_bound <= 2
    by_name = {t.name: t for t in report.theorems}
    assert by_name["chordal"].applicable
    if not is_complete(g):
        assert isinstance(report.best_certificate.step, ChordalBase)

    report = analyze(cycle(7))
    by_name = {t.name: t for t in report.theorems}
    assert by_name["n2p_log"].applicable and by_name["n2p_log"].bound == 3
    assert by_name["l_fan"].applicable and by_name["l_fan"].bound == 3
    assert report.best_bound == 3 == report.exact.value


def test_analyze_bipartite_complement_claim():
    claimed = 0
    for seed in range(20):
        g = random_bipartite_complement(3, 4, 0.5, seed)
        report = analyze(g)
        by_name = {t.name: t for t in report.theorems}
        entry = by_name["bipartite_complement"]
        if entry.exact_claim is not None:
            claimed += 1
            assert entry.exact_claim == 3 == report.exact.value
            assert entry.bound == 3
    assert claimed >= 5


def test_analyze_genus_entry():
    report = analyze(kn2(4), genus=1)
    by_name = {t.name: t for t in report.theorems}
    assert by_name["genus"].applicable and by_name["genus"].bound == 5
    with pytest.raises(ValueError):
        analyze(complete(5), genus=0)


def test_analyze_exhaustive_n4_soundness():
    for g in all_graphs(4):
        report = analyze(g)
        assert report.exact is not None
        assert report.best_bound >= report.exact.value
        for entry in report.theorems:
            if entry.certificate is not None:
                assert entry.certificate.bound >= report.exact.value
                assert replay(entry.certificate) == entry.certificate.bound


def test_certificate_json_schema():
    jsonschema = pytest.importorskip("jsonschema")
    import importlib.resources as res

    schema = json.loads(
        res.files("cliquereg").joinpath("schema/report.schema.json").read_text()
    )
    validator = jsonschema.Draft202012Validator(
        {"$ref": "#/$defs/certificate", "$defs": schema["$defs"]}
    )
    certs = [
        vertex_bound(cycle(5)),
        vertex_bound(complete(4)),
        vertex_bound(path(4)),
        separator_bound(Graph(6, [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5)]), 0),
        edge_bound(cycle(4), (0, 1)),
        subgraph_m_bound(complete(3), [(0, 1)]),
        clique_cover_bound(path(3), induced_subgraph(path(3), [0, 1]),
                           induced_subgraph(path(3), [1, 2]), 1, 1, 1),
        hereditary_bound(cycle(7), chordal_neighborhood_separator, 2),
        BoundCertificate(4, ClosedForm("nvertex", (("n", 6),))),
    ]
    for cert in certs:
        payload = B.certificate_to_json(cert)
        validator.validate(payload)
        # serialization is deterministic
        assert json.dumps(payload, sort_keys=True) == json.dumps(
            B.certificate_to_json(cert), sort_keys=True
        )
