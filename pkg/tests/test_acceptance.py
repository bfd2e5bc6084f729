"""Acceptance gate: one test per criterion, each recorded for the end-of-run summary."""

import itertools

import pytest

from boxcomplex.bounds import chromatic_lower_bound, index_interval, klm_check, klm_pairs
from boxcomplex.complexes import (
    box_complex,
    box_components,
    collapse_homology,
    collapse_sequence,
    doubled_lovasz,
    halved_doubled_lovasz,
    lovasz_complex,
    lovasz_to_hdl_iso,
    neighborhood_complex,
    scn2_map,
    ssd_box,
    verify_graph,
)
from boxcomplex.errors import BoxComplexError
from boxcomplex.graph_core import (
    cn_laws_report,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    generate,
    to_graph6,
)
from boxcomplex.homology import betti_gf2, sphere_profile
from boxcomplex.simplicial import certify_isomorphism, check_equivariant, check_idempotent


def chi_brute(graph):
    for k in range(1, graph.n + 1):
        for colours in itertools.product(range(k), repeat=graph.n):
            if all(colours[u] != colours[v] for u, v in graph.edges):
                return k


def is_cycle(cx, n):
    return cx.f_vector == (n, n) and all(sum(v in f for f in cx.facets) == 2 for v in cx.vertices) \
        and betti_gf2(cx).betti == (1, 1)


def failures(corpus, check):
    bad = []
    for g in corpus:
        try:
            problem = check(g)
        except BoxComplexError as exc:
            problem = str(exc)
        if problem:
            bad.append(f"{to_graph6(g)}: {problem}")
    return bad


def record(criterion, name, bad, total):
    detail = f"{total} checked, {len(bad)} failures" + (f"; first: {bad[0]}" if bad else "")
    criterion(name, not bad, detail)
    assert not bad, detail


@pytest.fixture(scope="module")
def reports(corpus):
    return {to_graph6(g): verify_graph(g) for g in corpus}


def test_1_c5_walkthrough(criterion):
    c5 = cycle_graph(5)
    ssd, dl = ssd_box(c5).complex, doubled_lovasz(c5).complex
    scn2 = scn2_map(c5)
    claims = {
        "N(C5) is a 5-cycle": is_cycle(neighborhood_complex(c5), 5),
        "L(C5) is a 10-cycle": is_cycle(lovasz_complex(c5).complex, 10),
        "ssd(B(C5)) = dL(C5)": set(ssd.all_faces()) == set(dl.all_faces()),
        "sCN2 is the identity": all(v == w for v, w in scn2.assignment.items()),
        "hdL(C5) Z2-isomorphic to L(C5)": bool(certify_isomorphism(lovasz_to_hdl_iso(c5))),
    }
    bad = [k for k, ok in claims.items() if not ok]
    record(criterion, "1 C5 walkthrough", bad, len(claims))


def test_2_lovasz_hdl_isomorphism(criterion, corpus):
    def check(g):
        f = lovasz_to_hdl_iso(g)
        if not certify_isomorphism(f):
            return "not an isomorphism"
        if not check_equivariant(f, lovasz_complex(g).nu, halved_doubled_lovasz(g).nu):
            return "not equivariant"

    record(criterion, "2 L(G) iso hdL(G) on corpus", failures(corpus, check), len(corpus))


def test_3_collapse_certificate(criterion, corpus, reports):
    def check(g):
        steps = collapse_sequence(g)  # raises on maximality, simplicial, equivariance, subcomplex, composite
        if len(steps) and steps[-1].next != halved_doubled_lovasz(g).complex:
            return "sequence does not end at hdL"
        verdict = collapse_homology(g)
        if not verdict:
            return verdict.detail
        failed = [n for n, c in reports[to_graph6(g)].checks if not c]
        return ", ".join(failed)

    record(criterion, "3 collapse sequence certificate on corpus", failures(corpus, check), len(corpus))


def test_4_klm_theorem(criterion, corpus):
    pairs = 0

    def check(g):
        nonlocal pairs
        for l, m in klm_pairs(g):
            report = klm_check(g, l, m)  # raises TheoremViolation on any failed bound
            pairs += 1
            if not report.contains_klm and report.m_sigma_max > 2 * (l + m - 2):
                return f"|M_sigma| too large for ({l},{m})"

    bad = failures(corpus, check)
    record(criterion, "4 K_lm dimension bound on corpus", bad, pairs)


def test_5_sharpness_cliques(criterion):
    def check(g):
        n = g.n
        interval = index_interval(g)
        if (interval.lower, interval.upper) != (n - 2, n - 2):
            return f"interval {interval}"
        if betti_gf2(box_complex(g).complex) != sphere_profile(n - 2):
            return "B(K_n) is not a homology sphere"

    graphs = [complete_graph(n) for n in range(3, 7)]
    record(criterion, "5 sharpness on K_3..K_6", failures(graphs, check), len(graphs))


def test_6_bipartite_gap(criterion):
    def check(g):
        k = g.n // 2
        parts = box_components(g)
        nu = box_complex(g).nu
        if len(parts) != 2 or {nu[v] for v in parts[0]} != parts[1]:
            return f"{len(parts)} components, not two swapped by nu"
        interval = index_interval(g)
        if interval.lower != 0 or interval.klm_upper != k - 1 or interval.upper > interval.klm_upper:
            return f"interval [{interval.lower}, {interval.klm_upper}], dimension bound {interval.upper}"

    graphs = [complete_bipartite_graph(k, k) for k in (2, 3)]
    record(criterion, "6 gap family K_kk", failures(graphs, check), len(graphs))


def test_7_soundness(criterion, corpus):
    families = [generate(f) for f in ("cycle:5", "cycle:7", "kneser:5,2", "mycielski:4", "complete:5")]
    graphs = corpus + families

    def check(g):
        bound, chi = chromatic_lower_bound(g).certified, chi_brute(g)
        if bound > chi:
            return f"certified bound {bound} > chi {chi}"

    record(criterion, "7 chromatic bound soundness", failures(graphs, check), len(graphs))


def test_8_structural_invariants(criterion, corpus):
    def check(g):
        box, ssd = box_complex(g).complex, ssd_box(g).complex
        if box.euler_characteristic != ssd.euler_characteristic or betti_gf2(box) != betti_gf2(ssd):
            return "subdivision changed Euler characteristic or Betti numbers"
        if 2 * len(halved_doubled_lovasz(g).complex.vertices) != len(doubled_lovasz(g).complex.vertices):
            return "hdL does not halve the vertices of dL"
        if not check_idempotent(scn2_map(g)):
            return "sCN2 is not idempotent"
        laws = cn_laws_report(g)
        if laws.mode != "exhaustive" or not laws.passed:
            return f"CN laws ({laws.mode}) failed"

    record(criterion, "8 structural invariants on corpus", failures(corpus, check), len(corpus))
