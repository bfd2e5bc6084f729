"""Index estimates for B(G) and the chromatic lower bound they give.

The certified lower bound on ind B(G) comes from a clique: B(K_w) sits inside
B(G) and carries an (w-2)-sphere, so ind B(G) >= w - 2.  Homology only feeds a
clearly labelled heuristic.  Upper bounds come from dim hdL(G) = dim L(G) and
from the complete-bipartite theorem (l + m - 3 whenever K_{l,m} is absent).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Sequence

from .complexes import (
    halved_doubled_lovasz,
    jump_map,
    lovasz_complex,
    box_complex,
)
from .errors import BoxComplexError, ParameterError, ResourceError, TheoremViolation
from .graph_core import (
    Graph,
    chromatic_number,
    contains_complete_bipartite,
    max_clique_size,
    size,
    to_graph6,
)
from .homology import homological_connectivity


@dataclass
class KlmReport:
    l: int
    m: int
    contains_klm: bool
    dim_l: int
    dim_hdl: int
    bound: int
    m_sigma_max: int
    small_max: int = 0
    medium_max: int = 0
    large_max: int = 0

    @property
    def verdict(self) -> str:
        return "not applicable" if self.contains_klm else "holds"


def _preimage_profile(graph: Graph, l: int, m: int) -> tuple[int, int, int, int]:
    """Largest |M_sigma| over faces sigma of hdL(G), and of its size classes.

    ``M_sigma`` is the j-preimage of sigma in dL(G); vertices are small below
    size l, large from size m, medium in between.  Facets suffice since
    preimages grow with the face.
    """
    j = jump_map(graph)
    fibres: dict = {}
    for v, w in j.assignment.items():
        fibres.setdefault(w, []).append(v)
    best = [0, 0, 0, 0]
    for facet in halved_doubled_lovasz(graph).complex.facets:
        m_sigma = [v for w in facet for v in fibres[w]]
        sizes = [size(v.nodes) for v in m_sigma]
        counts = (
            len(m_sigma),
            sum(s < l for s in sizes),
            sum(l <= s < m for s in sizes),
            sum(s >= m for s in sizes),
        )
        best = [max(a, b) for a, b in zip(best, counts)]
    return tuple(best)


def klm_check(graph: Graph, l: int, m: int) -> KlmReport:
    """Check both dimension bounds of the complete-bipartite theorem for (l, m).

    If K_{l,m} is absent, asserts dim L(G) <= l+m-3, dim hdL(G) <= l+m-3 and
    the preimage counts used in the first proof; raises TheoremViolation if any
    of them fails.
    """
    if not 1 <= l <= m:
        raise ParameterError(f"need 1 <= l <= m, got l={l}, m={m}")
    report = KlmReport(
        l,
        m,
        contains_complete_bipartite(graph, l, m),
        lovasz_complex(graph).complex.dimension,
        halved_doubled_lovasz(graph).complex.dimension,
        l + m - 3,
        *_preimage_profile(graph, l, m),
    )
    if report.contains_klm:
        return report
    failures = []
    if report.dim_l > report.bound:
        failures.append(f"dim L(G) = {report.dim_l}")
    if report.dim_hdl > report.bound:
        failures.append(f"dim hdL(G) = {report.dim_hdl}")
    if report.m_sigma_max > 2 * (l + m - 2):
        failures.append(f"|M_sigma| = {report.m_sigma_max} > {2 * (l + m - 2)}")
    if report.small_max > 2 * (l - 1) or report.large_max > report.small_max:
        failures.append(f"small/large counts {report.small_max}/{report.large_max}")
    if report.medium_max > 2 * (m - l):
        failures.append(f"medium count {report.medium_max} > {2 * (m - l)}")
    if failures:
        raise TheoremViolation(
            f"G has no K_{l},{m} but " + "; ".join(failures) + f" (bound {report.bound})", to_graph6(graph)
        )
    return report


def klm_pairs(graph: Graph) -> list[tuple[int, int]]:
    """All (l, m) with 1 <= l <= m and l + m <= n + 1."""
    n = graph.n
    return [(l, m) for l in range(1, n + 1) for m in range(l, n + 2 - l)]


def klm_upper_bound(graph: Graph) -> int:
    """Smallest l + m - 3 over the K_{l,m} that G avoids."""
    return min(l + m - 3 for l, m in klm_pairs(graph) if not contains_complete_bipartite(graph, l, m))


@dataclass
class IndexInterval:
    lower: int
    lower_heuristic: int
    upper: int
    klm_upper: int
    notes: list[str] = field(default_factory=list)

    def __str__(self) -> str:
        return f"[{self.lower}, {self.upper}]"


def index_interval(graph: Graph) -> IndexInterval:
    omega = max_clique_size(graph)
    dim_hdl = halved_doubled_lovasz(graph).complex.dimension
    dim_l = lovasz_complex(graph).complex.dimension
    if dim_hdl != dim_l:
        raise TheoremViolation(f"dim hdL(G) = {dim_hdl} but dim L(G) = {dim_l}", to_graph6(graph))
    conn = homological_connectivity(box_complex(graph).complex)
    klm = klm_upper_bound(graph)
    interval = IndexInterval(
        lower=max(omega - 2, 0),
        lower_heuristic=conn + 1,
        upper=dim_hdl,
        klm_upper=klm,
        notes=[
            f"lower: clique of size {omega} gives a sphere of dimension {omega - 2} in B(G)",
            f"lower_heuristic: GF(2) homological connectivity of B(G) is {conn}, a proxy only, not a certificate",
            f"upper: dim hdL(G) = dim L(G) = {dim_hdl}",
            f"klm_upper: complete-bipartite theorem gives ind B(G) <= {klm}",
        ],
    )
    if interval.lower > min(interval.upper, interval.klm_upper):
        raise TheoremViolation(f"index interval is empty: {interval}", to_graph6(graph))
    return interval


class ChromaticLowerBound(NamedTuple):
    certified: int
    heuristic: int


def chromatic_lower_bound(graph: Graph) -> ChromaticLowerBound:
    interval = index_interval(graph)
    return ChromaticLowerBound(interval.lower + 2, interval.lower_heuristic + 2)


# corpus sweep ---------------------------------------------------------------

@dataclass
class GraphRecord:
    graph6: str
    n: int
    chi: int | None
    interval: tuple[int, int]
    lower_heuristic: int
    klm_upper: int
    chromatic_lower_bound: int
    chromatic_heuristic: int
    klm: list[tuple[int, int, str]]
    violations: list[str]

    def to_dict(self) -> dict:
        return asdict(self)


def analyse_graph(graph: Graph, chi_budget: int = 2_000_000) -> GraphRecord:
    g6 = to_graph6(graph)
    violations: list[str] = []
    try:
        chi = chromatic_number(graph, budget=chi_budget)
    except ResourceError:
        chi = None
    klm = []
    for l, m in klm_pairs(graph):
        try:
            klm.append((l, m, klm_check(graph, l, m).verdict))
        except TheoremViolation as exc:
            klm.append((l, m, "violated"))
            violations.append(str(exc))
    try:
        interval = index_interval(graph)
    except BoxComplexError as exc:
        violations.append(str(exc))
        return GraphRecord(g6, graph.n, chi, (-1, -1), -1, -1, -1, -1, klm, violations)
    certified = interval.lower + 2
    if chi is not None and certified > chi:
        violations.append(f"certified bound {certified} exceeds chromatic number {chi}")
    return GraphRecord(
        g6,
        graph.n,
        chi,
        (interval.lower, interval.upper),
        interval.lower_heuristic,
        interval.klm_upper,
        certified,
        interval.lower_heuristic + 2,
        klm,
        violations,
    )


@dataclass
class SweepReport:
    records: list[GraphRecord]

    @property
    def violations(self) -> list[tuple[str, str]]:
        return [(r.graph6, v) for r in self.records for v in r.violations]

    @property
    def passed(self) -> bool:
        return not self.violations


def default_workers() -> int:
    return max(1, int(os.environ.get("BOXCOMPLEX_WORKERS", "1")))


def soundness_sweep(corpus: Sequence[Graph], workers: int | None = None, chi_budget: int = 2_000_000) -> SweepReport:
    """Analyse every graph; results come back in input order."""
    workers = workers or default_workers()
    if workers == 1 or len(corpus) < 2:
        records = [analyse_graph(g, chi_budget) for g in corpus]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(analyse_graph, corpus, [chi_budget] * len(corpus), chunksize=4))
    return SweepReport(records)
