"""Complexes and Z2-maps attached to a graph.

Vertex conventions: N(G) and L(G) use ``UNSIDED`` labels; B(G), its shore
subdivision and everything derived from it use ``LEFT``/``RIGHT`` labels, the
tag recording the shore.  ``(LEFT, A)`` stands for ``A + {}`` and
``(RIGHT, B)`` for ``{} + B`` in the disjoint-union notation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ResourceError, VerificationError
from .graph_core import (
    Graph,
    NodeSet,
    common_neighborhood,
    format_nodeset,
    members,
    size,
    subsets,
)
from .homology import betti_gf2
from .simplicial import (
    Check,
    Complex,
    Label,
    Shore,
    VertexMap,
    Z2Complex,
    certify_isomorphism,
    check_equivariant,
    check_free,
    check_idempotent,
    check_simplicial,
    format_face,
    image_complex,
    label_key,
    shore_subdivision,
    swap_shores,
)

L, R, U = Shore.LEFT, Shore.RIGHT, Shore.UNSIDED
_CACHE = 64


def _require(verdict: Check, what: str) -> None:
    if not verdict:
        raise VerificationError(f"{what}: {verdict.detail}", verdict.witness)


# the linear order -----------------------------------------------------------

def order_key(a: NodeSet) -> tuple:
    """Sort key realising the order: cardinality first, then lexicographic."""
    return (size(a), members(a))


def precedes(a: NodeSet, b: NodeSet) -> bool:
    return order_key(a) < order_key(b)


# closed sets ----------------------------------------------------------------

@lru_cache(maxsize=_CACHE)
def closed_sets(graph: Graph) -> tuple[NodeSet, ...]:
    """Nonempty A with CN(CN(A)) = A and CN(A) nonempty, in increasing order.

    These are exactly the nonempty intersections of nonempty families of
    neighbourhoods, i.e. the image of CN, which is what gets enumerated.
    """
    found = set()
    frontier = {nb for nb in graph.adj if nb}
    while frontier:
        found |= frontier
        frontier = {a & nb for a in frontier for nb in graph.adj if a & nb} - found
    return tuple(sorted(found, key=order_key))


def check_closed_set_budget(graph: Graph, limit: int) -> int:
    """Count closed sets, raising ResourceError once more than ``limit`` turn up.

    Everything downstream is built over this family, so it is the natural
    place to stop before an exponential blow-up.
    """
    found: set[NodeSet] = set()
    frontier = {nb for nb in graph.adj if nb}
    while frontier:
        found |= frontier
        if len(found) > limit:
            raise ResourceError(f"{graph!r} has more than {limit} closed sets")
        frontier = {a & nb for a in frontier for nb in graph.adj if a & nb} - found
    return len(found)


def closed_sets_by_fixed_points(graph: Graph) -> tuple[NodeSet, ...]:
    """Same family as :func:`closed_sets`, found by testing every subset."""
    cn = lambda s: common_neighborhood(graph, s)  # noqa: E731
    found = [a for a in subsets(graph.vertex_mask) if a and cn(a) and cn(cn(a)) == a]
    return tuple(sorted(found, key=order_key))


@dataclass(frozen=True)
class ClosedSetPoset:
    sets: tuple[NodeSet, ...]
    action: dict = field(compare=False)

    @classmethod
    def of(cls, graph: Graph) -> "ClosedSetPoset":
        sets = closed_sets(graph)
        return cls(sets, {a: common_neighborhood(graph, a) for a in sets})

    def below(self, a: NodeSet) -> list[NodeSet]:
        return [b for b in self.sets if b != a and not b & ~a]


# the basic complexes --------------------------------------------------------

@lru_cache(maxsize=_CACHE)
def neighborhood_complex(graph: Graph) -> Complex:
    facets = [frozenset(Label(U, 1 << v) for v in members(nb)) for nb in graph.adj]
    return Complex(facets, "N")


def _maximal_chains(sets: tuple[NodeSet, ...]) -> list[tuple[NodeSet, ...]]:
    """Maximal chains under strict inclusion of a family of node sets."""
    covers: dict[NodeSet, list[NodeSet]] = {}
    for a in sets:
        above = [b for b in sets if b != a and not a & ~b]
        covers[a] = [b for b in above if not any(c != b and not c & ~b for c in above)]
    has_lower = {b for ups in covers.values() for b in ups}
    chains = []

    def walk(prefix):
        ups = covers[prefix[-1]]
        if not ups:
            chains.append(prefix)
        for b in ups:
            walk(prefix + (b,))

    for a in sets:
        if a not in has_lower:
            walk((a,))
    return chains


@lru_cache(maxsize=_CACHE)
def lovasz_complex(graph: Graph) -> Z2Complex:
    sets = closed_sets(graph)
    facets = [frozenset(Label(U, a) for a in chain) for chain in _maximal_chains(sets)]
    cx = Complex(facets, "L", maximal=True)
    nu = {Label(U, a): Label(U, common_neighborhood(graph, a)) for a in sets}
    z = Z2Complex(cx, nu)
    _require(z.certify(), "L(G) is not a free Z2-complex")
    return z


def box_facet(a: NodeSet, b: NodeSet) -> frozenset:
    return frozenset([Label(L, 1 << v) for v in members(a)] + [Label(R, 1 << v) for v in members(b)])


@lru_cache(maxsize=_CACHE)
def box_complex(graph: Graph) -> Z2Complex:
    """B(G); its facets are A + CN(A) for the closed sets A."""
    facets = [box_facet(a, common_neighborhood(graph, a)) for a in closed_sets(graph)]
    cx = Complex(facets, "B", maximal=True)
    z = Z2Complex(cx, swap_shores(cx.vertices))
    _require(z.certify(), "B(G) is not a free Z2-complex")
    return z


def shores(z: Z2Complex) -> tuple[frozenset, frozenset]:
    verts = z.complex.vertices
    return (
        frozenset(v for v in verts if v.shore is L),
        frozenset(v for v in verts if v.shore is R),
    )


@lru_cache(maxsize=_CACHE)
def ssd_box(graph: Graph) -> Z2Complex:
    box = box_complex(graph)
    cx = shore_subdivision(box.complex, shores(box), name="ssd(B)")
    z = Z2Complex(cx, swap_shores(cx.vertices))
    _require(z.certify(), "ssd(B(G)) is not a free Z2-complex")
    return z


# sCN^2 and the doubled Lovasz complex ---------------------------------------

@lru_cache(maxsize=_CACHE)
def scn2_map(graph: Graph) -> VertexMap:
    """(side, A) -> (side, CN(CN(A))) on ssd(B(G))."""
    ssd = ssd_box(graph)
    cn = lambda s: common_neighborhood(graph, s)  # noqa: E731
    f = VertexMap(ssd.complex, ssd.complex, {v: Label(v.shore, cn(cn(v.nodes))) for v in ssd.complex.vertices}, "sCN2")
    _require(check_simplicial(f), "sCN2 is not simplicial")
    _require(check_equivariant(f, ssd.nu, ssd.nu), "sCN2 is not equivariant")
    _require(check_idempotent(f), "sCN2 is not idempotent")
    return f


def doubled_lovasz_direct_faces(graph: Graph) -> set[frozenset]:
    """Faces of dL(G) from the chain description.

    All faces A + B where A, B are chains of closed sets (one may be empty) and
    every member of A is completely joined to every member of B; since chains
    are nested it suffices that top(B) lies in CN(top(A)).
    """
    lov = lovasz_complex(graph).complex
    chains_by_top: dict[NodeSet, list[frozenset]] = {}
    for face in lov.all_faces():
        top = max((v.nodes for v in face), key=size)
        chains_by_top.setdefault(top, []).append(frozenset(v.nodes for v in face))

    sets = closed_sets(graph)
    left_chains = [frozenset()] + [c for cs in chains_by_top.values() for c in cs]
    faces = set()
    for chain_a in left_chains:
        top_a = max(chain_a, key=size) if chain_a else 0
        room = common_neighborhood(graph, top_a)
        lifted = [Label(L, a) for a in chain_a]
        if chain_a:
            faces.add(frozenset(lifted))
        for b in sets:
            if b & ~room:
                continue
            for chain_b in chains_by_top[b]:
                faces.add(frozenset(lifted + [Label(R, x) for x in chain_b]))
    return faces


def doubled_lovasz_direct(graph: Graph) -> Complex:
    return Complex(doubled_lovasz_direct_faces(graph), "dL(direct)")


@lru_cache(maxsize=_CACHE)
def doubled_lovasz(graph: Graph) -> Z2Complex:
    """dL(G) = im sCN2, cross-checked face by face against the chain description."""
    cx = image_complex(scn2_map(graph), "dL")
    direct = doubled_lovasz_direct_faces(graph)
    image_faces = set(cx.all_faces())
    if image_faces != direct:
        witness = min(image_faces ^ direct, key=lambda f: (len(f), sorted(map(label_key, f))))
        raise VerificationError("im sCN2 differs from the chain description of dL(G)", format_face(witness))
    z = Z2Complex(cx, swap_shores(cx.vertices))
    _require(z.certify(), "dL(G) is not a free Z2-complex")
    return z


# the jump map -----------------------------------------------------------------

@dataclass(frozen=True)
class JumpPartition:
    """Vertex pairs {(L, A), (R, CN(A))} of dL(G) and the smaller member of each."""

    pairs: tuple[tuple[Label, Label], ...]
    chosen: tuple[Label, ...]
    stay: tuple[NodeSet, ...]  # closed A with (L, A) chosen
    jump: tuple[NodeSet, ...]  # closed A with (R, CN(A)) chosen


@lru_cache(maxsize=_CACHE)
def jump_partition(graph: Graph) -> JumpPartition:
    pairs, chosen, stay, jump = [], [], [], []
    for a in closed_sets(graph):
        partner = common_neighborhood(graph, a)
        pairs.append((Label(L, a), Label(R, partner)))
        if precedes(a, partner):
            chosen.append(Label(L, a))
            stay.append(a)
        else:
            chosen.append(Label(R, partner))
            jump.append(a)
    return JumpPartition(tuple(pairs), tuple(chosen), tuple(stay), tuple(jump))


def jump_vertex(graph: Graph, v: Label) -> Label:
    """The smaller vertex of the pair containing ``v``."""
    partner = common_neighborhood(graph, v.nodes)
    return v if precedes(v.nodes, partner) else Label(v.swapped().shore, partner)


@lru_cache(maxsize=_CACHE)
def jump_map(graph: Graph) -> VertexMap:
    dl = doubled_lovasz(graph)
    f = VertexMap(dl.complex, dl.complex, {v: jump_vertex(graph, v) for v in dl.complex.vertices}, "j")
    _require(check_simplicial(f), "j is not simplicial")
    _require(check_equivariant(f, dl.nu, dl.nu), "j is not equivariant")
    image = set(f.assignment.values())
    if 2 * len(image) != len(dl.complex.vertices):
        raise VerificationError(f"j has {len(image)} image vertices for {len(dl.complex.vertices)} in dL(G)")
    return f


@lru_cache(maxsize=_CACHE)
def halved_doubled_lovasz(graph: Graph) -> Z2Complex:
    cx = image_complex(jump_map(graph), "hdL")
    z = Z2Complex(cx, swap_shores(cx.vertices))
    _require(z.certify(), "hdL(G) is not a free Z2-complex")
    return z


@lru_cache(maxsize=_CACHE)
def phi_map(graph: Graph) -> VertexMap:
    """j after sCN2, as a self-map of ssd(B(G))."""
    ssd = ssd_box(graph)
    f = scn2_map(graph).then(jump_map(graph), "Phi").restrict(ssd.complex)
    _require(check_simplicial(f), "Phi is not simplicial")
    _require(check_equivariant(f, ssd.nu, ssd.nu), "Phi is not equivariant")
    return f


# L(G) is isomorphic to hdL(G) -------------------------------------------------

def _check_threshold_form(graph: Graph, f: VertexMap) -> Check:
    """Each chain maps to (A_1..A_t) + CN(A_{t+1}..A_p) with J-membership upward closed."""
    jumpers = set(jump_partition(graph).jump)
    for facet in f.source.facets:
        chain = sorted((v.nodes for v in facet), key=size)
        flags = [a in jumpers for a in chain]
        t = flags.index(True) if True in flags else len(chain)
        if not all(flags[t:]):
            return Check(False, format_face(facet), "J-membership is not upward closed along this chain")
        expected = {Label(L, a) for a in chain[:t]} | {Label(R, common_neighborhood(graph, a)) for a in chain[t:]}
        if f.apply(facet) != expected:
            return Check(False, format_face(facet), "image does not have the threshold form")
    return Check(True)


@lru_cache(maxsize=_CACHE)
def lovasz_to_hdl_iso(graph: Graph) -> VertexMap:
    """f(A) = (L, A) if A stays, (R, CN(A)) if A jumps."""
    lov = lovasz_complex(graph)
    hdl = halved_doubled_lovasz(graph)
    part = jump_partition(graph)
    jumpers = set(part.jump)
    assignment = {
        Label(U, a): Label(R, common_neighborhood(graph, a)) if a in jumpers else Label(L, a)
        for a in closed_sets(graph)
    }
    f = VertexMap(lov.complex, hdl.complex, assignment, "f")
    _require(certify_isomorphism(f), "f: L(G) -> hdL(G) is not an isomorphism")
    _require(check_equivariant(f, lov.nu, hdl.nu), "f: L(G) -> hdL(G) is not equivariant")
    _require(_check_threshold_form(graph, f), "f: L(G) -> hdL(G)")
    return f


# the collapse sequence --------------------------------------------------------

@dataclass
class CollapseStep:
    index: int
    x: NodeSet
    map: VertexMap
    next: Complex

    def __str__(self) -> str:
        return f"f_{self.index}: X = {format_nodeset(self.x)}, S_{self.index + 1} f = {self.next.f_vector}"


def _check_maximality(current: Complex, x: NodeSet, cnx: NodeSet) -> Check:
    for facet in current.facets:
        if Label(L, x) in facet and Label(R, cnx) not in facet:
            return Check(False, format_face(facet), f"maximal face holds L:{format_nodeset(x)} without its partner")
        if Label(R, x) in facet and Label(L, cnx) not in facet:
            return Check(False, format_face(facet), f"maximal face holds R:{format_nodeset(x)} without its partner")
    return Check(True)


def _is_subcomplex(small: Complex, big: Complex) -> Check:
    for facet in small.facets:
        if facet not in big:
            return Check(False, format_face(facet), "not a face of the previous complex")
    return Check(True)


@lru_cache(maxsize=_CACHE)
def collapse_sequence(graph: Graph) -> tuple[CollapseStep, ...]:
    """Remove the jumping pairs one at a time, largest first.

    Every step is certified (maximality of X, simplicial, equivariant,
    subcomplex); the last complex must equal hdL(G) and the composite must
    equal the jump map.
    """
    current = doubled_lovasz(graph).complex
    remaining = sorted(jump_partition(graph).jump, key=order_key)
    steps = []
    composite = {v: v for v in current.vertices}
    i = 0
    while remaining:
        x = remaining.pop()
        lx, rx = Label(L, x), Label(R, x)
        if lx not in current.vertices:
            raise VerificationError(f"L:{format_nodeset(x)} vanished before its step")
        cnx = common_neighborhood(graph, x)
        _require(_check_maximality(current, x, cnx), f"maximality fails at step {i}")
        nxt = Complex([f - {lx, rx} for f in current.facets], f"S{i + 1}")
        assignment = {v: v for v in current.vertices}
        assignment[lx] = Label(R, cnx)
        assignment[rx] = Label(L, cnx)
        fi = VertexMap(current, nxt, assignment, f"f{i}")
        nu = swap_shores(current.vertices)
        _require(check_simplicial(fi), f"f_{i} is not simplicial")
        _require(check_equivariant(fi, nu, nu), f"f_{i} is not equivariant")
        _require(_is_subcomplex(nxt, current), f"S_{i + 1} is not a subcomplex of S_{i}")
        composite = {v: assignment[w] for v, w in composite.items()}
        steps.append(CollapseStep(i, x, fi, nxt))
        current = nxt
        i += 1

    if current != halved_doubled_lovasz(graph).complex:
        raise VerificationError("the collapse sequence does not end at hdL(G)")
    j = jump_map(graph)
    for v, w in composite.items():
        if j(v) != w:
            raise VerificationError("composite of the collapses differs from j", str(v))
    return tuple(steps)


def collapse_homology(graph: Graph) -> Check:
    """GF(2) Betti numbers of S_0 .. S_{N+1} all agree."""
    start = betti_gf2(doubled_lovasz(graph).complex)
    for step in collapse_sequence(graph):
        b = betti_gf2(step.next)
        if b != start:
            return Check(False, step.index + 1, f"S_{step.index + 1} has {b}, S_0 has {start}")
    return Check(True, detail=str(start))


# full certificate suite -------------------------------------------------------

@dataclass
class CertificateReport:
    graph: Graph
    checks: list[tuple[str, Check]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c for _, c in self.checks)

    def add(self, name: str, verdict: Check) -> None:
        self.checks.append((name, verdict))


def _holds(condition: bool, failure: str) -> Check:
    return Check(True) if condition else Check(False, detail=failure)


def _guard(report: CertificateReport, name: str, thunk) -> bool:
    """Record ``thunk()``; a raised certificate failure counts as a failed check."""
    try:
        verdict = thunk()
    except VerificationError as exc:
        verdict = Check(False, exc.witness, str(exc))
    if not isinstance(verdict, Check):
        verdict = Check(True)
    report.add(name, verdict)
    return bool(verdict)


def verify_graph(graph: Graph, homology: bool = True) -> CertificateReport:
    """Run every certificate for ``graph`` and collect pass/fail results."""
    report = CertificateReport(graph)
    fixed = closed_sets_by_fixed_points(graph) if graph.n <= 20 else closed_sets(graph)
    _guard(report, "closed sets: CN-image equals CN2 fixed points",
           lambda: _holds(fixed == closed_sets(graph), "families differ"))
    if not _guard(report, "sCN2 simplicial, equivariant, idempotent", lambda: scn2_map(graph)):
        return report
    _guard(report, "dL(G): im sCN2 equals chain description", lambda: doubled_lovasz(graph))
    _guard(report, "j simplicial, equivariant, halves vertices", lambda: jump_map(graph))
    _guard(report, "hdL(G) free Z2-complex", lambda: halved_doubled_lovasz(graph))
    _guard(report, "Phi = j o sCN2 simplicial, equivariant, image hdL(G)",
           lambda: _holds(image_complex(phi_map(graph)) == halved_doubled_lovasz(graph).complex,
                          "im Phi differs from hdL(G)"))
    _guard(report, "f: L(G) -> hdL(G) Z2-isomorphism", lambda: lovasz_to_hdl_iso(graph))
    _guard(report, "collapse sequence dL(G) -> hdL(G)", lambda: collapse_sequence(graph))
    if homology:
        _guard(report, "collapse steps share GF(2) Betti numbers", lambda: collapse_homology(graph))
        box, ssd = box_complex(graph).complex, ssd_box(graph).complex
        _guard(report, "Betti numbers: B(G) = ssd(B(G)) = hdL(G) = L(G)",
               lambda: _same_betti(box, ssd, halved_doubled_lovasz(graph).complex, lovasz_complex(graph).complex))
    if graph.n >= 2 and len(box_components(graph)) == 2:
        report.notes.append("B(G) is disconnected: two components swapped by nu")
    return report


def _same_betti(*complexes: Complex) -> Check:
    profiles = [betti_gf2(k) for k in complexes]
    if any(p != profiles[0] for p in profiles):
        return Check(False, [str(p) for p in profiles], "Betti profiles differ")
    return Check(True, detail=str(profiles[0]))


def box_components(graph: Graph) -> list[frozenset]:
    """Vertex sets of the connected components of B(G)."""
    cx = box_complex(graph).complex
    parent = {v: v for v in cx.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for facet in cx.facets:
        first, *rest = facet
        for v in rest:
            parent[find(v)] = find(first)
    groups: dict[Label, set] = {}
    for v in cx.vertices:
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(g) for g in groups.values()), key=lambda g: min(map(label_key, g)))
