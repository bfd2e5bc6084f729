"""Graphs, node sets and common-neighbourhood combinatorics.

Node sets are plain ``int`` bit masks: bit ``v`` is set iff node ``v`` is a
member.  That gives canonical, hashable, structurally compared sets for free
and makes ``CN`` a chain of ``&`` operations.  Graphs are capped at 64 nodes.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import (
    GraphFormatError,
    GraphValidationError,
    ParameterError,
    ResourceError,
)

MAX_NODES = 64

NodeSet = int  # bit mask over node indices


def nodeset(members: Iterable[int] = ()) -> NodeSet:
    mask = 0
    for v in members:
        if v < 0 or v >= MAX_NODES:
            raise ParameterError(f"node index {v} outside 0..{MAX_NODES - 1}")
        mask |= 1 << v
    return mask


def members(mask: NodeSet) -> tuple[int, ...]:
    """Sorted member list of a node set."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def size(mask: NodeSet) -> int:
    return mask.bit_count()


def format_nodeset(mask: NodeSet) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


def subsets(mask: NodeSet) -> Iterator[NodeSet]:
    """All subsets of ``mask`` including the empty set and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph on nodes ``0..n-1``.

    ``adj[v]`` is the neighbourhood of ``v`` as a node-set mask.  Build graphs
    through :meth:`from_edges`, the parsers or :func:`generate`; those validate.
    """

    n: int
    adj: tuple[int, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> "Graph":
        if n > MAX_NODES:
            raise GraphValidationError("size", f"{n} nodes exceeds the cap of {MAX_NODES}")
        if n < 0:
            raise GraphValidationError("size", "negative node count")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError("range", f"edge ({u}, {v}) references a node outside 0..{n - 1}")
            if u == v:
                raise GraphValidationError("simple", f"self-loop at node {u}", witness=(u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        graph = cls(n, tuple(adj), name)
        validate(graph)
        return graph

    @property
    def vertex_mask(self) -> NodeSet:
        return (1 << self.n) - 1

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in members(self.adj[u]) if u < v]

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={len(self.edges)}>"


def _components(graph: Graph) -> list[NodeSet]:
    remaining = graph.vertex_mask
    comps = []
    while remaining:
        seed = remaining & -remaining
        comp = frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            fresh = graph.adj[low.bit_length() - 1] & ~comp
            comp |= fresh
            frontier |= fresh
        comps.append(comp)
        remaining &= ~comp
    return comps


def validate(graph: Graph) -> None:
    """Raise :class:`GraphValidationError` unless ``graph`` is a legal input.

    Checks: at least 2 nodes, at most 64, irreflexive symmetric adjacency, at
    least one edge, connected.
    """
    n = graph.n
    if n > MAX_NODES:
        raise GraphValidationError("size", f"{n} nodes exceeds the cap of {MAX_NODES}")
    if n < 2:
        raise GraphValidationError("n >= 2", f"graph has {n} node(s)", witness=n)
    if len(graph.adj) != n:
        raise GraphValidationError("adjacency", "adjacency table length differs from n")
    full = graph.vertex_mask
    for v, nb in enumerate(graph.adj):
        if nb & ~full:
            raise GraphValidationError("range", f"node {v} has a neighbour outside 0..{n - 1}")
        if nb >> v & 1:
            raise GraphValidationError("simple", f"self-loop at node {v}", witness=(v, v))
        for u in members(nb):
            if not graph.adj[u] >> v & 1:
                raise GraphValidationError("undirected", f"edge ({v}, {u}) is not symmetric", witness=(v, u))
    if not any(graph.adj):
        raise GraphValidationError("edges", "graph has no edges")
    comps = _components(graph)
    if len(comps) > 1:
        witness = (members(comps[0]), members(comps[1]))
        raise GraphValidationError(
            "connected",
            f"graph is disconnected, e.g. components {witness[0]} and {witness[1]}",
            witness=witness,
        )


# graph6 ---------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def parse_graph6(text: str, name: str = "") -> Graph:
    """Decode one graph6 line (header optional) and validate the result."""
    line = text.strip()
    base = 0
    if line.startswith(_G6_HEADER):
        line = line[len(_G6_HEADER):]
        base = len(_G6_HEADER)
    data = line.encode("ascii", errors="replace")
    for i, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise GraphFormatError(f"invalid graph6 character {chr(byte)!r}", base + i)
    if not data:
        raise GraphFormatError("empty graph6 string", base)

    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphFormatError("truncated 36-bit node count", base + len(data))
        n, pos = 0, 8
        for byte in data[2:8]:
            n = (n << 6) | (byte - 63)
    else:
        if len(data) < 4:
            raise GraphFormatError("truncated 18-bit node count", base + len(data))
        n, pos = 0, 4
        for byte in data[1:4]:
            n = (n << 6) | (byte - 63)

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise GraphFormatError(
            f"expected {need} adjacency bytes for n={n}, found {len(body)}", base + pos + min(len(body), need)
        )
    if n > MAX_NODES:
        raise GraphValidationError("size", f"{n} nodes exceeds the cap of {MAX_NODES}")

    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    graph = Graph(n, tuple(adj), name or line)
    validate(graph)
    return graph


def to_graph6(graph: Graph) -> str:
    n = graph.n
    if n <= 62:
        out = [n + 63]
    else:
        out = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    bits = [graph.adj[i] >> j & 1 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        chunk = 0
        for b in bits[k:k + 6]:
            chunk = (chunk << 1) | b
        out.append(chunk + 63)
    return bytes(out).decode("ascii")


def read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    graphs = []
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            graphs.append(parse_graph6(line))
        except GraphFormatError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from exc
    return graphs


def parse_edge_list(text: str, name: str = "") -> Graph:
    """Parse ``"u v"`` lines with 0-based nodes; ``#`` starts a comment."""
    edges = []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0].strip()
        if line:
            parts = line.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise GraphFormatError(f"expected 'u v', got {line!r}", offset)
            edges.append((int(parts[0]), int(parts[1])))
        offset += len(raw.encode())
    n = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(n, edges, name)


# generators -----------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2), f"K{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ParameterError("cycle needs at least 3 nodes")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def complete_bipartite_graph(l: int, m: int) -> Graph:
    """Nodes ``0..l-1`` form one side, ``l..l+m-1`` the other."""
    if l < 1 or m < 1:
        raise ParameterError("complete bipartite sides must be nonempty")
    edges = [(a, l + b) for a in range(l) for b in range(m)]
    return Graph.from_edges(l + m, edges, f"K{l},{m}")


def kneser_graph(n: int, k: int) -> Graph:
    """Nodes are the k-subsets of ``range(n)`` in ``itertools.combinations`` order."""
    if k < 1 or n < 2 * k + 1:
        raise ParameterError(f"kneser({n},{k}) needs k >= 1 and n >= 2k+1 to be connected with an edge")
    verts = [frozenset(c) for c in itertools.combinations(range(n), k)]
    if len(verts) > MAX_NODES:
        raise ParameterError(f"kneser({n},{k}) has {len(verts)} nodes, above the cap of {MAX_NODES}")
    edges = [(i, j) for i, j in itertools.combinations(range(len(verts)), 2) if not verts[i] & verts[j]]
    return Graph.from_edges(len(verts), edges, f"KG({n},{k})")


def mycielskian(graph: Graph) -> Graph:
    """Nodes ``0..n-1`` original, ``n..2n-1`` shadows, ``2n`` the apex."""
    n = graph.n
    edges = list(graph.edges)
    for u, v in graph.edges:
        edges += [(u, n + v), (v, n + u)]
    edges += [(n + i, 2 * n) for i in range(n)]
    return Graph.from_edges(2 * n + 1, edges, f"M({graph.name})")


def mycielski_graph(k: int) -> Graph:
    """k-th Mycielski graph: M2 = K2, M3 = C5, M4 = Groetzsch."""
    if k < 2:
        raise ParameterError("mycielski index must be >= 2")
    graph = complete_graph(2)
    for _ in range(k - 2):
        graph = mycielskian(graph)
    return Graph(graph.n, graph.adj, f"M{k}")


def _ints(args: str, count: int, family: str) -> list[int]:
    try:
        values = [int(a) for a in args.split(",")] if args else []
    except ValueError:
        raise ParameterError(f"{family}: parameters must be integers, got {args!r}") from None
    if len(values) != count:
        raise ParameterError(f"{family} takes {count} parameter(s), got {len(values)}")
    return values


FAMILIES = {
    "complete": (1, complete_graph),
    "cycle": (1, cycle_graph),
    "path": (1, path_graph),
    "star": (1, lambda k: complete_bipartite_graph(1, k)),
    "complete-bipartite": (2, complete_bipartite_graph),
    "kneser": (2, kneser_graph),
    "mycielski": (1, mycielski_graph),
    "petersen": (0, lambda: kneser_graph(5, 2)),
}


def generate(family: str) -> Graph:
    """Build a graph from a family string such as ``"kneser:5,2"``.

    Families: ``complete:n``, ``cycle:n``, ``path:n``, ``star:k`` (K_{1,k},
    centre 0), ``complete-bipartite:l,m``, ``kneser:n,k``, ``mycielski:k``,
    ``petersen``.
    """
    key, _, args = family.strip().partition(":")
    if key not in FAMILIES:
        raise ParameterError(f"unknown family {key!r}; known: {', '.join(sorted(FAMILIES))}")
    arity, build = FAMILIES[key]
    try:
        graph = build(*_ints(args, arity, key))
    except GraphValidationError as exc:
        raise ParameterError(f"{family}: {exc}") from exc
    return Graph(graph.n, graph.adj, family.strip())


def small_connected_graphs(max_nodes: int = 6, min_nodes: int = 2) -> list[Graph]:
    """All connected graphs on ``min_nodes..max_nodes`` nodes, one per isomorphism class.

    Taken from the networkx graph atlas, so ``max_nodes`` is limited to 7.
    """
    from networkx.generators.atlas import graph_atlas_g
    from networkx import is_connected

    if max_nodes > 7:
        raise ParameterError("the graph atlas stops at 7 nodes")
    out = []
    for index, g in enumerate(graph_atlas_g()):
        n = g.number_of_nodes()
        if min_nodes <= n <= max_nodes and is_connected(g):
            out.append(Graph.from_edges(n, g.edges(), f"atlas{index}"))
    return out


# neighbourhoods -------------------------------------------------------------

def neighbors(graph: Graph, v: int) -> NodeSet:
    if not 0 <= v < graph.n:
        raise ParameterError(f"node {v} not in graph with {graph.n} nodes")
    return graph.adj[v]


def common_neighborhood(graph: Graph, nodes: NodeSet) -> NodeSet:
    """Nodes adjacent to every member of ``nodes``; the empty set gives V(G)."""
    result = graph.vertex_mask
    adj = graph.adj
    while nodes and result:
        low = nodes & -nodes
        result &= adj[low.bit_length() - 1]
        nodes ^= low
    return result


def is_complete_bipartite_between(graph: Graph, a: NodeSet, b: NodeSet) -> bool:
    if a & b:
        raise ParameterError(f"sets {format_nodeset(a)} and {format_nodeset(b)} overlap")
    return b & ~common_neighborhood(graph, a) == 0


def contains_complete_bipartite(graph: Graph, l: int, m: int) -> bool:
    """True iff some disjoint A, B with |A| = l, |B| = m span a complete bipartite subgraph.

    Such a pair exists iff some l-set A has |CN(A)| >= m, so the search runs
    over A only, pruning any partial A whose common neighbourhood is too small.
    """
    if l < 1 or m < 1:
        raise ParameterError("l and m must be >= 1")
    small, large = min(l, m), max(l, m)
    if small + large > graph.n:
        return False

    def extend(start: int, depth: int, cn: NodeSet) -> bool:
        if size(cn) < large:
            return False
        if depth == small:
            return True
        for v in range(start, graph.n):
            if extend(v + 1, depth + 1, cn & graph.adj[v]):
                return True
        return False

    return extend(0, 0, graph.vertex_mask)


def max_clique_size(graph: Graph) -> int:
    best = 0

    def expand(clique_size: int, candidates: int) -> None:
        nonlocal best
        if not candidates:
            best = max(best, clique_size)
            return
        if clique_size + size(candidates) <= best:
            return
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            expand(clique_size + 1, candidates & graph.adj[v])
            if clique_size + size(candidates) <= best:
                return

    expand(0, graph.vertex_mask)
    return best


def chromatic_number(graph: Graph, budget: int = 2_000_000) -> int:
    """Exact chromatic number by k-colouring backtracking, k from the clique size up.

    ``budget`` bounds the total number of search nodes; exceeding it raises
    :class:`ResourceError`.
    """
    n = graph.n
    order = sorted(range(n), key=lambda v: -size(graph.adj[v]))
    steps = 0

    def colourable(k: int) -> bool:
        nonlocal steps
        colour = [-1] * n

        def place(i: int, used: int) -> bool:
            nonlocal steps
            if i == n:
                return True
            steps += 1
            if steps > budget:
                raise ResourceError(f"chromatic number search for {graph!r} exceeded {budget} steps")
            v = order[i]
            taken = {colour[u] for u in members(graph.adj[v])}
            # symmetry breaking: never open more than one new colour at a time
            for c in range(min(k, used + 1)):
                if c not in taken:
                    colour[v] = c
                    if place(i + 1, max(used, c + 1)):
                        return True
            colour[v] = -1
            return False

        return place(0, 0)

    k = max(max_clique_size(graph), 1)
    while not colourable(k):
        k += 1
    return k


# CN laws --------------------------------------------------------------------

LAWS = {
    "a": "A and CN(A) are disjoint",
    "b": "A subset of B implies CN(B) subset of CN(A)",
    "c": "A subset of CN(CN(A))",
    "d": "CN(A) == CN(CN(CN(A)))",
}

EXHAUSTIVE_LIMIT = 20  # exhaustive while 2**n <= 2**20
SAMPLE_SEED = 20031021
SAMPLE_COUNT = 10_000


@dataclass
class LawResult:
    passed: bool = True
    counterexample: tuple | None = None


@dataclass
class LawsReport:
    mode: str
    checked: int
    laws: dict[str, LawResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.laws.values())


def cn_laws_report(graph: Graph, seed: int = SAMPLE_SEED, samples: int = SAMPLE_COUNT) -> LawsReport:
    """Check the four CN laws over all subsets, or a seeded sample for n > 20.

    Law (b) is checked on covering pairs A, A + {v}; transitivity extends it to
    every pair A subset of B.  In sampled mode B is A plus a random subset.
    """
    cn = lambda s: common_neighborhood(graph, s)  # noqa: E731
    full = graph.vertex_mask
    laws = {key: LawResult() for key in LAWS}

    def fail(key, witness):
        if laws[key].passed:
            laws[key] = LawResult(False, witness)

    def check(a: NodeSet, supersets: Iterable[NodeSet]) -> None:
        ca = cn(a)
        cca = cn(ca)
        if a & ca:
            fail("a", (members(a),))
        if a & ~cca:
            fail("c", (members(a),))
        if cn(cca) != ca:
            fail("d", (members(a),))
        for b in supersets:
            if cn(b) & ~ca:
                fail("b", (members(a), members(b)))

    if graph.n <= EXHAUSTIVE_LIMIT:
        mode, checked = "exhaustive", 0
        for a in range(1 << graph.n):
            check(a, (a | 1 << v for v in range(graph.n) if not a >> v & 1))
            checked += 1
    else:
        mode, checked = f"sampled(seed={seed})", samples
        rng = random.Random(seed)
        for _ in range(samples):
            a = rng.getrandbits(graph.n) & full
            check(a, [a | (rng.getrandbits(graph.n) & full)])
    return LawsReport(mode, checked, laws)
