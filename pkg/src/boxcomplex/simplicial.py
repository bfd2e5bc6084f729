"""Finite abstract simplicial complexes with labelled vertices.

A complex is stored by its facets; faces are materialised lazily.  Vertices
are :class:`Label` values, a shore tag plus a node set, which covers every
complex this package builds (N, L, B and their subdivisions).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property, lru_cache
from typing import Callable, Collection, Iterable, Iterator, Mapping, NamedTuple, Union

from .errors import ConstructionError, ParameterError
from .graph_core import NodeSet, format_nodeset, members, nodeset, size


class Shore(IntEnum):
    LEFT = 0
    RIGHT = 1
    UNSIDED = 2

    @property
    def tag(self) -> str:
        return "LRU"[self]


class Label(NamedTuple):
    shore: Shore
    nodes: NodeSet

    def __str__(self) -> str:
        return f"{self.shore.tag}:{format_nodeset(self.nodes)}"

    def swapped(self) -> "Label":
        if self.shore is Shore.UNSIDED:
            raise ParameterError(f"cannot swap the shore of unsided label {self}")
        return Label(Shore(1 - self.shore), self.nodes)


def left(*nodes: int) -> Label:
    return Label(Shore.LEFT, nodeset(nodes))


def right(*nodes: int) -> Label:
    return Label(Shore.RIGHT, nodeset(nodes))


def unsided(*nodes: int) -> Label:
    return Label(Shore.UNSIDED, nodeset(nodes))


def parse_label(text: str) -> Label:
    tag, _, body = text.strip().partition(":")
    if tag not in ("L", "R", "U") or not (body.startswith("{") and body.endswith("}")):
        raise ConstructionError(f"bad label {text!r}")
    inner = body[1:-1].strip()
    nodes = nodeset(int(x) for x in inner.split(",")) if inner else 0
    if not nodes:
        raise ConstructionError(f"label {text!r} has an empty payload")
    return Label(Shore("LRU".index(tag)), nodes)


@lru_cache(maxsize=1 << 16)
def label_key(label: Label) -> tuple:
    return (int(label.shore), size(label.nodes), members(label.nodes))


def face_key(face: Iterable[Label]) -> tuple:
    return tuple(sorted(label_key(v) for v in face))


def format_face(face: Iterable[Label]) -> str:
    return " ".join(str(v) for v in sorted(face, key=label_key))


Face = frozenset  # of Label


def _prune(facets: Iterable[frozenset]) -> list[frozenset]:
    """Drop empty and dominated sets, keeping the inclusion-maximal ones."""
    pool = sorted({f for f in facets if f}, key=len, reverse=True)
    kept: list[frozenset] = []
    by_vertex: dict[Label, list[int]] = {}
    for cand in pool:
        buckets = [by_vertex.get(v, ()) for v in cand]
        smallest = min(buckets, key=len)
        if any(cand <= kept[i] for i in smallest):
            continue
        for v in cand:
            by_vertex.setdefault(v, []).append(len(kept))
        kept.append(cand)
    return kept


class Complex:
    """An abstract simplicial complex given by its facets.

    The empty face is implicit and never stored.  Pass ``maximal=True`` only
    when the facets are already known to be pairwise incomparable.
    """

    def __init__(self, facets: Iterable[Collection[Label]], name: str = "", *, maximal: bool = False):
        sets = [frozenset(f) for f in facets]
        if not maximal:
            sets = _prune(sets)
        else:
            sets = [f for f in sets if f]
        self.facets: tuple[frozenset, ...] = tuple(sorted(set(sets), key=face_key))
        self.vertices: frozenset = frozenset().union(*self.facets)
        self.name = name

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Complex{label} dim={self.dimension} f={self.f_vector}>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return set(self.facets) == set(other.facets)

    def __hash__(self) -> int:
        return hash(frozenset(self.facets))

    @cached_property
    def _face_sets(self) -> list[set]:
        top = max((len(f) for f in self.facets), default=0)
        layers: list[set] = [set() for _ in range(top)]
        for facet in self.facets:
            verts = tuple(facet)
            for k in range(1, len(verts) + 1):
                layer = layers[k - 1]
                layer.update(map(frozenset, itertools.combinations(verts, k)))
        return layers

    @cached_property
    def _sorted_faces(self) -> dict[int, list[frozenset]]:
        return {}

    def faces(self, k: int) -> list[frozenset]:
        """All k-dimensional faces in deterministic order."""
        if k < 0 or k >= len(self._face_sets):
            return []
        cache = self._sorted_faces
        if k not in cache:
            cache[k] = sorted(self._face_sets[k], key=face_key)
        return cache[k]

    def all_faces(self) -> Iterator[frozenset]:
        for layer in self._face_sets:
            yield from layer

    def num_faces(self) -> int:
        return sum(len(layer) for layer in self._face_sets)

    def __contains__(self, face: Collection[Label]) -> bool:
        face = frozenset(face)
        if not face:
            return True
        layers = self._face_sets
        return len(face) <= len(layers) and face in layers[len(face) - 1]

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self._face_sets)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * fk for k, fk in enumerate(self.f_vector))

    def to_text(self) -> str:
        """Facet-list format: one facet per line, deterministic order."""
        return "".join(format_face(f) + "\n" for f in self.facets)


def from_facets(labels: Iterable[Label], facet_list: Iterable[Collection[Label]], name: str = "") -> Complex:
    known = set(labels)
    facets = [frozenset(f) for f in facet_list]
    for facet in facets:
        unknown = facet - known
        if unknown:
            raise ConstructionError(f"facet references unknown label(s) {format_face(unknown)}")
    return Complex(facets, name)


def parse_facet_list(text: str, name: str = "") -> Complex:
    facets = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            facets.append(frozenset(parse_label(tok) for tok in line.split()))
    return Complex(facets, name)


def simplex(labels: Iterable[Label], name: str = "") -> Complex:
    return Complex([frozenset(labels)], name)


def boundary_of_simplex(labels: Iterable[Label], name: str = "") -> Complex:
    verts = list(labels)
    return Complex([frozenset(c) for c in itertools.combinations(verts, len(verts) - 1)], name, maximal=True)


def dimension(k: Complex) -> int:
    return k.dimension


def f_vector(k: Complex) -> tuple[int, ...]:
    return k.f_vector


def euler_characteristic(k: Complex) -> int:
    return k.euler_characteristic


# subdivisions ---------------------------------------------------------------

def union_label(face: Iterable[Label], shore: Shore | None = None) -> Label:
    """Label for a subdivision vertex: union of payloads, common shore tag."""
    face = list(face)
    if shore is None:
        shores = {v.shore for v in face}
        shore = shores.pop() if len(shores) == 1 else Shore.UNSIDED
    payload = 0
    for v in face:
        payload |= v.nodes
    return Label(shore, payload)


def maximal_flags(face: Collection[Label]) -> Iterator[tuple[frozenset, ...]]:
    """Maximal chains of nonempty subfaces of ``face``, bottom first."""
    for order in itertools.permutations(face):
        yield tuple(frozenset(order[:i]) for i in range(1, len(order) + 1))


def _check_injective(relabel: Callable[[frozenset], Label], faces: Iterable[frozenset]) -> dict:
    table: dict[frozenset, Label] = {}
    seen: dict[Label, frozenset] = {}
    for face in faces:
        lab = relabel(face)
        if lab in seen and seen[lab] != face:
            raise ConstructionError(
                f"relabelling is not injective: {format_face(face)} and {format_face(seen[lab])} both map to {lab}"
            )
        seen[lab] = face
        table[face] = lab
    return table


def barycentric_subdivision(k: Complex, relabel: Callable[[frozenset], Label] = union_label, name: str = "") -> Complex:
    """Order complex of the nonempty faces of ``k``, vertices renamed by ``relabel``."""
    table = _check_injective(relabel, k.all_faces())
    facets = []
    for facet in k.facets:
        for flag in maximal_flags(facet):
            facets.append(frozenset(table[f] for f in flag))
    return Complex(facets, name or f"sd({k.name})", maximal=True)


def join(k: Complex, l: Complex, name: str = "") -> Complex:
    overlap = k.vertices & l.vertices
    if overlap:
        raise ConstructionError(f"join of complexes sharing labels {format_face(overlap)}")
    if not k.facets:
        return Complex(l.facets, name or l.name, maximal=True)
    if not l.facets:
        return Complex(k.facets, name or k.name, maximal=True)
    facets = [s | t for s in k.facets for t in l.facets]
    return Complex(facets, name or f"{k.name}*{l.name}", maximal=True)


def shore_subdivision(k: Complex, partition: tuple[Collection[Label], Collection[Label]], name: str = "") -> Complex:
    """Facets are products of maximal flags taken separately in each part of a face.

    Subdivision vertices get shore ``LEFT`` (first part) or ``RIGHT`` (second
    part) and the union of the face's payloads.
    """
    first, second = frozenset(partition[0]), frozenset(partition[1])
    if first & second:
        raise ConstructionError(f"shore partition overlaps in {format_face(first & second)}")
    missing = k.vertices - first - second
    if missing:
        raise ConstructionError(f"shore partition misses {format_face(missing)}")

    faces = list(k.all_faces())
    table = {}
    for shore, part in ((Shore.LEFT, first), (Shore.RIGHT, second)):
        table.update(
            _check_injective(lambda f, s=shore: union_label(f, s), (f for f in faces if f <= part))
        )

    facets = []
    for facet in k.facets:
        one, two = facet & first, facet & second
        flags_one = list(maximal_flags(one)) if one else [()]
        flags_two = list(maximal_flags(two)) if two else [()]
        for a in flags_one:
            lifted = frozenset(table[f] for f in a)
            for b in flags_two:
                facets.append(lifted | frozenset(table[f] for f in b))
    return Complex(facets, name or f"ssd({k.name})", maximal=True)


def induced_subcomplex(k: Complex, vertices: Iterable[Label], name: str = "") -> Complex:
    keep = frozenset(vertices)
    return Complex([f & keep for f in k.facets], name or k.name)


# chains ---------------------------------------------------------------------

@dataclass(frozen=True)
class Chain:
    """A strictly increasing sequence of node sets A1 < ... < Ap."""

    sets: tuple[NodeSet, ...]

    def __post_init__(self):
        if not self.sets:
            raise ConstructionError("a chain has at least one member")
        for lo, hi in zip(self.sets, self.sets[1:]):
            if lo == hi or lo & ~hi:
                raise ConstructionError(f"{format_nodeset(lo)} is not strictly below {format_nodeset(hi)}")

    @classmethod
    def of(cls, sets: Iterable[NodeSet]) -> "Chain":
        return cls(tuple(sorted(sets, key=lambda s: (size(s), members(s)))))

    def __len__(self) -> int:
        return len(self.sets)

    @property
    def top(self) -> NodeSet:
        return self.sets[-1]

    @property
    def bottom(self) -> NodeSet:
        return self.sets[0]

    def head(self, t: int) -> "Chain":
        """A1 < ... < At (1-based)."""
        return Chain(self.sets[:t])

    def tail(self, t: int) -> "Chain":
        """At < ... < Ap (1-based)."""
        return Chain(self.sets[t - 1:])

    def concatenate(self, other: "Chain") -> "Chain":
        """Join two chains when the top of this one sits inside the bottom of ``other``."""
        if self.top & ~other.bottom:
            raise ConstructionError("chains cannot be concatenated: top not contained in bottom")
        rest = other.sets[1:] if self.top == other.bottom else other.sets
        return Chain(self.sets + rest)


# maps and certificates ------------------------------------------------------

@dataclass(frozen=True)
class Check:
    """Outcome of a certificate: truthiness plus an optional witness."""

    ok: bool
    witness: object = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


Involution = Union[Mapping[Label, Label], Callable[[Label], Label]]


def _as_callable(nu: Involution) -> Callable[[Label], Label]:
    return nu.__getitem__ if isinstance(nu, Mapping) else nu


class VertexMap:
    """A total map from the vertices of ``source`` into those of ``target``."""

    def __init__(self, source: Complex, target: Complex, assignment: Mapping[Label, Label], name: str = ""):
        missing = source.vertices - assignment.keys()
        if missing:
            raise ConstructionError(f"vertex map undefined on {format_face(missing)}")
        stray = {assignment[v] for v in source.vertices} - target.vertices
        if stray:
            raise ConstructionError(f"vertex map leaves the target at {format_face(stray)}")
        self.source = source
        self.target = target
        self.assignment = {v: assignment[v] for v in source.vertices}
        self.name = name

    def __call__(self, v: Label) -> Label:
        return self.assignment[v]

    def __repr__(self) -> str:
        return f"<VertexMap {self.name or '?'}: {self.source.name} -> {self.target.name}>"

    def apply(self, face: Iterable[Label]) -> frozenset:
        return frozenset(self.assignment[v] for v in face)

    def then(self, other: "VertexMap", name: str = "") -> "VertexMap":
        """``other`` after ``self``."""
        return VertexMap(
            self.source, other.target, {v: other(w) for v, w in self.assignment.items()}, name
        )

    def restrict(self, target: Complex) -> "VertexMap":
        return VertexMap(self.source, target, self.assignment, self.name)

    def to_text(self) -> str:
        rows = sorted(self.assignment.items(), key=lambda kv: label_key(kv[0]))
        return "".join(f"{v} -> {w}\n" for v, w in rows)


def identity_map(k: Complex) -> VertexMap:
    return VertexMap(k, k, {v: v for v in k.vertices}, "id")


def check_simplicial(f: VertexMap) -> Check:
    for facet in f.source.facets:
        if f.apply(facet) not in f.target:
            return Check(False, facet, f"image of {format_face(facet)} is not a face of {f.target.name}")
    return Check(True)


def image_complex(f: VertexMap, name: str = "") -> Complex:
    verdict = check_simplicial(f)
    if not verdict:
        raise ParameterError(f"image of a non-simplicial map: {verdict.detail}")
    return Complex((f.apply(facet) for facet in f.source.facets), name or f"im {f.name}")


def check_equivariant(f: VertexMap, nu_src: Involution, nu_tgt: Involution) -> Check:
    ns, nt = _as_callable(nu_src), _as_callable(nu_tgt)
    for v in sorted(f.source.vertices, key=label_key):
        if f(ns(v)) != nt(f(v)):
            return Check(False, v, f"f(nu({v})) = {f(ns(v))} but nu(f({v})) = {nt(f(v))}")
    return Check(True)


def check_idempotent(f: VertexMap) -> Check:
    for v in sorted(f.source.vertices, key=label_key):
        w = f(v)
        if w not in f.assignment or f(w) != w:
            return Check(False, v, f"f(f({v})) != f({v})")
    return Check(True)


def certify_isomorphism(f: VertexMap) -> Check:
    """Bijective on vertices, simplicial, and with a simplicial inverse."""
    image = set(f.assignment.values())
    if len(image) != len(f.source.vertices):
        return Check(False, None, "vertex map is not injective")
    if image != f.target.vertices:
        return Check(False, None, "vertex map is not onto the target vertices")
    forward = check_simplicial(f)
    if not forward:
        return forward
    inverse = VertexMap(f.target, f.source, {w: v for v, w in f.assignment.items()}, f"{f.name}^-1")
    backward = check_simplicial(inverse)
    if not backward:
        return Check(False, backward.witness, "inverse: " + backward.detail)
    return Check(True)


@dataclass
class Z2Complex:
    """A complex with a vertex involution ``nu``."""

    complex: Complex
    nu: dict

    @property
    def name(self) -> str:
        return self.complex.name

    def act(self, v: Label) -> Label:
        return self.nu[v]

    def check_involution(self) -> Check:
        for v in sorted(self.complex.vertices, key=label_key):
            w = self.nu.get(v)
            if w is None or w not in self.complex.vertices:
                return Check(False, v, f"nu({v}) is not a vertex")
            if self.nu.get(w) != v:
                return Check(False, v, f"nu(nu({v})) != {v}")
        return Check(True)

    def check_simplicial(self) -> Check:
        return check_simplicial(VertexMap(self.complex, self.complex, self.nu, "nu"))

    def certify(self) -> Check:
        for verdict in (self.check_involution(), self.check_simplicial(), check_free(self)):
            if not verdict:
                return verdict
        return Check(True)


def check_free(z: Z2Complex) -> Check:
    """No nonempty face is mapped onto itself by ``nu``.

    A face fixed setwise is a union of orbits, so it contains either a fixed
    vertex or an orbit pair ``{v, nu(v)}``, and that orbit is itself a fixed
    face.  Checking vertices and orbit pairs is therefore complete.
    """
    for v in sorted(z.complex.vertices, key=label_key):
        w = z.nu[v]
        orbit = frozenset((v, w))
        if orbit in z.complex:
            return Check(False, orbit, f"face {format_face(orbit)} is fixed by nu")
    return Check(True)


def swap_shores(vertices: Iterable[Label]) -> dict:
    return {v: v.swapped() for v in vertices}
