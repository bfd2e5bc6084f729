import itertools

import pytest
from hypothesis import given, settings, strategies as st

from boxcomplex.errors import ConstructionError, ParameterError
from boxcomplex.simplicial import (
    Chain,
    Complex,
    Label,
    Shore,
    VertexMap,
    Z2Complex,
    barycentric_subdivision,
    boundary_of_simplex,
    certify_isomorphism,
    check_equivariant,
    check_free,
    check_simplicial,
    from_facets,
    identity_map,
    image_complex,
    induced_subcomplex,
    join,
    left,
    parse_facet_list,
    parse_label,
    right,
    shore_subdivision,
    simplex,
    unsided,
)

a, b, c, d = (unsided(i) for i in range(4))


def cycle(n, tag=unsided):
    vs = [tag(i) for i in range(n)]
    return Complex([{vs[i], vs[(i + 1) % n]} for i in range(n)], f"C{n}")


@st.composite
def complexes(draw, max_vertices=6, shore=None):
    n = draw(st.integers(1, max_vertices))
    vs = [Label(shore if shore is not None else Shore(draw(st.integers(0, 1))), 1 << i) for i in range(n)]
    facets = draw(st.lists(st.sets(st.sampled_from(vs), min_size=1, max_size=4), min_size=1, max_size=6))
    return Complex(facets)


def fixed_faces_brute(z: Z2Complex):
    return [f for f in z.complex.all_faces() if frozenset(z.nu[v] for v in f) == f]


# construction ------------------------------------------------------------------

def test_from_facets_basic():
    k = from_facets([a, b, c], [{a, b}, {b, c}])
    assert len(k.vertices) == 3 and k.dimension == 1


def test_from_facets_prunes_dominated():
    k = from_facets([a, b], [{a}, {a, b}])
    assert k.facets == (frozenset({a, b}),)


def test_from_facets_empty_and_unknown():
    k = from_facets([], [])
    assert k.dimension == -1 and k.f_vector == ()
    with pytest.raises(ConstructionError):
        from_facets([a], [{a, b}])


def test_counts():
    tri = boundary_of_simplex([a, b, c])
    assert tri.f_vector == (3, 3) and tri.euler_characteristic == 0
    c10 = cycle(10)
    assert c10.f_vector == (10, 10) and c10.dimension == 1
    tet = simplex([a, b, c, d])
    assert tet.dimension == 3 and tet.euler_characteristic == 1


def test_faces_are_sorted_and_hereditary():
    k = simplex([a, b, c])
    assert [len(f) for f in k.faces(1)] == [2, 2, 2]
    assert frozenset() in k and frozenset({a, c}) in k and frozenset({a, d}) not in k
    assert k.faces(5) == [] and k.faces(-1) == []


def test_facet_text_roundtrip():
    k = Complex([{left(0), right(1, 2)}, {left(1)}])
    text = k.to_text()
    assert "L:{0} R:{1,2}" in text
    assert parse_facet_list(text) == k
    assert parse_label("U:{1,4}") == unsided(1, 4)
    with pytest.raises(ConstructionError):
        parse_label("X:{1}")


# subdivisions and join ------------------------------------------------------------

def test_sd_edge_and_triangle():
    sd_edge = barycentric_subdivision(simplex([a, b]))
    assert sd_edge.f_vector == (3, 2)
    sd_tri = barycentric_subdivision(boundary_of_simplex([a, b, c]))
    assert sd_tri.f_vector == (6, 6)
    assert all(sum(v in f for f in sd_tri.facets) == 2 for v in sd_tri.vertices)


def test_sd_rejects_non_injective_relabel():
    with pytest.raises(ConstructionError):
        barycentric_subdivision(simplex([a, b]), relabel=lambda f: a)


def test_join():
    p, q = simplex([left(0)]), simplex([right(0)])
    assert join(p, q).f_vector == (2, 1)
    s0 = Complex([{left(0)}, {left(1)}])
    t0 = Complex([{right(0)}, {right(1)}])
    square = join(s0, t0)
    assert square.f_vector == (4, 4) and square.euler_characteristic == 0
    assert join(s0, Complex([])) == s0
    with pytest.raises(ConstructionError):
        join(s0, s0)


def test_shore_subdivision_edge():
    k = simplex([left(0), right(1)])
    assert shore_subdivision(k, ({left(0)}, {right(1)})) == k


def test_shore_subdivision_requires_partition():
    k = simplex([left(0), right(1)])
    with pytest.raises(ConstructionError):
        shore_subdivision(k, ({left(0)}, set()))


def test_shore_subdivision_with_empty_shore_is_sd():
    k = boundary_of_simplex([left(0), left(1), left(2)])
    assert shore_subdivision(k, (k.vertices, ())) == barycentric_subdivision(k)


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_subdivisions_preserve_euler(k):
    first = {v for v in k.vertices if v.shore is Shore.LEFT}
    ssd = shore_subdivision(k, (first, k.vertices - first))
    sd = barycentric_subdivision(k)  # payloads are distinct bits, so unions are injective
    assert sd.euler_characteristic == k.euler_characteristic
    assert ssd.euler_characteristic == k.euler_characteristic
    assert sd.f_vector[0] == k.num_faces()
    assert sum((-1) ** i * f for i, f in enumerate(k.f_vector)) == k.euler_characteristic


def test_induced_subcomplex():
    square = cycle(4)
    assert induced_subcomplex(square, square.vertices) == square
    assert induced_subcomplex(square, []).f_vector == ()
    assert induced_subcomplex(square, [a, b]) == simplex([a, b])


# maps --------------------------------------------------------------------------

def test_check_simplicial():
    path = Complex([{a, b}, {b, c}])
    assert check_simplicial(identity_map(path))
    assert check_simplicial(VertexMap(path, path, {v: a for v in path.vertices}))
    bad = VertexMap(path, path, {a: a, b: c, c: b})
    verdict = check_simplicial(bad)
    assert not verdict and verdict.witness == frozenset({a, b})


def test_image_complex():
    path = Complex([{a, b}, {b, c}])
    assert image_complex(identity_map(path)) == path
    tri = simplex([a, b, c])
    squash = VertexMap(path, tri, {a: a, b: a, c: c})
    img = image_complex(squash)
    assert img == simplex([a, c])
    assert image_complex(identity_map(img)) == img
    with pytest.raises(ParameterError):
        image_complex(VertexMap(path, path, {a: a, b: c, c: b}))


def test_check_equivariant():
    s0 = Complex([{left(0)}, {right(0)}])
    swap = {left(0): right(0), right(0): left(0)}
    ident = {v: v for v in s0.vertices}
    assert check_equivariant(identity_map(s0), swap, swap)
    antipodal = VertexMap(s0, s0, swap)
    assert not check_equivariant(antipodal, swap, ident)


def test_check_free():
    s0 = Complex([{left(0)}, {right(0)}])
    assert check_free(Z2Complex(s0, {left(0): right(0), right(0): left(0)}))
    edge = simplex([a, b])
    verdict = check_free(Z2Complex(edge, {a: b, b: a}))
    assert not verdict and verdict.witness == frozenset({a, b})


@settings(max_examples=80, deadline=None)
@given(complexes(max_vertices=6, shore=Shore.UNSIDED), st.randoms())
def test_check_free_matches_exhaustive(k, rnd):
    verts = sorted(k.vertices)
    rnd.shuffle(verts)
    nu = {}
    for i in range(0, len(verts) - 1, 2):
        nu[verts[i]], nu[verts[i + 1]] = verts[i + 1], verts[i]
    if len(verts) % 2:
        nu[verts[-1]] = verts[-1]
    z = Z2Complex(k, nu)
    assert bool(check_free(z)) == (not fixed_faces_brute(z))


def test_certify_isomorphism():
    assert certify_isomorphism(identity_map(cycle(5)))
    path = Complex([{a, b}, {b, c}])
    tri = boundary_of_simplex([a, b, c])
    assert not certify_isomorphism(VertexMap(path, tri, {a: a, b: b, c: c}))


def test_z2complex_certify():
    s0 = Complex([{left(0)}, {right(0)}])
    assert Z2Complex(s0, {left(0): right(0), right(0): left(0)}).certify()
    assert not Z2Complex(s0, {left(0): right(0), right(0): right(0)}).check_involution()


# chains ----------------------------------------------------------------------------

def test_chain_notation():
    ch = Chain((0b1, 0b11, 0b111))
    assert ch.head(2).sets == (0b1, 0b11)
    assert ch.tail(2).sets == (0b11, 0b111)
    assert ch.head(2).concatenate(ch.tail(2)) == ch
    assert Chain((0b1,)).concatenate(Chain((0b11, 0b111))) == ch
    with pytest.raises(ConstructionError):
        Chain((0b11, 0b1))
    with pytest.raises(ConstructionError):
        Chain((0b11,)).concatenate(Chain((0b100,)))


def test_sd_face_count_brute():
    # oracle: enumerate strict chains of nonempty faces of a 2-simplex
    k = simplex([a, b, c])
    sd = barycentric_subdivision(k)
    chains = 0
    faces = [frozenset(s) for r in (1, 2, 3) for s in itertools.combinations([a, b, c], r)]
    for r in (1, 2, 3):
        for seq in itertools.permutations(faces, r):
            if all(x < y for x, y in zip(seq, seq[1:])):
                chains += 1
    assert sd.num_faces() == chains == 7 + 12 + 6
