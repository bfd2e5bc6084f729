import random

import pytest
from hypothesis import given, settings, strategies as st

from boxcomplex.homology import (
    BettiProfile,
    betti_gf2,
    boundary_matrices,
    gf2_rank,
    homological_connectivity,
    rank_dense,
    sphere_profile,
)
from boxcomplex.simplicial import Complex, Label, Shore, boundary_of_simplex, join, left, right, simplex, unsided


def sphere(d, tag=unsided, offset=0):
    return boundary_of_simplex([tag(offset + i) for i in range(d + 2)])


def cycle(n):
    vs = [unsided(i) for i in range(n)]
    return Complex([{vs[i], vs[(i + 1) % n]} for i in range(n)])


def betti_dense(k: Complex) -> tuple[int, ...]:
    """Oracle: ranks of the ordered dense matrices via textbook elimination."""
    mats = boundary_matrices(k)
    fv = mats.f_vector
    ranks = [0] * (len(fv) + 1)
    for dim in mats.columns:
        ranks[dim] = rank_dense(mats.dense(dim))
    return tuple(fv[d] - ranks[d] - ranks[d + 1] for d in range(len(fv)))


@st.composite
def complexes(draw, max_vertices=7):
    vs = [unsided(i) for i in range(draw(st.integers(1, max_vertices)))]
    facets = draw(st.lists(st.sets(st.sampled_from(vs), min_size=1, max_size=5), min_size=1, max_size=8))
    return Complex(facets)


# ranks -----------------------------------------------------------------------

def test_rank_examples():
    assert gf2_rank([]) == 0
    assert gf2_rank([0b11, 0b11]) == 1
    assert gf2_rank([0b011, 0b110, 0b101]) == 2
    assert rank_dense([[1, 0], [0, 1]]) == 2


def test_rank_random_against_dense():
    rnd = random.Random(7)
    for _ in range(200):
        rows = [[rnd.randint(0, 1) for _ in range(20)] for _ in range(20)]
        cols = [sum(rows[r][c] << r for r in range(20)) for c in range(20)]
        assert gf2_rank(cols) == rank_dense(rows)


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_boundary_squared_is_zero(k):
    mats = boundary_matrices(k)
    for dim in mats.columns:
        if dim + 1 not in mats.columns:
            continue
        low, high = mats.dense(dim), mats.dense(dim + 1)
        for r in range(len(low)):
            for c in range(len(high[0])):
                assert sum(low[r][i] & high[i][c] for i in range(len(high))) % 2 == 0


def test_boundary_text():
    text = boundary_matrices(simplex([unsided(0), unsided(1)])).to_text()
    assert text == "d1: 2x1\n1\n1\n"


# Betti numbers -----------------------------------------------------------------

def test_betti_examples():
    assert betti_gf2(simplex([unsided(0)])) == BettiProfile((1,))
    assert betti_gf2(cycle(10)) == BettiProfile((1, 1))
    assert betti_gf2(sphere(2)) == BettiProfile((1, 0, 1))
    two_points = Complex([{unsided(0)}, {unsided(1)}])
    assert betti_gf2(two_points) == sphere_profile(0)
    assert betti_gf2(Complex([])) == BettiProfile(())


def test_betti_trailing_zeros_ignored():
    assert BettiProfile((1, 1, 0)) == BettiProfile((1, 1))
    assert hash(BettiProfile((1, 0, 0))) == hash(BettiProfile((1,)))
    assert BettiProfile((1, 0, 1)) != BettiProfile((1, 1))
    assert str(BettiProfile((1, 1))) == "b = (1, 1)"


def test_projective_plane_differs_mod_two():
    # 6-vertex RP^2: GF(2) sees b1 = b2 = 1, integer homology would not
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
            (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    rp2 = Complex([{unsided(i) for i in t} for t in tris])
    assert rp2.f_vector == (6, 15, 10)
    assert betti_gf2(rp2) == BettiProfile((1, 1, 1))


@pytest.mark.parametrize("p, q", [(0, 0), (0, 1), (1, 1), (1, 2)])
def test_join_of_spheres(p, q):
    k = join(sphere(p, left), sphere(q, right))
    assert betti_gf2(k) == sphere_profile(p + q + 1)


@settings(max_examples=80, deadline=None)
@given(complexes())
def test_betti_matches_dense_and_euler(k):
    profile = betti_gf2(k)
    assert profile == BettiProfile(betti_dense(k))
    assert profile.euler_characteristic == k.euler_characteristic


# connectivity ------------------------------------------------------------------

def test_connectivity_examples():
    assert homological_connectivity(Complex([])) == -1
    assert homological_connectivity(Complex([{unsided(0)}, {unsided(1)}])) == -1
    assert homological_connectivity(cycle(5)) == 0
    assert homological_connectivity(sphere(3)) == 2
    assert homological_connectivity(simplex([unsided(i) for i in range(4)])) == 3


def test_connectivity_of_wedge():
    k = Complex([*cycle(4).facets, {unsided(0), unsided(9)}, {unsided(9), unsided(8)}, {unsided(8), unsided(0)}])
    assert homological_connectivity(k) == 0
    assert betti_gf2(k).reduced == (0, 2)


def test_sphere_profile():
    assert sphere_profile(0).betti == (2,)
    assert sphere_profile(3).betti == (1, 0, 0, 1)
    assert sphere_profile(3).reduced == (0, 0, 0, 1)


def test_labels_with_shores():
    k = Complex([{Label(Shore.LEFT, 1), Label(Shore.RIGHT, 1)}])
    assert betti_gf2(k) == BettiProfile((1,))
