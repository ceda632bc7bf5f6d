import pytest

from helpers import (
    COMPATIBLE, CONIC, COVER_SHAPES, CUSP_COVER, GENUS2, NODE_COVER, double_cover, fact,
    random_braid, random_cover, random_moves,
)
from monodromy.braid import BraidWord, artin_action, band_generator, generator
from monodromy.cover import (
    CoveringData, branch_labels, build_fiber_surface, check_compatibility, fiber_genus,
    fiber_homology, format_covering, is_liftable, lift_homology, parse_covering,
)
from monodromy.errors import DisconnectedCover, MalformedInput, NotClosedAtInfinity, NotLiftable, RankMismatch
from monodromy.mcg import standard_form
from monodromy.perm import Permutation
from monodromy.zlinalg import IntMatrix, int_rank, primitive


def liftable_braid(rng, theta, pieces=2):
    """Product of short liftable conjugates w X_i^e w^-1."""
    d = theta.d
    out = BraidWord(d, ())
    for _ in range(pieces):
        w = random_braid(rng, d, 2)
        i = rng.randint(1, d - 1)
        for e in (1, 2, 3):
            b = w * generator(d, i) ** e * w.inverse()
            if is_liftable(theta, b):
                out = out * b
                break
    return out


def test_conic_is_compatible():
    F, theta = COMPATIBLE["conic"]
    r = check_compatibility(theta, F)
    assert r.compatible and r.transitive and r.closed_at_infinity


def test_node_needs_disjoint_labels():
    r = check_compatibility(double_cover(2), fact(2, ([], 1, 2)))
    assert not r.local_ok


def test_cusp_needs_adjacent_labels():
    theta = CoveringData.from_pairs(4, [(1, 2), (3, 4), (1, 2), (3, 4)])
    r = check_compatibility(theta, fact(4, ([], 1, 3)))
    assert any(n == 1 for n, _ in r.local_failures)


def test_compatibility_dimension_mismatch():
    with pytest.raises(RankMismatch):
        check_compatibility(double_cover(4), CONIC)


@pytest.mark.parametrize("name", sorted(COMPATIBLE))
def test_compatibility_survives_moves(name, rng):
    F, theta = COMPATIBLE[name]
    assert check_compatibility(theta, random_moves(rng, F, 6)).compatible


@pytest.mark.parametrize("N, pairs, g", [
    (2, [(1, 2)] * 2, 0),
    (2, [(1, 2)] * 6, 2),
    (3, [(1, 2), (1, 2), (2, 3), (2, 3)], 0),
])
def test_fiber_genus_examples(N, pairs, g):
    assert fiber_genus(CoveringData.from_pairs(N, pairs)) == g


def test_fiber_genus_errors():
    with pytest.raises(NotClosedAtInfinity):
        fiber_genus(CoveringData.from_pairs(2, [(1, 2)] * 3))
    with pytest.raises(DisconnectedCover):
        fiber_genus(COMPATIBLE["two_conics"][1])


def test_trivial_cover_is_a_sphere():
    S = build_fiber_surface(CoveringData(1, ()))
    assert S.euler_characteristic == 2
    assert fiber_homology(CoveringData(1, ())).rank == 0


def test_genus_two_surface():
    theta = double_cover(6)
    assert build_fiber_surface(theta).euler_characteristic == -2
    H = fiber_homology(theta)
    assert H.rank == 4 and H.group.torsion == ()
    assert H.form == standard_form(2)
    assert fiber_homology(double_cover(2)).rank == 0


def test_torus_form():
    H = fiber_homology(double_cover(4))
    assert H.rank == 2
    assert H.form == IntMatrix.from_rows([[0, 1], [-1, 0]])


def test_boundary_maps_compose_to_zero():
    S = build_fiber_surface(double_cover(6))
    assert (S.boundary_1 @ S.boundary_2).is_zero()


def test_liftability_examples(rng):
    theta = double_cover(6)
    assert all(is_liftable(theta, random_braid(rng, 6, 10)) for _ in range(10))
    a, b = Permutation.transposition(3, 1, 2), Permutation.transposition(3, 1, 3)
    theta = CoveringData(3, (a, b))
    # label transport by hand: X1 sends labels (s, t) to (s t s, s)
    step = lambda st: (st[0] * st[1] * st[0], st[0])
    orbit = [(a, b)]
    for _ in range(3):
        orbit.append(step(orbit[-1]))
    for k in (1, 2, 3):
        assert is_liftable(theta, generator(2, 1) ** k) == (orbit[k] == (a, b))
    assert not is_liftable(theta, generator(2, 1) ** 2)
    assert is_liftable(theta, generator(2, 1) ** 3)


def test_lift_examples():
    theta = double_cover(6)
    assert lift_homology(theta, BraidWord(6, ())) == IntMatrix.identity(4)
    M = lift_homology(theta, generator(6, 1))
    assert int_rank(M - IntMatrix.identity(4)) == 1
    with pytest.raises(NotLiftable):
        lift_homology(CoveringData.from_pairs(3, [(1, 2), (1, 3), (1, 3), (1, 2)]), generator(4, 1))


def test_node_and_cusp_lifts_are_trivial():
    one = lambda th: IntMatrix.identity(fiber_homology(th).rank)
    for k in (2, -2):
        b = band_generator(8, BraidWord(8, ()), 1, k)
        s, t = branch_labels(NODE_COVER, BraidWord(8, ()), 1)
        assert not (s.support() & t.support())
        assert lift_homology(NODE_COVER, b) == one(NODE_COVER)
    for i in (1, 4):
        b = band_generator(6, BraidWord(6, ()), i, 3)
        s, t = branch_labels(CUSP_COVER, BraidWord(6, ()), i)
        assert len(s.support() & t.support()) == 1
        assert lift_homology(CUSP_COVER, b) == one(CUSP_COVER)


@pytest.mark.parametrize("N, d", COVER_SHAPES)
def test_genus_matches_homology(N, d, rng):
    for _ in range(3):
        theta = random_cover(rng, N, d)
        g = fiber_genus(theta)
        H = fiber_homology(theta)
        assert H.rank == 2 * g
        assert H.form == standard_form(g)
        assert build_fiber_surface(theta).euler_characteristic == 2 * N - d


def test_lifts_are_symplectic_homomorphisms(rng):
    checked = 0
    while checked < 50:
        N, d = rng.choice([(2, 4), (2, 6), (3, 6), (3, 8), (4, 8), (2, 8)])
        theta = random_cover(rng, N, d)
        b1, b2 = liftable_braid(rng, theta), liftable_braid(rng, theta)
        M1, M2 = lift_homology(theta, b1), lift_homology(theta, b2)
        J = standard_form(fiber_genus(theta))
        assert M1.T @ J @ M1 == J
        assert lift_homology(theta, b1 * b2) == M1 @ M2
        assert lift_homology(theta, b1.inverse()) @ M1 == IntMatrix.identity(J.rows)
        checked += 1


def test_tangency_lifts_are_positive_transvections():
    theta = double_cover(6)
    J = standard_form(2)
    for i in range(1, 6):
        M = lift_homology(theta, generator(6, i))
        R = M - IntMatrix.identity(4)
        c = primitive(next(R.column(j) for j in range(4) if any(R.column(j))))
        # x + <c, x> c with <u, v> = u^T J v
        expected = [[int(r == k) + c[r] * sum(c[p] * J[p, k] for p in range(4)) for k in range(4)]
                    for r in range(4)]
        assert M == IntMatrix.from_rows(expected)


def test_text_round_trip():
    theta = NODE_COVER
    assert parse_covering(format_covering(theta)) == theta
    with pytest.raises(MalformedInput) as exc:
        parse_covering("N 3\nlabels (1 2) (1 2 3)\n")
    assert exc.value.line == 2
