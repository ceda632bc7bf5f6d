import pytest

from helpers import CONIC, LANTERN, PROJECTIVE, fact, random_factorization, random_moves
from monodromy.braid import BraidWord, artin_action, braid_equal, full_twist, generator
from monodromy.errors import InvalidFactor, MalformedInput, NotCancellingPair, RankMismatch
from monodromy.factor import (
    Factor, Factorization, apply_moves, canonical_key, delete_node_pair, factor,
    format_factorization, global_conjugate, hurwitz_equivalent, hurwitz_move,
    insert_node_pair, parse_factorization, product, validate,
)


def factorwise_equal(F, G):
    return canonical_key(F) == canonical_key(G)


def test_product_examples():
    assert product(fact(1)).letters == ()
    assert braid_equal(product(CONIC), full_twist(2))
    f = factor(3, [2], 1, 2)
    assert braid_equal(product(Factorization(3, (f,))), f.word)


def test_validate_examples():
    r = validate(CONIC)
    assert r.valid and r.tangencies == 2
    assert r.summary() == "product=Δ² OK, 2 tangencies"
    assert not validate(fact(2, ([], 1, 1))).valid
    r = validate(LANTERN)
    assert r.valid and r.positive_nodes == 3


@pytest.mark.parametrize("name", sorted(PROJECTIVE))
def test_corpus_is_valid(name):
    assert validate(PROJECTIVE[name]).valid


def test_illegal_exponent_rejected():
    with pytest.raises(InvalidFactor):
        factor(2, [], 1, 4)
    with pytest.raises(InvalidFactor):
        factor(2, [], 2, 1)


def test_hurwitz_definition():
    F = fact(3, ([], 1, 1), ([], 2, 1))
    G = hurwitz_move(F, 1, "forward")
    X1, X2 = generator(3, 1), generator(3, 2)
    assert braid_equal(G.factors[0].word, X1 * X2 * X1.inverse())
    assert braid_equal(G.factors[1].word, X1)
    assert factorwise_equal(hurwitz_move(G, 1, "backward"), F)
    with pytest.raises(IndexError):
        hurwitz_move(F, 2)


def test_global_conjugation():
    assert factorwise_equal(global_conjugate(CONIC, BraidWord(2, ())), CONIC)
    assert factorwise_equal(global_conjugate(CONIC, generator(2, 1)), CONIC)
    G = global_conjugate(LANTERN, full_twist(3))
    assert braid_equal(product(G), product(LANTERN))
    with pytest.raises(RankMismatch):
        global_conjugate(CONIC, generator(3, 1))


def test_node_pairs():
    G = insert_node_pair(CONIC, 1, BraidWord(2, ()), 1)
    assert len(G) == 4 and validate(G).valid
    assert factorwise_equal(delete_node_pair(G, 1), CONIC)
    with pytest.raises(NotCancellingPair):
        delete_node_pair(CONIC, 1)


def test_canonical_key_respects_artin_equality():
    # X1 X2 X1^-1 equals X2^-1 X1 X2 as braids: two spellings of one band
    a = Factor(BraidWord(3, (1,)), 2, 1)
    b = Factor(BraidWord(3, (-2,)), 1, 1)
    assert braid_equal(a.word, b.word)
    assert canonical_key(Factorization(3, (a,))) == canonical_key(Factorization(3, (b,)))
    F = fact(3, ([], 1, 1), ([], 2, 1))
    G = fact(3, ([], 2, 1), ([], 1, 1))
    assert canonical_key(F) != canonical_key(G)


def test_search_examples():
    F = fact(3, ([], 1, 1), ([], 2, 2), ([1], 2, 3))
    res = hurwitz_equivalent(F, hurwitz_move(F, 1, "forward"))
    assert res.found and len(res.path) == 1
    res = hurwitz_equivalent(fact(3, ([], 1, 1), ([], 1, 1)), fact(3, ([], 1, 1), ([], 2, 1)))
    assert res.status == "refuted"
    with pytest.raises(RankMismatch):
        hurwitz_equivalent(CONIC, LANTERN)


def test_search_with_conjugation():
    G = global_conjugate(LANTERN, generator(3, 2))
    assert hurwitz_equivalent(LANTERN, G, allow_conjugation=True).found


def test_search_is_deterministic(rng):
    F = random_factorization(rng, 4, 4)
    G = random_moves(rng, F, 3)
    r1, r2 = hurwitz_equivalent(F, G), hurwitz_equivalent(F, G)
    assert r1.path == r2.path
    assert factorwise_equal(apply_moves(F, r1.path), G)


def test_random_moves_preserve_product(rng):
    for _ in range(20):
        d = rng.randint(2, 4)
        F = random_factorization(rng, d, rng.randint(2, 5))
        G = random_moves(rng, F, 5)
        assert braid_equal(product(F), product(G))
        assert F.exponents() == G.exponents()
        H = insert_node_pair(G, rng.randint(1, len(G) + 1), BraidWord(d, (1,)), 1)
        assert braid_equal(product(H), product(F))


def test_text_round_trip():
    for F in PROJECTIVE.values():
        assert parse_factorization(format_factorization(F)) == F


@pytest.mark.parametrize("text, line", [
    ("degree 2\nfactor conj=- base=1 exp=4\n", 2),
    ("degree x\n", 1),
    ("degree 3\n# note\nfactor conj=1 base=1\n", 3),
    ("degree 2\nfactor conj=- base=2 exp=1\n", 2),
])
def test_parse_errors_carry_position(text, line):
    with pytest.raises(MalformedInput) as exc:
        parse_factorization(text)
    assert exc.value.line == line


def test_moved_factors_carry_correct_actions(rng):
    # actions seeded by composition must match a fresh letterwise computation
    for _ in range(20):
        F = random_factorization(rng, rng.randint(2, 4), 4, max_conj=2)
        for f in F:
            f.automorphism  # noqa: B018 -- populate the cache
        G = random_moves(rng, F, 2)
        G = global_conjugate(G, BraidWord(F.degree, (rng.choice((1, -1)),)))
        for f in G:
            assert "automorphism" in f.__dict__
            assert f.automorphism == artin_action(f.word)
