"""Shared inputs: factorizations, covers and random generators."""

from monodromy.braid import BraidWord
from monodromy.cover import CoveringData
from monodromy.factor import Factorization, factor


def fact(d, *specs):
    """fact(3, ([], 1, 2), ([2], 1, 2)) -> Factorization."""
    return Factorization(d, tuple(factor(d, *s) for s in specs))


LINE = fact(1)
CONIC = fact(2, ([], 1, 1), ([], 1, 1))
CUSPIDAL_CUBIC = fact(3, ([], 1, 3), ([], 1, 1), ([], 2, 1), ([1, 1], 2, 1))
LANTERN = fact(3, ([], 1, 2), ([2], 1, 2), ([], 2, 2))
ELLIPTIC = fact(4, *[([], i, 1) for i in (1, 2, 3) * 4])
GENUS2 = fact(6, *[([], i, 1) for i in (1, 2, 3, 4, 5) * 6])
TWO_CONICS = fact(4, ([], 1, 1), ([], 1, 1), ([], 3, 1), ([], 3, 1),
                  ([], 2, 2), ([1], 2, 2), ([-2], 3, 2), ([1, -2], 3, 2))

PROJECTIVE = {
    "line": LINE, "conic": CONIC, "cuspidal_cubic": CUSPIDAL_CUBIC,
    "lantern": LANTERN, "elliptic": ELLIPTIC, "genus2": GENUS2, "two_conics": TWO_CONICS,
}


def double_cover(d):
    return CoveringData.from_pairs(2, [(1, 2)] * d)


COMPATIBLE = {
    "conic": (CONIC, double_cover(2)),
    "elliptic": (ELLIPTIC, double_cover(4)),
    "genus2": (GENUS2, double_cover(6)),
    "two_conics": (TWO_CONICS, CoveringData.from_pairs(4, [(1, 2), (1, 2), (3, 4), (3, 4)])),
}

# connected covers with a disjoint pair and an adjacent pair of labels
NODE_COVER = CoveringData.from_pairs(4, [(1, 2), (3, 4), (2, 3), (2, 3), (2, 3), (2, 3), (3, 4), (1, 2)])
CUSP_COVER = CoveringData.from_pairs(3, [(1, 2), (2, 3), (2, 3), (1, 2), (1, 3), (1, 3)])


def random_braid(rng, d, length):
    letters = []
    for _ in range(length):
        x = rng.randint(1, d - 1) * rng.choice((1, -1))
        letters.append(x)
    return BraidWord(d, tuple(letters))


def random_factorization(rng, d, m, max_conj=3):
    """Legal factors with random conjugators; the product is arbitrary."""
    out = []
    for _ in range(m):
        q = random_braid(rng, d, rng.randint(0, max_conj))
        out.append(factor(d, q.letters, rng.randint(1, d - 1), rng.choice((1, 2, -2, 3))))
    return Factorization(d, tuple(out))


def random_moves(rng, F, n):
    from monodromy.factor import hurwitz_move
    for _ in range(n):
        F = hurwitz_move(F, rng.randint(1, len(F) - 1), rng.choice(("forward", "backward")))
    return F


def random_cover(rng, N, d, scramble=6):
    """A closed transitive cover with N sheets and d branch points.

    A palindrome of transpositions containing a spanning tree has trivial
    product; acting by a random braid keeps it closed and transitive.
    """
    from monodromy.braid import artin_action

    half = d // 2
    assert d % 2 == 0 and half >= N - 1
    tree = [(rng.randint(1, k - 1), k) for k in range(2, N + 1)]
    extra = []
    for _ in range(half - len(tree)):
        a, b = rng.sample(range(1, N + 1), 2) if N > 1 else (1, 1)
        extra.append((min(a, b), max(a, b)))
    first = tree + extra
    rng.shuffle(first)
    theta = CoveringData.from_pairs(N, first + first[::-1])
    if d == 0:
        return theta
    b = random_braid(rng, d, scramble) if d > 1 else BraidWord(d, ())
    images = artin_action(b).images
    return CoveringData(N, tuple(theta.theta(w) for w in images))


COVER_SHAPES = [(N, d) for N in range(1, 5) for d in range(0, 11, 2)
                if d // 2 >= N - 1 and not (N == 1 and d)]
