"""Braid groups B_d: words, the Artin action, permutations, full twists.

The half-twist X_i acts on the free group <x_1..x_d> by

    x_i     -> x_i x_{i+1} x_i^-1
    x_{i+1} -> x_i

and fixes the other generators. This is the push-forward of the
counterclockwise half-twist when x_1 ... x_d (x_1 traversed first) is the
counterclockwise boundary loop; that product is fixed by every braid.

A braid word acts as the composite of its letters, leftmost letter
outermost: ``artin_action(b1 * b2) == compose(artin_action(b1),
artin_action(b2))``. Faithfulness of this action (Artin) gives an exact
word problem.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import InvalidFactor, MalformedInput, RankMismatch
from .perm import Permutation
from .word import FreeAutomorphism, FreeWord, _substitute, auto_equal, compose

ALLOWED_EXPONENTS = (1, 2, -2, 3)


def _free_reduce(letters: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class BraidWord:
    """A word in the half-twists X_1..X_{strands-1}; not reduced in B_d."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise MalformedInput("a braid needs at least one strand")
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        for x in letters:
            if x == 0 or abs(x) >= self.strands:
                raise MalformedInput(f"letter {x} out of range for B{self.strands}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise RankMismatch(f"B{self.strands} vs B{other.strands}")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, n: int) -> "BraidWord":
        base = self if n >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(n))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def freely_reduced(self) -> "BraidWord":
        """Cancel adjacent X_i X_i^-1 pairs (always valid in B_d)."""
        return BraidWord(self.strands, _free_reduce(self.letters))

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def __str__(self) -> str:
        return format_braid(self)


def generator(d: int, i: int) -> BraidWord:
    return BraidWord(d, (i,))


def format_braid(b: BraidWord) -> str:
    body = " ".join(str(x) for x in b.letters)
    return f"B{b.strands}: {body}".rstrip()


_BRAID_RE = re.compile(r"\s*B(\d+)\s*:(.*)")


def parse_braid(text: str) -> BraidWord:
    """Parse "B<d>: <signed ints>", e.g. "B4: 1 3 -2"."""
    m = _BRAID_RE.fullmatch(text.strip())
    if not m:
        raise MalformedInput(f"expected 'B<d>: <letters>', got {text.strip()!r}", 1, 1)
    try:
        letters = tuple(int(t) for t in m.group(2).split())
    except ValueError:
        raise MalformedInput(f"non-integer letter in {text.strip()!r}", 1, 1) from None
    return BraidWord(int(m.group(1)), letters)


@lru_cache(maxsize=None)
def _generator_action(d: int, letter: int) -> FreeAutomorphism:
    i = abs(letter)
    fwd = {i: (i, i + 1, -i), i + 1: (i,)}
    bwd = {i: (i + 1,), i + 1: (-(i + 1), i, i + 1)}
    if letter < 0:
        fwd, bwd = bwd, fwd
    return FreeAutomorphism.elementary(d, fwd, bwd)


@lru_cache(maxsize=65536)
def _artin_cached(d: int, letters: tuple[int, ...]) -> FreeAutomorphism:
    if not letters:
        return FreeAutomorphism.identity(d)
    if len(letters) == 1:
        return _generator_action(d, letters[0])
    mid = len(letters) // 2
    return compose(_artin_cached(d, letters[:mid]), _artin_cached(d, letters[mid:]))


def artin_action(b: BraidWord) -> FreeAutomorphism:
    """The automorphism of F_d induced by b (leftmost letter applied last)."""
    return _artin_cached(b.strands, _free_reduce(b.letters))


def artin_apply(b: BraidWord, w: FreeWord) -> FreeWord:
    """Apply b's Artin automorphism to a single word, letter by letter."""
    if w.rank != b.strands:
        raise RankMismatch(f"B{b.strands} acting on rank {w.rank}")
    letters = w.letters
    for x in reversed(_free_reduce(b.letters)):
        letters = _substitute(_generator_action(b.strands, x).images, None, letters)
    return FreeWord(w.rank, letters)


def braid_equal(b1: BraidWord, b2: BraidWord) -> bool:
    if b1.strands != b2.strands:
        raise RankMismatch(f"B{b1.strands} vs B{b2.strands}")
    return auto_equal(artin_action(b1), artin_action(b2))


def braid_perm(b: BraidWord) -> Permutation:
    """Image in S_d; X_i maps to the transposition (i i+1)."""
    m = list(range(1, b.strands + 1))
    p = Permutation(b.strands, tuple(m))
    for x in b.letters:
        p = p * Permutation.transposition(b.strands, abs(x), abs(x) + 1)
    return p


def full_twist(d: int) -> BraidWord:
    """(X_1 ... X_{d-1})^d, the central generator of Z(B_d)."""
    if d < 1:
        raise MalformedInput("full_twist needs d >= 1")
    return BraidWord(d, tuple(range(1, d)) * d)


def band_generator(d: int, Q: BraidWord, i: int, k: int) -> BraidWord:
    """Q X_i^k Q^-1 for k in {1, 2, -2, 3}."""
    if k not in ALLOWED_EXPONENTS:
        raise InvalidFactor(f"exponent {k} not in {ALLOWED_EXPONENTS}")
    if not 1 <= i <= d - 1:
        raise InvalidFactor(f"base index {i} out of range for B{d}")
    if Q.strands != d:
        raise RankMismatch(f"conjugator in B{Q.strands}, expected B{d}")
    core = (i if k > 0 else -i,) * abs(k)
    return BraidWord(d, Q.letters + core + Q.inverse().letters)
