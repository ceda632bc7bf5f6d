"""Free groups: reduced words and automorphisms that carry their inverses.

Letters are nonzero ints: ``k`` is the k-th generator, ``-k`` its inverse.
Automorphisms can only be built from invertible elementary pieces
(:meth:`FreeAutomorphism.identity`, :meth:`FreeAutomorphism.elementary`,
:func:`compose`, :meth:`FreeAutomorphism.inverse`), so the stored inverse
is always correct and we never have to decide invertibility.

Composition convention, used by every other module:
``compose(f, g)`` is "g first, then f", i.e.
``apply(compose(f, g), w) == apply(f, apply(g, w))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MalformedInput, RankMismatch


def _reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word in the free group of the given rank."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        for x in letters:
            if x == 0 or abs(x) > self.rank:
                raise MalformedInput(f"letter {x} out of range for rank {self.rank}")
        object.__setattr__(self, "letters", _reduce_letters(letters))

    @classmethod
    def generator(cls, rank: int, i: int) -> "FreeWord":
        return cls(rank, (i,))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        return FreeWord(self.rank, self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(self.rank, tuple(-x for x in reversed(self.letters)))

    def __pow__(self, n: int) -> "FreeWord":
        base = self if n >= 0 else self.inverse()
        return FreeWord(self.rank, base.letters * abs(n))

    def conjugate_by(self, c: "FreeWord") -> "FreeWord":
        """c * self * c^-1."""
        return c * self * c.inverse()

    def is_identity(self) -> bool:
        return not self.letters

    def exponent_sums(self) -> list[int]:
        sums = [0] * self.rank
        for x in self.letters:
            sums[abs(x) - 1] += 1 if x > 0 else -1
        return sums

    def cyclic_reduce(self) -> "FreeWord":
        w = list(self.letters)
        while len(w) > 1 and w[0] == -w[-1]:
            w = w[1:-1]
        return FreeWord(self.rank, tuple(w))

    def serialize(self) -> str:
        """Canonical text: space-separated signed ints ("" for the identity)."""
        return " ".join(str(x) for x in self.letters)

    def __str__(self) -> str:
        return self.serialize() or "1"


def reduce(letters: Sequence[int], rank: int) -> FreeWord:
    """Freely reduce a raw letter list; raises MalformedInput on bad letters."""
    return FreeWord(rank, tuple(letters))


def parse_word(text: str, rank: int) -> FreeWord:
    try:
        letters = [int(t) for t in text.split()]
    except ValueError as exc:
        raise MalformedInput(f"bad word {text!r}: {exc}") from None
    return FreeWord(rank, tuple(letters))


def _cancel_length(out: list[int], inv_piece: list[int]) -> int:
    """Longest common suffix of out and inv_piece, i.e. how much of the
    piece cancels against the tail of out. Matches are prefix-closed, so a
    galloping binary search over C-level slice comparisons suffices."""
    limit = min(len(out), len(inv_piece))
    if not limit or out[-1] != inv_piece[-1]:
        return 0
    # invariant: the last lo letters match; each probe checks only new ones
    lo, step = 1, 1
    while lo < limit:
        hi = min(lo + step, limit)
        if out[-hi:-lo] == inv_piece[-hi:-lo]:
            lo, step = hi, step * 2
        elif step == 1:
            break
        else:
            step //= 2
    return lo


def _substitute(images: Sequence[FreeWord], inv_images: Sequence[FreeWord] | None,
                letters: Iterable[int]) -> tuple[int, ...]:
    fwd = [list(w.letters) for w in images]
    bwd = [[-y for y in reversed(p)] for p in fwd]
    out: list[int] = []
    for x in letters:
        piece, inv = (fwd[x - 1], bwd[x - 1]) if x > 0 else (bwd[-x - 1], fwd[-x - 1])
        c = _cancel_length(out, inv)
        if c:
            del out[-c:]
        out.extend(piece[c:])
    return tuple(out)


@dataclass(frozen=True)
class FreeAutomorphism:
    """Automorphism of F_rank given by generator images plus inverse images."""

    rank: int
    images: tuple[FreeWord, ...]
    inverse_images: tuple[FreeWord, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        object.__setattr__(self, "inverse_images", tuple(self.inverse_images))
        if len(self.images) != self.rank or len(self.inverse_images) != self.rank:
            raise RankMismatch("image lists must have one entry per generator")
        for w in self.images + self.inverse_images:
            if w.rank != self.rank:
                raise RankMismatch("image word of the wrong rank")

    @classmethod
    def identity(cls, rank: int) -> "FreeAutomorphism":
        gens = tuple(FreeWord.generator(rank, i) for i in range(1, rank + 1))
        return cls(rank, gens, gens)

    @classmethod
    def elementary(cls, rank: int, images: dict[int, Sequence[int]],
                   inverse_images: dict[int, Sequence[int]]) -> "FreeAutomorphism":
        """Build from a sparse pair of mutually inverse substitutions.

        Unlisted generators are fixed. The pair is checked to be mutually
        inverse before anything is returned.
        """
        def full(spec):
            return tuple(
                FreeWord(rank, tuple(spec.get(i, (i,)))) for i in range(1, rank + 1)
            )

        f = cls(rank, full(images), full(inverse_images))
        if not f.check_inverse():
            raise MalformedInput("substitutions are not mutually inverse")
        return f

    @classmethod
    def conjugation(cls, rank: int, c: FreeWord) -> "FreeAutomorphism":
        """Inner automorphism w -> c w c^-1."""
        ci = c.inverse()
        return cls(
            rank,
            tuple(FreeWord.generator(rank, i).conjugate_by(c) for i in range(1, rank + 1)),
            tuple(FreeWord.generator(rank, i).conjugate_by(ci) for i in range(1, rank + 1)),
        )

    def __call__(self, w: FreeWord) -> FreeWord:
        return apply(self, w)

    def inverse(self) -> "FreeAutomorphism":
        return FreeAutomorphism(self.rank, self.inverse_images, self.images)

    def check_inverse(self) -> bool:
        """Both composites fix every generator."""
        for i in range(1, self.rank + 1):
            g = (i,)
            if _substitute(self.inverse_images, None, _substitute(self.images, None, g)) != g:
                return False
            if _substitute(self.images, None, _substitute(self.inverse_images, None, g)) != g:
                return False
        return True

    def is_identity(self) -> bool:
        return all(w.letters == (i,) for i, w in enumerate(self.images, 1))

    def serialize(self) -> str:
        return ";".join(w.serialize() for w in self.images)


def apply(f: FreeAutomorphism, w: FreeWord) -> FreeWord:
    """Substitute the images of f letterwise into w and reduce."""
    if f.rank != w.rank:
        raise RankMismatch(f"automorphism rank {f.rank} vs word rank {w.rank}")
    return FreeWord(f.rank, _substitute(f.images, None, w.letters))


def compose(f: FreeAutomorphism, g: FreeAutomorphism) -> FreeAutomorphism:
    """The automorphism w -> f(g(w))."""
    if f.rank != g.rank:
        raise RankMismatch(f"rank {f.rank} vs {g.rank}")
    images = tuple(FreeWord(f.rank, _substitute(f.images, None, w.letters)) for w in g.images)
    inv = tuple(
        FreeWord(f.rank, _substitute(g.inverse_images, None, w.letters))
        for w in f.inverse_images
    )
    return FreeAutomorphism(f.rank, images, inv)


def auto_equal(f: FreeAutomorphism, g: FreeAutomorphism) -> bool:
    if f.rank != g.rank:
        raise RankMismatch(f"rank {f.rank} vs {g.rank}")
    return f.images == g.images
