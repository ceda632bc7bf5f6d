"""Braid monodromy factorizations and their Hurwitz calculus.

A factorization lists factors Q X_i^k Q^-1 starting at the base point and
moving outwards. Its product is read left to right, f_1 f_2 ... f_m, and
for a braided curve of degree d it equals the full twist of B_d.

Hurwitz moves use 1-based positions p (1 <= p < m):

    forward:  (f_p, f_{p+1}) -> (f_p f_{p+1} f_p^-1, f_p)
    backward: (f_p, f_{p+1}) -> (f_{p+1}, f_{p+1}^-1 f_p f_{p+1})

The mirror handedness is obtained by swapping the two directions.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .braid import (
    ALLOWED_EXPONENTS,
    BraidWord,
    artin_action,
    braid_equal,
    band_generator,
    braid_perm,
    full_twist,
)
from .errors import InvalidFactor, MalformedInput, NotCancellingPair, RankMismatch
from .word import FreeAutomorphism, compose

DEFAULT_MAX_STATES = 10**5


@dataclass(frozen=True)
class Factor:
    """The band braid conjugator * X_base^exponent * conjugator^-1."""

    conjugator: BraidWord
    base: int
    exponent: int

    def __post_init__(self):
        d = self.conjugator.strands
        if self.exponent not in ALLOWED_EXPONENTS:
            raise InvalidFactor(f"exponent {self.exponent} not in {ALLOWED_EXPONENTS}")
        if not 1 <= self.base <= d - 1:
            raise InvalidFactor(f"base {self.base} out of range for B{d}")

    @property
    def strands(self) -> int:
        return self.conjugator.strands

    @cached_property
    def word(self) -> BraidWord:
        return band_generator(self.strands, self.conjugator, self.base, self.exponent)

    @cached_property
    def automorphism(self) -> FreeAutomorphism:
        return artin_action(self.word)

    @property
    def kind(self) -> str:
        return {1: "tangency", 2: "node", -2: "negative node", 3: "cusp"}[self.exponent]

    def key(self) -> str:
        return f"{self.exponent}:{self.automorphism.serialize()}"


def factor(d: int, conjugator: Sequence[int], base: int, exponent: int) -> Factor:
    """Shorthand constructor: ``factor(3, [2], 1, 2)`` is X_2 X_1^2 X_2^-1."""
    return Factor(BraidWord(d, tuple(conjugator)), base, exponent)


@dataclass(frozen=True)
class Factorization:
    degree: int
    factors: tuple[Factor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            if f.strands != self.degree:
                raise RankMismatch(f"factor in B{f.strands}, factorization of degree {self.degree}")

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def exponents(self) -> Counter:
        return Counter(f.exponent for f in self.factors)


def product(F: Factorization) -> BraidWord:
    """f_1 f_2 ... f_m as a braid word."""
    letters: list[int] = []
    for f in F.factors:
        letters.extend(f.word.letters)
    return BraidWord(F.degree, tuple(letters))


def _seed_conjugate(f: Factor, outer: FreeAutomorphism | None, inner: Factor) -> Factor:
    """Cache f's action as outer * inner * outer^-1 when inner's is known.

    Inside a search every parent action is already cached, so this skips
    expanding long conjugator words. Elsewhere the action stays lazy: after
    many moves the images grow exponentially, while the product word still
    cancels down under free reduction.
    """
    known = inner.__dict__.get("automorphism")
    if outer is not None and known is not None:
        f.__dict__["automorphism"] = compose(outer, compose(known, outer.inverse()))
    return f


@dataclass
class ValidationReport:
    product_is_full_twist: bool
    illegal_factors: list[int]
    tangencies: int
    positive_nodes: int
    negative_nodes: int
    cusps: int

    @property
    def valid(self) -> bool:
        return self.product_is_full_twist and not self.illegal_factors

    def summary(self) -> str:
        head = "product=Δ² OK" if self.product_is_full_twist else "product≠Δ²"
        parts = [head]
        for n, one, many in ((self.tangencies, "tangency", "tangencies"),
                             (self.positive_nodes, "positive node", "positive nodes"),
                             (self.negative_nodes, "negative node", "negative nodes"),
                             (self.cusps, "cusp", "cusps")):
            if n:
                parts.append(f"{n} {one if n == 1 else many}")
        if self.illegal_factors:
            parts.append("illegal factors at " + ",".join(map(str, self.illegal_factors)))
        return ", ".join(parts)


def validate(F: Factorization) -> ValidationReport:
    illegal = [
        n for n, f in enumerate(F.factors, 1)
        if f.exponent not in ALLOWED_EXPONENTS or not 1 <= f.base < F.degree
    ]
    counts = F.exponents()
    return ValidationReport(
        product_is_full_twist=braid_equal(product(F), full_twist(F.degree)),
        illegal_factors=illegal,
        tangencies=counts[1],
        positive_nodes=counts[2],
        negative_nodes=counts[-2],
        cusps=counts[3],
    )


def _check_position(F: Factorization, p: int):
    if not 1 <= p < len(F):
        raise IndexError(f"Hurwitz position {p} outside 1..{len(F) - 1}")


def hurwitz_move(F: Factorization, p: int, direction: str = "forward") -> Factorization:
    _check_position(F, p)
    fs = list(F.factors)
    a, b = fs[p - 1], fs[p]
    if direction in ("forward", "fwd", "+"):
        moved = Factor((a.word * b.conjugator).freely_reduced(), b.base, b.exponent)
        _seed_conjugate(moved, a.__dict__.get("automorphism"), b)
        fs[p - 1], fs[p] = moved, a
    elif direction in ("backward", "bwd", "-"):
        moved = Factor((b.word.inverse() * a.conjugator).freely_reduced(), a.base, a.exponent)
        B = b.__dict__.get("automorphism")
        _seed_conjugate(moved, B.inverse() if B is not None else None, a)
        fs[p - 1], fs[p] = b, moved
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return Factorization(F.degree, tuple(fs))


def global_conjugate(F: Factorization, b: BraidWord) -> Factorization:
    """Replace every conjugator Q by b Q."""
    if b.strands != F.degree:
        raise RankMismatch(f"B{b.strands} vs degree {F.degree}")
    C = artin_action(b)
    out = []
    for f in F.factors:
        g = Factor((b * f.conjugator).freely_reduced(), f.base, f.exponent)
        out.append(_seed_conjugate(g, C, f))
    return Factorization(F.degree, tuple(out))


def insert_node_pair(F: Factorization, position: int, Q: BraidWord, i: int) -> Factorization:
    """Insert Q X_i^2 Q^-1, Q X_i^-2 Q^-1 so the first lands at ``position``."""
    if not 1 <= position <= len(F) + 1:
        raise IndexError(f"insertion position {position} outside 1..{len(F) + 1}")
    pair = (Factor(Q, i, 2), Factor(Q, i, -2))
    fs = list(F.factors)
    fs[position - 1:position - 1] = pair
    return Factorization(F.degree, tuple(fs))


def delete_node_pair(F: Factorization, position: int) -> Factorization:
    if not 1 <= position < len(F):
        raise NotCancellingPair(f"no factor pair at position {position}")
    a, b = F.factors[position - 1], F.factors[position]
    if {a.exponent, b.exponent} != {2, -2}:
        raise NotCancellingPair(
            f"factors {position},{position + 1} have exponents {a.exponent},{b.exponent}"
        )
    if not (a.automorphism.images == b.automorphism.inverse_images):
        raise NotCancellingPair(f"factors {position},{position + 1} are not mutually inverse")
    fs = list(F.factors)
    del fs[position - 1:position + 1]
    return Factorization(F.degree, tuple(fs))


def canonical_key(F: Factorization) -> bytes:
    """Equal for factorwise Artin-equal factorizations."""
    body = "|".join(f.key() for f in F.factors)
    return f"d{F.degree}|{body}".encode()


def factor_signature(f: Factor) -> tuple[int, tuple[int, ...]]:
    return (f.exponent, braid_perm(f.word).cycle_type())


@dataclass
class SearchResult:
    status: str  # "found", "refuted" or "exhausted"
    path: list[tuple] | None = None
    reason: str = ""
    states: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"


def apply_moves(F: Factorization, path: Iterable[tuple]) -> Factorization:
    """Replay a move path produced by :func:`hurwitz_equivalent`."""
    for move in path:
        if move[0] == "hurwitz":
            F = hurwitz_move(F, move[1], move[2])
        elif move[0] == "conjugate":
            F = global_conjugate(F, BraidWord(F.degree, (move[1],)))
        else:
            raise ValueError(f"unknown move {move!r}")
    return F


def refute(F1: Factorization, F2: Factorization, allow_conjugation: bool = False) -> str | None:
    """Name a cheap invariant that differs, or None if all agree."""
    if len(F1) != len(F2):
        return "factor count"
    if Counter(map(factor_signature, F1)) != Counter(map(factor_signature, F2)):
        return "multiset of (exponent, permutation cycle type)"
    p1, p2 = product(F1), product(F2)
    if not allow_conjugation:
        if not braid_equal(p1, p2):
            return "product braid"
    elif (p1.exponent_sum() != p2.exponent_sum()
          or braid_perm(p1).cycle_type() != braid_perm(p2).cycle_type()):
        return "product conjugacy class (exponent sum / permutation cycle type)"
    return None


def _inverse_move(move: tuple) -> tuple:
    if move[0] == "hurwitz":
        return ("hurwitz", move[1], "backward" if move[2] == "forward" else "forward")
    return ("conjugate", -move[1])


def hurwitz_equivalent(F1: Factorization, F2: Factorization,
                       max_states: int = DEFAULT_MAX_STATES,
                       allow_conjugation: bool = False,
                       conjugators: Sequence[int] | None = None) -> SearchResult:
    """Bounded bidirectional breadth-first search for a path F1 -> F2.

    Deciding Hurwitz equivalence in general has no known algorithm, so the
    answer is one of: a move path, a refuting invariant, or exhaustion of
    the ``max_states`` budget (states seen from both ends together).
    Image lengths multiply along a path, so the ball whose frontier has
    the shorter total key is grown next; this keeps both depths, and the
    word lengths, well below those of a one-sided search. Moves
    are tried in a fixed order (positions ascending, forward before
    backward, then conjugations) so the returned path is reproducible.
    """
    if F1.degree != F2.degree:
        raise RankMismatch(f"degree {F1.degree} vs {F2.degree}")
    reason = refute(F1, F2, allow_conjugation)
    if reason:
        return SearchResult("refuted", reason=reason)
    start, target = canonical_key(F1), canonical_key(F2)
    if start == target:
        return SearchResult("found", path=[], states=1)
    if allow_conjugation and conjugators is None:
        conjugators = [s * i for i in range(1, F1.degree) for s in (1, -1)]
    moves: list[tuple] = []
    for p in range(1, len(F1)):
        moves += [("hurwitz", p, "forward"), ("hurwitz", p, "backward")]
    if allow_conjugation:
        moves += [("conjugate", c) for c in conjugators]

    # parent maps: key -> (previous key, move taken from it) or None at the root
    sides = [
        {"parent": {start: None}, "frontier": [F1], "weight": len(start)},
        {"parent": {target: None}, "frontier": [F2], "weight": len(target)},
    ]

    def trace(parent, k):
        path = []
        while parent[k] is not None:
            k, mv = parent[k]
            path.append(mv)
        return path[::-1]

    def seen():
        return len(sides[0]["parent"]) + len(sides[1]["parent"])

    while sides[0]["frontier"] and sides[1]["frontier"]:
        # grow the cheaper ball: cost tracks total key length, not state count
        which = 0 if sides[0]["weight"] <= sides[1]["weight"] else 1
        here, there = sides[which], sides[1 - which]
        nxt, weight = [], 0
        for F in here["frontier"]:
            key = canonical_key(F)
            for move in moves:
                G = apply_moves(F, [move])
                k = canonical_key(G)
                if k in here["parent"]:
                    continue
                here["parent"][k] = (key, move)
                if k in there["parent"]:
                    a = trace(sides[0]["parent"], k)
                    b = trace(sides[1]["parent"], k)
                    path = a + [_inverse_move(m) for m in reversed(b)]
                    return SearchResult("found", path=path, states=seen())
                if seen() >= max_states:
                    return SearchResult("exhausted", states=seen(),
                                        reason=f"state budget {max_states} exhausted")
                nxt.append(G)
                weight += len(k)
        here["frontier"], here["weight"] = nxt, weight
    return SearchResult("exhausted", states=seen(),
                        reason="orbit exhausted without reaching target")


# -- text format -------------------------------------------------------------
#
#   degree <d>
#   factor conj=<signed ints or '-'> base=<i> exp=<1|2|-2|3>
#
# Blank lines and '#' comments are ignored.

_FACTOR_RE = re.compile(r"factor\s+conj=(.*?)\s+base=(\S+)\s+exp=(\S+)\s*")


def format_factorization(F: Factorization) -> str:
    lines = [f"degree {F.degree}"]
    for f in F.factors:
        conj = " ".join(str(x) for x in f.conjugator.letters) or "-"
        lines.append(f"factor conj={conj} base={f.base} exp={f.exponent}")
    return "\n".join(lines) + "\n"


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def parse_factorization(text: str) -> Factorization:
    degree = None
    factors = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", body)
            if not m or int(m.group(1)) < 1:
                raise MalformedInput("expected 'degree <d>' with d >= 1", n, col)
            degree = int(m.group(1))
            continue
        m = _FACTOR_RE.fullmatch(body)
        if not m:
            raise MalformedInput("expected 'factor conj=... base=<i> exp=<k>'", n, col)
        conj_text = m.group(1).strip()
        try:
            conj = () if conj_text == "-" else tuple(int(t) for t in conj_text.split())
            base, exp = int(m.group(2)), int(m.group(3))
        except ValueError:
            raise MalformedInput("non-integer field in factor line", n, col) from None
        try:
            factors.append(Factor(BraidWord(degree, conj), base, exp))
        except (InvalidFactor, MalformedInput) as exc:
            raise MalformedInput(str(exc), n, col) from None
    if degree is None:
        raise MalformedInput("missing 'degree' line", 1, 1)
    return Factorization(degree, tuple(factors))
