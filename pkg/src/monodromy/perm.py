"""Permutations of {1..n}.

Products read left to right, as in GAP: ``(p * q)(i) == q(p(i))``.
With this rule, sheet transport along a path ``u`` followed by ``v`` is
``transport(u) * transport(v)``, so the covering monodromy is an honest
homomorphism on words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MalformedInput


@dataclass(frozen=True, order=True)
class Permutation:
    degree: int
    mapping: tuple[int, ...]  # mapping[i - 1] is the image of i

    def __post_init__(self):
        m = tuple(self.mapping)
        object.__setattr__(self, "mapping", m)
        if len(m) != self.degree or sorted(m) != list(range(1, self.degree + 1)):
            raise MalformedInput(f"not a permutation of 1..{self.degree}: {m}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(degree, tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        m = list(range(1, degree + 1))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = list(cyc)
            for x in cyc:
                if not 1 <= x <= degree:
                    raise MalformedInput(f"point {x} outside 1..{degree}")
                if x in seen:
                    raise MalformedInput(f"point {x} repeated in cycle notation")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                m[a - 1] = b
        return cls(degree, tuple(m))

    @classmethod
    def transposition(cls, degree: int, a: int, b: int) -> "Permutation":
        if a == b:
            raise MalformedInput("a transposition needs two distinct points")
        return cls.from_cycles(degree, [(a, b)])

    def __call__(self, i: int) -> int:
        return self.mapping[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise MalformedInput("degree mismatch")
        return Permutation(self.degree, tuple(other.mapping[x - 1] for x in self.mapping))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, x in enumerate(self.mapping, 1):
            inv[x - 1] = i
        return Permutation(self.degree, tuple(inv))

    def __pow__(self, n: int) -> "Permutation":
        base = self if n >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(n)):
            out = out * base
        return out

    def conjugate(self, by: "Permutation") -> "Permutation":
        """by^-1 * self * by, i.e. self with points relabelled through ``by``."""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return self.mapping == tuple(range(1, self.degree + 1))

    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.mapping, 1) if i != x)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen, out = set(), []
        for i in range(1, self.degree + 1):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted lengths of all cycles, fixed points included."""
        fixed = self.degree - len(self.support())
        return tuple(sorted([len(c) for c in self.cycles()] + [1] * fixed, reverse=True))

    def is_transposition(self) -> bool:
        return len(self.support()) == 2

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __str__(self) -> str:
        cs = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs) or "()"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as "(1 2)(3 4)" or "()"."""
    text = text.strip()
    if not re.fullmatch(r"(\([^()]*\)\s*)+", text):
        raise MalformedInput(f"bad cycle notation {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        parts = body.replace(",", " ").split()
        try:
            cycles.append([int(p) for p in parts])
        except ValueError:
            raise MalformedInput(f"bad cycle {body!r}") from None
    return Permutation.from_cycles(degree, [c for c in cycles if c])


def generated_group(gens: Sequence[Permutation], degree: int, limit: int | None = None) -> list[Permutation]:
    """All elements of <gens> by breadth-first closure, in discovery order."""
    e = Permutation.identity(degree)
    elems = [e]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    elems.append(h)
                    nxt.append(h)
                    if limit is not None and len(elems) > limit:
                        return elems
        frontier = nxt
    return elems


def orbits(gens: Sequence[Permutation], degree: int) -> list[frozenset[int]]:
    parent = list(range(degree + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i in range(1, degree + 1):
            a, b = find(i), find(g(i))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, set[int]] = {}
    for i in range(1, degree + 1):
        groups.setdefault(find(i), set()).add(i)
    return [frozenset(v) for _, v in sorted(groups.items())]
