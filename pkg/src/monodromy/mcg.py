"""Mapping classes seen through their action on first homology.

Dehn twists act on H_1 by transvections T_c(x) = x + <c, x> c, where
<a_i, b_i> = 1 in the basis (a_1, b_1, ..., a_g, b_g). For genus 1 this
reproduces the two generators of SL(2, Z):

    tau_a = [[1, 1], [0, 1]],   tau_b = [[1, 0], [-1, 1]].

For g = 1 the representation Map_1 -> SL(2, Z) is an isomorphism, so
matrix equality decides equality of mapping classes. For g >= 2 it is only
a quotient: :func:`verify_relation` returning True is a necessary
condition, never a proof.

Words in the chain twists are signed 1-based indices; their matrix is the
product left to right, ``sp_word([1, 2]) == T(c_1) @ T(c_2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import MalformedInput
from .zlinalg import IntMatrix


def standard_form(g: int) -> IntMatrix:
    """The alternating form with <a_i, b_i> = 1, basis (a_1, b_1, a_2, b_2, ...)."""
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(g):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return IntMatrix.from_rows(rows, cols=n)


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    """<u, v> for the standard form."""
    return sum(u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i] for i in range(len(u) // 2))


def is_symplectic(M: IntMatrix) -> bool:
    if M.rows != M.cols or M.rows % 2:
        return False
    J = standard_form(M.rows // 2)
    return M.T @ J @ M == J


@dataclass(frozen=True)
class SpMatrix:
    """Element of Sp(2g, Z)."""

    g: int
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (2 * self.g, 2 * self.g):
            raise MalformedInput(f"expected a {2 * self.g}x{2 * self.g} matrix")
        if not is_symplectic(self.matrix):
            raise MalformedInput("matrix does not preserve the standard form")

    @classmethod
    def identity(cls, g: int) -> "SpMatrix":
        return cls(g, IntMatrix.identity(2 * g))

    def __matmul__(self, other: "SpMatrix") -> "SpMatrix":
        return SpMatrix(self.g, self.matrix @ other.matrix)

    def __eq__(self, other) -> bool:
        return isinstance(other, SpMatrix) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __neg__(self) -> "SpMatrix":
        return SpMatrix(self.g, -self.matrix)

    def __pow__(self, n: int) -> "SpMatrix":
        base = self if n >= 0 else self.inverse()
        out = SpMatrix.identity(self.g)
        for _ in range(abs(n)):
            out = out @ base
        return out

    def inverse(self) -> "SpMatrix":
        # M^-1 = -J M^T J for symplectic M.
        J = standard_form(self.g)
        return SpMatrix(self.g, -(J @ self.matrix.T @ J))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.matrix.apply(v)

    def is_identity(self) -> bool:
        return self.matrix == IntMatrix.identity(2 * self.g)


def transvection(c: Sequence[int], g: int) -> SpMatrix:
    """Homological action of the positive Dehn twist along a curve of class c."""
    c = tuple(int(x) for x in c)
    if len(c) != 2 * g:
        raise MalformedInput(f"class {c} is not in Z^{2 * g}")
    J = standard_form(g)
    cJ = [sum(c[i] * J[i, k] for i in range(2 * g)) for k in range(2 * g)]
    return SpMatrix(g, IntMatrix.from_rows(
        [[int(r == k) + c[r] * cJ[k] for k in range(2 * g)] for r in range(2 * g)],
        cols=2 * g,
    ))


@dataclass(frozen=True)
class ChainSystem:
    """Homology classes of a chain of curves c_1, c_2, ... on a genus-g surface."""

    g: int
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(tuple(c) for c in self.classes))
        for c in self.classes:
            if len(c) != 2 * self.g:
                raise MalformedInput(f"class {c} is not in Z^{2 * self.g}")
        for i, u in enumerate(self.classes):
            for j, v in enumerate(self.classes):
                want = 1 if abs(i - j) == 1 else 0
                if abs(pairing(u, v)) != want:
                    raise MalformedInput(
                        f"classes {i + 1} and {j + 1} pair to {pairing(u, v)}, "
                        f"chain pattern needs ±{want}" if want else
                        f"classes {i + 1} and {j + 1} must be disjoint"
                    )


def standard_chain(g: int) -> ChainSystem:
    """g = 1: (a, b). g >= 2: a_1, b_1, a_1+a_2, b_2, a_2+a_3, ..., b_g, a_g."""
    if g < 1:
        raise MalformedInput("standard_chain needs g >= 1")

    def a(i):
        v = [0] * (2 * g)
        v[2 * (i - 1)] = 1
        return v

    def b(i):
        v = [0] * (2 * g)
        v[2 * (i - 1) + 1] = 1
        return v

    if g == 1:
        return ChainSystem(1, (tuple(a(1)), tuple(b(1))))
    classes = [a(1), b(1)]
    for i in range(1, g):
        classes.append([x + y for x, y in zip(a(i), a(i + 1))])
        classes.append(b(i + 1))
    classes.append(a(g))
    return ChainSystem(g, tuple(tuple(c) for c in classes))


def sp_word(word: Sequence[int], system: ChainSystem) -> SpMatrix:
    out = SpMatrix.identity(system.g)
    n = len(system.classes)
    for x in word:
        if x == 0 or abs(x) > n:
            raise MalformedInput(f"twist index {x} outside ±1..{n}")
        t = transvection(system.classes[abs(x) - 1], system.g)
        out = out @ (t if x > 0 else t.inverse())
    return out


def verify_relation(word1: Sequence[int], word2: Sequence[int], system: ChainSystem) -> bool:
    """Equality of the two words in Sp(2g, Z); exact in Map_1 only."""
    return sp_word(word1, system) == sp_word(word2, system)


def parse_tau_word(text: str) -> list[int]:
    """Parse a twist word such as "1 2 3 4 5 5 4 3 2 1"."""
    try:
        word = [int(t) for t in text.split()]
    except ValueError:
        raise MalformedInput(f"bad twist word {text!r}") from None
    if 0 in word:
        raise MalformedInput("twist index 0 is not allowed")
    return word


def format_tau_word(word: Sequence[int]) -> str:
    return " ".join(str(x) for x in word)
