"""Lefschetz fibrations over S^2 recorded by their vanishing-cycle classes.

Cycle classes live in H_1 of the fiber with the standard basis of
:mod:`monodromy.mcg`, so the monodromy around the k-th critical value acts
by ``transvection(cycles[k])``. Only homological invariants are computed;
the signature is not (it needs more than the homology action).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .cover import CoveringData, check_compatibility, fiber_genus, fiber_homology, lift_homology
from .errors import Incompatible, InternalConsistencyError, MalformedInput
from .factor import Factorization
from .mcg import SpMatrix, transvection
from .zlinalg import AbelianGroup, IntMatrix, cokernel, int_rank, primitive


@dataclass(frozen=True)
class LFibration:
    genus: int
    cycles: tuple[tuple[int, ...], ...]
    separating: tuple[bool, ...]

    def __post_init__(self):
        cycles = tuple(tuple(int(x) for x in c) for c in self.cycles)
        flags = tuple(bool(f) for f in self.separating)
        object.__setattr__(self, "cycles", cycles)
        object.__setattr__(self, "separating", flags)
        if self.genus < 0:
            raise MalformedInput("negative genus")
        if len(cycles) != len(flags):
            raise MalformedInput("one separating flag per cycle is required")
        for k, (c, sep) in enumerate(zip(cycles, flags), 1):
            if len(c) != 2 * self.genus:
                raise MalformedInput(f"cycle {k} has {len(c)} coordinates, expected {2 * self.genus}")
            if sep and any(c):
                raise MalformedInput(f"cycle {k} is flagged separating but has nonzero class")
            if not sep and not any(c):
                raise MalformedInput(f"cycle {k} is nonseparating but has zero class")

    @classmethod
    def from_classes(cls, genus: int, classes: Sequence[Sequence[int]]) -> "LFibration":
        """Flags inferred: zero classes are separating."""
        classes = [tuple(c) for c in classes]
        return cls(genus, tuple(classes), tuple(not any(c) for c in classes))

    @classmethod
    def from_twist_word(cls, word: Sequence[int], system) -> "LFibration":
        """Cycles read off a positive word in chain twists (indices are 1-based)."""
        if any(x <= 0 for x in word):
            raise MalformedInput("a Lefschetz fibration needs a positive twist word")
        return cls.from_classes(system.g, [system.classes[x - 1] for x in word])

    @property
    def critical_points(self) -> int:
        return len(self.cycles)


def euler_characteristic(L: LFibration) -> int:
    """chi(S^2) chi(F) plus one per critical point, separating or not."""
    return 2 * (2 - 2 * L.genus) + L.critical_points


def total_space_h1(L: LFibration) -> AbelianGroup:
    """H_1(F) modulo the vanishing-cycle classes."""
    n = 2 * L.genus
    if not L.cycles:
        return AbelianGroup(n)
    return cokernel(IntMatrix.from_columns(L.cycles, rows=n))


@dataclass(frozen=True)
class FibSumTwist:
    """Gluing map of a twisted fiber sum, seen on H_1 of the fiber."""

    matrix: SpMatrix

    @property
    def genus(self) -> int:
        return self.matrix.g

    def apply(self, c: Sequence[int]) -> tuple[int, ...]:
        return self.matrix.apply(c)


def fiber_sum(L1: LFibration, L2: LFibration,
              twist: FibSumTwist | SpMatrix | None = None) -> LFibration:
    """Concatenate the cycles, pushing L2's through the gluing map if given."""
    if isinstance(twist, SpMatrix):
        twist = FibSumTwist(twist)
    if L1.genus != L2.genus:
        raise MalformedInput(f"fiber genera differ: {L1.genus} vs {L2.genus}")
    second = L2.cycles
    if twist is not None:
        if twist.genus != L1.genus:
            raise MalformedInput("twist acts on a fiber of the wrong genus")
        second = tuple(twist.apply(c) for c in second)
    return LFibration(L1.genus, L1.cycles + second, L1.separating + L2.separating)


def fiber_sum_power(L: LFibration, n: int) -> LFibration:
    out = L
    for _ in range(n - 1):
        out = fiber_sum(out, L)
    return out


@dataclass
class SpValidity:
    monodromy: SpMatrix

    @property
    def valid(self) -> bool:
        return self.monodromy.is_identity()


def sp_validity(L: LFibration) -> SpValidity:
    """Total monodromy in Sp(2g, Z): trivial for a fibration over S^2."""
    M = SpMatrix.identity(L.genus)
    for c in L.cycles:
        M = M @ transvection(c, L.genus)
    return SpValidity(M)


def invariants(L: LFibration) -> dict:
    h1 = total_space_h1(L)
    return {
        "genus": L.genus,
        "critical_points": L.critical_points,
        "reducible_fibers": sum(L.separating),
        "euler_characteristic": euler_characteristic(L),
        "b1": h1.free_rank,
        "h1_torsion": h1.torsion,
    }


def from_branch_data(F: Factorization, theta: CoveringData) -> LFibration:
    """Vanishing cycles of the pencil pi o f from braid monodromy and theta.

    Each tangency factor is a liftable half-twist whose lift is a Dehn
    twist; its transvection axis is the vanishing-cycle class. Node and
    cusp factors lift trivially and contribute nothing.
    """
    report = check_compatibility(theta, F)
    if not report.compatible:
        raise Incompatible(
            f"global failures {report.global_failures}, local failures {report.local_failures}"
        )
    g = fiber_genus(theta)
    n = 2 * g
    identity = IntMatrix.identity(n)
    cycles, flags = [], []
    for k, f in enumerate(F.factors, 1):
        if f.exponent != 1:
            continue
        M = lift_homology(theta, f.word)
        R = M - identity
        r = int_rank(R) if n else 0
        if r == 0:
            cycles.append((0,) * n)
            flags.append(True)
            continue
        if r > 1:
            raise InternalConsistencyError(f"tangency factor {k} lifts with rank(M - I) = {r}")
        col = next(R.column(j) for j in range(n) if any(R.column(j)))
        axis = primitive(col)
        if transvection(axis, g).matrix != M:
            raise InternalConsistencyError(
                f"tangency factor {k} does not lift to a positive Dehn twist"
            )
        cycles.append(axis)
        flags.append(False)
    fiber_homology(theta)  # cached; ensures the basis used above is the standard one
    return LFibration(g, tuple(cycles), tuple(flags))


def invariant_multiset(L: LFibration) -> tuple:
    """Data preserved by Hurwitz moves: counts plus total-space H_1."""
    h1 = total_space_h1(L)
    return (L.genus, L.critical_points, sum(L.separating), euler_characteristic(L),
            h1.free_rank, h1.torsion)


# -- text format -------------------------------------------------------------
#
#   genus <g>
#   cycle <2g ints> sep=<0|1>

def format_lfibration(L: LFibration) -> str:
    lines = [f"genus {L.genus}"]
    for c, sep in zip(L.cycles, L.separating):
        coords = " ".join(str(x) for x in c)
        lines.append(f"cycle {coords} sep={int(sep)}".replace("cycle  ", "cycle "))
    return "\n".join(lines) + "\n"


def parse_lfibration(text: str) -> LFibration:
    genus = None
    cycles, flags = [], []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if genus is None:
            m = re.fullmatch(r"genus\s+(\d+)", body)
            if not m:
                raise MalformedInput("expected 'genus <g>'", n, col)
            genus = int(m.group(1))
            continue
        m = re.fullmatch(r"cycle((?:\s+-?\d+)*)\s+sep=([01])", body)
        if not m:
            raise MalformedInput("expected 'cycle <2g ints> sep=<0|1>'", n, col)
        coords = tuple(int(t) for t in m.group(1).split())
        if len(coords) != 2 * genus:
            raise MalformedInput(f"expected {2 * genus} coordinates, got {len(coords)}", n, col)
        cycles.append(coords)
        flags.append(m.group(2) == "1")
    if genus is None:
        raise MalformedInput("missing 'genus' line", 1, 1)
    try:
        return LFibration(genus, tuple(cycles), tuple(flags))
    except MalformedInput as exc:
        raise MalformedInput(str(exc), 1, 1) from None
