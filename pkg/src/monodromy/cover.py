"""Branched-cover monodromy over the plane and the fiber surface it defines.

Geometry behind the combinatorics (fixed once, used throughout):

* branch points p_1..p_d sit left to right on the real axis; the base point
  is above them; the generator x_j runs down to p_j, circles it
  counterclockwise and returns, so x_1 x_2 ... x_d is the counterclockwise
  boundary loop;
* slit j runs straight down from p_j to infinity; x_j crosses it once, from
  west to east, and a path crossing it that way moves from sheet s to sheet
  ``labels[j](s)``;
* ``theta(w)`` is sheet transport along the word w (see perm.py for the
  left-to-right product rule).

The fiber surface is built in two dual cell structures:

* the slit-sheet complex (:class:`CombSurface`): one face per sheet, one
  edge per (slit, sheet), vertices over the branch points and the N
  vertices over infinity (the marked points);
* its dual, the Schreier graph of the sheets, whose edge (j, s) is the lift
  of x_j starting on sheet s and crosses slit edge (j, s) exactly once.

Braids act on the dual complex by substituting Artin images of the x_j, and
the intersection form comes from pairing a dual cycle, pushed onto the slit
complex, against another dual cycle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

from .braid import BraidWord, artin_action
from .errors import (
    DisconnectedCover,
    InternalConsistencyError,
    MalformedInput,
    NotClosedAtInfinity,
    NotLiftable,
    RankMismatch,
)
from .factor import Factorization
from .mcg import standard_form
from .perm import Permutation, orbits, parse_cycles
from .word import FreeWord
from .zlinalg import (
    AbelianGroup,
    IntMatrix,
    column_span_basis,
    int_rank,
    smith_normal_form,
)


@dataclass(frozen=True)
class CoveringData:
    """Sheet count N and one transposition in S_N per geometric generator."""

    N: int
    labels: tuple[Permutation, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.N < 1:
            raise MalformedInput("sheet count must be positive")
        for k, t in enumerate(self.labels, 1):
            if t.degree != self.N:
                raise MalformedInput(f"label {k} has degree {t.degree}, expected {self.N}")
            if not t.is_transposition():
                raise MalformedInput(f"label {k} = {t} is not a transposition")

    @classmethod
    def from_pairs(cls, N: int, pairs: Sequence[tuple[int, int]]) -> "CoveringData":
        return cls(N, tuple(Permutation.transposition(N, a, b) for a, b in pairs))

    @property
    def d(self) -> int:
        return len(self.labels)

    def theta(self, w: FreeWord) -> Permutation:
        """Sheet transport along w."""
        if w.rank != self.d:
            raise RankMismatch(f"word of rank {w.rank} for {self.d} generators")
        p = Permutation.identity(self.N)
        for x in w.letters:
            p = p * self.labels[abs(x) - 1]  # transpositions are involutions
        return p

    def boundary_monodromy(self) -> Permutation:
        return self.theta(FreeWord(self.d, tuple(range(1, self.d + 1))))

    def is_transitive(self) -> bool:
        return len(orbits(self.labels, self.N)) == 1

    def __str__(self) -> str:
        return format_covering(self)


# -- compatibility -----------------------------------------------------------

@dataclass
class CompatibilityReport:
    global_failures: list[tuple[int, int]] = field(default_factory=list)
    local_failures: list[tuple[int, str]] = field(default_factory=list)
    transitive: bool = True
    closed_at_infinity: bool = True

    @property
    def global_ok(self) -> bool:
        return not self.global_failures

    @property
    def local_ok(self) -> bool:
        return not self.local_failures

    @property
    def compatible(self) -> bool:
        return self.global_ok and self.local_ok


def branch_labels(theta: CoveringData, Q: BraidWord, i: int) -> tuple[Permutation, Permutation]:
    """Monodromy of the two local branch generators of the band Q X_i^k Q^-1.

    Those generators are the Artin images of x_i and x_{i+1} under Q.
    """
    a = artin_action(Q)
    return theta.theta(a.images[i - 1]), theta.theta(a.images[i])


def check_compatibility(theta: CoveringData, F: Factorization) -> CompatibilityReport:
    if theta.d != F.degree:
        raise RankMismatch(f"{theta.d} labels for a degree-{F.degree} factorization")
    report = CompatibilityReport(
        transitive=theta.is_transitive(),
        closed_at_infinity=theta.boundary_monodromy().is_identity(),
    )
    for n, f in enumerate(F.factors, 1):
        for j, img in enumerate(f.automorphism.images, 1):
            if theta.theta(img) != theta.labels[j - 1]:
                report.global_failures.append((n, j))
        s, t = branch_labels(theta, f.conjugator, f.base)
        if f.exponent == 1 and s != t:
            report.local_failures.append((n, f"tangency branches carry {s} and {t}, expected equal"))
        elif f.exponent in (2, -2) and s.support() & t.support():
            report.local_failures.append((n, f"node branches carry {s} and {t}, expected disjoint"))
        elif f.exponent == 3 and len(s.support() & t.support()) != 1:
            report.local_failures.append((n, f"cusp branches carry {s} and {t}, expected adjacent"))
    return report


def is_liftable(theta: CoveringData, b: BraidWord) -> bool:
    """True iff b fixes theta: theta(b(x_j)) == theta(x_j) for every j."""
    if b.strands != theta.d:
        raise RankMismatch(f"B{b.strands} vs {theta.d} labels")
    imgs = artin_action(b).images
    return all(theta.theta(w) == lab for w, lab in zip(imgs, theta.labels))


def _require_closed(theta: CoveringData):
    if not theta.boundary_monodromy().is_identity():
        raise NotClosedAtInfinity(
            f"labels multiply to {theta.boundary_monodromy()}, not the identity"
        )


def fiber_genus(theta: CoveringData) -> int:
    """Genus of the N-sheeted cover of the sphere with d simple branch points.

    The cover must be connected (transitive labels) and unbranched over
    infinity; chi = 2N - d then gives g = (d - 2N + 2) / 2.
    """
    _require_closed(theta)
    if not theta.is_transitive():
        raise DisconnectedCover(f"labels generate an intransitive subgroup of S_{theta.N}")
    chi = 2 * theta.N - theta.d
    if chi % 2:
        raise NotClosedAtInfinity(f"Euler characteristic {chi} is odd")
    return (theta.d - 2 * theta.N + 2) // 2


# -- the slit-sheet surface --------------------------------------------------

@dataclass(frozen=True)
class CombSurface:
    """Closed oriented CW surface: slit-sheet model of the covering fiber.

    ``edges[k] == (tail, head)``; edge k = (j - 1) * N + (s - 1) is the west
    side of slit j on sheet s, oriented from p_j down to infinity.
    ``faces[s - 1]`` lists (edge, ±1) around sheet s, counterclockwise.
    """

    covering: CoveringData
    vertices: tuple[tuple, ...]
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[tuple[int, int], ...], ...]
    marked_points: tuple[int, ...]

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def edge_index(self, j: int, s: int) -> int:
        return (j - 1) * self.covering.N + (s - 1)

    @cached_property
    def boundary_1(self) -> IntMatrix:
        rows = [[0] * len(self.edges) for _ in self.vertices]
        for k, (tail, head) in enumerate(self.edges):
            rows[head][k] += 1
            rows[tail][k] -= 1
        return IntMatrix.from_rows(rows, cols=len(self.edges))

    @cached_property
    def boundary_2(self) -> IntMatrix:
        cols = []
        for face in self.faces:
            c = [0] * len(self.edges)
            for k, sgn in face:
                c[k] += sgn
            cols.append(c)
        return IntMatrix.from_columns(cols, rows=len(self.edges))


def _sheets_before(theta: CoveringData, j: int, s: int) -> int:
    """T_1 T_2 ... T_{j-1}(s), applying T_{j-1} first."""
    for k in range(j - 1, 0, -1):
        s = theta.labels[k - 1](s)
    return s


def build_fiber_surface(theta: CoveringData) -> CombSurface:
    _require_closed(theta)
    N, d = theta.N, theta.d
    vertices: list[tuple] = []
    vid: dict[tuple, int] = {}

    def vertex(key):
        if key not in vid:
            vid[key] = len(vertices)
            vertices.append(key)
        return vid[key]

    marked = tuple(vertex(("inf", t)) for t in range(1, N + 1))
    for j in range(1, d + 1):
        T = theta.labels[j - 1]
        for s in range(1, N + 1):
            vertex(("branch", j, min(s, T(s))))
    edges = []
    for j in range(1, d + 1):
        T = theta.labels[j - 1]
        for s in range(1, N + 1):
            top = vid[("branch", j, min(s, T(s)))]
            bottom = vid[("inf", _sheets_before(theta, j, s))]
            edges.append((top, bottom))

    def e(j, s):
        return (j - 1) * N + (s - 1)

    faces = []
    for s in range(1, N + 1):
        walk = []
        for j in range(1, d + 1):
            walk.append((e(j, s), -1))
            walk.append((e(j, theta.labels[j - 1](s)), +1))
        faces.append(tuple(walk))
    S = CombSurface(theta, tuple(vertices), tuple(edges), tuple(faces), marked)
    if not (S.boundary_1 @ S.boundary_2).is_zero():
        raise InternalConsistencyError("face boundaries are not closed edge paths")
    if S.euler_characteristic != 2 * N - d:
        raise InternalConsistencyError("slit complex has the wrong Euler characteristic")
    return S


# -- homology ----------------------------------------------------------------

def symplectic_basis(J: IntMatrix) -> IntMatrix:
    """P unimodular with P^T J P block-diagonal [[0, 1], [-1, 0]].

    J must be alternating and unimodular. Greedy: take the first remaining
    lattice vector e, find f with <e, f> = 1 by an extended gcd, split off
    span(e, f) and continue on its orthogonal complement.
    """
    n = J.rows

    def pair(u, v):
        return sum(u[i] * J[i, k] * v[k] for i in range(n) for k in range(n) if J[i, k])

    basis = [tuple(int(i == k) for k in range(n)) for i in range(n)]
    out: list[tuple[int, ...]] = []
    while basis:
        e = basis[0]
        vals = [pair(e, v) for v in basis]
        coeffs = _xgcd_list(vals)
        g = sum(c * x for c, x in zip(coeffs, vals))
        if g != 1:
            raise InternalConsistencyError(f"form is not unimodular (gcd {g})")
        f = tuple(sum(c * v[k] for c, v in zip(coeffs, basis)) for k in range(n))
        proj = []
        for v in basis:
            a, b = pair(v, f), pair(v, e)
            proj.append(tuple(v[k] - a * e[k] + b * f[k] for k in range(n)))
        basis = column_span_basis(proj, n)
        out += [e, f]
    P = IntMatrix.from_columns(out, rows=n)
    if P.T @ J @ P != standard_form(n // 2):
        raise InternalConsistencyError("symplectic reduction failed")
    return P


def _xgcd_list(vals: Sequence[int]) -> list[int]:
    """Coefficients c with sum(c_i v_i) == gcd(v) >= 0."""
    coeffs = [0] * len(vals)
    g = 0
    acc = []  # running combination as coefficient list
    for idx, v in enumerate(vals):
        if v == 0:
            continue
        if g == 0:
            g = abs(v)
            acc = [0] * len(vals)
            acc[idx] = 1 if v > 0 else -1
            continue
        # extended Euclid on (g, |v|)
        a, b = g, abs(v)
        x0, y0, x1, y1 = 1, 0, 0, 1
        while b:
            q = a // b
            a, b = b, a - q * b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        sgn = 1 if v > 0 else -1
        acc = [x0 * c for c in acc]
        acc[idx] += y0 * sgn
        g = a
    return acc if acc else coeffs


@dataclass(frozen=True)
class FiberHomology:
    """H_1 of a fiber surface with a symplectic basis of dual-graph cycles.

    ``basis[a]`` is a 1-cycle on the Schreier graph (indexed like the slit
    edges); ``form`` is the intersection form in that basis, equal to the
    standard block form.
    """

    surface: CombSurface
    group: AbelianGroup
    basis: tuple[tuple[int, ...], ...]
    form: IntMatrix
    _v_inv: IntMatrix = field(repr=False)
    _kernel_rank: int = field(repr=False)
    _u: IntMatrix = field(repr=False)
    _quot_rank: int = field(repr=False)
    _p_inv: IntMatrix = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def genus(self) -> int:
        return self.rank // 2

    def coordinates(self, cycle: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of a dual 1-cycle's class in :attr:`basis`."""
        z = self._v_inv.apply(cycle)
        if any(z[:self._kernel_rank]):
            raise InternalConsistencyError("chain is not a cycle")
        y = self._u.apply(z[self._kernel_rank:])
        return self._p_inv.apply(y[self._quot_rank:])


def _dual_boundary_1(S: CombSurface) -> IntMatrix:
    theta = S.covering
    N = theta.N
    rows = [[0] * len(S.edges) for _ in range(N)]
    for j in range(1, theta.d + 1):
        T = theta.labels[j - 1]
        for s in range(1, N + 1):
            k = S.edge_index(j, s)
            rows[T(s) - 1][k] += 1
            rows[s - 1][k] -= 1
    return IntMatrix.from_rows(rows, cols=len(S.edges))


def lift_word(S: CombSurface, w: FreeWord, start: int) -> list[int]:
    """Dual 1-chain traced by lifting the loop w from sheet ``start``."""
    theta = S.covering
    chain = [0] * len(S.edges)
    s = start
    for x in w.letters:
        T = theta.labels[abs(x) - 1]
        if x > 0:
            chain[S.edge_index(x, s)] += 1
        else:
            chain[S.edge_index(-x, T(s))] -= 1
        s = T(s)
    return chain


def _dual_faces(S: CombSurface) -> list[list[int]]:
    theta = S.covering
    N, d = theta.N, theta.d
    faces = []
    for j in range(1, d + 1):
        T = theta.labels[j - 1]
        for orb in orbits([T], N):
            s = min(orb)
            faces.append(lift_word(S, FreeWord(d, (j,) * len(orb)), s))
    boundary = FreeWord(d, tuple(range(1, d + 1)))
    for t in range(1, N + 1):
        faces.append(lift_word(S, boundary, t))
    return faces


def _push_to_slits(S: CombSurface, dual_chain: Sequence[int]) -> list[int]:
    """Carry a dual 1-chain onto the slit complex, up to homology.

    Dual edge (j, s) becomes the walk along the boundary of face s from
    its corner at infinity to the foot of slit j, then along face T_j(s)
    back to that face's corner at infinity.
    """
    theta = S.covering
    N, d = theta.N, theta.d
    out = [0] * len(S.edges)
    for j in range(1, d + 1):
        Tj = theta.labels[j - 1]
        for s in range(1, N + 1):
            c = dual_chain[S.edge_index(j, s)]
            if not c:
                continue
            t = Tj(s)
            for k in range(1, j):
                Tk = theta.labels[k - 1]
                out[S.edge_index(k, Tk(s))] += c
                out[S.edge_index(k, s)] -= c
            for k in range(j + 1, d + 1):
                Tk = theta.labels[k - 1]
                out[S.edge_index(k, Tk(t))] += c
                out[S.edge_index(k, t)] -= c
    return out


def surface_h1(S: CombSurface) -> FiberHomology:
    """H_1 from the cellular boundary maps plus a symplectic basis and form."""
    d1, d2 = S.boundary_1, S.boundary_2
    snf2 = smith_normal_form(d2)
    group = AbelianGroup(
        len(S.edges) - int_rank(d1) - snf2.rank,
        tuple(x for x in snf2.diagonal if x > 1),
    )
    if group.torsion:
        raise InternalConsistencyError(f"torsion {group.torsion} in H_1 of a closed surface")

    # Dual complex: Z_1 = ker(delta_1), boundaries from the dual faces.
    snf1 = smith_normal_form(_dual_boundary_1(S))
    r1 = snf1.rank
    kernel = [snf1.V.column(j) for j in range(r1, len(S.edges))]
    ycols = []
    for face in _dual_faces(S):
        z = snf1.V_inv.apply(face)
        if any(z[:r1]):
            raise InternalConsistencyError("dual face boundary is not a cycle")
        ycols.append(z[r1:])
    Y = IntMatrix.from_columns(ycols, rows=len(kernel))
    snfy = smith_normal_form(Y)
    if any(x > 1 for x in snfy.diagonal):
        raise InternalConsistencyError("dual complex has torsion in H_1")
    ry = snfy.rank
    raw_basis = []
    for col in range(ry, len(kernel)):
        y = snfy.U_inv.column(col)
        raw_basis.append(tuple(
            sum(y[i] * kernel[i][e] for i in range(len(kernel))) for e in range(len(S.edges))
        ))
    if len(raw_basis) != group.free_rank:
        raise InternalConsistencyError(
            f"dual H_1 rank {len(raw_basis)} differs from slit-complex rank {group.free_rank}"
        )

    pushed = [_push_to_slits(S, w) for w in raw_basis]
    for p in pushed:
        if any(d1.apply(p)):
            raise InternalConsistencyError("pushed-off cycle is not closed")
    n = len(raw_basis)
    J = IntMatrix.from_rows(
        [[sum(a * b for a, b in zip(pushed[i], raw_basis[k])) for k in range(n)] for i in range(n)],
        cols=n,
    )
    if J.T != -J:
        raise InternalConsistencyError("intersection form is not alternating")
    if n and abs(J.det()) != 1:
        raise InternalConsistencyError("intersection form is not unimodular")
    P = symplectic_basis(J)
    sympl = tuple(
        tuple(sum(P[a, c] * raw_basis[a][e] for a in range(n)) for e in range(len(S.edges)))
        for c in range(n)
    )
    # P is unimodular, so its Smith form is the identity and P^-1 = V U.
    snfp = smith_normal_form(P)
    P_inv = snfp.V @ snfp.U
    if n and P_inv @ P != IntMatrix.identity(n):
        raise InternalConsistencyError("failed to invert the symplectic change of basis")
    return FiberHomology(
        surface=S,
        group=group,
        basis=sympl,
        form=P.T @ J @ P,
        _v_inv=snf1.V_inv,
        _kernel_rank=r1,
        _u=snfy.U,
        _quot_rank=ry,
        _p_inv=P_inv,
    )


@lru_cache(maxsize=256)
def fiber_homology(theta: CoveringData) -> FiberHomology:
    """Cached ``surface_h1(build_fiber_surface(theta))``."""
    return surface_h1(build_fiber_surface(theta))


def lift_homology(theta: CoveringData, b: BraidWord) -> IntMatrix:
    """Action of the lift of a liftable braid on H_1 of the fiber.

    The lift fixes the sheets over the base point, so dual edge (j, s)
    goes to the lift of b(x_j) from sheet s. Columns of the result are the
    images of the basis of :func:`fiber_homology`.
    """
    if not is_liftable(theta, b):
        raise NotLiftable(f"{b} does not stabilise the covering monodromy")
    H = fiber_homology(theta)
    S = H.surface
    images = artin_action(b).images
    N = theta.N
    edge_images: dict[int, list[int]] = {}
    cols = []
    for w in H.basis:
        chain = [0] * len(S.edges)
        for k, c in enumerate(w):
            if not c:
                continue
            if k not in edge_images:
                j, s = k // N + 1, k % N + 1
                edge_images[k] = lift_word(S, images[j - 1], s)
            for e, x in enumerate(edge_images[k]):
                chain[e] += c * x
        cols.append(H.coordinates(chain))
    return IntMatrix.from_columns(cols, rows=H.rank)


# -- text format -------------------------------------------------------------
#
#   N <int>
#   labels (a b) (c d) ...
#
# One transposition per geometric generator, points 1-indexed.

def format_covering(theta: CoveringData) -> str:
    labels = " ".join(str(t) for t in theta.labels)
    return f"N {theta.N}\nlabels {labels}".rstrip() + "\n"


def parse_covering(text: str) -> CoveringData:
    N = None
    labels = None
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if N is None:
            m = re.fullmatch(r"N\s+(\d+)", body)
            if not m:
                raise MalformedInput("expected 'N <int>'", n, col)
            N = int(m.group(1))
            continue
        if labels is not None:
            raise MalformedInput("unexpected extra line", n, col)
        m = re.fullmatch(r"labels((?:\s*\([^()]*\))*)\s*", body)
        if not m:
            raise MalformedInput("expected 'labels (a b) (c d) ...'", n, col)
        labels = []
        for cm in re.finditer(r"\(([^()]*)\)", body):
            try:
                labels.append(parse_cycles(cm.group(0), N))
            except MalformedInput as exc:
                raise MalformedInput(str(exc), n, col + cm.start()) from None
            if not labels[-1].is_transposition():
                raise MalformedInput(f"{cm.group(0)} is not a transposition", n, col + cm.start())
    if N is None:
        raise MalformedInput("missing 'N' line", 1, 1)
    return CoveringData(N, tuple(labels or ()))
