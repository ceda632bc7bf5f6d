"""Zariski-van Kampen presentations of plane-curve complements.

A braid monodromy factorization of degree d yields a presentation on the
geometric generators x_1..x_d: every factor with Artin automorphism phi
contributes phi(x_j) = x_j for each j it moves. The projective version adds
the loop around infinity, x_1 x_2 ... x_d = 1, which under our Artin
convention is the word every braid fixes.
"""

from __future__ import annotations

import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .cover import CoveringData
from .errors import BoundExceeded, InvalidFactor, MalformedInput, RankMismatch
from .factor import Factorization, validate
from .perm import Permutation, generated_group, parse_cycles
from .zlinalg import AbelianGroup, IntMatrix, cokernel
from .word import FreeWord

DEFAULT_HOM_BOUND = 120


@dataclass(frozen=True)
class Presentation:
    n_generators: int
    relators: tuple[FreeWord, ...] = ()

    def __post_init__(self):
        rels = tuple(self.relators)
        for r in rels:
            if r.rank != self.n_generators:
                raise RankMismatch(f"relator over F_{r.rank} in a presentation on {self.n_generators} generators")
        object.__setattr__(self, "relators", rels)

    @classmethod
    def from_lists(cls, n: int, relators: Sequence[Sequence[int]]) -> "Presentation":
        return cls(n, tuple(FreeWord(n, tuple(r)) for r in relators))

    def generator(self, i: int) -> FreeWord:
        return FreeWord.generator(self.n_generators, i)

    def with_relators(self, extra: Sequence[FreeWord]) -> "Presentation":
        return Presentation(self.n_generators, self.relators + tuple(extra))


def presentation(F: Factorization, projective: bool = True) -> Presentation:
    d = F.degree
    if projective:
        report = validate(F)
        if not report.valid:
            raise InvalidFactor(f"not a projective factorization: {report.summary()}")
    rels: list[FreeWord] = []
    seen: set[tuple[int, ...]] = set()
    for f in F.factors:
        for j, img in enumerate(f.automorphism.images, 1):
            x = FreeWord.generator(d, j)
            r = img * x.inverse()
            if not r.is_identity() and r.letters not in seen:
                seen.add(r.letters)
                rels.append(r)
    if projective:
        rels.append(FreeWord(d, tuple(range(1, d + 1))))
    return Presentation(d, tuple(rels))


def relation_matrix(P: Presentation) -> IntMatrix:
    """Exponent sums: one row per generator, one column per relator."""
    cols = [r.exponent_sums() for r in P.relators]
    if not cols:
        return IntMatrix.zeros(P.n_generators, 0)
    return IntMatrix.from_columns(cols, rows=P.n_generators)


def abelianization(P: Presentation) -> AbelianGroup:
    if not P.relators:
        return AbelianGroup(P.n_generators)
    return cokernel(relation_matrix(P))


# -- Tietze simplification ---------------------------------------------------

def _canonical_relator(letters: tuple[int, ...]) -> tuple[int, ...]:
    """Smallest cyclic rotation of the word or its inverse."""
    if not letters:
        return letters
    inv = tuple(-x for x in reversed(letters))
    return min(w[i:] + w[:i] for w in (letters, inv) for i in range(len(w)))


def simplify(P: Presentation) -> Presentation:
    """Safe Tietze reductions preserving Hom(P, G) for every G.

    Drops trivial and repeated relators and eliminates a generator whenever
    a relator of length at most 2 expresses it through another one.
    """
    n = P.n_generators
    rels = [FreeWord(n, r.letters).cyclic_reduce().letters for r in P.relators]
    alive = list(range(1, n + 1))
    changed = True
    while changed:
        changed = False
        rels = sorted({_canonical_relator(r) for r in rels if r})
        for r in rels:
            if len(r) == 1:
                k, image = abs(r[0]), ()
            elif len(r) == 2 and abs(r[0]) != abs(r[1]):
                # r[0] r[1] = 1, so letter r[0] equals r[1]^-1
                a, b = r
                k = abs(a)
                image = (-b,) if a > 0 else (b,)
            else:
                continue
            sub = {k: image, -k: tuple(-x for x in reversed(image))}
            rels = [
                FreeWord(n, tuple(y for x in w for y in sub.get(x, (x,)))).cyclic_reduce().letters
                for w in rels if w != r
            ]
            alive.remove(k)
            changed = True
            break
    renum = {g: i for i, g in enumerate(alive, 1)}
    m = len(alive)
    out = tuple(FreeWord(m, tuple(renum[abs(x)] * (1 if x > 0 else -1) for x in r)) for r in rels)
    return Presentation(m, out)


# -- homomorphism counting ---------------------------------------------------

@dataclass(frozen=True)
class FiniteGroup:
    """A permutation group listed with a multiplication table."""

    description: str
    elements: tuple[Permutation, ...]
    table: tuple[tuple[int, ...], ...]
    inverses: tuple[int, ...]
    identity: int

    @property
    def order(self) -> int:
        return len(self.elements)

    @classmethod
    def from_generators(cls, gens: Sequence[Permutation], degree: int,
                        bound: int = DEFAULT_HOM_BOUND, description: str | None = None) -> "FiniteGroup":
        if degree > 5:
            raise MalformedInput(f"target degree {degree} exceeds 5")
        elems = generated_group(list(gens), degree, limit=bound + 1)
        if len(elems) > bound:
            raise BoundExceeded(f"target group has more than {bound} elements")
        elems = tuple(sorted(elems))
        index = {p: i for i, p in enumerate(elems)}
        table = tuple(tuple(index[a * b] for b in elems) for a in elems)
        inverses = tuple(index[a.inverse()] for a in elems)
        ident = index[Permutation.identity(degree)]
        if description is None:
            description = f"perm {degree}: " + " ".join(str(g) for g in gens)
        return cls(description, elems, table, inverses, ident)


def parse_target(text: str, bound: int = DEFAULT_HOM_BOUND) -> FiniteGroup:
    """Parse "perm <degree>: (1 2) (1 2 3)".

    Space-separated groups are separate generators; ")(" joins the cycles
    of one generator, as in "(1 2)(3 4)".
    """
    m = re.fullmatch(r"\s*perm\s+(\d+)\s*:(.*)", text.strip())
    if not m:
        raise MalformedInput("expected 'perm <degree>: (cycles) ...'", 1, 1)
    degree = int(m.group(1))
    body = m.group(2).strip()
    chunks = re.findall(r"(?:\([^()]*\))+", body)
    if "".join(chunks).replace(" ", "") != body.replace(" ", ""):
        raise MalformedInput(f"cannot parse generators {body!r}", 1, text.find(":") + 2)
    gens = [parse_cycles(c, degree) for c in chunks]
    if not gens:
        gens = [Permutation.identity(degree)]
    return FiniteGroup.from_generators(gens, degree, bound, description=text.strip())


def symmetric_group(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup.from_generators([Permutation.identity(1)], 1, description="perm 1: ()")
    gens = [Permutation.transposition(n, 1, 2), Permutation.from_cycles(n, [tuple(range(1, n + 1))])]
    return FiniteGroup.from_generators(gens, n)


@dataclass(frozen=True)
class HomCount:
    target_description: str
    target_order: int
    count: int


def _eval(table, inverses, ident, images, letters) -> int:
    acc = ident
    for x in letters:
        g = images[x - 1] if x > 0 else inverses[images[-x - 1]]
        acc = table[acc][g]
    return acc


def _count_from(args) -> int:
    """Backtracking count with the first generator fixed to ``first``."""
    n, buckets, table, inverses, ident, first = args
    order = len(table)
    images = [0] * n

    def rec(k: int) -> int:
        if k == n:
            return 1
        total = 0
        choices = range(order) if k or first is None else (first,)
        for g in choices:
            images[k] = g
            if all(_eval(table, inverses, ident, images, r) == ident for r in buckets[k]):
                total += rec(k + 1)
        return total

    return rec(0)


def count_homs(P: Presentation, target: FiniteGroup, threads: int | None = None,
               tietze: bool = True) -> HomCount:
    """Number of homomorphisms P -> target, by exhaustive search."""
    Q = simplify(P) if tietze else P
    n = Q.n_generators
    if n == 0:
        # every relator is trivial after simplification
        return HomCount(target.description, target.order, 1)
    buckets: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for r in Q.relators:
        if r.letters:
            buckets[max(abs(x) for x in r.letters) - 1].append(r.letters)
    base = (n, buckets, target.table, target.inverses, target.identity)
    if threads and threads > 1 and target.order > 1:
        jobs = [base + (g,) for g in range(target.order)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            count = sum(pool.map(_count_from, jobs))
    else:
        count = _count_from(base + (None,))
    return HomCount(target.description, target.order, count)


# -- stabilization -----------------------------------------------------------

@dataclass(frozen=True)
class Stabilized:
    """Quotient by commutators of geometric generators with disjoint monodromy.

    Only conjugators up to ``conjugator_bound`` letters are used, so the
    result is an intermediate quotient unless the true kernel happens to be
    reached; ``approximate`` is always True for that reason.
    """

    presentation: Presentation
    conjugator_bound: int
    added: int
    approximate: bool = True


def _reduced_words(n: int, length: int):
    yield FreeWord(n, ())
    letters = [x for i in range(1, n + 1) for x in (i, -i)]
    for k in range(1, length + 1):
        for w in itertools.product(letters, repeat=k):
            if all(w[i] != -w[i + 1] for i in range(k - 1)):
                yield FreeWord(n, w)


def commutator(g: FreeWord, h: FreeWord) -> FreeWord:
    return g * h * g.inverse() * h.inverse()


def stabilized(P: Presentation, theta: CoveringData, conjugator_bound: int = 0) -> Stabilized:
    n = P.n_generators
    if theta.d != n:
        raise RankMismatch(f"{theta.d} labels for {n} generators")
    if conjugator_bound < 0:
        raise MalformedInput("conjugator_bound must be >= 0")
    geometric = []
    for w in _reduced_words(n, conjugator_bound):
        for a in range(1, n + 1):
            g = FreeWord.generator(n, a).conjugate_by(w)
            geometric.append((g, theta.theta(g).support()))
    existing = {_canonical_relator(r.letters) for r in P.relators}
    extra = []
    for (g1, s1), (g2, s2) in itertools.combinations(geometric, 2):
        if s1 & s2:
            continue
        c = commutator(g1, g2)
        key = _canonical_relator(c.cyclic_reduce().letters)
        if key and key not in existing:
            existing.add(key)
            extra.append(c)
    return Stabilized(P.with_relators(extra), conjugator_bound, len(extra))


# -- structure checks --------------------------------------------------------

@dataclass
class StructureReport:
    """Abelian-level shadow of the sequence G0 -> G -> S_N x Z_d -> Z_2.

    ``parity_ok`` is None when d is odd: the sign-versus-linking reading of
    the Z_2 term only makes sense for even d.
    """

    relator_failures: list[int] = field(default_factory=list)
    linking_failures: list[int] = field(default_factory=list)
    parity_failures: list[int] = field(default_factory=list)
    parity_checked: bool = False
    image_order: int = 0
    ambient_order: int = 0
    lambda_quotient: AbelianGroup | None = None
    predicted_ab_g0: AbelianGroup | None = None

    @property
    def theta_ok(self) -> bool:
        return not self.relator_failures

    @property
    def linking_ok(self) -> bool:
        return not self.linking_failures

    @property
    def parity_ok(self) -> bool | None:
        return not self.parity_failures if self.parity_checked else None

    @property
    def image_index(self) -> int:
        return self.ambient_order // self.image_order if self.image_order else 0

    @property
    def passed(self) -> bool:
        return self.theta_ok and self.linking_ok and self.parity_ok is not False


def _image_subgroup_order(labels: Sequence[Permutation], N: int, d: int) -> int:
    # elements (perm, k mod d); closure by right multiplication with generators
    start = (Permutation.identity(N), 0)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for p, k in frontier:
            for lab in labels:
                q = (p * lab, (k + 1) % d)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def structure_check(P: Presentation, theta: CoveringData, d: int | None = None,
                    N: int | None = None,
                    lambda_generators: Sequence[tuple[int, int]] | None = None) -> StructureReport:
    """Checks that theta and the linking number descend to P.

    ``lambda_generators`` are user-supplied pairs (K.alpha, H.alpha) spanning
    the lattice Lambda in Z^2; they are only turned into the predicted
    abelianized G0, never derived from the factorization.
    """
    d = P.n_generators if d is None else d
    N = theta.N if N is None else N
    if theta.d != P.n_generators or d != P.n_generators or N != theta.N:
        raise RankMismatch("presentation, covering data and (d, N) disagree")
    rep = StructureReport()
    for k, r in enumerate(P.relators, 1):
        if not theta.theta(r).is_identity():
            rep.relator_failures.append(k)
        if sum(r.exponent_sums()) % d:
            rep.linking_failures.append(k)
    if d % 2 == 0:
        rep.parity_checked = True
        rep.parity_failures = [j for j, lab in enumerate(theta.labels, 1) if lab.sign() != -1]
    rep.image_order = _image_subgroup_order(theta.labels, N, d)
    fact = 1
    for i in range(2, N + 1):
        fact *= i
    rep.ambient_order = fact * d
    if lambda_generators is not None:
        gens = [tuple(v) for v in lambda_generators]
        if any(len(v) != 2 for v in gens):
            raise MalformedInput("Lambda generators must be integer pairs")
        q = cokernel(IntMatrix.from_columns(gens, rows=2)) if gens else AbelianGroup(2)
        rep.lambda_quotient = q
        rep.predicted_ab_g0 = AbelianGroup(q.free_rank * (N - 1),
                                           tuple(t for _ in range(N - 1) for t in q.torsion))
    return rep


# -- text format -------------------------------------------------------------

def format_presentation(P: Presentation) -> str:
    lines = [f"gens {P.n_generators}"]
    lines += [("rel " + r.serialize()).rstrip() for r in P.relators]
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    n = None
    rels: list[FreeWord] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "gens" or not tokens[1].isdigit():
                raise MalformedInput("expected 'gens <n>'", ln, col)
            n = int(tokens[1])
            continue
        if tokens[0] != "rel":
            raise MalformedInput("expected 'rel <signed ints>'", ln, col)
        try:
            letters = tuple(int(t) for t in tokens[1:])
        except ValueError:
            raise MalformedInput("relator letters must be integers", ln, col + 4) from None
        try:
            rels.append(FreeWord(n, letters))
        except MalformedInput as exc:
            raise MalformedInput(str(exc), ln, col + 4) from None
    if n is None:
        raise MalformedInput("missing 'gens' line", 1, 1)
    return Presentation(n, tuple(rels))
