"""Command-line front end.

Exit status: 0 success, 1 verified negative, 2 inconclusive (budget
exhausted), 3 input error. With ``--format machine`` every report is a
block of ``key=value`` lines in a fixed order; multi-line artifacts are
written on one line with ``|`` in place of newlines and re-parse with the
matching ``parse_*`` function after ``text.replace("|", "\\n")``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable

from . import cover, factor, lefschetz, mcg, vankampen
from .braid import parse_braid
from .errors import BoundExceeded, Incompatible, MonodromyError, NotLiftable, RankMismatch
from .zlinalg import IntMatrix

OK, NEGATIVE, INCONCLUSIVE, INPUT_ERROR = 0, 1, 2, 3


class Report:
    """Ordered key/value pairs rendered for humans or machines."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.items: list[tuple[str, str]] = []

    def add(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "true" if value else "false"
        self.items.append((key, str(value)))

    def artifact(self, key: str, text: str) -> None:
        self.items.append((key, text.rstrip("\n")))

    def render(self) -> str:
        if self.fmt == "machine":
            return "".join(f"{k}={v.replace(chr(10), '|')}\n" for k, v in self.items)
        out = []
        for k, v in self.items:
            if "\n" in v:
                out.append(f"{k}:")
                out.extend("    " + line for line in v.splitlines())
            else:
                out.append(f"{k}: {v}")
        return "\n".join(out) + "\n"


def _read(path: str, parser: Callable):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parser(text)
    except MonodromyError as exc:
        raise InputError(f"{path}: {exc}") from None


class InputError(Exception):
    pass


def _matrix_text(M: IntMatrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in M.to_rows())


def _parse_twist(text: str, g: int) -> mcg.SpMatrix:
    rows = [r.split() for r in text.replace("|", ";").split(";") if r.strip()]
    try:
        M = IntMatrix.from_rows([[int(x) for x in r] for r in rows], cols=len(rows[0]) if rows else 0)
        return mcg.SpMatrix(g, M)
    except (ValueError, MonodromyError) as exc:
        raise InputError(f"--twist: {exc}") from None


# -- commands ----------------------------------------------------------------

def cmd_validate(args, rep: Report) -> int:
    F = _read(args.factorization, factor.parse_factorization)
    r = factor.validate(F)
    rep.add("degree", F.degree)
    rep.add("factors", len(F))
    rep.add("product_full_twist", r.product_is_full_twist)
    rep.add("tangencies", r.tangencies)
    rep.add("positive_nodes", r.positive_nodes)
    rep.add("negative_nodes", r.negative_nodes)
    rep.add("cusps", r.cusps)
    rep.add("report", r.summary())
    return OK if r.valid else NEGATIVE


def cmd_invariants(args, rep: Report) -> int:
    F = _read(args.factorization, factor.parse_factorization)
    r = factor.validate(F)
    rep.add("degree", F.degree)
    rep.add("valid", r.valid)
    rep.add("exponents", " ".join(f"{k}:{v}" for k, v in sorted(F.exponents().items())))
    P = vankampen.presentation(F, projective=r.valid)
    rep.add("projective", r.valid)
    rep.add("abelianization", vankampen.abelianization(P))
    if args.hom_target:
        target = _target(args)
        hc = vankampen.count_homs(P, target, threads=args.threads)
        rep.add("hom_target", hc.target_description)
        rep.add("hom_count", hc.count)
    return OK


def _target(args) -> vankampen.FiniteGroup:
    try:
        return vankampen.parse_target(args.hom_target)
    except MonodromyError as exc:
        raise InputError(f"--hom-target: {exc}") from None


def cmd_hurwitz(args, rep: Report) -> int:
    F1 = _read(args.first, factor.parse_factorization)
    F2 = _read(args.second, factor.parse_factorization)
    res = factor.hurwitz_equivalent(F1, F2, max_states=args.max_states,
                                    allow_conjugation=args.conjugation)
    rep.add("status", res.status)
    rep.add("states", res.states)
    if res.status == "found":
        rep.add("moves", len(res.path))
        rep.add("path", " ".join(":".join(str(x) for x in m) for m in res.path))
        return OK
    rep.add("reason", res.reason)
    return NEGATIVE if res.status == "refuted" else INCONCLUSIVE


def cmd_cover(args, rep: Report) -> int:
    theta = _read(args.covering, cover.parse_covering)
    rep.add("N", theta.N)
    rep.add("d", theta.d)
    rep.add("transitive", theta.is_transitive())
    closed = theta.boundary_monodromy().is_identity()
    rep.add("closed_at_infinity", closed)
    status = OK
    if closed and theta.is_transitive():
        H = cover.fiber_homology(theta)
        rep.add("genus", cover.fiber_genus(theta))
        rep.add("h1_rank", H.rank)
    else:
        status = NEGATIVE
    if args.factorization:
        F = _read(args.factorization, factor.parse_factorization)
        c = cover.check_compatibility(theta, F)
        rep.add("global_ok", c.global_ok)
        rep.add("local_ok", c.local_ok)
        rep.add("compatible", c.compatible)
        for n, msg in c.local_failures:
            rep.add(f"local_failure_{n}", msg)
        if not c.compatible:
            status = NEGATIVE
    return status


def cmd_lift(args, rep: Report) -> int:
    theta = _read(args.covering, cover.parse_covering)
    b = _read(args.braid, parse_braid)
    ok = cover.is_liftable(theta, b)
    rep.add("liftable", ok)
    if not ok:
        return NEGATIVE
    M = cover.lift_homology(theta, b)
    rep.add("genus", cover.fiber_genus(theta))
    rep.artifact("matrix", _matrix_text(M))
    return OK


def _lefschetz_report(L: lefschetz.LFibration, rep: Report) -> int:
    inv = lefschetz.invariants(L)
    for key in ("genus", "critical_points", "reducible_fibers", "euler_characteristic", "b1"):
        rep.add(key, inv[key])
    rep.add("h1", lefschetz.total_space_h1(L))
    valid = lefschetz.sp_validity(L).valid
    rep.add("sp_monodromy_trivial", valid)
    rep.artifact("fibration", lefschetz.format_lfibration(L))
    return OK if valid else NEGATIVE


def cmd_lefschetz(args, rep: Report) -> int:
    if args.covering:
        F = _read(args.input, factor.parse_factorization)
        theta = _read(args.covering, cover.parse_covering)
        L = lefschetz.from_branch_data(F, theta)
    else:
        L = _read(args.input, lefschetz.parse_lfibration)
    return _lefschetz_report(L, rep)


def cmd_fibersum(args, rep: Report) -> int:
    L = _read(args.inputs[0], lefschetz.parse_lfibration)
    twist = _parse_twist(args.twist, L.genus) if args.twist else None
    for path in args.inputs[1:]:
        L = lefschetz.fiber_sum(L, _read(path, lefschetz.parse_lfibration), twist)
    return _lefschetz_report(L, rep)


def _presentation_from(path: str, affine: bool):
    text = Path(path).read_text() if Path(path).exists() else ""
    if text.lstrip().startswith("gens"):
        return _read(path, vankampen.parse_presentation)
    F = _read(path, factor.parse_factorization)
    return vankampen.presentation(F, projective=not affine)


def cmd_vankampen(args, rep: Report) -> int:
    P = _presentation_from(args.input, args.affine)
    rep.add("generators", P.n_generators)
    rep.add("relators", len(P.relators))
    rep.add("abelianization", vankampen.abelianization(P))
    if args.hom_target:
        hc = vankampen.count_homs(P, _target(args), threads=args.threads)
        rep.add("hom_target", hc.target_description)
        rep.add("hom_count", hc.count)
    rep.artifact("presentation", vankampen.format_presentation(P))
    return OK


def cmd_stabilize(args, rep: Report) -> int:
    P = _presentation_from(args.input, args.affine)
    theta = _read(args.covering, cover.parse_covering)
    S = vankampen.stabilized(P, theta, args.conjugator_bound)
    check = vankampen.structure_check(S.presentation, theta)
    rep.add("conjugator_bound", S.conjugator_bound)
    rep.add("approximate", S.approximate)
    rep.add("added_relators", S.added)
    rep.add("abelianization", vankampen.abelianization(S.presentation))
    rep.add("theta_descends", check.theta_ok)
    rep.add("linking_descends", check.linking_ok)
    rep.add("parity", "n/a" if check.parity_ok is None else check.parity_ok)
    rep.add("image_index", check.image_index)
    if args.hom_target:
        hc = vankampen.count_homs(S.presentation, _target(args), threads=args.threads)
        rep.add("hom_target", hc.target_description)
        rep.add("hom_count", hc.count)
    rep.artifact("presentation", vankampen.format_presentation(S.presentation))
    return OK if check.passed else NEGATIVE


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monodromy", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.add_argument("--threads", type=int, default=1, help="worker cap for homomorphism counting")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a factorization multiplies to the full twist")
    s.add_argument("factorization")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("invariants", help="exponent counts and group invariants of a factorization")
    s.add_argument("factorization")
    s.add_argument("--hom-target")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("hurwitz", help="search for a Hurwitz path between two factorizations")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--max-states", type=int, default=factor.DEFAULT_MAX_STATES)
    s.add_argument("--conjugation", action="store_true", help="also allow global conjugation")
    s.set_defaults(func=cmd_hurwitz)

    s = sub.add_parser("cover", help="fiber genus and compatibility of covering data")
    s.add_argument("covering")
    s.add_argument("factorization", nargs="?")
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("lift", help="homological lift of a braid to the fiber")
    s.add_argument("covering")
    s.add_argument("braid", help="file holding a braid such as 'B4: 1 3 -2'")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("lefschetz", help="invariants of a Lefschetz fibration")
    s.add_argument("input", help="fibration file, or a factorization when --covering is given")
    s.add_argument("--covering")
    s.set_defaults(func=cmd_lefschetz)

    s = sub.add_parser("fibersum", help="fiber sum of Lefschetz fibrations")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--twist", help="gluing matrix, rows separated by ';'")
    s.set_defaults(func=cmd_fibersum)

    for name, helptext in (("vankampen", "fundamental group presentation of the curve complement"),
                           ("stabilize", "quotient by commutators of disjoint geometric generators")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("input", help="factorization or presentation file")
        if name == "stabilize":
            s.add_argument("covering")
            s.add_argument("--conjugator-bound", type=int, default=0)
        s.add_argument("--affine", action="store_true", help="omit the relation at infinity")
        s.add_argument("--hom-target")
        s.set_defaults(func=cmd_vankampen if name == "vankampen" else cmd_stabilize)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_states", 1) < 1 or getattr(args, "conjugator_bound", 0) < 0 or args.threads < 1:
        print("error: numeric option out of range", file=sys.stderr)
        return INPUT_ERROR
    rep = Report(args.format)
    try:
        status = args.func(args, rep)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (NotLiftable, Incompatible) as exc:
        rep.add("error", exc)
        status = NEGATIVE
    except BoundExceeded as exc:
        rep.add("error", exc)
        status = INCONCLUSIVE
    except (RankMismatch, MonodromyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    sys.stdout.write(rep.render())
    return status


if __name__ == "__main__":
    sys.exit(main())
