"""Command-line interface: ``homanti <command> ...``.

Exit codes: 0 success, 1 a mathematical check came out negative (or the
input was refused for a mathematical reason such as non-multiplicative
twists), 2 the input could not be read or has the wrong shape.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .algebra import check_axioms, check_multiplicative
from .catalog import ConformalAlgebra, from_name
from .cohomology import cohomology_report, max_degree
from .deformations import (
    DEFAULT_T_SAMPLES,
    NijenhuisCandidate,
    check_infinitesimal,
    deform,
    deformation_from_nijenhuis,
    is_nijenhuis,
    nijenhuis_candidate,
    residual_degree_report,
    verify_trivial,
)
from .errors import HomAntiError, NotMultiplicativeError
from .extensions import extension_from_cocycle, h2_classification_report
from .linalg import RationalFormatError, as_rational, rational_format, rational_parse
from .representation import adjoint_representation, check_representation, hom_module, trivial_representation

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ------------------------------------------------------------------ loading

def load_algebra_arg(text: str):
    """A file path, or a catalog name such as ``k1-twisted?mu=3``."""
    path = Path(text)
    if path.exists():
        return io.load_algebra(path)
    try:
        alg = from_name(text)
    except HomAntiError:
        raise InputError(f"{text!r} is neither a readable file nor a catalog name") from None
    if isinstance(alg, ConformalAlgebra):
        raise InputError("the conformal algebra is infinite-dimensional; use the 'conformal' command")
    return alg


def load_rep_arg(a, text: str):
    if text == "adjoint":
        return adjoint_representation(a)
    if text == "trivial" or text.startswith("trivial:"):
        r, s = 1, 1
        if ":" in text:
            try:
                r, s = (int(x) for x in text.split(":", 1)[1].split(","))
            except ValueError:
                raise InputError("trivial module dimensions must look like trivial:r,s") from None
            if r < 0 or s < 0:
                raise InputError("module dimensions must be non-negative")
        return trivial_representation(a, hom_module(r, s))
    return io.representation_from_json(a, Path(text))


def load_phi_arg(a, text: str) -> NijenhuisCandidate:
    if text == "id":
        return NijenhuisCandidate.identity(a)
    if text == "zero":
        return NijenhuisCandidate.zero(a)
    data = io._load_json(Path(text))
    if not isinstance(data, dict) or set(data) != {"phi0", "phi1"}:
        raise InputError("phi file needs exactly the keys phi0 and phi1")
    return nijenhuis_candidate(a, io.matrix_from_json(data["phi0"], a.p, a.p, "phi0"),
                               io.matrix_from_json(data["phi1"], a.q, a.q, "phi1"))


def parse_rational(text: str) -> Fraction:
    try:
        return rational_parse(text)
    except (RationalFormatError, ValueError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


# ------------------------------------------------------------------ output

def _verdict_lines(report_json: dict, indent: str = "  ") -> list:
    lines = []
    for name, v in report_json["identities"].items():
        lines.append(f"{indent}{name}: {v['verdict']}")
        for viol in v["violations"][:5]:
            lines.append(f"{indent}  at {viol['indices']}: residual {viol['residual']}")
        extra = len(v["violations"]) - 5
        if extra > 0:
            lines.append(f"{indent}  ... {extra} more")
    return lines


def emit(args, payload: dict, text_lines: list) -> None:
    out = io.dumps(payload) if args.json else "\n".join(text_lines) + "\n"
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


# ------------------------------------------------------------------ commands

def cmd_check(args) -> int:
    a = load_algebra_arg(args.algebra)
    rep = check_axioms(a)
    payload = {"command": "check", "axioms": rep.to_json()}
    lines = [f"axioms: {'pass' if rep.passed else 'fail'}"] + _verdict_lines(payload["axioms"])
    ok = rep.passed
    if args.multiplicative:
        mrep = check_multiplicative(a)
        payload["multiplicative"] = mrep.to_json()
        lines += [f"multiplicative: {'pass' if mrep.passed else 'fail'}"] + _verdict_lines(payload["multiplicative"])
        ok = ok and mrep.passed
    payload["verdict"] = "pass" if ok else "fail"
    emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cohomology(args) -> int:
    a = load_algebra_arg(args.algebra)
    cap = max_degree()
    if not 1 <= args.degree <= cap:
        raise InputError(f"degree must lie in [1, {cap}] (HOMANTI_MAX_DEGREE)")
    rho = load_rep_arg(a, args.rep)
    rrep = check_representation(a, rho)
    rep = cohomology_report(a, rho, args.degree)
    data = rep.to_json()
    consistent = rep.kernel_dim - rep.rank_prev == rep.h_dim
    payload = {"command": "cohomology", "representation_valid": rrep.passed, **data,
               "self_consistent": consistent}
    k = args.degree
    lines = [
        f"dim C^{k} (admissible): {rep.admissible_dim}",
        f"rank d^{k - 1}: {rep.rank_prev}",
        f"dim ker d^{k}: {rep.kernel_dim}",
        f"dim H^{k}: {rep.h_dim}",
        "modular oracle: " + ("agrees" if rep.oracles_agree else "DISAGREES")
        + " (primes " + ", ".join(str(p) for p in sorted(next(iter(rep.modular_ranks.values())))) + ")",
    ]
    if not rrep.passed:
        lines.append("warning: the representation fails " + ", ".join(rrep.failed_identities()))
    emit(args, payload, lines)
    return EXIT_OK if consistent and rep.oracles_agree else EXIT_FAIL


def cmd_extend(args) -> int:
    a = load_algebra_arg(args.algebra)
    rho = load_rep_arg(a, args.rep)
    omega = io.omega_from_json(Path(args.cocycle), a.p, a.q, rho.r, rho.s)
    big = extension_from_cocycle(a, rho, omega)
    rep = check_axioms(big)
    payload = {"command": "extend", "algebra": io.algebra_to_json(big), "axioms": rep.to_json(),
               "verdict": "pass" if rep.passed else "fail"}
    if args.algebra_out:
        Path(args.algebra_out).write_text(io.export_algebra(big))
    lines = [f"extension: {big.p}|{big.q}-dimensional", f"axioms: {'pass' if rep.passed else 'fail'}"]
    lines += _verdict_lines(payload["axioms"])
    emit(args, payload, lines)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_deform(args) -> int:
    a = load_algebra_arg(args.algebra)
    omega = io.omega_from_json(Path(args.omega), a.p, a.q, a.p, a.q)
    dt = deform(a, omega, args.t)
    rep = check_axioms(dt)
    payload = {"command": "deform", "t": rational_format(args.t), "algebra": io.algebra_to_json(dt),
               "axioms": rep.to_json(), "verdict": "pass" if rep.passed else "fail"}
    lines = [f"deformed at t = {rational_format(args.t)}", f"axioms: {'pass' if rep.passed else 'fail'}"]
    lines += _verdict_lines(payload["axioms"])
    if args.infinitesimal:
        inf = check_infinitesimal(a, omega)
        payload["infinitesimal"] = inf.to_json()
        lines.append(f"condition (i): {'pass' if inf.condition_i else 'fail'}")
        lines.append(f"condition (ii): {'pass' if inf.condition_ii else 'fail'}")
    if args.algebra_out:
        Path(args.algebra_out).write_text(io.export_algebra(dt))
    emit(args, payload, lines)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_nijenhuis(args) -> int:
    a = load_algebra_arg(args.algebra)
    phi = load_phi_arg(a, args.phi)
    rep = is_nijenhuis(a, phi)
    payload = {"command": "nijenhuis", "phi": phi.to_json(), "nijenhuis": rep.to_json(),
               "verdict": "pass" if rep.passed else "fail"}
    lines = [f"Nijenhuis: {'yes' if rep.passed else 'no'}"] + _verdict_lines(payload["nijenhuis"])
    if rep.passed:
        d = deformation_from_nijenhuis(a, phi)
        inf = check_infinitesimal(a, d)
        triv = verify_trivial(a, d, phi, DEFAULT_T_SAMPLES)
        deg = residual_degree_report(a, d)
        payload.update({"omega": d.to_json(), "infinitesimal": inf.to_json(), "trivial": triv.to_json(),
                        "residual_degree": deg.to_json()})
        lines += [
            f"generated omega: {sum(len(v) for v in d.to_json().values())} nonzero entries",
            f"condition (i): {'pass' if inf.condition_i else 'fail'}",
            f"condition (ii): {'pass' if inf.condition_ii else 'fail'}",
            "trivial at t = " + ", ".join(rational_format(t) for t in DEFAULT_T_SAMPLES)
            + f": {'yes' if triv.passed else 'no'}",
        ]
        if args.omega_out:
            Path(args.omega_out).write_text(io.dumps(io.omega_to_json(d.omega)))
        ok = inf.passed and triv.passed
        payload["verdict"] = "pass" if ok else "fail"
    emit(args, payload, lines)
    return EXIT_OK if payload["verdict"] == "pass" else EXIT_FAIL


def cmd_h2(args) -> int:
    a = load_algebra_arg(args.algebra)
    rho = load_rep_arg(a, args.rep)
    rep = h2_classification_report(a, rho)
    payload = {"command": "h2", **rep.to_json()}
    lines = [f"dim H^2: {rep.dim}", f"dim ker d^2: {rep.kernel_dim}", f"rank d^1: {rep.image_rank}",
             "modular oracle: " + ("agrees" if rep.oracles_agree else "DISAGREES")]
    for n, r in enumerate(rep.representatives):
        if r.axioms is None:
            lines.append(f"class {n}: omega0 not symmetric, no extension built")
        else:
            lines.append(f"class {n}: extension axioms {'pass' if r.axioms.passed else 'fail'}")
    emit(args, payload, lines)
    ok = rep.oracles_agree and all(r.axioms is None or r.axioms.passed for r in rep.representatives)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export(args) -> int:
    a = load_algebra_arg(args.name)
    text = io.export_algebra(a)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_conformal(args) -> int:
    alg = ConformalAlgebra(as_rational(args.r))
    rep = alg.spot_check_axioms(window=args.window, count=args.count, seed=args.seed)
    payload = {"command": "conformal", **rep.to_json()}
    lines = [f"conformal algebra, r = {rational_format(alg.r)}, q = {rational_format(alg.q)}"]
    for name, s in rep.summary().items():
        lines.append(f"  {name}: {s['failed']} of {s['checked']} sampled tuples violate the identity")
    emit(args, payload, lines)
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homanti", description="Exact computations for Hom-Lie antialgebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable JSON output")
        p.add_argument("--out", help="write the report to this path instead of stdout")

    p = sub.add_parser("check", help="verify the defining identities")
    p.add_argument("algebra", help="algebra file or catalog name")
    p.add_argument("--multiplicative", action="store_true", help="also check multiplicativity")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cohomology", help="dimension of H^k")
    p.add_argument("algebra")
    p.add_argument("--rep", default="adjoint", help="adjoint, trivial, trivial:r,s or a representation file")
    p.add_argument("--degree", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("extend", help="extension algebra from a 2-cocycle")
    p.add_argument("algebra")
    p.add_argument("--rep", default="adjoint")
    p.add_argument("--cocycle", required=True, help="omega file")
    p.add_argument("--algebra-out", help="also write the extension as an algebra file")
    common(p)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("h2", help="classify abelian extensions through H^2")
    p.add_argument("algebra")
    p.add_argument("--rep", default="adjoint")
    common(p)
    p.set_defaults(func=cmd_h2)

    p = sub.add_parser("deform", help="deformed algebra at a rational t")
    p.add_argument("algebra")
    p.add_argument("--omega", required=True, help="omega file with adjoint-shaped tensors")
    p.add_argument("--t", type=parse_rational, required=True)
    p.add_argument("--infinitesimal", action="store_true", help="also evaluate both deformation conditions")
    p.add_argument("--algebra-out")
    common(p)
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("nijenhuis", help="check a Nijenhuis operator and its trivial deformation")
    p.add_argument("algebra")
    p.add_argument("--phi", default="id", help="id, zero or a file with phi0/phi1 matrices")
    p.add_argument("--omega-out", help="write the generated omega file here")
    common(p)
    p.set_defaults(func=cmd_nijenhuis)

    p = sub.add_parser("export", help="write a catalog algebra as a canonical file")
    p.add_argument("name")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("conformal", help="spot-check the conformal algebra on sampled labels")
    p.add_argument("--r", type=parse_rational, default=Fraction(2))
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_conformal)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except NotMultiplicativeError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, HomAntiError, RationalFormatError, OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
