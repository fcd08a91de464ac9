"""Command-line interface: ``homassoc {validate,cohomology,op,verify,twist}``.

Exit codes: 0 success, 1 validation or identity failure, 2 usage or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .algebra import BUILTIN, AlgebraError, HomAlgebra, ValidationError, load_algebra, yau_twist
from .cochain import Cochain, CochainError, identity_cochain, is_equivariant, mu_cochain
from .cohomology import HochschildComplex
from .ops import bracket, circ, circ_i, cup, delta, homotopy
from .verify import IDENTITY_NAMES, VerificationPlan, run_plan

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _algebra(ref: str, check: bool = True) -> HomAlgebra:
    """Load from a JSON file, or build a shipped example by name."""
    path = Path(ref)
    if not path.exists() and ref in BUILTIN:
        A = BUILTIN[ref]()
    elif not path.exists():
        raise UsageError(f"{ref}: no such file (built-in names: {', '.join(BUILTIN)})")
    else:
        A = load_algebra(path, check=False)
    if check:
        A.check()
    return A


def _read_json(ref: str):
    try:
        return json.loads(Path(ref).read_text())
    except FileNotFoundError:
        raise UsageError(f"{ref}: no such file") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{ref}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _cochain(A: HomAlgebra, ref: str) -> Cochain:
    if ref == "id":
        return identity_cochain(A)
    if ref == "mu":
        return mu_cochain(A)
    return Cochain.from_dict(A, _read_json(ref))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def cmd_validate(args) -> int:
    A = _algebra(args.algebra, check=False)
    rep = A.validate()
    if rep.valid:
        print("valid (multiplicative)")
        return EXIT_OK
    b = A.basis
    for i, j, l in rep.hom_associativity:
        print(f"hom-associativity violated at ({b[i]}, {b[j]}, {b[l]})")
    for i, j in rep.multiplicativity:
        print(f"multiplicativity violated at ({b[i]}, {b[j]})")
    if rep.hom_associative:
        print("hom-associative but not multiplicative")
    return EXIT_FAIL


def cmd_cohomology(args) -> int:
    if args.max_degree < 2:
        raise UsageError("--max-degree must be at least 2")
    A = _algebra(args.algebra)
    report = HochschildComplex(A).report(args.max_degree)
    _emit(_dumps(report.to_dict()), args.out)
    if args.out:
        for row in report.degrees:
            h = f"  H={row['dimH']}" if "dimH" in row else ""
            print(f"n={row['n']}  C={row['dimC']}  Z={row['dimZ']}  B={row['dimB']}{h}")
        print(f"class of mu is zero: {report.checks['mu_is_coboundary']}")
    return EXIT_OK


_ARITY = {"delta": 1, "cup": 2, "bracket": 2, "circ": 2, "circ_i": 2, "homotopy": 3}


def cmd_op(args) -> int:
    A = _algebra(args.algebra)
    want = _ARITY[args.kind]
    if len(args.cochains) != want:
        raise UsageError(f"{args.kind} takes {want} cochain argument(s), got {len(args.cochains)}")
    xs = [_cochain(A, ref) for ref in args.cochains]
    bad = [ref for ref, x in zip(args.cochains, xs) if not is_equivariant(x)]
    if bad:
        raise UsageError(f"not equivariant: {', '.join(bad)}")
    if args.kind == "circ_i":
        if args.index is None:
            raise UsageError("circ_i needs --index")
        if not 0 <= args.index < xs[0].degree:
            raise UsageError(f"--index must lie in [0, {xs[0].degree - 1}]")
        result = circ_i(xs[0], xs[1], args.index)
    else:
        result = {"delta": delta, "cup": cup, "bracket": bracket, "circ": circ, "homotopy": homotopy}[args.kind](*xs)
    _emit(_dumps(result.to_dict()), args.out)
    return EXIT_OK


def _plan(args) -> VerificationPlan:
    data = VerificationPlan().to_dict()
    if args.plan:
        loaded = _read_json(args.plan)
        if not isinstance(loaded, dict):
            raise UsageError("plan JSON must be an object")
        data.update(loaded)
    for key in ("max_degree", "seed", "samples", "coeff_bound"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    if args.identity:
        data["identities"] = args.identity
    data["algebra_file"] = args.algebra
    try:
        return VerificationPlan.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad plan: {exc}") from None


def cmd_verify(args) -> int:
    plan = _plan(args)
    A = _algebra(args.algebra, check=False)
    if not A.validate().valid and not args.allow_invalid:
        print(f"{A.name} does not validate; run 'homassoc validate' for details "
              "or pass --allow-invalid to exercise the identities anyway", file=sys.stderr)
        return EXIT_FAIL
    report = run_plan(A, plan, require_valid=not args.allow_invalid)
    _emit(report.to_json(), args.out)
    for r in report.results:
        extra = f" ({r.reason})" if r.reason else ""
        print(f"{r.status:7s} {r.name}: {r.trials} trials{extra}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_twist(args) -> int:
    A = _algebra(args.algebra)
    data = _read_json(args.hom)
    hom = data.get("alpha", data.get("hom")) if isinstance(data, dict) else data
    if hom is None:
        raise UsageError("homomorphism JSON needs an 'alpha' field or a bare matrix")
    twisted = yau_twist(A, hom, name=args.name)
    _emit(_dumps(twisted.to_dict()), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homassoc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    alg_help = "algebra JSON file or built-in name"

    s = sub.add_parser("validate", help="check hom-associativity and multiplicativity")
    s.add_argument("algebra", help=alg_help)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("cohomology", help="dimensions and representatives of the cohomology")
    s.add_argument("algebra", help=alg_help)
    s.add_argument("--max-degree", type=int, default=4)
    s.add_argument("--out")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("op", help="apply one operation to cochains")
    s.add_argument("kind", choices=sorted(_ARITY))
    s.add_argument("algebra", help=alg_help)
    s.add_argument("cochains", nargs="+", help="cochain JSON files, or 'id' / 'mu'")
    s.add_argument("--index", type=int, help="0-based insertion slot for circ_i")
    s.add_argument("--out")
    s.set_defaults(func=cmd_op)

    s = sub.add_parser("verify", help="check every identity on seeded random inputs")
    s.add_argument("algebra", help=alg_help)
    s.add_argument("--plan", help="plan JSON; command-line flags override it")
    s.add_argument("--max-degree", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--samples", type=int)
    s.add_argument("--coeff-bound", type=int)
    s.add_argument("--identity", action="append", choices=IDENTITY_NAMES)
    s.add_argument("--allow-invalid", action="store_true",
                   help="run even if the algebra fails validation")
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("twist", help="twist an associative algebra by an endomorphism")
    s.add_argument("algebra", help=alg_help)
    s.add_argument("hom", help="JSON matrix (alpha[k][i] convention), bare or under 'alpha'")
    s.add_argument("--name")
    s.add_argument("--out")
    s.set_defaults(func=cmd_twist)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (AlgebraError, CochainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
