"""Command-line front end; every command prints one JSON document."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .basis import BasisDecomp, apply_operator, decompose, inner
from .coeff import PZERO, format_poly
from .config import BenchConfig, SphereConfig, VerifyConfig
from .errors import ExpressionSyntaxError, FuzzySphereError
from .freealg import NormalForm, nf_dagger, nf_from_text

_OPERATORS = ("e_x", "e_y", "e_z", "e_plus", "e_minus", "laplacian")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        nt, nph = int(a), int(b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must look like 33x64, got {text!r}") from exc
    if nt < 2 or nph < 1:
        raise argparse.ArgumentTypeError("grid needs at least 2 theta and 1 phi nodes")
    return nt, nph


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _specialized(f: NormalForm, args) -> NormalForm:
    if args.kappa is not None and args.u is not None:
        return f.specialize(args.kappa, args.u)
    if args.kappa is not None:
        return f.subs_kappa(args.kappa)
    if args.u is not None:
        return f.subs_u(args.u)
    return f


def _nf_json(f: NormalForm) -> list[dict]:
    return [{"a": a, "b": b, "c": c, "coeff": format_poly(f.terms[(a, b, c)])} for (a, b, c) in sorted(f.terms)]


def _decomp_json(d: BasisDecomp) -> dict:
    return {
        "basis": "T",
        "terms": [{"n": n, "m": m, "coeff": format_poly(d.terms[(n, m)])} for (n, m) in sorted(d.terms)],
    }


def _specialize_decomp(d: BasisDecomp, args) -> BasisDecomp:
    if args.kappa is None and args.u is None:
        return d
    out = {}
    for k, v in d.terms.items():
        if args.kappa is not None:
            v = v.subs_kappa(args.kappa)
        if args.u is not None:
            v = v.subs_u(args.u)
        out[k] = v
    return BasisDecomp(out)


def cmd_normalize(args) -> dict:
    return {"normal_form": _nf_json(_specialized(nf_from_text(args.expr), args))}


def cmd_decompose(args) -> dict:
    f = nf_from_text(args.expr)
    if args.fast:
        from .matrep import decompose_fast

        d = decompose_fast(f)
    else:
        d = decompose(f)
    return _decomp_json(_specialize_decomp(d, args))


def cmd_inner(args) -> dict:
    v = inner(nf_from_text(args.left), nf_from_text(args.right))
    f = _specialized(NormalForm.scalar(v), args)
    return {"inner": format_poly(f.terms.get((0, 0, 0), PZERO))}


def cmd_conjugate(args) -> dict:
    return {"normal_form": _nf_json(_specialized(nf_dagger(nf_from_text(args.expr)), args))}


def cmd_apply(args) -> dict:
    d = apply_operator(args.operator, decompose(nf_from_text(args.expr)))
    return _decomp_json(_specialize_decomp(d, args))


def cmd_matrix(args) -> dict:
    from .matrep import phi_N, u_of

    M = phi_N(nf_from_text(args.expr), args.N)
    return {"N": args.N, "kappa": "1", "u": str(u_of(args.N)), "matrix": M.to_strings()}


def _sphere_json(F) -> dict:
    out = {"R": F.R, "harmonics": F.harmonics_json()}
    if F.jform is not None:
        out["jform"] = [
            {"m": m, "coeffs": [format_poly(c) for c in p]} for m, p in sorted(F.jform.items())
        ]
    return out


def cmd_moyal(args) -> dict:
    from .sphere import moyal_limit

    F = moyal_limit(nf_from_text(args.left), nf_from_text(args.right), args.R)
    return _sphere_json(F)


def cmd_sphere_eval(args) -> dict:
    import numpy as np

    from .sphere import grid_dump, nf_to_sphere, uniform_grid

    cfg = SphereConfig(R=args.R, ntheta=args.grid[0], nphi=args.grid[1])
    F = nf_to_sphere(nf_from_text(args.expr), cfg.R)
    TH, PH = uniform_grid(cfg.ntheta, cfg.nphi)
    gap = float(np.abs(F.evaluate(TH, PH) - F.evaluate(TH, PH, "jform")).max())
    out = _sphere_json(F)
    out["grid"] = f"{cfg.ntheta}x{cfg.nphi}"
    out["route_gap"] = gap
    if args.grid_out:
        with open(args.grid_out, "w") as fh:
            fh.write(grid_dump(F, cfg.ntheta, cfg.nphi))
        out["grid_out"] = args.grid_out
    return out


def cmd_verify(args) -> tuple[dict, int]:
    from .verify import SUITES, run_suite

    if args.suite != "all" and args.suite not in SUITES:
        raise FuzzySphereError(f"unknown suite {args.suite!r}; expected one of {['all', *SUITES]}")
    cfg = VerifyConfig(suite=args.suite, nmax=args.nmax, seed=args.seed)
    reports = run_suite(cfg)
    ok = all(r.passed for r in reports)
    return {"passed": ok, "suites": [r.to_json() for r in reports]}, 0 if ok else 1


def cmd_bench(args) -> dict:
    from .matrep import bench_decompose

    cfg = BenchConfig(
        degrees=tuple(args.degree), trials=args.trials, seed=args.seed, words=args.words, timing=not args.no_timing
    )
    reports = []
    for d in cfg.degrees:
        r = bench_decompose(d, trials=cfg.trials, seed=cfg.seed, words=cfg.words)
        if not cfg.timing:
            r.pop("fast_ms")
            r.pop("direct_ms")
        reports.append(r)
    return {"bench": reports}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fuzzysphere", description="Exact calculus on the fuzzy sphere.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_point(sp):
        sp.add_argument("--kappa", type=_rational, default=None, help="specialize kappa")
        sp.add_argument("--u", type=_rational, default=None, help="specialize u = R^2")
        return sp

    sp = with_point(sub.add_parser("normalize", help="canonical form Jp^a z^b Jm^c"))
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_normalize)

    sp = with_point(sub.add_parser("decompose", help="coefficients against the T basis"))
    sp.add_argument("expr")
    sp.add_argument("--fast", action="store_true", help="use trace evaluation and interpolation")
    sp.set_defaults(func=cmd_decompose)

    sp = with_point(sub.add_parser("inner", help="pi0(f^dagger g)"))
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(func=cmd_inner)

    sp = with_point(sub.add_parser("conjugate", help="dagger"))
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_conjugate)

    sp = with_point(sub.add_parser("apply", help="apply a derivation or the Laplacian"))
    sp.add_argument("operator", choices=_OPERATORS)
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_apply)

    sp = sub.add_parser("matrix", help="exact image in the N-dimensional representation")
    sp.add_argument("expr")
    sp.add_argument("--N", type=_positive, required=True)
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("moyal", help="kappa -> 0 limit of the scaled commutator")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--R", type=float, default=1.0)
    sp.set_defaults(func=cmd_moyal)

    sp = sub.add_parser("sphere-eval", help="kappa -> 0 limit as a function on the sphere")
    sp.add_argument("expr")
    sp.add_argument("--R", type=float, default=1.0)
    sp.add_argument("--grid", type=_grid, default=(33, 64))
    sp.add_argument("--grid-out", default=None, help="write 'theta phi Re Im' rows here")
    sp.set_defaults(func=cmd_sphere_eval)

    sp = sub.add_parser("verify", help="run a named invariant suite")
    sp.add_argument("--suite", default="all")
    sp.add_argument("--nmax", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="rewriting vs trace-interpolation timing")
    sp.add_argument("--degree", type=_positive, nargs="+", default=list(BenchConfig().degrees))
    sp.add_argument("--trials", type=_positive, default=BenchConfig().trials)
    sp.add_argument("--words", type=_positive, default=BenchConfig().words)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-timing", action="store_true", help="omit wall times (byte-stable output)")
    sp.set_defaults(func=cmd_bench)
    return p


def execute(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    compact = {"separators": (",", ":")}
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except ExpressionSyntaxError as exc:
        print(json.dumps({"error": str(exc), "position": exc.pos}, **compact), file=out)
        return 1
    except FuzzySphereError as exc:
        print(json.dumps({"error": str(exc)}, **compact), file=out)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    print(json.dumps(result, **compact), file=out)
    return code


def main() -> None:
    sys.exit(execute())


if __name__ == "__main__":
    main()
