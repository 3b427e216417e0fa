"""Command line front end.

Exit codes: 0 success, 1 failed verification, 10/11/12 input assumption
1/2/3 violated, 13 arity two requested, 20 inconsistent truncated system,
30 unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import construct
from .engine import (
    blf_support,
    cascade_blf,
    convergence_indicator,
    oracle_truncated_system,
    polynomial_reproduction_degree,
    refine_polygon,
    verify_interpolation_system,
)
from .errors import (
    ArityTwoImpossible,
    AssumptionViolated,
    Inconsistent,
    NotDivisible,
    NotFactorable,
    SubdivisionError,
)
from .formats import (
    dumps,
    grid_to_csv,
    laurent_to_json,
    load_homotopy,
    load_mask,
    load_polygon,
    mask_to_json,
    points_to_csv,
    render_svg,
)
from .laurent import cyclotomic_sum, divide_exact
from .samples import SamplesFormatError, SchemeSpec, load_samples

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ARITY_TWO = 13
EXIT_INCONSISTENT = 20
EXIT_IO = 30


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    samples = load_samples(args.samples)
    homotopy = particular = None
    if args.homotopy:
        homotopy, particular = load_homotopy(args.homotopy)
    t0 = time.perf_counter()
    mask = construct(SchemeSpec(args.arity, args.degree, samples), homotopy=homotopy,
                     particular=particular, width_budget=args.width_budget,
                     minimize=not args.no_minimize)
    print(f"constructed a mask of width {mask.width()} on {list(mask.symbol.support())} "
          f"in {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    _emit(dumps(mask_to_json(mask)), args.out)
    return EXIT_OK


def verify_report(mask, samples, d: int | None = None, max_degree: int | None = None) -> dict:
    """Every check on a mask; the first failing identity is named."""
    d = d or mask.d
    checks = {}
    interp = verify_interpolation_system(mask, samples)
    checks["interpolation_system"] = {
        "passed": interp["passed"],
        "first_failure": interp["first_failure"],
        "residuals": {name: {str(k): v for k, v in r.items()} for name, r in interp["residuals"].items()},
    }
    sub = [a(1) for a in mask.subsymbols]
    checks["sum_rules"] = {"passed": all(v == 1 for v in sub), "subsymbol_sums": sub}
    try:
        divide_exact(mask.symbol, cyclotomic_sum(mask.m) ** d)
        div_ok = True
    except NotDivisible:
        div_ok = False
    checks["divisibility"] = {"passed": div_ok, "power": d}
    sym = mask.symbol == mask.symbol.reflect().shift(1)
    checks["symmetry"] = {"passed": sym}
    deg = polynomial_reproduction_degree(mask, max_degree if max_degree is not None else d + 2)
    checks["reproduction"] = {"passed": deg >= d - 1, "degree": deg, "required": d - 1}
    failed = [name for name, c in checks.items() if not c["passed"]]
    # contractivity is sufficient, not necessary, so it is reported but never fails a mask
    try:
        conv = convergence_indicator(mask)
        convergence = {"certified": conv.certified, "contraction": conv.contraction, "at_k": conv.at_k}
    except NotFactorable as e:
        convergence = {"certified": False, "error": str(e)}
    return {
        "all_pass": not failed,
        "first_failure": failed[0] if failed else None,
        "arity": mask.m,
        "d": d,
        "sigma": mask.sigma,
        "blf_support": list(blf_support(mask)),
        "checks": checks,
        "convergence": convergence,
    }


def cmd_verify(args) -> int:
    samples = load_samples(args.samples)
    mask = load_mask(args.mask, samples)
    report = verify_report(mask, samples, args.degree, args.max_degree)
    _emit(dumps(report), args.out)
    return EXIT_OK if report["all_pass"] else EXIT_FAILED


def cmd_blf(args) -> int:
    mask = load_mask(args.mask)
    grid = cascade_blf(mask, args.levels, args.mode)
    _emit(grid_to_csv(grid, args.stride), args.out)
    return EXIT_OK


def cmd_refine(args) -> int:
    mask = load_mask(args.mask)
    poly, _ = load_polygon(args.polygon)
    out = refine_polygon(mask, poly, args.levels, args.mode)
    _emit(points_to_csv(out, args.mode == "exact"), args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    mask = load_mask(args.mask)
    poly, closed = load_polygon(args.polygon)
    if poly.dim != 2:
        raise SamplesFormatError("render needs a planar polygon")
    out = refine_polygon(mask, poly, args.levels, "float")
    _emit(render_svg(poly, out, closed), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    samples = load_samples(args.samples)
    lo, hi = args.window
    sol = oracle_truncated_system(SchemeSpec(args.arity, args.degree, samples), (lo, hi), args.symmetric)
    _emit(dumps({
        "window": [lo, hi],
        "equations": len(sol.system.rows),
        "nullity": sol.nullity,
        "particular": laurent_to_json(sol.particular),
    }), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dualsubdiv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, mask=False, samples=False, arity=False):
        if arity:
            sp.add_argument("-m", "--arity", type=int, required=True)
            sp.add_argument("-d", "--degree", type=int, required=True)
        if samples:
            sp.add_argument("-s", "--samples", required=True, help="samples JSON file")
        if mask:
            sp.add_argument("--mask", required=True, help="mask JSON file")
        sp.add_argument("-o", "--out", help="output file (default: stdout)")

    sp = sub.add_parser("construct", help="build a mask from samples")
    common(sp, samples=True, arity=True)
    sp.add_argument("--width-budget", type=int, help="max exponents per homotopy term in the search")
    sp.add_argument("--homotopy", help="explicit homotopy (and particular solution) JSON")
    sp.add_argument("--no-minimize", action="store_true", help="skip the support search")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="check a mask against its samples")
    common(sp, mask=True, samples=True)
    sp.add_argument("-d", "--degree", type=int, help="required (z-1)-power, default from the mask file")
    sp.add_argument("--max-degree", type=int, help="highest monomial degree tried")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("blf", help="cascade values of the basic limit function as CSV")
    common(sp, mask=True)
    sp.add_argument("--levels", type=int, default=6)
    sp.add_argument("--mode", choices=("exact", "float"), default="exact")
    sp.add_argument("--stride", type=int, default=1, help="emit every n-th grid point")
    sp.set_defaults(func=cmd_blf)

    sp = sub.add_parser("refine", help="subdivide a control polygon")
    common(sp, mask=True)
    sp.add_argument("--polygon", required=True)
    sp.add_argument("--levels", type=int, default=1)
    sp.add_argument("--mode", choices=("exact", "float"), default="exact")
    sp.set_defaults(func=cmd_refine)

    sp = sub.add_parser("render", help="SVG of a control polygon and its refinement")
    common(sp, mask=True)
    sp.add_argument("--polygon", required=True)
    sp.add_argument("--levels", type=int, default=4)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("oracle", help="solve a finite slice of the linear system directly")
    common(sp, samples=True, arity=True)
    sp.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"), required=True)
    sp.add_argument("--symmetric", action="store_true")
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AssumptionViolated as e:
        print(f"error: {e}", file=sys.stderr)
        return 9 + e.number
    except ArityTwoImpossible as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ARITY_TWO
    except Inconsistent as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (OSError, json.JSONDecodeError, SamplesFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except (SubdivisionError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
