"""Command-line interface: ``fwlab <command> [options]``.

Exit codes: 0 success, 1 a verification check failed, 2 bad configuration,
3 memory budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import warnings
from fractions import Fraction

import numpy as np

from . import errors
from .codes import (
    MINIMALITY_GUARD,
    build_defining_set,
    is_minimal_exhaustive,
    weight_distribution,
)
from .cyclotomic import kloosterman, s_direct, s_series
from .field import build_subsets, extension_field, format_poly, load_registry, make_field
from .report import (
    RunConfig,
    family_for,
    load_weights,
    report_csv,
    report_text,
    verify,
)
from .theory import ashikhmin_barg
from .transform import DEFAULT_BUDGET

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3

CONFIG_ERRORS = (
    errors.NotPrime,
    errors.NotPrimitive,
    errors.InvalidPolynomial,
    errors.SmallDegree,
    errors.IntersectionNotTrivial,
    ValueError,
)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text")
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--registry", help="polynomial registry file (lines 'p m c_0 .. c_m')")


def _field_opts(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True)
    parser.add_argument("--t", type=int, required=True)
    parser.add_argument("--poly", type=_int_list, help="coefficients c_0..c_m, low to high")
    parser.add_argument("--allow-small-t", action="store_true")


def _code_opts(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=("cd", "cd1", "cd2"), default="cd")
    parser.add_argument("--r", type=int, help="dimension of T for cd1 (default m-1)")
    parser.add_argument("--t-basis", type=_int_list, help="alpha exponents spanning T for cd1")
    parser.add_argument("--cache-dir", default=os.environ.get("FWL_CACHE_DIR"))
    parser.add_argument("--budget", type=int, default=int(os.environ.get("FWL_BUDGET", DEFAULT_BUDGET)))
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fwlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", help="summarise GF(p^2t) and its subgroups")
    _field_opts(p)
    _common(p)

    for name, text in (("verify", "full empirical-vs-closed-form verification"),
                       ("dist", "empirical weight distribution"),
                       ("minimality", "minimality verdict and weight ratio")):
        p = sub.add_parser(name, help=text)
        _field_opts(p)
        _code_opts(p)
        _common(p)

    p = sub.add_parser("s-value", help="the integer S, by both methods")
    _field_opts(p)
    _common(p)

    p = sub.add_parser("ksum", help="Kloosterman sums K_l(a) over GF(p^l)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--a", type=int, help="element int of GF(p^l); all nonzero a if omitted")
    _common(p)
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        p=args.p, t=args.t, poly=args.poly,
        family=getattr(args, "family", "cd"), r=getattr(args, "r", None),
        t_basis=getattr(args, "t_basis", None),
        budget=getattr(args, "budget", DEFAULT_BUDGET),
        cache_dir=getattr(args, "cache_dir", None),
        format=args.format, verbosity=args.verbose,
        allow_small_t=args.allow_small_t, seed=getattr(args, "seed", 0),
    )


def _emit(args, payload) -> None:
    if args.format == "json" and not isinstance(payload, str):
        payload = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)


def _csv(header: str, rows) -> str:
    return "\n".join([header] + [",".join(str(v) for v in row) for row in rows])


def cmd_field_info(args) -> int:
    field = make_field(args.p, args.t, args.poly, allow_small_t=args.allow_small_t)
    tables = build_subsets(field)
    tr = field.trace_arr(np.arange(field.q))
    info = {
        "p": field.p, "t": field.t, "m": field.m, "q": field.q,
        "poly": list(field.poly), "alpha_order": field.alpha_order,
        "delta_size": len(tables.delta), "gamma_size": len(tables.gamma),
        "subfield_star_size": len(tables.subfield_star),
        "trace_counts": np.bincount(tr, minlength=field.p).tolist(),
        "delta_trace_zero": int(np.count_nonzero(field.trace_arr(np.array(tables.delta)) == 0)),
    }
    if args.format == "json":
        _emit(args, info)
    elif args.format == "csv":
        _emit(args, _csv("key,value", [(k, v if not isinstance(v, list) else " ".join(map(str, v)))
                                       for k, v in info.items()]))
    else:
        _emit(args, "\n".join([f"GF({field.p}^{field.m}) = F_q with q = {field.q}",
                               f"poly         {format_poly(field.poly)}"]
                              + [f"{k:<20} {v}" for k, v in info.items() if k not in ("poly",)]))
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = verify(_config(args))
    if args.format == "json":
        _emit(args, rep.to_json())
    elif args.format == "csv":
        _emit(args, report_csv(rep))
    else:
        _emit(args, report_text(rep))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_dist(args) -> int:
    config = _config(args)
    field = make_field(config.p, config.t, config.poly, allow_small_t=config.allow_small_t)
    family = family_for(config, field)
    D = build_defining_set(field)
    table, _ = load_weights(config, field, D)
    emp = weight_distribution(family, table, field, len(D))
    if args.format == "json":
        _emit(args, {"n": emp.n, "k": emp.k, "d": emp.min_distance,
                     "distribution": [[w, f] for w, f in emp.items()]})
    elif args.format == "csv":
        _emit(args, _csv("weight,frequency,source", [(w, f, "empirical") for w, f in emp.items()]))
    else:
        _emit(args, f"[{emp.n}, {emp.k}, {emp.min_distance}]\n{emp.enumerator()}")
    return EXIT_OK


def cmd_minimality(args) -> int:
    config = _config(args)
    field = make_field(config.p, config.t, config.poly, allow_small_t=config.allow_small_t)
    family = family_for(config, field)
    D = build_defining_set(field)
    table, _ = load_weights(config, field, D)
    emp = weight_distribution(family, table, field, len(D))
    ws = emp.nonzero_weights
    ratio = Fraction(min(ws), max(ws))
    ab = ashikhmin_barg(emp)
    if field.p ** emp.k <= MINIMALITY_GUARD:
        minimal, _ = is_minimal_exhaustive(family, D)
        how = "exhaustive"
    else:
        minimal, how = (True if ab else None), "ratio"
    out = {"family": family.kind, "minimal": minimal, "method": how,
           "ratio": f"{ratio.numerator}/{ratio.denominator}", "ratio_value": float(ratio),
           "threshold": f"{field.p - 1}/{field.p}", "ratio_criterion": ab}
    if args.format == "json":
        _emit(args, out)
    elif args.format == "csv":
        _emit(args, _csv("key,value", out.items()))
    else:
        verdict = {True: "minimal", False: "not minimal", None: "undetermined"}[minimal]
        _emit(args, f"{verdict} ({how}), ratio {out['ratio']} = {float(ratio):.6f} "
                    f"{'>' if ab else '<='} {out['threshold']}")
    return EXIT_OK if minimal is not False or family.kind == "cd" else EXIT_FAIL


def cmd_s_value(args) -> int:
    field = make_field(args.p, args.t, args.poly, allow_small_t=args.allow_small_t)
    direct = s_direct(field, build_subsets(field))
    series = s_series(field.p, field.t)
    out = {"S": direct, "direct": direct, "series": series, "consistent": direct == series}
    if args.format == "json":
        _emit(args, out)
    elif args.format == "csv":
        _emit(args, _csv("key,value", out.items()))
    else:
        _emit(args, str(direct) if direct == series else f"INCONSISTENT direct={direct} series={series}")
    return EXIT_OK if direct == series else EXIT_FAIL


def cmd_ksum(args) -> int:
    f = extension_field(args.p, args.l)
    targets = [args.a] if args.a is not None else list(range(1, f.q))
    if any(not 0 <= a < f.q for a in targets):
        raise ValueError(f"a must be an element int in [0, {f.q})")
    rows = []
    for a in targets:
        K = kloosterman(args.p, args.l, a, field=f)
        rows.append({"a": a, "value": str(K), "coeffs": list(K.coeffs), "abs": abs(K)})
    if args.format == "json":
        _emit(args, rows)
    elif args.format == "csv":
        _emit(args, _csv("a,value,abs", [(r["a"], r["value"], f"{r['abs']:.12g}") for r in rows]))
    elif args.a is not None:
        _emit(args, rows[0]["value"])
    else:
        _emit(args, "\n".join(f"{r['a']:>6}  {r['value']:<30} |K| = {r['abs']:.6f}" for r in rows))
    return EXIT_OK


COMMANDS = {
    "field-info": cmd_field_info,
    "verify": cmd_verify,
    "dist": cmd_dist,
    "minimality": cmd_minimality,
    "s-value": cmd_s_value,
    "ksum": cmd_ksum,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.registry:
            load_registry(args.registry)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                return COMMANDS[args.command](args)
            finally:
                for w in caught:
                    print(f"warning: {w.message}", file=sys.stderr)
    except errors.DimensionTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except errors.FwlabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
