"""Command-line interface.

Subcommands: gen, norm, apply-j, pair, product, mult-norm, verify, sweep.
Numeric arguments accept fractions ("4/3") so conjugate-exponent boundaries
stay exact; a JSON config file may supply any flag (explicit flags win).
Exit codes: 0 success, 1 check failure, 2 usage error.  All randomized
behavior is a pure function of --seed, and identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .calculus import SpaceIndex, duality_pair, hs_norm, lift, pointwise_product
from .coeffio import CoeffFileError, parse_coeff_file, write_coeff_file
from .conditions import strichartz_case
from .generators import KINDS, gen_distribution
from .lattice import make_lattice
from .multipliers import (
    CSV_COLUMNS,
    MultiplierProblem,
    equivalence_report,
)
from .verify import SUITES, VerifyContext, format_report, run_suite


class UsageError(ValueError):
    pass


def _numeric(text: str):
    """Parse a CLI number: '4/3' -> Fraction, '2' -> int, '1.5' -> float."""
    text = str(text).strip()
    if "/" in text:
        return Fraction(text)
    try:
        return int(text)
    except ValueError:
        return float(text)


def _numeric_list(text: str):
    return [_numeric(part) for part in str(text).split(",") if part.strip()]


def _int_list(text: str):
    return [int(part) for part in str(text).split(",") if part.strip()]


_CONVERTERS = {}


def _arg(parser, *names, **kwargs):
    action = parser.add_argument(*names, **kwargs)
    if kwargs.get("type") is not None:
        _CONVERTERS.setdefault(parser.prog, {})[action.dest] = kwargs["type"]
    return action


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peribessel",
        description=(
            "Spectral calculus on periodic Bessel potential spaces: norms, "
            "lifting, duality pairings, pointwise products, and multiplier-norm "
            "experiments on truncated coefficient fields."
        ),
    )
    parser.add_argument("--config", help="JSON file supplying defaults for any flag")
    sub = parser.add_subparsers(dest="command", required=True)
    registry = {}
    parser.subcommand_registry = registry

    gen = sub.add_parser("gen", help="generate a coefficient field and write it to a file")
    registry["gen"] = gen
    _arg(gen, "--kind", choices=KINDS, required=True)
    _arg(gen, "--n", type=int, default=1, help="torus dimension")
    _arg(gen, "--radius", type=int, default=8, help="lattice radius R")
    _arg(gen, "--alpha", type=float, default=None, help="decay exponent for power-decay")
    _arg(gen, "--seed", type=int, default=0)
    _arg(gen, "--out", required=True, help="output coefficient file (JSON)")

    norm = sub.add_parser("norm", help="H^s_p norm of a coefficient field")
    registry["norm"] = norm
    _arg(norm, "--input", required=True, help="coefficient file")
    _arg(norm, "--s", type=_numeric, default=0)
    _arg(norm, "--p", type=_numeric, default=2)
    _arg(norm, "--grid-size", type=int, default=None, help="quadrature points per axis")
    _arg(norm, "--format", choices=("json", "csv"), default="json")

    applyj = sub.add_parser("apply-j", help="apply the lifting operator of order s")
    registry["apply-j"] = applyj
    _arg(applyj, "--input", required=True)
    _arg(applyj, "--s", type=_numeric, default=0)
    _arg(applyj, "--out", required=True)

    pair = sub.add_parser("pair", help="duality pairing of two coefficient fields")
    registry["pair"] = pair
    _arg(pair, "--input", required=True, help="first field (negative-order side)")
    _arg(pair, "--input2", required=True, help="second field (positive-order side)")
    _arg(pair, "--s", type=_numeric, default=0)
    _arg(pair, "--format", choices=("json", "csv"), default="json")

    product = sub.add_parser("product", help="pointwise product of two fields")
    registry["product"] = product
    _arg(product, "--input", required=True, help="smooth factor")
    _arg(product, "--input2", required=True, help="distribution factor")
    product.add_argument(
        "--exact-product",
        action="store_true",
        help="keep the full convolution on a radius-2R lattice instead of truncating",
    )
    _arg(product, "--out", required=True)

    mult = sub.add_parser("mult-norm", help="multiplier norm vs intersection norm")
    registry["mult-norm"] = mult
    _arg(mult, "--input", required=True)
    _arg(mult, "--s", type=_numeric, default=1)
    _arg(mult, "--t", type=_numeric, default=1)
    _arg(mult, "--p", type=_numeric, default=2)
    _arg(mult, "--q", type=_numeric, default=2)
    _arg(mult, "--radii", type=_int_list, default=None, help="refinement radii, e.g. 4,8")
    _arg(mult, "--grid-size", type=int, default=None)
    _arg(mult, "--seed", type=int, default=0, help="seed for the sampled test family")
    mult.add_argument("--force", action="store_true", help="skip the index-hypothesis gate")
    _arg(mult, "--format", choices=("json", "csv"), default="json")

    verify = sub.add_parser("verify", help="run a verification suite")
    registry["verify"] = verify
    _arg(verify, "suite", choices=SUITES + ("all",))
    _arg(verify, "--radius", type=int, default=8)
    _arg(verify, "--n", type=int, default=1)
    _arg(verify, "--seed", type=int, default=0)
    _arg(verify, "--s", type=_numeric, default=1)
    _arg(verify, "--t", type=_numeric, default=1)
    _arg(verify, "--p", type=_numeric, default=2)
    _arg(verify, "--q", type=_numeric, default=2)
    _arg(verify, "--format", choices=("text", "json"), default="text")

    sweep = sub.add_parser("sweep", help="multiplier-norm sweep over an index grid")
    registry["sweep"] = sweep
    _arg(sweep, "--s-grid", type=_numeric_list, required=True, help="e.g. 1,1.5,2")
    _arg(sweep, "--t-grid", type=_numeric_list, required=True)
    _arg(sweep, "--p-grid", type=_numeric_list, required=True)
    _arg(sweep, "--q-grid", type=_numeric_list, required=True)
    _arg(sweep, "--radius-grid", type=_int_list, required=True)
    _arg(sweep, "--u-kind", choices=KINDS, default="power-decay")
    _arg(sweep, "--alpha", type=float, default=3.0)
    _arg(sweep, "--n", type=int, default=1)
    _arg(sweep, "--seed", type=int, default=0)
    _arg(sweep, "--grid-size", type=int, default=None)
    sweep.add_argument("--force", action="store_true")
    _arg(sweep, "--out", required=True, help="output CSV path")

    return parser


def _apply_config(parser: argparse.ArgumentParser, argv):
    """Load --config (if any) and install its values as defaults; flags win."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return
    with open(known.config, "r", encoding="utf-8") as handle:
        config = json.load(handle)
    if not isinstance(config, dict):
        raise UsageError("config file must hold a JSON object")
    all_dests = set()
    for subparser in parser.subcommand_registry.values():
        dests = {action.dest for action in subparser._actions}
        all_dests.update(dests)
        converters = _CONVERTERS.get(subparser.prog, {})
        defaults = {}
        for key, value in config.items():
            if key in dests:
                converter = converters.get(key)
                defaults[key] = converter(value) if converter is not None else value
        if defaults:
            subparser.set_defaults(**defaults)
    unknown = set(config) - all_dests
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")


def _emit_record(record: dict, fmt: str, stream):
    if fmt == "json":
        stream.write(json.dumps(record) + "\n")
    else:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(record.keys())
        writer.writerow(
            [repr(v) if isinstance(v, float) else v for v in record.values()]
        )


def _cmd_gen(args) -> int:
    if args.kind == "power-decay" and args.alpha is None:
        raise UsageError("--kind power-decay requires --alpha")
    lattice = make_lattice(args.n, args.radius)
    field = gen_distribution(args.kind, lattice, alpha=args.alpha, seed=args.seed)
    write_coeff_file(args.out, field)
    return 0


def _cmd_norm(args) -> int:
    field = parse_coeff_file(args.input)
    value = hs_norm(field, SpaceIndex(float(args.s), float(args.p)), args.grid_size)
    _emit_record(
        {"s": float(args.s), "p": float(args.p), "norm": value}, args.format, sys.stdout
    )
    return 0


def _cmd_apply_j(args) -> int:
    field = parse_coeff_file(args.input)
    write_coeff_file(args.out, lift(float(args.s), field))
    return 0


def _cmd_pair(args) -> int:
    u = parse_coeff_file(args.input)
    v = parse_coeff_file(args.input2)
    value = duality_pair(u, v, float(args.s))
    _emit_record(
        {"s": float(args.s), "re": value.real, "im": value.imag}, args.format, sys.stdout
    )
    return 0


def _cmd_product(args) -> int:
    f = parse_coeff_file(args.input)
    u = parse_coeff_file(args.input2)
    write_coeff_file(args.out, pointwise_product(f, u, exact=args.exact_product))
    return 0


def _cmd_mult_norm(args) -> int:
    field = parse_coeff_file(args.input)
    prob = MultiplierProblem(field, args.s, args.t, args.p, args.q)
    report = equivalence_report(
        prob,
        radii=args.radii,
        force=args.force,
        grid_points=args.grid_size,
        family_seed=args.seed,
    )
    if args.format == "json":
        sys.stdout.write(json.dumps(report.as_dict()) + "\n")
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerow(report.csv_row())
    return 0


def _cmd_verify(args) -> int:
    ctx = VerifyContext(
        radius=args.radius,
        n=args.n,
        seed=args.seed,
        s=float(args.s),
        t=float(args.t),
        p=float(args.p),
        q=float(args.q),
    )
    results = run_suite(args.suite, ctx)
    if args.format == "json":
        sys.stdout.write(
            json.dumps([result.__dict__ for result in results]) + "\n"
        )
    else:
        sys.stdout.write(format_report(results) + "\n")
    return 0 if all(result.passed for result in results) else 1


def _cmd_sweep(args) -> int:
    grids = (args.s_grid, args.t_grid, args.p_grid, args.q_grid, args.radius_grid)
    if any(len(grid) == 0 for grid in grids):
        raise UsageError("sweep grids must be nonempty")
    rows = []
    refusals = 0
    for s in args.s_grid:
        for t in args.t_grid:
            for p in args.p_grid:
                for q in args.q_grid:
                    for radius in args.radius_grid:
                        lattice = make_lattice(args.n, radius)
                        field = gen_distribution(
                            args.u_kind, lattice, alpha=args.alpha, seed=args.seed
                        )
                        verdict = strichartz_case(s, t, p, q, args.n)
                        if not verdict.holds and not args.force:
                            refusals += 1
                            sys.stderr.write(
                                f"warning: refused (s={s}, t={t}, p={p}, q={q}, "
                                f"R={radius}): {verdict.detail}\n"
                            )
                            rows.append(
                                [
                                    str(args.n),
                                    str(radius),
                                    repr(float(s)),
                                    repr(float(t)),
                                    repr(float(p)),
                                    repr(float(q)),
                                    "",
                                    "",
                                    "",
                                    "",
                                    "",
                                    "refused",
                                ]
                            )
                            continue
                        prob = MultiplierProblem(field, s, t, p, q)
                        report = equivalence_report(
                            prob,
                            force=True,
                            grid_points=args.grid_size,
                            family_seed=args.seed,
                        )
                        rows.append(report.csv_row() + ["ok"])
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(list(CSV_COLUMNS) + ["status"])
        writer.writerows(rows)
    if refusals:
        sys.stderr.write(f"warning: {refusals} grid point(s) refused by the hypothesis gate\n")
    return 0


_DISPATCH = {
    "gen": _cmd_gen,
    "norm": _cmd_norm,
    "apply-j": _cmd_apply_j,
    "pair": _cmd_pair,
    "product": _cmd_product,
    "mult-norm": _cmd_mult_norm,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return _DISPATCH[args.command](args)
    except (UsageError, CoeffFileError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, RuntimeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
