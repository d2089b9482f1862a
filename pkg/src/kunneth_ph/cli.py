"""Command-line entry point: ``kunneth-ph <command> ...``.

Exit codes: 0 success, 1 failed cross-check, 2 invalid input, 3 resource guard.
Any long option may also be given in a ``--config`` file of ``key = value``
lines; command-line flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .barcode import Barcode
from .bottleneck import bottleneck_distance
from .complex import FieldSpec, FilteredComplex, InvalidFiltrationError
from .experiment import (
    ExperimentConfig,
    ResourceGuardError,
    read_key_values,
    run_experiment,
    write_csv,
)
from .intervals import (
    INF,
    UnsupportedCaseError,
    ext1_lp_case,
    hom_lp_case,
    json_number,
    parse_endpoint,
    tensor_lp_case,
    tor1_lp_case,
)
from .kunneth import (
    borel_moore_barcode,
    kunneth_product_barcode,
    kunneth_terms,
    product_filtered_complex,
    uct_cohomology_barcode,
)
from .metric import SAMPLERS, FiniteMetricSpace, vr_barcode
from .reduction import persistent_homology

SEED_ENV = "KPH_SEED"

ALGEBRA = {
    "tensor": tensor_lp_case,
    "tor": tor1_lp_case,
    "hom": hom_lp_case,
    "ext": ext1_lp_case,
}


class CheckFailed(RuntimeError):
    pass


def _field(args) -> FieldSpec:
    return FieldSpec(args.field)


def _emit(obj, args) -> None:
    text = json.dumps(obj, indent=args.indent)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _read_barcode(path) -> Barcode:
    with open(path) as fh:
        return Barcode.loads(fh.read())


def cmd_algebra(args) -> int:
    I = (parse_endpoint(args.a), parse_endpoint(args.b))
    J = (parse_endpoint(args.c), parse_endpoint(args.d))
    result, case = ALGEBRA[args.op](I, J, args.p, args.tol)
    print(json.dumps(None if result is None else result.to_json()))
    print(f"case: {case}")
    return 0


def cmd_homology(args) -> int:
    complex_ = FilteredComplex.read(args.complex)
    _emit(persistent_homology(complex_, _field(args)).to_json(), args)
    return 0


def cmd_vr(args) -> int:
    if args.sample:
        seed = args.seed if args.seed is not None else int(os.environ.get(SEED_ENV, 0))
        space = SAMPLERS[args.sample](args.n, seed)
    elif args.distances:
        space = FiniteMetricSpace.read_csv(args.distances)
    else:
        raise ValueError("give a distance CSV or --sample")
    bc = vr_barcode(space, args.max_dim, args.max_scale, method=args.method, field=_field(args))
    _emit(bc.to_json(range(args.max_dim + 1)), args)
    return 0


def cmd_kunneth(args) -> int:
    bk, bl = _read_barcode(args.left), _read_barcode(args.right)
    terms = kunneth_terms(bk, bl, args.p, args.max_degree)
    product = kunneth_product_barcode(bk, bl, args.p, args.max_degree)
    if args.provenance:
        with open(args.provenance, "w") as fh:
            for term in terms:
                fh.write(json.dumps(term.to_json()) + "\n")
    if args.check:
        X, Y = (FilteredComplex.read(path) for path in args.check)
        direct = persistent_homology(product_filtered_complex(X, Y, args.p), _field(args))
        if args.max_degree is not None:
            direct = direct.truncated(args.max_degree)
        if not direct.isclose(product, args.tol):
            raise CheckFailed(f"Künneth barcode {product} differs from direct reduction {direct}")
        print("check: Künneth barcode equals direct reduction", file=sys.stderr)
    _emit(product.to_json(), args)
    return 0


def cmd_uct(args) -> int:
    bk = _read_barcode(args.barcode)
    _emit(uct_cohomology_barcode(bk, (args.alpha, INF), args.p).to_json(), args)
    return 0


def cmd_borel_moore(args) -> int:
    complex_ = FilteredComplex.read(args.complex)
    _emit(borel_moore_barcode(complex_, args.alpha, args.p, _field(args)).to_json(), args)
    return 0


def cmd_bottleneck(args) -> int:
    a, b = _read_barcode(args.left), _read_barcode(args.right)
    degrees = [args.degree] if args.degree is not None else sorted(set(a.degrees) | set(b.degrees))
    out = {str(n): json_number(bottleneck_distance(a.degree(n), b.degree(n))) for n in degrees}
    _emit(out, args)
    return 0


def cmd_experiment(args) -> int:
    options = {
        key: getattr(args, key)
        for key in ("shape", "n_values", "p_values", "max_dim", "seeds", "output",
                    "diagrams", "n_cap", "workers")
        if getattr(args, key) is not None
    }
    config = ExperimentConfig.from_mapping(options)
    results = run_experiment(config)
    if not config.output:
        write_csv(results, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kunneth-ph",
        description="Persistent homology of product filtrations via the Künneth formula.",
    )
    parser.add_argument("--config", help="key = value file supplying option defaults")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=2, help="prime characteristic (default 2)")
    common.add_argument("--tol", type=float, default=1e-9, help="endpoint tolerance")
    common.add_argument("--indent", type=int, default=None, help="pretty-print JSON")
    common.add_argument("-o", "--output", help="write JSON here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", parents=[common], help="closed-form interval algebra")
    p.add_argument("op", choices=sorted(ALGEBRA))
    for name in "abcd":
        p.add_argument(name, help="endpoint (number or inf)")
    p.add_argument("--p", default="inf", type=str)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("homology", parents=[common], help="barcode of a filtered complex")
    p.add_argument("complex", help="filtered-complex text file")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("vr", parents=[common], help="Vietoris-Rips barcode")
    p.add_argument("distances", nargs="?", help="distance-matrix CSV")
    p.add_argument("--sample", choices=sorted(SAMPLERS))
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    p.add_argument("--max-dim", type=int, default=1, help="top homology degree")
    p.add_argument("--max-scale", type=parse_endpoint, default=INF)
    p.add_argument("--method", choices=("fast", "reference"), default="fast")
    p.set_defaults(func=cmd_vr)

    p = sub.add_parser("kunneth", parents=[common], help="product barcode from factor barcodes")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--p", default="2", type=str)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--provenance", metavar="PATH", help="write one JSON line per term")
    p.add_argument("--check", nargs=2, metavar=("X", "Y"),
                   help="factor complexes; verify against direct reduction of X x Y")
    p.set_defaults(func=cmd_kunneth)

    p = sub.add_parser("uct", parents=[common], help="cohomology with coefficients k[alpha, inf)")
    p.add_argument("barcode")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p", default="2", type=str)
    p.set_defaults(func=cmd_uct)

    p = sub.add_parser("borel-moore", parents=[common], help="persistent Borel-Moore barcode")
    p.add_argument("complex")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p", default="2", type=str)
    p.set_defaults(func=cmd_borel_moore)

    p = sub.add_parser("bottleneck", parents=[common], help="bottleneck distance per degree")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=cmd_bottleneck)

    p = sub.add_parser("experiment", parents=[common], help="Künneth vs direct Rips sweep (CSV)")
    p.add_argument("--shape", choices=("square", "torus"))
    p.add_argument("--n", dest="n_values", help="e.g. 5..12 or 5,8,12")
    p.add_argument("--p", dest="p_values", help="e.g. 1,2,5")
    p.add_argument("--max-dim", type=int, help="top homology degree")
    p.add_argument("--seeds", help="e.g. 0,1,2 or 0..9")
    p.add_argument("--diagrams", help="directory for per-trial barcode dumps")
    p.add_argument("--n-cap", type=int)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_experiment)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = {k.replace("-", "_"): v for k, v in read_key_values(known.config).items()}
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for subparser in sub_action.choices.values():
        dests = {a.dest for a in subparser._actions}
        aliases = {"n": "n_values", "p": "p_values"} if subparser.prog.endswith("experiment") else {}
        subparser.set_defaults(**{
            aliases.get(k, k): v for k, v in values.items() if aliases.get(k, k) in dests
        })


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 3
    except InvalidFiltrationError as exc:
        print(f"invalid filtration: {len(exc.violations)} violation(s)", file=sys.stderr)
        for v in exc.violations:
            print(f"  cell {v.cell}, face {v.face}: {v.reason}", file=sys.stderr)
        return 2
    except UnsupportedCaseError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
