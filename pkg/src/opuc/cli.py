"""Command-line front end: zero tables, plot data, families and verification suites.

Exit codes: 0 success, 1 a verification report failed, 2 configuration
error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from ._util import parse_complex
from .errors import ConditioningError, ConvergenceError, OpucError
from .marcellan import quasi_family
from .popuc_chain import chain_data, popuc, popuc_lc
from .presets import MAX_N, build_setup, default_quadN, load_spec, parse_a_rule
from .suites import SUITES, run_suite
from .tables import fmt_complex, fmt_real, plot_data_csv, table_csv

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
# suites that need a coefficient rule; without --a they fall back to "marcellan"
RULE_SUITES = ("norms", "lubinsky", "diaggap", "m2", "chain")


def _add_family_args(p, need_n=True):
    p.add_argument("--preset", help="lebesgue, lebesgue-norm, bernstein:<a>, christoffel-1, christoffel-i, rational-example")
    p.add_argument("--spec-json", help="measure spec as a JSON string or file")
    p.add_argument("--quadN", type=int, default=None, help="quadrature nodes (power of two); env OPUC_QUADN")
    if need_n:
        p.add_argument("--n", type=int, default=6, help="degree (max %d)" % MAX_N)


def _add_output_args(p, default="csv"):
    p.add_argument("--format", choices=("csv", "json"), default=default)
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opuc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zeros", help="zeros of Phi_n, a quasi polynomial or a POPUC")
    _add_family_args(z)
    z.add_argument("--quasi", "--a", dest="quasi", help="coefficient rule for Phi~_n = Phi_n - a_n Phi_{n-1}")
    z.add_argument("--popuc", metavar="ZETA", help="POPUC of the family at ZETA on the circle")
    z.add_argument("--popuc-lc", action="store_true", help="z^n - 1 - gamma (z^{n-1} - 1)")
    z.add_argument("--gamma", default="0.5", help="gamma for --popuc-lc")
    _add_output_args(z)

    v = sub.add_parser("verify", help="run a verification suite")
    _add_family_args(v)
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument(
        "--a", dest="a_rule", help="marcellan | constant:<c> | seq:<expr> | list:<v,..> | table1a (default marcellan)"
    )
    _add_output_args(v, default="json")

    t = sub.add_parser("table", help="reproduce a zero table as CSV")
    t.add_argument("which", type=int, choices=(1, 2, 3))
    t.add_argument("--output", "-o")

    c = sub.add_parser("chain", help="chain sequence data t, c, g and tau")
    _add_family_args(c)
    c.add_argument("--a", dest="a_rule", default="marcellan")
    c.add_argument("--output", "-o")

    f = sub.add_parser("family", help="dump an OPUC family as JSON")
    _add_family_args(f)
    f.add_argument("--output", "-o")

    pd = sub.add_parser("plot-data", help="zero sets behind figures 1-4 as CSV")
    pd.add_argument("--figure", type=int, choices=(1, 2, 3, 4), required=True)
    pd.add_argument("--output", "-o")
    return parser


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _roots_out(label: str, roots, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"label": label, "roots": [[float(r.real), float(r.imag)] for r in roots]}, indent=2) + "\n"
    lines = ["re,im,value"] + [f"{fmt_real(r.real)},{fmt_real(r.imag)},{fmt_complex(r)}" for r in roots]
    return "\n".join(lines) + "\n"


def _check_n(n):
    if not 1 <= n <= MAX_N:
        raise ValueError(f"--n must lie in 1..{MAX_N}")


def cmd_zeros(args) -> int:
    _check_n(args.n)
    if args.popuc_lc:
        gamma = parse_complex(args.gamma)
        label = f"PhiP_{args.n}(z;1;{args.gamma})"
        poly = popuc_lc(args.n, gamma)
    else:
        spec = load_spec(args.preset, args.spec_json)
        setup = build_setup(spec, args.n, None, args.quadN)
        if args.quasi:
            a = parse_a_rule(args.quasi).sequence(setup.base, setup.base.N)
            qf = quasi_family(setup.base, a)
            poly = qf.qphi[args.n]
            label = f"PhiQ_{args.n}"
        elif args.popuc is not None:
            poly = popuc(setup.base, args.n, parse_complex(args.popuc))
            label = f"PhiP_{args.n}(z;{args.popuc})"
        else:
            poly = setup.base.phi[args.n]
            label = f"Phi_{args.n}"
    _emit(_roots_out(label, poly.roots(), args.format), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    _check_n(args.n)
    spec = load_spec(args.preset, args.spec_json)
    rule = args.a_rule or ("marcellan" if args.suite in RULE_SUITES else None)
    setup = build_setup(spec, max(args.n, 8) + 1, rule, args.quadN)
    reports = run_suite(args.suite, setup, args.n)
    rows = [r.to_json() for r in reports]
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        text = "name,lhs,rhs,slack,pass\n" + "".join(
            f"{r['name']},{r['lhs']:.6e},{r['rhs']:.6e},{r['slack']:.6e},{int(r['pass'])}\n" for r in rows
        )
    _emit(text, args.output)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_table(args) -> int:
    _emit(table_csv(args.which), args.output)
    return EXIT_OK


def cmd_chain(args) -> int:
    _check_n(args.n)
    spec = load_spec(args.preset, args.spec_json)
    setup = build_setup(spec, args.n + 1, args.a_rule, args.quadN)
    cd = chain_data(setup.base, setup.a, setup.tilde_fam, args.n)
    _emit(json.dumps(cd.to_json(), indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_family(args) -> int:
    _check_n(args.n)
    spec = load_spec(args.preset, args.spec_json)
    from .szego import family_from_measure

    fam = family_from_measure(spec, args.n, args.quadN)
    _emit(json.dumps(fam.to_json(), indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_plot_data(args) -> int:
    _emit(plot_data_csv(args.figure), args.output)
    return EXIT_OK


COMMANDS = {
    "zeros": cmd_zeros,
    "verify": cmd_verify,
    "table": cmd_table,
    "chain": cmd_chain,
    "family": cmd_family,
    "plot-data": cmd_plot_data,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "quadN") and args.quadN is None:
            args.quadN = default_quadN()
        return COMMANDS[args.command](args)
    except (ConvergenceError, ConditioningError) as exc:
        print(f"opuc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OpucError, ValueError, KeyError, OSError) as exc:
        print(f"opuc: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
