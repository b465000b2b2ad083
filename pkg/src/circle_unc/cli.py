"""Command-line front end: ``circle-unc <subcommand> [flags]``.

Exit codes: 0 success, 1 acceptance failure, 2 bad flags or arguments.
Complex values are written ``RE,IM``; use ``--z=-1,0`` for a leading minus.
"""
import argparse
import json
import math
import os
import sys

import numpy as np

from .acceptance import run_acceptance
from .exceptions import CircleDomainError, TruncationError
from .experiments import MEASURES, VARYING, SweepSpec, delta0_search, figure1, figure2, figure3, scan
from .observables import WindowSpec, density, packet_center
from .oracle import OracleConfig, max_discrepancy
from .states import (
    cat_state,
    coherent_state,
    fock_state,
    squeezed_coherent_state,
    state_to_csv,
)
from .uncertainty import DELTA0_SQ_DEFAULT, uncertainty_report

DIGITS = 17


def complex_arg(text):
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def _family_flags(p, families=("coherent", "squeezed", "cat", "fock")):
    p.add_argument("--family", choices=families, default=families[0])
    p.add_argument("--z", type=complex_arg, default=complex(1.0), metavar="RE,IM")
    p.add_argument("--a", type=complex_arg, default=complex(0.0), metavar="RE,IM")
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--m", type=int, default=0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="circle-unc",
        description="Uncertainty measures and relations for quantum states on a circle.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="dump coefficients or the angle density", allow_abbrev=False)
    _family_flags(p)
    p.add_argument("--density", action="store_true", help="print phi,p on --grid points instead")
    p.add_argument("--grid", type=int, default=1024)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write state.csv / state.json here instead of stdout")

    p = sub.add_parser("uncertainty", help="full uncertainty report as JSON", allow_abbrev=False)
    _family_flags(p)
    p.add_argument("--delta0", type=float, default=DELTA0_SQ_DEFAULT)
    p.add_argument("--grid", type=int, default=4096, help="window quadrature resolution")
    p.add_argument("--oracle", action="store_true", help="cross-check against grid quadrature")
    p.add_argument("--format", choices=("csv", "json"), default="json")

    p = sub.add_parser("scan", help="parameter sweep", allow_abbrev=False)
    _family_flags(p, ("cat", "coherent", "squeezed"))
    p.add_argument("--vary", choices=VARYING, default="a_real")
    p.add_argument("--lo", type=float, default=-3.0)
    p.add_argument("--hi", type=float, default=3.0)
    p.add_argument("--count", type=int, default=601)
    p.add_argument("--measures", default="kr_phi,kr_J,kr_sum",
                   help="comma list from: " + ",".join(MEASURES))
    p.add_argument("--delta0", type=float, default=DELTA0_SQ_DEFAULT)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")

    p = sub.add_parser("figure", help="regenerate figure data", allow_abbrev=False)
    p.add_argument("number", type=int, choices=(1, 2, 3))
    p.add_argument("--lo", type=float, default=-3.0)
    p.add_argument("--hi", type=float, default=3.0)
    p.add_argument("--count", type=int, default=601)
    p.add_argument("--grid", type=int, default=1024, help="density points for figure 2")
    p.add_argument("--out", default=".")

    p = sub.add_parser("delta0", help="estimate the minimal simultaneous variance", allow_abbrev=False)
    p.add_argument("--out")

    p = sub.add_parser("accept", help="run the acceptance suite", allow_abbrev=False)
    p.add_argument("--out", default=".")
    return parser


def _state_from(args, parser):
    try:
        if args.family == "coherent":
            return coherent_state(args.z)
        if args.family == "squeezed":
            return squeezed_coherent_state(args.z, args.s)
        if args.family == "cat":
            return cat_state(args.z, args.a)
        return fock_state(args.m)
    except (CircleDomainError, TruncationError) as exc:
        parser.error(str(exc))


def _emit(text, out_dir, name):
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, name), "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_state(args, parser):
    psi = _state_from(args, parser)
    if args.density:
        phis = np.linspace(-math.pi, math.pi, args.grid)
        p = density(psi, phis)
        if args.format == "json":
            text = json.dumps({"phi": phis.tolist(), "p": p.tolist()}) + "\n"
        else:
            text = "phi,p\n" + "".join(f"{x:.{DIGITS}g},{y:.{DIGITS}g}\n" for x, y in zip(phis, p))
        _emit(text, args.out, "density." + args.format)
        return 0
    if args.format == "json":
        text = json.dumps({
            "family": psi.family,
            "m_min": psi.m_min,
            "re": psi.coeffs.real.tolist(),
            "im": psi.coeffs.imag.tolist(),
        }) + "\n"
    else:
        text = state_to_csv(psi, DIGITS)
    _emit(text, args.out, "state." + args.format)
    return 0


def _cmd_uncertainty(args, parser):
    psi = _state_from(args, parser)
    try:
        window = WindowSpec(packet_center(psi), args.grid)
    except ValueError as exc:
        parser.error(str(exc))
    report = uncertainty_report(psi, args.delta0, window).to_dict()
    if args.oracle:
        worst, key, _ = max_discrepancy(psi, OracleConfig())
        report["oracle"] = {"max_discrepancy": worst, "worst_quantity": key}
        print(f"oracle max discrepancy {worst:.3e} ({key})", file=sys.stderr)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        for k, v in report.items():
            if isinstance(v, dict):
                for kk, vv in v.items():
                    print(f"{k}.{kk},{vv}")
            else:
                print(f"{k},{v!r}")
    return 0


def _cmd_scan(args, parser):
    measures = [m.strip() for m in args.measures.split(",") if m.strip()]
    try:
        spec = SweepSpec(args.family, args.vary, args.lo, args.hi, args.count, z=args.z, a=args.a, s=args.s)
        table = scan(spec, measures, args.delta0)
    except ValueError as exc:
        parser.error(str(exc))
    if args.format == "json":
        _emit(json.dumps(table.to_json()) + "\n", args.out, "scan.json")
    else:
        _emit(table.to_csv(DIGITS), args.out, "scan.csv")
    return 0


def _cmd_figure(args, parser):
    if args.number == 2:
        table = figure2(args.grid)
    else:
        try:
            gen = figure1 if args.number == 1 else figure3
            table = gen(args.lo, args.hi, args.count)
        except ValueError as exc:
            parser.error(str(exc))
    _emit(table.to_csv(DIGITS), args.out, f"fig{args.number}.csv")
    return 0


def _write_delta0(out):
    val, r, phase = delta0_search()
    text = f"{val:.{DIGITS}g}\n# argmin |z|={r:.{DIGITS}g} arg(z)={phase:.{DIGITS}g}\n"
    if out:
        _emit(text, out, "delta0.txt")
    return val, text


def _cmd_delta0(args, parser):
    val, text = _write_delta0(args.out)
    print(f"{val:.{DIGITS}g}")
    return 0


def _cmd_accept(args, parser):
    results = run_acceptance(args.out)
    for num, gen in ((1, figure1), (2, figure2), (3, figure3)):
        _emit(gen().to_csv(DIGITS), args.out, f"fig{num}.csv")
    _write_delta0(args.out)
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "state": _cmd_state,
    "uncertainty": _cmd_uncertainty,
    "scan": _cmd_scan,
    "figure": _cmd_figure,
    "delta0": _cmd_delta0,
    "accept": _cmd_accept,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    return COMMANDS[args.command](args, sub)


if __name__ == "__main__":
    sys.exit(main())
