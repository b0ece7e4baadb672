"""Command-line entry point: ``hybridqudit {simulate,opent,lemma1,lemma2,dump}``."""

import argparse
import csv
import json
import sys

from . import dsl
from .entanglement import (
    LEMMA1_KINDS,
    e_sum_closed_form,
    fig1_sweep,
    lemma1_experiment,
    operator_entanglement,
    sum_oracle_entanglement,
)
from .errors import HybridQuditError
from .pauli import lemma2_check

VERIFY_TOL = 1e-9
EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2


def parse_range(text):
    """'lo:hi' (inclusive) -> range."""
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def parse_list(text):
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


class Formatter:
    def __init__(self, precision=12):
        self.precision = precision

    def __call__(self, x):
        # + 0.0 folds negative zero so it renders as "0"
        return f"{x + 0.0:.{self.precision}g}"

    def complex(self, z):
        return f"{self(z.real)},{self(z.imag)}"


def cmd_simulate(args, out, fmt):
    try:
        with open(args.file, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        program = dsl.load(source)
        result = dsl.run(program)
    except dsl.ProgramError as exc:
        print(exc.render(args.file), file=sys.stderr)
        return EXIT_INPUT
    except HybridQuditError as exc:
        print(f"{args.file}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    names = program.site_names
    dims = program.register.dims
    print("register: " + " ".join(f"{n}:{d}" for n, d in zip(names, dims)), file=out)
    print(f"steps: {len(program.steps)}", file=out)
    print("final amplitudes (index, digits, re, im):", file=out)
    for index, digits, amp in result.state.nonzero():
        label = ",".join(str(m) for m in digits)
        print(f"  {index}  |{label}>  {fmt(amp.real)}  {fmt(amp.imag)}", file=out)
    norm = result.state.norm
    print(f"norm: {fmt(norm)}", file=out)
    status = EXIT_OK if abs(norm - 1.0) <= 1e-8 else EXIT_VERIFY
    for item in result.analyses:
        if item.analysis.kind == "pauli":
            verdict = "yes" if item.value else "no"
            print(f"{item.description}: automorphism {verdict}", file=out)
            for gen, v in item.details:
                lab = str(v.label) if v.label else "-"
                print(f"  {gen} -> member={'yes' if v.is_member else 'no'} label={lab}", file=out)
        else:
            print(f"{item.description}: {fmt(item.value)} bits", file=out)
    return status


def cmd_opent(args, out, fmt):
    rows = fig1_sweep(args.dc, args.dt)
    lines = [["d_c", "d_t", "E_op_bits"]] + [[r.d_c, r.d_t, fmt(r.entropy_bits)] for r in rows]
    status = EXIT_OK
    trailer = None
    if args.verify:
        diff = max(abs(r.entropy_bits - sum_oracle_entanglement(r.d_c, r.d_t)) for r in rows)
        trailer = f"# verify: max_abs_diff={diff:.3e} rows={len(rows)} tol={VERIFY_TOL:g}"
        if diff > VERIFY_TOL:
            status = EXIT_VERIFY
    try:
        fh = out if args.out in (None, "-") else open(args.out, "w", encoding="utf-8", newline="")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerows(lines)
        if trailer:
            fh.write(trailer + "\n")
    finally:
        if fh is not out:
            fh.close()
    if trailer and fh is not out:
        print(trailer, file=out)
    return status


def cmd_lemma1(args, out, fmt):
    try:
        result = lemma1_experiment(args.kind, args.dc, args.dt, args.t)
    except HybridQuditError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"kind: {args.kind}  d_c={args.dc}  d_t={args.dt}  t={args.t}", file=out)
    print(f"generated entropy: {fmt(result.generated_entropy)} bits", file=out)
    print(f"operator entropy:  {fmt(result.operator_entropy)} bits", file=out)
    print(f"closed form:       {fmt(e_sum_closed_form(args.dc, args.dt))} bits", file=out)
    print(f"|difference|: {result.difference:.3e}", file=out)
    return EXIT_OK if result.difference <= VERIFY_TOL else EXIT_VERIFY


def cmd_lemma2(args, out, fmt):
    try:
        rep = lemma2_check(args.dc, args.dt)
    except HybridQuditError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    header = f"{'generator':<10} {'member':<7} {'recovered':<22} {'formula':<38} holds"
    print(header, file=out)
    for img in rep.images:
        lab = str(img.verdict.label) if img.verdict.label else "-"
        print(
            f"{img.generator:<10} {'yes' if img.verdict.is_member else 'no':<7} {lab:<22} "
            f"{img.formula:<38} {'yes' if img.formula_holds else 'no'}",
            file=out,
        )
    for img in rep.images:
        record = {"d_c": rep.d_c, "d_t": rep.d_t, **img.as_record()}
        print(json.dumps(record), file=out)
    print(
        f"Z(x)I -> Z(x)X (as printed): {'holds' if rep.printed_z_image_holds else 'does not hold'}",
        file=out,
    )
    print(
        f"reversed SUM (D21) automorphism: {'yes' if rep.reversed_automorphism else 'no'}",
        file=out,
    )
    print(
        f"automorphism: {'yes' if rep.automorphism else 'no'} "
        f"(d_c mod d_t = {rep.d_c % rep.d_t})",
        file=out,
    )
    return EXIT_OK if rep.consistent else EXIT_VERIFY


def cmd_dump(args, out, fmt):
    gate_id = args.gate.upper()
    if gate_id not in dsl.GATE_ARITY:
        print(
            f"error: unknown gate id {args.gate!r}; expected one of {', '.join(dsl.GATE_ARITY)}",
            file=sys.stderr,
        )
        return EXIT_INPUT
    arity = dsl.GATE_ARITY[gate_id]
    dims, extra = args.dims[:arity], args.dims[arity:]
    try:
        gate = dsl.build_gate(gate_id, dims, extra)
    except (HybridQuditError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(
        f"{gate_id} on dims {tuple(gate.site_dims)}  ({gate.dimension}x{gate.dimension})", file=out
    )
    for row in gate.matrix:
        print(" ".join(fmt.complex(z) for z in row), file=out)
    if gate.num_sites == 2:
        print(f"operator entanglement: {fmt(operator_entanglement(gate))} bits", file=out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hybridqudit", description="Gates on hybrid-dimension qudit registers."
    )
    parser.add_argument(
        "--precision", type=int, default=12, help="significant digits for printed numbers"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a .hqc circuit file")
    p.add_argument("file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("opent", help="operator entanglement of SUM on a (d_c, d_t) grid as CSV")
    p.add_argument("--dc", type=parse_range, required=True, metavar="LO:HI")
    p.add_argument("--dt", type=parse_list, required=True, metavar="LIST")
    p.add_argument("--verify", action="store_true", help="cross-check against the SVD route")
    p.add_argument("--out", default="-", metavar="PATH")
    p.set_defaults(func=cmd_opent)

    p = sub.add_parser("lemma1", help="entanglement generated by SUM vs its operator entanglement")
    p.add_argument("--dc", type=int, required=True)
    p.add_argument("--dt", type=int, required=True)
    p.add_argument("--kind", choices=LEMMA1_KINDS, required=True)
    p.add_argument("--t", type=int, default=0)
    p.set_defaults(func=cmd_lemma1)

    p = sub.add_parser("lemma2", help="Pauli-group automorphism check for SUM conjugation")
    p.add_argument("--dc", type=int, required=True)
    p.add_argument("--dt", type=int, required=True)
    p.set_defaults(func=cmd_lemma2)

    p = sub.add_parser("dump", help="print a gate matrix")
    p.add_argument("gate")
    p.add_argument("dims", type=int, nargs="+")
    p.set_defaults(func=cmd_dump)
    return parser


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    return args.func(args, out or sys.stdout, Formatter(args.precision))


if __name__ == "__main__":
    sys.exit(main())
