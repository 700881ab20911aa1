"""Command-line front end.

    clutterbetti betti example.txt --field 2
    clutterbetti classify - --format json < rp2.txt
    clutterbetti generate torus | clutterbetti check -

Exit status: 0 on success, 1 on domain errors (zero ideal, capacity, failed
checks), 2 on unreadable input or bad flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import comb

from .betti import BettiTable, betti_hochster, has_linear_resolution, indeg, regularity, render_diagram
from .checks import FAIL, run_checks
from .classify import classify, decompose_search
from .clutter import Clutter, parse_clutter
from .complex import clique_complex, reduced_homology_dims
from .errors import ClutterBettiError, InconsistentInput, ParseError
from .formulas import cycle_betti, minimal_resolution_formula
from .generators import (
    almost_tree_ten,
    cross_polytope_boundary,
    cycle,
    generalized_chordal,
    rp2_six,
    torus_seven,
    two_bipyramids,
)
from .linalg import FieldSpec

FAMILIES = ("cycle", "cross-polytope", "bipyramids", "almost-tree-ten", "rp2", "torus", "chordal")


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except InconsistentInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=FieldSpec(0), help="'q' (default) or a prime")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--subset-cap", type=_positive, default=16,
                        help="largest |C| for exhaustive subclutter scans")
    common.add_argument("--separator-cap", type=int, default=None,
                        help="largest clique separator tried by decompose (default d+2)")
    common.add_argument("--seed", type=_seed, default=0)

    parser = argparse.ArgumentParser(prog="clutterbetti", description="Betti numbers of circuit ideals of clutters.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("betti", "graded Betti table"),
        ("reg", "regularity and initial degree"),
        ("linearity", "whether the resolution is linear"),
        ("classify", "taxonomy report"),
        ("decompose", "find a decomposition witness"),
        ("homology", "reduced homology of the clique complex"),
        ("check", "run the cross-validation ledger"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="clutter file, or '-' for standard input")

    p = sub.add_parser("resolution-formula", parents=[common],
                       help="closed-form table for a clutter minimal to linearity (or a cycle)")
    p.add_argument("input", nargs="?", help="clutter file, or '-' for standard input")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--mu", type=int)
    p.add_argument("--cycle", type=int, metavar="N", help="use the cycle formula for the N-cycle")

    p = sub.add_parser("generate", parents=[common], help="emit a fixture in the text format")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--size", type=int, default=None, help="cycle length or cross-polytope dimension")
    p.add_argument("--steps", type=int, default=6, help="rule applications for 'chordal'")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--d", type=int, default=3)
    return parser


def _read(path: str) -> Clutter:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_clutter(text)


def _emit_table(T: BettiTable, fmt: str) -> str:
    return T.to_json() if fmt == "json" else render_diagram(T)


def _yes(v) -> str:
    return "yes" if v else "no"


def cmd_betti(args) -> str:
    C = _read(args.input)
    return _emit_table(betti_hochster(C, args.field, threads=args.threads), args.format)


def cmd_reg(args) -> str:
    C = _read(args.input)
    T = betti_hochster(C, args.field, threads=args.threads)
    r, m = regularity(T), indeg(T)
    if args.format == "json":
        return json.dumps({"field": args.field.label, "reg": r, "indeg": m})
    return f"reg={r} indeg={m} field={args.field.label}"


def cmd_linearity(args) -> str:
    C = _read(args.input)
    lin = has_linear_resolution(C, args.field)
    if args.format == "json":
        return json.dumps({"field": args.field.label, "linear": lin, "d": C.d})
    return f"linear={_yes(lin)} d={C.d} field={args.field.label}"


def cmd_classify(args) -> str:
    C = _read(args.input)
    rep = classify(C, args.field, separator_cap=args.separator_cap, subset_cap=args.subset_cap)
    return rep.to_json() if args.format == "json" else rep.render()


def cmd_decompose(args) -> str:
    C = _read(args.input)
    if len(C) < 2:
        raise InconsistentInput("decompose needs at least two circuits")
    w, complete = decompose_search(C, args.separator_cap)
    if args.format == "json":
        body = None if w is None else {
            "kind": w.kind,
            "C1": [list(s) for s in w.C1.sets()],
            "C2": [list(s) for s in w.C2.sets()],
            "separator": None if w.separator is None else [i + 1 for i in range(C.n) if w.separator >> i & 1],
        }
        return json.dumps({"decomposable": w is not None, "witness": body, "search_complete": complete})
    if w is None:
        return "indecomposable" + ("" if complete else " (clique-separator search limited by --separator-cap)")
    return "decomposable\n" + w.describe()


def cmd_homology(args) -> str:
    C = _read(args.input)
    delta = clique_complex(C)
    dims = reduced_homology_dims(delta, args.field)
    pairs = list(zip(range(-1, delta.dim + 1), dims))
    if args.format == "json":
        return json.dumps({"dims": {str(i): h for i, h in pairs}, "field": args.field.label})
    return " ".join(f"H~{i}={h}" for i, h in pairs) + f" field={args.field.label}"


def cmd_resolution_formula(args) -> str:
    if args.cycle is not None:
        T = cycle_betti(args.cycle, args.field)
    else:
        if args.input is not None:
            C = _read(args.input)
            n, d, mu = C.n, C.d, comb(C.n, C.d) - len(C)
        else:
            if None in (args.n, args.d, args.mu):
                raise InconsistentInput("give an input clutter, --cycle N, or all of --n --d --mu")
            n, d, mu = args.n, args.d, args.mu
        T = minimal_resolution_formula(n, d, mu, args.field)
    return _emit_table(T, args.format)


def cmd_generate(args) -> str:
    fam = args.family
    if fam == "cycle":
        C = cycle(args.size or 5)
    elif fam == "cross-polytope":
        C = cross_polytope_boundary(args.size or 3)
    elif fam == "bipyramids":
        C = two_bipyramids()
    elif fam == "almost-tree-ten":
        C = almost_tree_ten()
    elif fam == "rp2":
        C = rp2_six()
    elif fam == "torus":
        C = torus_seven()
    else:
        trace: list = []
        C = generalized_chordal(args.seed, steps=args.steps, n_max=args.n_max, d=args.d, trace=trace)
        header = [f"# generalized chordal, seed={args.seed}"] + [f"# rule {step}" for step in trace]
        return "\n".join(header) + "\n" + C.to_text().rstrip("\n")
    if args.format == "json":
        return C.to_json()
    return C.to_text().rstrip("\n")


def cmd_check(args) -> tuple[str, int]:
    C = _read(args.input)
    results = run_checks(C, args.field, subset_cap=args.subset_cap, separator_cap=args.separator_cap)
    failed = any(r.status == FAIL for r in results)
    if args.format == "json":
        text = json.dumps({"field": args.field.label, "passed": not failed,
                           "checks": [{"name": r.name, "status": r.status, "detail": r.detail} for r in results]})
    else:
        text = "\n".join(r.line() for r in results)
    return text, 1 if failed else 0


COMMANDS = {
    "betti": cmd_betti,
    "reg": cmd_reg,
    "linearity": cmd_linearity,
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "homology": cmd_homology,
    "resolution-formula": cmd_resolution_formula,
    "generate": cmd_generate,
    "check": cmd_check,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ClutterBettiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    status = 0
    if isinstance(result, tuple):
        result, status = result
    print(result)
    return status


if __name__ == "__main__":
    sys.exit(main())
