"""Command-line front end.

Exit status: 0 on success / valid / pass, 1 on an invalid proof or failed
check, 2 on usage, file or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence, TextIO

from . import __version__
from .cutelim import CutAudit, cut_audit, eliminate_cuts
from .errors import DoublenegError, InvalidProofError
from .natded import CLASSICAL, INTUITIONISTIC, NdProof, check_nd_proof
from .normalize import normalize_trace
from .script import dumps, load
from .semantics import is_tautology, kripke_search, prove_intuitionistic, truth_table
from .sequent import SkProof, check_sk_proof
from .suite import paper_suite
from .syntax import ParseError, atoms, parse_formula, render_formula, render_sequent

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    # subcommands must not reset a --unicode given before the command name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--unicode", action="store_true", default=argparse.SUPPRESS,
                        help="render with ¬ ∧ ∨ → ⊥ ⇒")

    parser = _Parser(prog="doubleneg",
                     description="Check, normalize and cut-eliminate propositional proofs.")
    parser.add_argument("--unicode", action="store_true", help="render with ¬ ∧ ∨ → ⊥ ⇒")
    parser.add_argument("--version", action="version", version=f"doubleneg {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("check", parents=[common], help="check a proof script")
    p.add_argument("script")
    p.add_argument("--mode", choices=(CLASSICAL, INTUITIONISTIC), default=CLASSICAL,
                   help="natural deduction checking mode")

    p = sub.add_parser("normalize", parents=[common], help="normalize a natural deduction script")
    p.add_argument("script")
    p.add_argument("--trace", action="store_true", help="print one proof script per step")

    p = sub.add_parser("cut-eliminate", parents=[common], help="eliminate cuts from a sequent script")
    p.add_argument("script")

    p = sub.add_parser("prove", parents=[common], help="decide a formula")
    p.add_argument("--logic", choices=("classical", "intuitionistic"), required=True)
    p.add_argument("formula")

    p = sub.add_parser("truth-table", parents=[common], help="print a full truth table")
    p.add_argument("formula")

    p = sub.add_parser("paper-suite", parents=[common], help="run the golden suite")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    return parser


def _load(path: str):
    try:
        return load(path)
    except FileNotFoundError:
        raise _UsageError(f"file not found: {path}")
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}")
    except DoublenegError as exc:
        raise _UsageError(f"{path}: {exc}")


class _UsageError(Exception):
    pass


def _fmt(f, uni):
    return render_formula(f, uni)


def _judgment(opens, conclusion, uni: bool) -> str:
    lhs = ", ".join(_fmt(f, uni) for f in opens)
    turnstile = "⊢" if uni else "|-"
    return f"{lhs} {turnstile} {_fmt(conclusion, uni)}" if lhs else f"{turnstile} {_fmt(conclusion, uni)}"


def _audit_lines(title: str, audit: CutAudit, uni: bool) -> list[str]:
    lines = [f"{title}: {audit.count} cut(s), max rank {audit.max_rank}"]
    for c in audit.cuts:
        where = ".".join(map(str, c.path)) or "root"
        lines.append(f"  {where}: {_fmt(c.formula, uni)} rank {c.measure.rank} level {c.measure.level}")
    return lines


def cmd_check(args, out: TextIO) -> int:
    proof = _load(args.script)
    uni = args.unicode
    if isinstance(proof, SkProof):
        if args.mode != CLASSICAL:
            raise _UsageError("--mode applies to natural deduction scripts only")
        report = check_sk_proof(proof)
        if report.valid:
            print(f"valid: {render_sequent(report.endsequent, uni)}", file=out)
            return EXIT_OK
        print(f"invalid: {report.violation}", file=out)
        return EXIT_FAIL
    report = check_nd_proof(proof, args.mode)
    if report.valid:
        print(f"valid: {_judgment(report.open_assumptions, report.conclusion, uni)}", file=out)
        return EXIT_OK
    print(f"invalid: {report.violation}", file=out)
    return EXIT_FAIL


def cmd_normalize(args, out: TextIO) -> int:
    proof = _load(args.script)
    if not isinstance(proof, NdProof):
        raise _UsageError("normalize needs a natural deduction script")
    report = check_nd_proof(proof, CLASSICAL)
    if not report.valid:
        print(f"invalid: {report.violation}", file=out)
        return EXIT_FAIL
    if args.trace:
        print(dumps(proof, compact=True), file=out)
    result = normalize_trace(
        proof, on_step=(lambda r, p: print(dumps(p, compact=True), file=out)) if args.trace else None)
    if not args.trace:
        print(dumps(result.proof), file=out)
    final = check_nd_proof(result.proof, CLASSICAL)
    print(f"normal form in {result.steps} step(s): "
          f"{_judgment(final.open_assumptions, final.conclusion, args.unicode)}", file=out)
    return EXIT_OK


def cmd_cut_eliminate(args, out: TextIO) -> int:
    proof = _load(args.script)
    if not isinstance(proof, SkProof):
        raise _UsageError("cut-eliminate needs a sequent calculus script")
    report = check_sk_proof(proof)
    if not report.valid:
        print(f"invalid: {report.violation}", file=out)
        return EXIT_FAIL
    before = cut_audit(proof)
    result = eliminate_cuts(proof)
    after = cut_audit(result)
    lines = _audit_lines("before", before, args.unicode) + _audit_lines("after", after, args.unicode)
    lines.append(f"endsequent: {render_sequent(result.conclusion, args.unicode)}")
    print("\n".join(lines), file=out)
    print(dumps(result), file=out)
    return EXIT_OK


def cmd_prove(args, out: TextIO) -> int:
    f = parse_formula(args.formula)
    uni = args.unicode
    if args.logic == "classical":
        verdict = is_tautology(f)
        if verdict.holds:
            print("provable", file=out)
            return EXIT_OK
        print("unprovable", file=out)
        v = verdict.countervaluation
        print("countervaluation: " + ", ".join(f"{k}={'T' if v[k] else 'F'}" for k in sorted(v)), file=out)
        return EXIT_FAIL
    if prove_intuitionistic(f) == "provable":
        print("provable", file=out)
        return EXIT_OK
    print("unprovable", file=out)
    search = kripke_search(f, _countermodel_bound(len(atoms(f))))
    if search.countermodel is not None:
        print(f"countermodel: {search.countermodel.describe()}; w0 does not force {_fmt(f, uni)}", file=out)
    else:
        print(f"no countermodel within {search.bound} worlds", file=out)
    return EXIT_FAIL


def _countermodel_bound(n_atoms: int) -> int:
    # the search space grows as (up-sets per order) ** atoms
    if n_atoms <= 2:
        return 5
    if n_atoms == 3:
        return 4
    return 3 if n_atoms <= 5 else 2


def cmd_truth_table(args, out: TextIO) -> int:
    f = parse_formula(args.formula)
    header, rows = truth_table(f)
    if args.unicode:
        header[-1] = _fmt(f, True)
    print("\t".join(header), file=out)
    for row in rows:
        print("\t".join("T" if b else "F" for b in row), file=out)
    return EXIT_OK


def cmd_paper_suite(args, out: TextIO) -> int:
    report = paper_suite()
    print(report.to_json() if args.json else report.to_text(), file=out)
    return EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {
    "check": cmd_check,
    "normalize": cmd_normalize,
    "cut-eliminate": cmd_cut_eliminate,
    "prove": cmd_prove,
    "truth-table": cmd_truth_table,
    "paper-suite": cmd_paper_suite,
}


def run_cli(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None,
            err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except _UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except InvalidProofError as exc:
        print(f"invalid: {exc.report.violation}", file=out)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
