"""The golden suite: every derivation and claim of the double-negation
account, replayed through the kernels."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Callable

from . import __version__
from .cutelim import eliminate_cuts, is_cut_free
from .natded import CLASSICAL, INTUITIONISTIC, NdRule, check_nd_proof, hyp, nd_catalog
from .normalize import normalize_trace
from .semantics import is_tautology, kripke_search, prove_intuitionistic
from .sequent import check_sk_proof, derivation_catalog
from .syntax import Atom, Neg, iff, parse_formula, parse_sequent, render_formula, render_sequent

CASE_NAMES = (
    "sk-dni", "sk-dne", "sk-cut-roundtrip", "nd-dni", "nd-raa-or", "nd-dne",
    "nd-harmony-detour", "normalize-detour", "asymmetry", "bivalence",
)


@dataclass(frozen=True)
class CaseResult:
    name: str
    expectation: str
    observed: str
    passed: bool


@dataclass(frozen=True)
class SuiteReport:
    cases: tuple[CaseResult, ...]

    @property
    def passed_count(self) -> int:
        return sum(c.passed for c in self.cases)

    @property
    def total(self) -> int:
        return len(self.cases)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_json(self) -> str:
        data = {
            "version": __version__,
            "passed": self.passed_count,
            "total": self.total,
            "ok": self.ok,
            "cases": [asdict(c) for c in self.cases],
        }
        return json.dumps(data, indent=2, ensure_ascii=True)

    def to_text(self) -> str:
        lines = [f"doubleneg {__version__} paper-suite"]
        for c in self.cases:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status} {c.name}: expected {c.expectation}; observed {c.observed}")
        lines.append(f"{self.passed_count}/{self.total} passed")
        return "\n".join(lines)


def _opens(report) -> str:
    return "{" + ", ".join(render_formula(f) for f in report.open_assumptions) + "}"


def _nd_judgment(report) -> str:
    status = "valid" if report.valid else f"invalid ({report.violation.message})"
    return f"{status}, {render_formula(report.conclusion)} from {_opens(report)}"


def _sk_case(name: str, expected: str):
    def run():
        proof = derivation_catalog()[name]
        report = check_sk_proof(proof)
        observed = ("valid: " if report.valid else f"invalid: {report.violation}; ") + render_sequent(report.endsequent)
        return f"valid: {expected}", observed, report.valid and report.endsequent == parse_sequent(expected)
    return run


def _cut_roundtrip():
    proof = derivation_catalog()["sk-cut-roundtrip"]
    before = check_sk_proof(proof)
    out = eliminate_cuts(proof)
    after = check_sk_proof(out)
    ok = (before.valid and after.valid and is_cut_free(out)
          and out.conclusion == parse_sequent("A => A"))
    observed = (f"{'valid' if before.valid else 'invalid'} {render_sequent(proof.conclusion)}; "
                f"eliminated to {'cut-free' if is_cut_free(out) else 'cut-containing'} "
                f"{'valid' if after.valid else 'invalid'} proof of {render_sequent(out.conclusion)} "
                f"({out.size} node{'s' if out.size != 1 else ''})")
    return "valid, cut-free proof of A => A after elimination", observed, ok


def _nd_case(name: str, conclusion: str, opens: str, intuitionistic: bool):
    def run():
        proof = nd_catalog()[name]
        cl = check_nd_proof(proof, CLASSICAL)
        it = check_nd_proof(proof, INTUITIONISTIC)
        want_opens = "{" + opens + "}"
        expectation = (f"classical: valid, {conclusion} from {want_opens}; intuitionistic: "
                       + ("valid" if intuitionistic else "invalid (classical-only rule)"))
        observed = f"classical: {_nd_judgment(cl)}; intuitionistic: " + (
            "valid" if it.valid else f"invalid ({it.violation.message})")
        ok = (cl.valid and cl.conclusion == parse_formula(conclusion)
              and _opens(cl) == want_opens
              and it.valid == intuitionistic
              and (intuitionistic or it.violation.message == "classical-only rule"))
        return expectation, observed, ok
    return run


def _normalize_detour():
    a = Atom("A")
    result = normalize_trace(nd_catalog()["nd-harmony-detour"])
    ok = result.proof == hyp(a) and result.steps == 1
    observed = f"{result.proof.rule} {render_formula(result.proof.conclusion)} in {result.steps} step(s)"
    return "Hyp A in exactly 1 step", observed, ok


def _asymmetry():
    dni, dne = parse_formula("A -> ~~A"), parse_formula("~~A -> A")
    v_dni, v_dne = prove_intuitionistic(dni), prove_intuitionistic(dne)
    search = kripke_search(dne, 2)
    model = search.countermodel
    worlds = len(model.worlds) if model else 0
    ok = v_dni == "provable" and v_dne == "unprovable" and worlds == 2
    observed = (f"A -> ~~A {v_dni}; ~~A -> A {v_dne}; countermodel "
                + (model.describe() if model else "none"))
    return "A -> ~~A provable; ~~A -> A unprovable with a 2-world countermodel", observed, ok


def _bivalence():
    a = Atom("A")
    f = iff(a, Neg(Neg(a)))
    verdict = is_tautology(f)
    return (f"{render_formula(f)} is a tautology",
            f"tautology: {'yes' if verdict.holds else 'no, fails at ' + str(verdict.countervaluation)}",
            verdict.holds)


CASES: dict[str, Callable] = {
    "sk-dni": _sk_case("sk-dni", "A => ~~A"),
    "sk-dne": _sk_case("sk-dne", "~~A => A"),
    "sk-cut-roundtrip": _cut_roundtrip,
    "nd-dni": _nd_case("nd-dni", "~~A", "A", True),
    "nd-raa-or": _nd_case("nd-raa-or", "~A", "~(A | B)", True),
    "nd-dne": _nd_case("nd-dne", "A", "~~A", False),
    "nd-harmony-detour": _nd_case("nd-harmony-detour", "A", "A", False),
    "normalize-detour": _normalize_detour,
    "asymmetry": _asymmetry,
    "bivalence": _bivalence,
}


def paper_suite() -> SuiteReport:
    results = []
    for name in CASE_NAMES:
        try:
            expectation, observed, passed = CASES[name]()
        except Exception as exc:  # a crashing case is a failing case
            expectation, observed, passed = "case runs", f"error: {type(exc).__name__}: {exc}", False
        results.append(CaseResult(name, expectation, observed, bool(passed)))
    return SuiteReport(tuple(results))
