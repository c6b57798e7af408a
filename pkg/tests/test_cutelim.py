import time

import pytest

from doubleneg.corpus import SkGenerator
from doubleneg.cutelim import (
    CutMeasure, adjust, cut_audit, eliminate_cuts, eliminate_cuts_with_stats,
    is_cut_free, rank, sequent_subformula_audit, tidy,
)
from doubleneg.errors import InvalidProofError, StepLimitExceeded
from doubleneg.sequent import (
    SkProof, SkRule, ax, check_sk_proof, cut, derivation_catalog, infer, lbot,
)
from doubleneg.syntax import Atom, Neg, parse_formula, parse_sequent

A, B = Atom("A"), Atom("B")


def nested_double_cut():
    # => A, ~A  and  ~A, A =>  cut on ~A, then an axiom cut on A below it
    left = infer(SkRule.RNeg, [ax(A)], Neg(A))
    right = infer(SkRule.LNeg, [ax(A)], Neg(A))
    inner = cut(left, right, Neg(A))
    return cut(ax(A), inner, A)


def test_rank():
    assert rank(A) == 1
    assert rank(parse_formula("~~A")) == 3
    assert rank(parse_formula("(A -> B) & ~A")) == 4


def test_audit_examples():
    cat = derivation_catalog()
    audit = cut_audit(cat["sk-cut-roundtrip"])
    assert audit.count == 1
    (info,) = audit.cuts
    assert info.formula == parse_formula("~~A")
    assert info.measure.rank == 3
    assert info.measure.level == 6
    assert info.path == ()
    assert cut_audit(cat["sk-dni"]).count == 0
    assert cut_audit(cat["sk-dni"]).max_rank == 0


def test_nested_double_cut_audit():
    p = nested_double_cut()
    assert check_sk_proof(p).valid
    assert p.conclusion == parse_sequent("A => A")
    audit = cut_audit(p)
    assert audit.count == 2
    assert [c.path for c in audit.cuts] == [(), (1,)]
    assert [c.formula for c in audit.cuts] == [A, Neg(A)]
    assert audit.max_rank == 2


def test_audit_requires_valid():
    with pytest.raises(InvalidProofError):
        cut_audit(SkProof(SkRule.Ax, parse_sequent("A => B"), (), A))


def test_roundtrip_eliminates_to_axiom():
    out = eliminate_cuts(derivation_catalog()["sk-cut-roundtrip"])
    assert is_cut_free(out)
    assert check_sk_proof(out).valid
    assert out.conclusion == parse_sequent("A => A")
    assert out == ax(A)


def test_roundtrip_without_shortening_still_cut_free():
    out = eliminate_cuts(derivation_catalog()["sk-cut-roundtrip"], shorten=False)
    assert is_cut_free(out) and check_sk_proof(out).valid
    assert out.conclusion == parse_sequent("A => A")


def test_axiom_cut_returns_other_premise():
    q = infer(SkRule.LWeak, [derivation_catalog()["sk-dni"]], B)  # B, A => ~~A
    assert eliminate_cuts(cut(ax(A), q, A), shorten=False) == q
    r = derivation_catalog()["sk-dne"]  # ~~A => A
    assert eliminate_cuts(cut(r, ax(A), A), shorten=False) == r


def test_nested_double_cut_eliminated():
    out = eliminate_cuts(nested_double_cut())
    assert is_cut_free(out) and check_sk_proof(out).valid
    assert out.conclusion == parse_sequent("A => A")


def test_weakened_cut_formula_erased():
    left = infer(SkRule.RWeak, [ax(A)], B)  # A => A, B
    right = infer(SkRule.LWeak, [ax(A)], B)  # B, A => A
    out = eliminate_cuts(cut(left, right, B), shorten=False)
    assert is_cut_free(out)
    assert out.conclusion == parse_sequent("A, A => A, A")
    assert all(B not in n.conclusion.formulas() for _, n in out.nodes())


def test_contraction_passes_through_mix():
    # => A, A  contracted to  => A, cut against  A => A & A
    left = infer(SkRule.RContr, [infer(SkRule.RWeak, [infer(SkRule.RWeak, [ax(B)], A)], A)], A)
    right = infer(SkRule.RAnd, [ax(A), ax(A)], parse_formula("A & A"))
    p = cut(left, right, A)
    assert check_sk_proof(p).valid
    out = eliminate_cuts(p)
    assert is_cut_free(out) and check_sk_proof(out).valid
    assert out.conclusion == p.conclusion


def test_adjust():
    target = parse_sequent("A, B => A, B")
    out = adjust(ax(A), target)
    assert out.conclusion == target and check_sk_proof(out).valid
    doubled = infer(SkRule.LWeak, [ax(A)], A)  # A, A => A
    assert adjust(doubled, parse_sequent("A => A")).conclusion == parse_sequent("A => A")


def test_tidy_keeps_endsequent():
    p = infer(SkRule.LContr, [infer(SkRule.LWeak, [ax(A)], A)], A)
    assert tidy(p) == ax(A)


def test_step_limit():
    with pytest.raises(StepLimitExceeded):
        eliminate_cuts(derivation_catalog()["sk-cut-roundtrip"], step_limit=1)


def test_measure_decrease_on_catalog():
    _, engine = eliminate_cuts_with_stats(derivation_catalog()["sk-cut-roundtrip"])
    assert engine.measures[0] == (None, CutMeasure(3, 6))
    for parent, child in engine.measures:
        if parent is not None:
            assert child < parent


def test_random_corpus():
    proofs = SkGenerator(seed=2, cut_rate=0.4).proofs(200, min_cuts=1, max_cuts=2)
    principal = 0
    for p in proofs:
        out, engine = eliminate_cuts_with_stats(p)
        assert is_cut_free(out)
        assert check_sk_proof(out).valid
        assert out.conclusion == p.conclusion
        assert sequent_subformula_audit(out).passed
        for parent, child in engine.measures:
            if parent is not None:
                assert child < parent
        principal += any(not isinstance(c.formula, Atom) for c in cut_audit(p).cuts)
    assert principal > 20


def test_subformula_audit_detects_foreign_formula():
    p = derivation_catalog()["sk-cut-roundtrip"]
    # the cut formula ~~A is a subformula of nothing in A => A
    report = sequent_subformula_audit(p)
    assert not report.passed
    assert report.violation in (Neg(A), Neg(Neg(A)))


def test_timing_single_run():
    p = nested_double_cut()
    start = time.perf_counter()
    eliminate_cuts(p)
    assert time.perf_counter() - start < 0.1


def test_lbot_cut():
    # A => _|_  cut against  _|_ =>
    left = infer(SkRule.RWeak, [infer(SkRule.LWeak, [lbot()], A)], parse_formula("_|_"))
    left = cut(left, lbot(), parse_formula("_|_"))  # A, _|_ =>
    assert check_sk_proof(left).valid
    out = eliminate_cuts(left)
    assert is_cut_free(out) and out.conclusion == left.conclusion
