import itertools
import random

import pytest

from doubleneg.corpus import enumerate_formulas, random_formula
from doubleneg.natded import INTUITIONISTIC, check_nd_proof, hyp, imp_i, neg_e, neg_i, open_assumptions
from doubleneg.semantics import (
    AtomLimitError, BoundTooLargeError, MissingAtomError, evaluate, is_tautology,
    kripke_search, prove_classical, prove_intuitionistic, rooted_orders, sequent_valid,
    truth_table, valuations,
)
from doubleneg.syntax import BOTTOM, Atom, Neg, iff, parse_formula, parse_sequent

A, B = Atom("A"), Atom("B")
F = parse_formula


# independent oracles

def truth(f, v):
    kind = type(f).__name__
    if kind == "Atom":
        return v[f.name]
    if kind == "Bottom":
        return False
    if kind == "Neg":
        return not truth(f.body, v)
    l, r = truth(f.left, v), truth(f.right, v)
    return {"And": l and r, "Or": l or r, "Imp": (not l) or r}[kind]


def forces(le, val, w, f):
    """Forcing over an explicit order relation ``le`` (set of pairs)."""
    up = [v for (x, v) in le if x == w]
    kind = type(f).__name__
    if kind == "Atom":
        return f.name in val[w]
    if kind == "Bottom":
        return False
    if kind == "And":
        return forces(le, val, w, f.left) and forces(le, val, w, f.right)
    if kind == "Or":
        return forces(le, val, w, f.left) or forces(le, val, w, f.right)
    if kind == "Neg":
        return all(not forces(le, val, v, f.body) for v in up)
    return all(not forces(le, val, v, f.left) or forces(le, val, v, f.right) for v in up)


def all_preorders(n):
    worlds = range(n)
    base = {(w, w) for w in worlds}
    extra = [(a, b) for a in worlds for b in worlds if a != b]
    for bits in itertools.product((0, 1), repeat=len(extra)):
        le = base | {p for p, on in zip(extra, bits) if on}
        if all((a, d) in le for (a, b) in le for (c, d) in le if b == c):
            yield le


def monotone_valuations(le, n, names):
    subsets = [frozenset(s) for k in range(len(names) + 1) for s in itertools.combinations(names, k)]
    for choice in itertools.product(subsets, repeat=n):
        if all(choice[a] <= choice[b] for a, b in le):
            yield dict(enumerate(choice))


# classical


@pytest.mark.parametrize("value, expected", [(True, True), (False, False)])
def test_evaluate_double_negation(value, expected):
    assert evaluate(F("~~A"), {"A": value}) is expected


def test_evaluate_bottom_and_missing():
    assert evaluate(BOTTOM, {}) is False
    assert evaluate(BOTTOM, {"A": True}) is False
    with pytest.raises(MissingAtomError):
        evaluate(F("A & B"), {"A": True})


def test_tautology_examples():
    assert is_tautology(iff(A, F("~~A")))
    assert is_tautology(F("A | ~A"))
    verdict = is_tautology(F("A -> B"))
    assert not verdict
    assert verdict.countervaluation == {"A": True, "B": False}


def test_tautology_matches_oracle():
    for f in enumerate_formulas(3):
        expected = all(truth(f, dict(zip(["A", "B"], bits))) for bits in itertools.product((0, 1), repeat=2))
        assert bool(is_tautology(f)) == expected


def test_atom_limit():
    big = F(" & ".join(f"P{i}" for i in range(21)))
    with pytest.raises(AtomLimitError):
        is_tautology(big)
    with pytest.raises(AtomLimitError):
        list(valuations(["A", "B", "C"], limit=2))


@pytest.mark.parametrize("text, expected", [
    ("A, ~A =>", True),
    ("=> A, ~A", True),
    ("A => B", False),
    ("=>", False),
    ("_|_ =>", True),
    ("A & B => B | C", True),
])
def test_sequent_valid(text, expected):
    assert sequent_valid(parse_sequent(text)) is expected


def test_truth_table():
    header, rows = truth_table(F("B -> A"))
    assert header == ["A", "B", "B -> A"]
    assert rows == [(False, False, True), (False, True, False), (True, False, True), (True, True, True)]


# intuitionistic


@pytest.mark.parametrize("text, verdict", [
    ("A -> ~~A", "provable"),
    ("~~A -> A", "unprovable"),
    ("~~~A -> ~A", "provable"),
    ("A | ~A", "unprovable"),
    ("~~(A | ~A)", "provable"),
    ("((A -> B) -> A) -> A", "unprovable"),
    ("~(A | B) -> ~A & ~B", "provable"),
    ("~(A & B) -> ~A | ~B", "unprovable"),
    ("_|_ -> A", "provable"),
    ("(A -> B) -> ~B -> ~A", "provable"),
])
def test_prover_verdicts(text, verdict):
    assert prove_intuitionistic(F(text)) == verdict


def test_prover_with_assumptions():
    assert prove_intuitionistic(A, [F("~~A")]) == "unprovable"
    assert prove_intuitionistic(F("~~A"), [A]) == "provable"
    assert prove_classical(F("~~A -> A")) == "provable"


def test_triple_negation_hand_derivation():
    # [A]^1 with [~A]^2 gives _|_, so ~~A; against ~~~A gives _|_, so ~A
    dni = neg_i(neg_e(hyp(A, "1"), hyp(Neg(A), "2")), Neg(A), "2")
    body = neg_i(neg_e(dni, hyp(F("~~~A"), "3")), A, "1")
    p = imp_i(body, F("~~~A"), "3")
    report = check_nd_proof(p, INTUITIONISTIC)
    assert report.valid and report.conclusion == F("~~~A -> ~A")
    assert open_assumptions(p) == ()
    assert kripke_search(F("~~~A -> ~A"), 4).valid_up_to_bound


# Kripke


def test_dne_countermodel_shape():
    result = kripke_search(F("~~A -> A"), 2)
    m = result.countermodel
    assert m is not None and result.world == 0
    assert len(m.worlds) == 2
    assert m.order == frozenset({(0, 0), (1, 1), (0, 1)})
    assert m.forcing[0] == frozenset() and m.forcing[1] == frozenset({"A"})
    assert m.is_monotone()
    assert forces(m.order, m.forcing, 0, F("~~A"))
    assert not forces(m.order, m.forcing, 0, A)


def test_dne_has_no_one_world_countermodel():
    assert kripke_search(F("~~A -> A"), 1).valid_up_to_bound


def test_dne_brute_force_two_worlds():
    # every 2-world countermodel to ~~A -> A is the chain with A only on top
    witnesses = []
    for le in all_preorders(2):
        for val in monotone_valuations(le, 2, ["A"]):
            for w in range(2):
                if not forces(le, val, w, F("~~A -> A")):
                    witnesses.append((frozenset(le), val[w], w))
    assert witnesses
    for le, at_w, w in witnesses:
        assert at_w == frozenset()
        assert len(le) == 3


def test_lem_countermodel():
    m = kripke_search(F("A | ~A"), 2).countermodel
    assert m is not None and len(m.worlds) == 2
    assert not forces(m.order, m.forcing, 0, A)
    assert not forces(m.order, m.forcing, 0, F("~A"))


def test_dni_valid_up_to_three():
    result = kripke_search(F("A -> ~~A"), 3)
    assert result.valid_up_to_bound and result.bound == 3


def test_bounds():
    with pytest.raises(BoundTooLargeError):
        kripke_search(A, 7)
    with pytest.raises(ValueError):
        kripke_search(A, 0)


def naturally_labelled_posets(m):
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    count = 0
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        rel = {p for p, on in zip(pairs, bits) if on}
        if all((a, d) in rel for (a, b) in rel for (c, d) in rel if b == c):
            count += 1
    return count


@pytest.mark.parametrize("n", range(1, 6))
def test_rooted_order_counts(n):
    assert len(rooted_orders(n)) == naturally_labelled_posets(n - 1)


def test_countermodels_verified_independently():
    rng = random.Random(4)
    seen = 0
    for _ in range(150):
        f = random_formula(rng, 4, ("A", "B"))
        result = kripke_search(f, 3)
        if result.countermodel is None:
            continue
        m = result.countermodel
        assert m.is_monotone()
        assert all((w, w) in m.order for w in m.worlds)
        assert not forces(m.order, m.forcing, 0, f)
        assert prove_intuitionistic(f) == "unprovable"
        seen += 1
    assert seen > 20


def test_prover_against_brute_force_kripke():
    # every 1- and 2-world model, all preorders, monotone valuations
    models = [(le, val) for n in (1, 2) for le in all_preorders(n)
              for val in monotone_valuations(le, n, ["A", "B"])]
    for f in enumerate_formulas(2, ("A", "B"), bottom=True):
        refuted = any(not forces(le, val, w, f) for le, val in models for w in {a for a, _ in le})
        if refuted:
            assert prove_intuitionistic(f) == "unprovable"
        if prove_intuitionistic(f) == "provable":
            assert not refuted


def test_inclusion_and_glivenko_small():
    for f in enumerate_formulas(2, ("A", "B"), bottom=True):
        taut = bool(is_tautology(f))
        if prove_intuitionistic(f) == "provable":
            assert taut
        assert taut == (prove_intuitionistic(Neg(Neg(f))) == "provable")
