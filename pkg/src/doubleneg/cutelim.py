"""Cut elimination for the sequent kernel.

Cuts are removed topmost first.  Each one is reduced through a multicut
(Gentzen's mix), which deletes *every* occurrence of the cut formula from the
left premise's succedent and the right premise's antecedent:

    G => D     S => P
    ---------------------  mix on C
    G, S\\C => D\\C, P

Mix is computed by recursion on (rank of C, height of left + height of right):

* if C is missing from one side, weaken the other premise;
* an axiom ``C => C`` on either side is absorbed (with contractions);
* if the left proof does not end by introducing C on the right, the mix is
  pushed into its premises (same rank, lower height), and symmetrically for
  the right proof;
* when both proofs introduce C, their premises are first mixed against the
  opposite proof, then joined by cuts on the immediate subformulas of C
  (lower rank) and contracted back to shape.

An ordinary single cut is a mix followed by weakening back the surplus
occurrences of C.  Every recursive call is recorded with its measure so the
strict lexicographic decrease can be inspected.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidProofError, StepLimitExceeded
from .sequent import (
    LOGICAL, SkProof, SkRule, check_sk_proof, infer,
)
from .syntax import And, Formula, Imp, Neg, Or, Sequent, connectives, formula_key, subformulas

DEFAULT_STEP_LIMIT = 100_000


def rank(c: Formula) -> int:
    return connectives(c) + 1


@dataclass(frozen=True, order=True)
class CutMeasure:
    rank: int
    level: int


@dataclass(frozen=True)
class CutInfo:
    path: tuple
    formula: Formula
    measure: CutMeasure


@dataclass(frozen=True)
class CutAudit:
    cuts: tuple[CutInfo, ...]

    @property
    def count(self) -> int:
        return len(self.cuts)

    @property
    def max_rank(self) -> int:
        return max((c.measure.rank for c in self.cuts), default=0)


def _require_valid(p: SkProof) -> None:
    report = check_sk_proof(p)
    if not report.valid:
        raise InvalidProofError(report)


def cut_audit(p: SkProof) -> CutAudit:
    """Every Cut node with its formula and measure, root first."""
    _require_valid(p)
    cuts = []
    for path, n in p.nodes():
        if n.rule is SkRule.Cut:
            level = sum(q.height for q in n.premises)
            cuts.append(CutInfo(path, n.cut_formula, CutMeasure(rank(n.cut_formula), level)))
    return CutAudit(tuple(cuts))


def is_cut_free(p: SkProof) -> bool:
    return all(n.rule is not SkRule.Cut for _, n in p.nodes())


@dataclass(frozen=True)
class SubformulaAudit:
    passed: bool
    violation: Optional[Formula] = None
    path: Optional[tuple] = None

    def __bool__(self):
        return self.passed


def sequent_subformula_audit(p: SkProof) -> SubformulaAudit:
    """Every formula anywhere in ``p`` is a subformula of an endsequent formula."""
    allowed = set()
    for f in p.conclusion.formulas():
        allowed |= subformulas(f)
    for path, n in p.nodes():
        for f in n.conclusion.formulas():
            if f not in allowed:
                return SubformulaAudit(False, f, path)
    return SubformulaAudit(True)


# ---------------------------------------------------------------------------
# structural adjustment


def _remove_all(side: Counter, c: Formula) -> Counter:
    out = side.copy()
    del out[c]
    return out


def _minus_one(side: Counter, c: Formula) -> Counter:
    out = side.copy()
    out[c] -= 1
    return +out


def adjust(p: SkProof, target: Sequent) -> SkProof:
    """Contract and weaken ``p`` until it proves exactly ``target``.

    Contraction can only merge copies, so every formula of ``p`` must still
    occur in ``target``.
    """
    have_l, have_r = Counter(p.conclusion.antecedent), Counter(p.conclusion.succedent)
    want_l, want_r = Counter(target.antecedent), Counter(target.succedent)
    for have, want, contr, weak in ((have_l, want_l, SkRule.LContr, SkRule.LWeak),
                                    (have_r, want_r, SkRule.RContr, SkRule.RWeak)):
        for f in sorted(set(have) | set(want), key=formula_key):
            n, m = have[f], want[f]
            if n > m and m == 0:
                raise AssertionError(f"cannot drop {f} by contraction")
            for _ in range(n - m):
                p = infer(contr, [p], f)
            for _ in range(m - n):
                p = infer(weak, [p], f)
    assert p.conclusion == target
    return p


def _weaken_by(p: SkProof, rule: SkRule, c: Formula, k: int) -> SkProof:
    for _ in range(k):
        p = infer(rule, [p], c)
    return p


def _actives(rule: SkRule, x: Formula, index: int, side: str) -> list[Formula]:
    """Formulas a rule consumes from premise ``index`` on ``side``."""
    if rule is SkRule.LNeg:
        return [x.body] if side == "R" else []
    if rule is SkRule.RNeg:
        return [x.body] if side == "L" else []
    if rule is SkRule.LAnd:
        return [x.left, x.right] if side == "L" else []
    if rule is SkRule.RAnd:
        return [(x.left, x.right)[index]] if side == "R" else []
    if rule is SkRule.LOr:
        return [(x.left, x.right)[index]] if side == "L" else []
    if rule is SkRule.ROr:
        return [x.left, x.right] if side == "R" else []
    if rule is SkRule.LImp:
        if index == 0:
            return [x.left] if side == "R" else []
        return [x.right] if side == "L" else []
    if rule is SkRule.RImp:
        return [x.left] if side == "L" else [x.right]
    if rule is SkRule.LContr:
        return [x, x] if side == "L" else []
    if rule is SkRule.RContr:
        return [x, x] if side == "R" else []
    return []


def _introduces(p: SkProof, c: Formula, side: str) -> bool:
    entry = LOGICAL.get(p.rule)
    return entry is not None and entry[1] == side and p.principal == c


# ---------------------------------------------------------------------------
# elimination


class CutEliminator:
    def __init__(self, step_limit: int = DEFAULT_STEP_LIMIT):
        self.step_limit = step_limit
        self.steps = 0
        # (parent measure or None, measure) for every mix performed
        self.measures: list[tuple[Optional[CutMeasure], CutMeasure]] = []

    def eliminate(self, p: SkProof) -> SkProof:
        if not p.premises:
            return p
        premises = [self.eliminate(q) for q in p.premises]
        if p.rule is SkRule.Cut:
            return self.cut(premises[0], premises[1], p.cut_formula, None)
        if all(a is b for a, b in zip(premises, p.premises)):
            return p
        return infer(p.rule, premises, p.principal)

    def cut(self, d1: SkProof, d2: SkProof, c: Formula, parent: Optional[CutMeasure]) -> SkProof:
        """Cut-free proof of the conclusion of a single cut on ``c``."""
        if d1.rule is SkRule.Ax and d1.principal == c:
            return d2
        if d2.rule is SkRule.Ax and d2.principal == c:
            return d1
        g, d = Counter(d1.conclusion.antecedent), Counter(d1.conclusion.succedent)
        s, p = Counter(d2.conclusion.antecedent), Counter(d2.conclusion.succedent)
        target = Sequent((g + _minus_one(s, c)).elements(), (_minus_one(d, c) + p).elements())
        return adjust(self.mix(d1, d2, c, parent), target)

    def mix(self, d1: SkProof, d2: SkProof, c: Formula, parent: Optional[CutMeasure]) -> SkProof:
        self.steps += 1
        if self.steps > self.step_limit:
            raise StepLimitExceeded(f"cut elimination exceeded {self.step_limit} steps")
        measure = CutMeasure(rank(c), d1.height + d2.height)
        self.measures.append((parent, measure))

        g, d = Counter(d1.conclusion.antecedent), Counter(d1.conclusion.succedent)
        s, p = Counter(d2.conclusion.antecedent), Counter(d2.conclusion.succedent)
        target = Sequent((g + _remove_all(s, c)).elements(), (_remove_all(d, c) + p).elements())

        if d[c] == 0:
            return adjust(d1, target)
        if s[c] == 0:
            return adjust(d2, target)
        if d1.rule is SkRule.Ax:
            return adjust(d2, target)
        if d2.rule is SkRule.Ax:
            return adjust(d1, target)
        if not _introduces(d1, c, "R"):
            return self._push_left(d1, d2, c, measure, target)
        if not _introduces(d2, c, "L"):
            return self._push_right(d1, d2, c, measure, target)
        return self._principal(d1, d2, c, measure, target)

    def _push_left(self, d1, d2, c, measure, target):
        if d1.rule in (SkRule.RWeak, SkRule.RContr) and d1.principal == c:
            return self.mix(d1.premises[0], d2, c, measure)
        premises = []
        for i, q in enumerate(d1.premises):
            r = self.mix(q, d2, c, measure)
            k = _actives(d1.rule, d1.principal, i, "R").count(c)
            premises.append(_weaken_by(r, SkRule.RWeak, c, k))
        out = infer(d1.rule, premises, d1.principal)
        assert out.conclusion == target
        return out

    def _push_right(self, d1, d2, c, measure, target):
        if d2.rule in (SkRule.LWeak, SkRule.LContr) and d2.principal == c:
            return self.mix(d1, d2.premises[0], c, measure)
        premises = []
        for i, q in enumerate(d2.premises):
            r = self.mix(d1, q, c, measure)
            k = _actives(d2.rule, d2.principal, i, "L").count(c)
            premises.append(_weaken_by(r, SkRule.LWeak, c, k))
        out = infer(d2.rule, premises, d2.principal)
        assert out.conclusion == target
        return out

    def _principal(self, d1, d2, c, measure, target):
        e = [self.mix(q, d2, c, measure) for q in d1.premises]
        f = [self.mix(d1, q, c, measure) for q in d2.premises]
        if isinstance(c, Neg):
            r = self.cut(f[0], e[0], c.body, measure)
        elif isinstance(c, And):
            r = self.cut(e[0], f[0], c.left, measure)
            r = self.cut(e[1], r, c.right, measure)
        elif isinstance(c, Or):
            r = self.cut(e[0], f[0], c.left, measure)
            r = self.cut(r, f[1], c.right, measure)
        elif isinstance(c, Imp):
            r = self.cut(f[0], e[0], c.left, measure)
            r = self.cut(r, f[1], c.right, measure)
        else:
            raise AssertionError(f"no principal reduction for {c}")
        return adjust(r, target)


def tidy(p: SkProof) -> SkProof:
    """Shorten a cut-free proof without changing its endsequent: identity
    sequents become axioms and any node is replaced by a smallest subproof of
    the same sequent found beneath it."""
    if not p.premises:
        return p
    premises = [tidy(q) for q in p.premises]
    node = infer(p.rule, premises, p.principal, p.cut_formula)
    s = node.conclusion
    if len(s.antecedent) == 1 and s.antecedent == s.succedent:
        return infer(SkRule.Ax, (), s.antecedent[0])
    best = node
    for _, q in node.nodes():
        if q.conclusion == s and q.size < best.size:
            best = q
    return best


def eliminate_cuts(p: SkProof, step_limit: int = DEFAULT_STEP_LIMIT, shorten: bool = True) -> SkProof:
    """Cut-free proof of the same endsequent."""
    return eliminate_cuts_with_stats(p, step_limit, shorten)[0]


def eliminate_cuts_with_stats(p: SkProof, step_limit: int = DEFAULT_STEP_LIMIT,
                              shorten: bool = True) -> tuple[SkProof, CutEliminator]:
    _require_valid(p)
    engine = CutEliminator(step_limit)
    out = engine.eliminate(p)
    if shorten:
        out = tidy(out)
    return out, engine
