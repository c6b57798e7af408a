"""Classical truth tables and intuitionistic provability.

Intuitionistic validity is decided by backward search in Dyckhoff's
contraction-free calculus G4ip.  Negation is handled as ``A -> _|_`` inside
the prover only.  Every G4ip rule makes its premises smaller in a
well-founded multiset ordering, so the search terminates without loop checks.

The Kripke search is an independent oracle: it enumerates small rooted
partial orders with monotone atom forcing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional

from .errors import DoublenegError
from .syntax import (
    BOTTOM, And, Atom, Bottom, Formula, Imp, Neg, Or, Sequent, atoms, render_formula,
)

ATOM_LIMIT = 20
WORLD_LIMIT = 6


class MissingAtomError(DoublenegError, KeyError):
    pass


class AtomLimitError(DoublenegError, ValueError):
    pass


class BoundTooLargeError(DoublenegError, ValueError):
    pass


# ---------------------------------------------------------------------------
# classical


def evaluate(f: Formula, v: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        try:
            return bool(v[f.name])
        except KeyError:
            raise MissingAtomError(f"valuation does not assign atom {f.name}") from None
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Neg):
        return not evaluate(f.body, v)
    if isinstance(f, And):
        return evaluate(f.left, v) and evaluate(f.right, v)
    if isinstance(f, Or):
        return evaluate(f.left, v) or evaluate(f.right, v)
    if isinstance(f, Imp):
        return (not evaluate(f.left, v)) or evaluate(f.right, v)
    raise TypeError(f"not a formula: {f!r}")


def valuations(names: list[str], limit: int = ATOM_LIMIT) -> Iterator[dict[str, bool]]:
    """All valuations of ``names`` in binary counting order (False before True,
    first name most significant)."""
    if len(names) > limit:
        raise AtomLimitError(f"{len(names)} atoms exceeds the limit of {limit}")
    for bits in itertools.product((False, True), repeat=len(names)):
        yield dict(zip(names, bits))


@dataclass(frozen=True)
class TautologyVerdict:
    holds: bool
    countervaluation: Optional[dict] = None

    def __bool__(self):
        return self.holds


def is_tautology(f: Formula, limit: int = ATOM_LIMIT) -> TautologyVerdict:
    for v in valuations(atoms(f), limit):
        if not evaluate(f, v):
            return TautologyVerdict(False, v)
    return TautologyVerdict(True)


def sequent_valid(s: Sequent, limit: int = ATOM_LIMIT) -> bool:
    """Every valuation satisfying the whole antecedent satisfies some succedent
    member; an empty succedent is never satisfied."""
    for v in valuations(atoms(*s.formulas()), limit):
        if all(evaluate(f, v) for f in s.antecedent) and not any(evaluate(f, v) for f in s.succedent):
            return False
    return True


def truth_table(f: Formula, limit: int = ATOM_LIMIT) -> tuple[list[str], list[tuple[bool, ...]]]:
    """Header (sorted atoms, then the formula) and rows in binary counting order."""
    names = atoms(f)
    rows = [tuple(v[n] for n in names) + (evaluate(f, v),) for v in valuations(names, limit)]
    return names + [render_formula(f)], rows


# ---------------------------------------------------------------------------
# intuitionistic: G4ip


def _g4(f: Formula) -> Formula:
    """Replace ~A by A -> _|_."""
    if isinstance(f, Neg):
        return Imp(_g4(f.body), BOTTOM)
    if isinstance(f, (And, Or, Imp)):
        return type(f)(_g4(f.left), _g4(f.right))
    return f


@lru_cache(maxsize=200_000)
def _prove(gamma: frozenset, goal: Formula) -> bool:
    if BOTTOM in gamma or goal in gamma:
        return True
    # invertible left rules first
    for h in gamma:
        rest = gamma - {h}
        if isinstance(h, And):
            return _prove(rest | {h.left, h.right}, goal)
        if isinstance(h, Or):
            return _prove(rest | {h.left}, goal) and _prove(rest | {h.right}, goal)
        if isinstance(h, Imp):
            a, b = h.left, h.right
            if isinstance(a, Bottom):
                return _prove(rest, goal)
            if isinstance(a, Atom) and a in gamma:
                return _prove(rest | {b}, goal)
            if isinstance(a, And):
                return _prove(rest | {Imp(a.left, Imp(a.right, b))}, goal)
            if isinstance(a, Or):
                return _prove(rest | {Imp(a.left, b), Imp(a.right, b)}, goal)
    # invertible right rules
    if isinstance(goal, And):
        return _prove(gamma, goal.left) and _prove(gamma, goal.right)
    if isinstance(goal, Imp):
        return _prove(gamma | {goal.left}, goal.right)
    # non-invertible choices
    if isinstance(goal, Or):
        if _prove(gamma, goal.left) or _prove(gamma, goal.right):
            return True
    for h in gamma:
        if isinstance(h, Imp) and isinstance(h.left, Imp):
            c, d, b = h.left.left, h.left.right, h.right
            rest = gamma - {h}
            if _prove(rest | {Imp(d, b)}, h.left) and _prove(rest | {b}, goal):
                return True
    return False


def prove_intuitionistic(f: Formula, assumptions: Iterable[Formula] = ()) -> str:
    """Return ``"provable"`` or ``"unprovable"``."""
    gamma = frozenset(_g4(a) for a in assumptions)
    return "provable" if _prove(gamma, _g4(f)) else "unprovable"


def prove_classical(f: Formula) -> str:
    return "provable" if is_tautology(f).holds else "unprovable"


# ---------------------------------------------------------------------------
# Kripke models


@dataclass(frozen=True)
class KripkeModel:
    """Worlds are ``0..n-1``; ``order`` holds the pairs ``(w, v)`` with
    ``w <= v`` (reflexive and transitive)."""

    worlds: tuple[int, ...]
    order: frozenset
    forcing: Mapping[int, frozenset]

    def above(self, w: int) -> list[int]:
        return [v for v in self.worlds if (w, v) in self.order]

    def is_monotone(self) -> bool:
        return all(self.forcing[w] <= self.forcing[v] for w, v in self.order)

    def forces(self, w: int, f: Formula) -> bool:
        if isinstance(f, Atom):
            return f.name in self.forcing[w]
        if isinstance(f, Bottom):
            return False
        if isinstance(f, And):
            return self.forces(w, f.left) and self.forces(w, f.right)
        if isinstance(f, Or):
            return self.forces(w, f.left) or self.forces(w, f.right)
        if isinstance(f, Imp):
            return all(not self.forces(v, f.left) or self.forces(v, f.right) for v in self.above(w))
        if isinstance(f, Neg):
            return not any(self.forces(v, f.body) for v in self.above(w))
        raise TypeError(f"not a formula: {f!r}")

    def describe(self) -> str:
        covers = sorted((w, v) for w, v in self.order if w != v)
        order = ", ".join(f"w{w}<=w{v}" for w, v in covers) or "discrete"
        forced = "; ".join(
            f"w{w}: {{{', '.join(sorted(self.forcing[w]))}}}" for w in self.worlds)
        return f"worlds {len(self.worlds)} ({order}); forcing {forced}"


@dataclass(frozen=True)
class KripkeResult:
    countermodel: Optional[KripkeModel] = None
    world: Optional[int] = None
    bound: int = 0

    @property
    def valid_up_to_bound(self) -> bool:
        return self.countermodel is None


@lru_cache(maxsize=None)
def rooted_orders(n: int) -> tuple[tuple[int, ...], ...]:
    """Partial orders on ``0..n-1`` with least element 0, one representative
    per natural labelling (``i <= j`` implies ``i`` not greater than ``j``).

    Each order is returned as a tuple of up-set bitmasks, one per world.
    """
    pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n)]
    result = []
    for chosen in itertools.product((False, True), repeat=len(pairs)):
        up = [(1 << i) for i in range(n)]
        up[0] = (1 << n) - 1
        for (i, j), on in zip(pairs, chosen):
            if on:
                up[i] |= 1 << j
        if all(_closed(up, i) for i in range(n)):
            result.append(tuple(up))
    return tuple(result)


def _closed(up: list[int], i: int) -> bool:
    for j in range(len(up)):
        if up[i] >> j & 1 and up[j] & ~up[i]:
            return False
    return True


def _upsets(up: tuple[int, ...]) -> list[int]:
    n = len(up)
    return [m for m in range(1 << n) if all(not (m >> w & 1) or (up[w] & ~m) == 0 for w in range(n))]


def _force_mask(f: Formula, up: tuple[int, ...], val: Mapping[str, int], full: int, memo: dict) -> int:
    hit = memo.get(f)
    if hit is not None:
        return hit
    if isinstance(f, Atom):
        m = val[f.name]
    elif isinstance(f, Bottom):
        m = 0
    elif isinstance(f, And):
        m = _force_mask(f.left, up, val, full, memo) & _force_mask(f.right, up, val, full, memo)
    elif isinstance(f, Or):
        m = _force_mask(f.left, up, val, full, memo) | _force_mask(f.right, up, val, full, memo)
    else:
        if isinstance(f, Neg):
            a, b = _force_mask(f.body, up, val, full, memo), 0
        else:
            a = _force_mask(f.left, up, val, full, memo)
            b = _force_mask(f.right, up, val, full, memo)
        bad = a & ~b & full
        m = 0
        for w, u in enumerate(up):
            if not u & bad:
                m |= 1 << w
    memo[f] = m
    return m


def kripke_search(f: Formula, max_worlds: int = 3) -> KripkeResult:
    """Search rooted models of up to ``max_worlds`` worlds for one whose root
    does not force ``f``.  Smaller models are tried first."""
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    if max_worlds > WORLD_LIMIT:
        raise BoundTooLargeError(f"bound {max_worlds} exceeds the enumeration cap of {WORLD_LIMIT}")
    names = atoms(f)
    for n in range(1, max_worlds + 1):
        full = (1 << n) - 1
        for up in rooted_orders(n):
            sets = _upsets(up)
            for choice in itertools.product(sets, repeat=len(names)):
                val = dict(zip(names, choice))
                if not _force_mask(f, up, val, full, {}) & 1:
                    return KripkeResult(_model(up, val), 0, max_worlds)
    return KripkeResult(None, None, max_worlds)


def _model(up: tuple[int, ...], val: Mapping[str, int]) -> KripkeModel:
    n = len(up)
    order = frozenset((w, v) for w in range(n) for v in range(n) if up[w] >> v & 1)
    forcing = {w: frozenset(a for a, m in val.items() if m >> w & 1) for w in range(n)}
    return KripkeModel(tuple(range(n)), order, forcing)
