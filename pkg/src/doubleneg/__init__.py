"""Proof-theory workbench for double negation in propositional logic."""

__version__ = "0.1.0"

from .syntax import (  # noqa: E402
    And, Atom, Bottom, BOTTOM, Formula, Imp, Neg, Or, ParseError, Sequent,
    parse_formula, parse_sequent, render_formula, render_sequent, subformulas,
)
from .sequent import (  # noqa: E402
    SkProof, SkRule, admissible_transform, check_sk_proof, derivation_catalog,
    normalize_succedent,
)
from .natded import NdProof, NdRule, check_nd_proof, expand_macros, nd_catalog  # noqa: E402
from .normalize import Redex, find_redexes, normalize, reduce_step, subformula_audit  # noqa: E402
from .cutelim import cut_audit, eliminate_cuts  # noqa: E402
from .semantics import (  # noqa: E402
    evaluate, is_tautology, kripke_search, prove_intuitionistic, sequent_valid,
)
