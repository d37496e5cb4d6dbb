"""Quantifier elimination and decision for infinite atomic Boolean
algebras enriched with atom counts, a finiteness predicate and
cardinality-congruence predicates, plus a computable test model built
from eventually periodic subsets of the naturals."""

from .terms import Term, ZERO, ONE, var, complement, union, intersection, difference
from .formulas import (
    Formula, TOP, BOT, ZeroAtom, CountAtLeast, FinAtom, ResAtom,
    Not, And, Or, Implies, Iff, Exists, Forall,
    and_, or_, not_, implies, iff, exists, forall, res,
    free_vars, level, size, substitute, alpha_apart, is_quantifier_free,
)
from .descriptors import (
    Descriptor, TRIVIAL, UNSAT, SplitSpec, conjoin, satisfiable,
    negate_atom, project_split,
)
from .minterms import Minterm, MintermConstraint, decompose, minterms_of_term
from .epmodel import (
    EPSet, EMPTY, FULL, make_epset, from_elements, parse_epset, format_epset,
    ep_union, ep_intersection, ep_sum, ep_product, ep_complement,
    eval_term, eval_qf, eval_bounded, witness_search, enumerate_epsets,
    random_ep, parse_assignment, pointwise_equal,
)
from .engine import (
    TheoryLevel, Verdict, LevelError, NotSentenceError,
    eliminate_one, eliminate_all, decide, equivalent,
)
from .harness import (
    EnumerationSpec, Definability, generate_axioms, enumerate_formulas,
    defcheck, random_formula, random_sentence,
)
from .syntax import ParseError, parse, parse_many, format_formula, format_term

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
