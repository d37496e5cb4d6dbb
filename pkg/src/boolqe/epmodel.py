"""Eventually periodic subsets of the natural numbers.

An ``EPSet`` with transient part ``transient`` (a subset of ``[0, T)``),
threshold ``T``, period ``p`` and residue set ``R`` (a subset of
``[0, p)``) denotes

    transient  union  { n >= T : n mod p in R }.

The class of such sets is closed under complement, union, intersection,
symmetric difference and product, contains all finite and cofinite sets,
and every member has a computable cardinality: finite iff R is empty.
This makes the family a computable test structure for formulas over
counts, finiteness and cardinality congruences, and the basis of the
bounded witness search used to cross-check quantifier elimination.

Canonical form: minimal period first (the residue set is reduced to the
smallest divisor of p under which it is shift-invariant), then minimal
threshold.  Equal sets then have equal canonical forms, so ``==`` on
canonical EPSets is set equality.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import chain, combinations

from . import formulas as F
from .terms import Term, ZERO


@dataclass(frozen=True)
class EPSet:
    transient: frozenset
    threshold: int
    period: int
    residues: frozenset

    def has(self, n: int) -> bool:
        if n < self.threshold:
            return n in self.transient
        return (n % self.period) in self.residues

    def card(self):
        """Number of elements: a natural number or math.inf."""
        if self.residues:
            return math.inf
        return len(self.transient)

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def is_cofinite(self) -> bool:
        return len(self.residues) == self.period

    def residue(self, modulus: int):
        """Cardinality mod modulus; None (undefined) on infinite sets."""
        if self.residues:
            return None
        return len(self.transient) % modulus

    def elements(self, upto: int) -> list:
        return [n for n in range(upto) if self.has(n)]

    def __repr__(self) -> str:
        return format_epset(self)


def _reduce_periodic(classes: frozenset, modulus: int) -> tuple:
    """Smallest divisor d of modulus with classes invariant under +d."""
    for d in range(1, modulus + 1):
        if modulus % d:
            continue
        if all(((c + d) % modulus) in classes for c in classes):
            return d, frozenset(c % d for c in classes)
    return modulus, classes


def make_epset(transient, threshold: int, period: int, residues) -> EPSet:
    """Build the canonical EPSet with the given raw data."""
    if period < 1:
        raise ValueError("period must be at least 1")
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    transient = frozenset(n for n in transient if 0 <= n < threshold)
    residues = frozenset(r % period for r in residues)
    period, residues = _reduce_periodic(residues, period)
    transient = set(transient)
    while threshold > 0:
        n = threshold - 1
        if (n in transient) == ((n % period) in residues):
            threshold = n
            transient.discard(n)
        else:
            break
    return EPSet(frozenset(transient), threshold, period, residues)


EMPTY = make_epset((), 0, 1, ())
FULL = make_epset((), 0, 1, (0,))


def from_elements(elems) -> EPSet:
    elems = frozenset(elems)
    t = max(elems) + 1 if elems else 0
    return make_epset(elems, t, 1, ())


def _combine(a: EPSet, b: EPSet, op) -> EPSet:
    t = max(a.threshold, b.threshold)
    p = math.lcm(a.period, b.period)
    transient = {n for n in range(t) if op(a.has(n), b.has(n))}
    # beyond t membership of either side only depends on n mod p
    residues = {r for r in range(p) if op(a.has(t + ((r - t) % p)), b.has(t + ((r - t) % p)))}
    return make_epset(transient, t, p, residues)


def ep_union(a: EPSet, b: EPSet) -> EPSet:
    return _combine(a, b, lambda x, y: x or y)


def ep_intersection(a: EPSet, b: EPSet) -> EPSet:
    return _combine(a, b, lambda x, y: x and y)


def ep_sum(a: EPSet, b: EPSet) -> EPSet:
    return _combine(a, b, lambda x, y: x != y)


ep_product = ep_intersection


def ep_complement(a: EPSet) -> EPSet:
    transient = {n for n in range(a.threshold) if not a.has(n)}
    residues = {r for r in range(a.period) if r not in a.residues}
    return make_epset(transient, a.threshold, a.period, residues)


def ep_difference(a: EPSet, b: EPSet) -> EPSet:
    return _combine(a, b, lambda x, y: x and not y)


def ep_subset(a: EPSet, b: EPSet) -> bool:
    return ep_difference(a, b) == EMPTY


def pointwise_equal(a: EPSet, b: EPSet) -> bool:
    """Decide set equality by comparing membership on an initial segment.

    Checking up to max(T1, T2) + lcm(p1, p2) is exact: beyond the larger
    threshold both sets are periodic with period lcm(p1, p2), so the
    window of lcm consecutive points after max(T1, T2) determines
    membership everywhere beyond it, and all earlier points are compared
    directly.
    """
    bound = max(a.threshold, b.threshold) + math.lcm(a.period, b.period)
    return all(a.has(n) == b.has(n) for n in range(bound))


# ---------------------------------------------------------------------------
# text format: EP{transient=[0,1]; T=2; p=1; R=[]}

_EP_RE = re.compile(
    r"EP\{\s*transient\s*=\s*\[([0-9,\s]*)\]\s*;\s*T\s*=\s*(\d+)\s*;"
    r"\s*p\s*=\s*(\d+)\s*;\s*R\s*=\s*\[([0-9,\s]*)\]\s*\}"
)


def _int_list(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    return [int(part) for part in text.split(",")]


def parse_epset(text: str) -> EPSet:
    m = _EP_RE.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"malformed EPSet literal: {text!r}")
    transient = _int_list(m.group(1))
    threshold = int(m.group(2))
    period = int(m.group(3))
    residues = _int_list(m.group(4))
    if any(n >= threshold or n < 0 for n in transient):
        raise ValueError("transient elements must lie below the threshold")
    if any(r >= period or r < 0 for r in residues):
        raise ValueError("residues must lie below the period")
    return make_epset(transient, threshold, period, residues)


def format_epset(a: EPSet) -> str:
    ts = ",".join(str(n) for n in sorted(a.transient))
    rs = ",".join(str(r) for r in sorted(a.residues))
    return f"EP{{transient=[{ts}]; T={a.threshold}; p={a.period}; R=[{rs}]}}"


def parse_assignment(text: str) -> dict:
    """Parse ``var = EP{...}`` bindings, one per line or ';'-separated
    outside the EP braces."""
    bindings = {}
    for chunk in _split_bindings(text):
        if not chunk.strip() or chunk.strip().startswith("#"):
            continue
        name, _, rhs = chunk.partition("=")
        name = name.strip()
        rhs = rhs.strip()
        if not name.isidentifier() or not rhs:
            raise ValueError(f"malformed assignment binding: {chunk!r}")
        bindings[name] = parse_epset(rhs)
    return bindings


def _split_bindings(text: str) -> list:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if (ch == ";" or ch == "\n") and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


# ---------------------------------------------------------------------------
# evaluation


def eval_term(t: Term, assignment: dict) -> EPSet:
    acc = EMPTY
    for mono in t.monomials:
        piece = FULL
        for v in mono:
            if v not in assignment:
                raise KeyError(f"no value for variable {v!r}")
            piece = ep_intersection(piece, assignment[v])
        acc = ep_sum(acc, piece)
    return acc


def eval_qf(f: F.Formula, assignment: dict) -> bool:
    """Evaluate a quantifier-free formula on the model."""
    if isinstance(f, F.Top):
        return True
    if isinstance(f, F.Bot):
        return False
    if isinstance(f, F.ZeroAtom):
        return eval_term(f.term, assignment) == EMPTY
    if isinstance(f, F.CountAtLeast):
        return eval_term(f.term, assignment).card() >= f.k
    if isinstance(f, F.FinAtom):
        return eval_term(f.term, assignment).is_finite
    if isinstance(f, F.ResAtom):
        r = eval_term(f.term, assignment).residue(f.modulus)
        return r is not None and r == f.residue
    if isinstance(f, F.Not):
        return not eval_qf(f.body, assignment)
    if isinstance(f, F.And):
        return all(eval_qf(a, assignment) for a in f.args)
    if isinstance(f, F.Or):
        return any(eval_qf(a, assignment) for a in f.args)
    if isinstance(f, F.Implies):
        return (not eval_qf(f.left, assignment)) or eval_qf(f.right, assignment)
    if isinstance(f, F.Iff):
        return eval_qf(f.left, assignment) == eval_qf(f.right, assignment)
    raise ValueError(f"not quantifier-free: {f!r}")


def _subsets(items: tuple):
    return chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))


@lru_cache(maxsize=None)
def enumerate_epsets(max_transient: int, max_period: int,
                     finite_cofinite_only: bool = False) -> tuple:
    """Deterministic candidate pool: ordered by threshold, then period,
    then lexicographic transient and residue sets; canonical duplicates
    are dropped on first appearance."""
    seen = set()
    out = []
    for t in range(max_transient + 1):
        for p in range(1, max_period + 1):
            for transient in sorted(_subsets(tuple(range(t)))):
                for residues in sorted(_subsets(tuple(range(p)))):
                    ep = make_epset(transient, t, p, residues)
                    if finite_cofinite_only and not (ep.is_finite or ep.is_cofinite):
                        continue
                    if ep in seen:
                        continue
                    seen.add(ep)
                    out.append(ep)
    return tuple(out)


def eval_bounded(f: F.Formula, assignment: dict, max_transient: int = 2,
                 max_period: int = 3, finite_cofinite_only: bool = False):
    """Three-valued evaluation with bounded quantifier search.

    Returns True or False only when the answer is certain over the full
    model: an existential is True when some enumerated witness certifies
    it and never False; a universal is False on a certified
    counterexample and never True.  None means inconclusive.
    """
    if isinstance(f, F.Exists):
        for w in enumerate_epsets(max_transient, max_period, finite_cofinite_only):
            inner = dict(assignment)
            inner[f.var] = w
            if eval_bounded(f.body, inner, max_transient, max_period,
                            finite_cofinite_only) is True:
                return True
        return None
    if isinstance(f, F.Forall):
        for w in enumerate_epsets(max_transient, max_period, finite_cofinite_only):
            inner = dict(assignment)
            inner[f.var] = w
            if eval_bounded(f.body, inner, max_transient, max_period,
                            finite_cofinite_only) is False:
                return False
        return None
    if isinstance(f, F.Not):
        v = eval_bounded(f.body, assignment, max_transient, max_period,
                         finite_cofinite_only)
        return None if v is None else not v
    if isinstance(f, F.And):
        out = True
        for a in f.args:
            v = eval_bounded(a, assignment, max_transient, max_period,
                             finite_cofinite_only)
            if v is False:
                return False
            if v is None:
                out = None
        return out
    if isinstance(f, F.Or):
        out = False
        for a in f.args:
            v = eval_bounded(a, assignment, max_transient, max_period,
                             finite_cofinite_only)
            if v is True:
                return True
            if v is None:
                out = None
        return out
    if isinstance(f, F.Implies):
        return eval_bounded(F.or_(F.not_(f.left), f.right), assignment,
                            max_transient, max_period, finite_cofinite_only)
    if isinstance(f, F.Iff):
        lv = eval_bounded(f.left, assignment, max_transient, max_period,
                          finite_cofinite_only)
        rv = eval_bounded(f.right, assignment, max_transient, max_period,
                          finite_cofinite_only)
        if lv is None or rv is None:
            return None
        return lv == rv
    return eval_qf(f, assignment)


def witness_search(f: F.Exists, assignment: dict, max_transient: int = 8,
                   max_period: int = 6):
    """Search the candidate pool for a witness of an existential formula.

    Returns the first witness in enumeration order, or None when the
    pool is exhausted (which never means the existential is false).
    """
    if not isinstance(f, F.Exists):
        raise ValueError("witness search expects an existential formula")
    for w in enumerate_epsets(max_transient, max_period):
        inner = dict(assignment)
        inner[f.var] = w
        if eval_bounded(f.body, inner, max_transient, max_period) is True:
            return w
    return None


def random_ep(rng, max_transient: int = 8, max_period: int = 6) -> EPSet:
    """Sample an EPSet: finite, cofinite and properly infinite-coinfinite
    shapes each with probability 1/3."""
    if isinstance(rng, int):
        rng = random.Random(rng)
    if max_transient < 1 or max_period < 1:
        raise ValueError("bounds must be positive")
    mode = rng.randrange(3)
    t = rng.randrange(max_transient + 1)
    transient = frozenset(n for n in range(t) if rng.random() < 0.5)
    if mode == 0:
        return make_epset(transient, t, 1, ())
    if mode == 1:
        finite = make_epset(transient, t, 1, ())
        return ep_complement(finite)
    p = rng.randrange(2, max_period + 1) if max_period >= 2 else 2
    k = rng.randrange(1, p)
    residues = frozenset(rng.sample(range(p), k))
    return make_epset(transient, t, p, residues)
