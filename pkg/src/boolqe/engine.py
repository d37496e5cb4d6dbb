"""Quantifier elimination and sentence decision.

The elimination is innermost-first.  To remove an existential from a
quantifier-free body, the body is put in disjunctive normal form over
literals; in each disjunct the literals whose terms mention the bound
variable are expanded, over the minterms of the variables they touch,
into finitely many tables mapping minterms to descriptors (a count bound
splits into compositions across the minterms, a residue constraint into
residue tuples summing correctly, and so on).  In each table the two
refinements of every minterm not mentioning the bound variable form a
split requirement, which ``project_split`` turns back into a
quantifier-free condition on that minterm.  Universals are handled by
double negation.

Closed formulas are then decided by the fixed truth table for the
elements 0 and 1: every count holds at 1 and fails at 0, 0 is finite and
1 is not, and 0 has every residue 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product

from . import formulas as F
from .descriptors import (
    FIN, NOT_FIN, TRIVIAL, UNSAT, SplitSpec, conjoin, make_descriptor,
    project_split,
)
from .minterms import Minterm
from .terms import Term


class TheoryLevel(Enum):
    T1 = 1
    T2 = 2
    T3 = 3

    @classmethod
    def parse(cls, text: str) -> "TheoryLevel":
        try:
            return cls[text.upper()]
        except KeyError:
            raise ValueError(f"unknown theory level: {text!r}") from None


class LevelError(ValueError):
    """Formula uses predicates above the selected theory level."""


class NotSentenceError(ValueError):
    """Decision requires a closed formula."""


@dataclass(frozen=True)
class Verdict:
    value: bool
    trace: tuple = ()

    def __bool__(self) -> bool:
        return self.value


def check_level(f: F.Formula, theory: TheoryLevel) -> None:
    lv = F.level(f)
    if lv > theory.value:
        raise LevelError(
            f"formula is at language level L{lv}, above theory {theory.name}"
        )


# ---------------------------------------------------------------------------
# literals and normal forms

# a literal is (atom, positive); equations are normalized to count literals:
# t = 0 holds iff no atom lies below t.


def _literal(atom, positive: bool):
    if isinstance(atom, F.ZeroAtom):
        return (F.CountAtLeast(1, atom.term), not positive)
    return (atom, positive)


def _nnf(f: F.Formula, positive: bool):
    """Normal form over And/Or/literals; input must be quantifier-free."""
    if isinstance(f, F.Top):
        return F.TOP if positive else F.BOT
    if isinstance(f, F.Bot):
        return F.BOT if positive else F.TOP
    if isinstance(f, F.ATOM_TYPES):
        return ("lit",) + _literal(f, positive)
    if isinstance(f, F.Not):
        return _nnf(f.body, not positive)
    if isinstance(f, F.And):
        parts = [_nnf(a, positive) for a in f.args]
        return ("and" if positive else "or", parts)
    if isinstance(f, F.Or):
        parts = [_nnf(a, positive) for a in f.args]
        return ("or" if positive else "and", parts)
    if isinstance(f, F.Implies):
        return _nnf(F.Or((F.Not(f.left), f.right)), positive)
    if isinstance(f, F.Iff):
        both = F.Or((F.And((f.left, f.right)),
                     F.And((F.Not(f.left), F.Not(f.right)))))
        return _nnf(both, positive)
    raise ValueError(f"quantifier inside a quantifier-free context: {f!r}")


def _closed_literal_value(atom, positive: bool) -> bool:
    value = _closed_atom_value(atom)
    return value if positive else not value


def _closed_atom_value(atom) -> bool:
    t = atom.term
    if isinstance(atom, F.CountAtLeast):
        return t.is_one  # every count holds at 1, none at 0
    if isinstance(atom, F.ZeroAtom):
        return t.is_zero
    if isinstance(atom, F.FinAtom):
        return t.is_zero
    if isinstance(atom, F.ResAtom):
        return t.is_zero and atom.residue == 0
    raise ValueError(f"not an atom: {atom!r}")


def _literals_in(tree):
    if tree is F.TOP or tree is F.BOT:
        return
    if tree[0] == "lit":
        yield tree[1], tree[2]
    else:
        for child in tree[1]:
            yield from _literals_in(child)


# ---------------------------------------------------------------------------
# expansion of literals into minterm-descriptor tables

_expand_cache: dict = {}


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cuts in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def _expand_literal(atom, positive: bool, variables: tuple) -> tuple:
    """Tables (dict minterm-bits -> Descriptor) whose disjunction is the
    literal, over the minterms of `variables`."""
    key = (atom, positive, variables)
    hit = _expand_cache.get(key)
    if hit is not None:
        return hit
    bits = _minterm_bits(atom.term, variables)
    tables: list = []
    if isinstance(atom, F.CountAtLeast):
        if positive:
            if bits:
                for comp in _compositions(atom.k, len(bits)):
                    tables.append({m: make_descriptor(at_least=c)
                                   for m, c in zip(bits, comp) if c})
        else:
            if not bits:
                tables.append({})
            else:
                for total in range(atom.k):
                    for comp in _compositions(total, len(bits)):
                        tables.append({m: make_descriptor(exact=c)
                                       for m, c in zip(bits, comp)})
    elif isinstance(atom, F.FinAtom):
        if positive:
            tables.append({m: make_descriptor(fin=FIN) for m in bits})
        else:
            for m in bits:
                tables.append({m: make_descriptor(fin=NOT_FIN)})
    elif isinstance(atom, F.ResAtom):
        n, r = atom.modulus, atom.residue
        if not bits:
            if (r == 0) == positive:
                tables.append({})
        elif positive:
            for tup in product(range(n), repeat=len(bits)):
                if sum(tup) % n == r:
                    tables.append({m: make_descriptor(modulus=n, classes={c})
                                   for m, c in zip(bits, tup)})
        else:
            for m in bits:
                tables.append({m: make_descriptor(fin=NOT_FIN)})
            for tup in product(range(n), repeat=len(bits)):
                if sum(tup) % n != r:
                    tables.append({m: make_descriptor(modulus=n, classes={c})
                                   for m, c in zip(bits, tup)})
    else:
        raise ValueError(f"unexpected literal atom: {atom!r}")
    result = tuple(tables)
    _expand_cache[key] = result
    return result


def _minterm_bits(t: Term, variables: tuple) -> tuple:
    out = []
    for bits in range(1 << len(variables)):
        point = {v: (bits >> i) & 1 for i, v in enumerate(variables)}
        if t.eval_bits(point):
            out.append(bits)
    return tuple(out)


def _merge_tables(base: dict, extra: dict):
    out = dict(base)
    for m, d in extra.items():
        d2 = conjoin(out.get(m, TRIVIAL), d)
        if d2 is UNSAT:
            return None
        out[m] = d2
    return out


# ---------------------------------------------------------------------------
# elimination
#
# A quantifier-free body is turned into a finite disjunction of "shapes":
# pairs of a set of pass-through literals (atoms not mentioning the bound
# variable) and a minterm-descriptor table covering the atoms that do.
# Fusing the disjunctive normal form with the table expansion lets
# contradictory branches die as they are built, which keeps the shape set
# near the number of semantically distinct cases instead of the number of
# syntactic disjuncts.


def _literal_formula(lit) -> F.Formula:
    atom, positive = lit
    return atom if positive else F.Not(atom)


def _descriptor_key(d) -> tuple:
    return (d.exact is None, d.exact or 0, d.at_least, d.fin,
            d.modulus or 0, tuple(sorted(d.classes or ())))


def _shape_key(shape) -> tuple:
    passthrough, table = shape
    return (
        tuple(sorted((F.formula_key(a), p) for a, p in passthrough)),
        tuple(sorted((bits, _descriptor_key(d)) for bits, d in table.items())),
    )


def _tabulate(tree, v: str, variables: tuple) -> list:
    """Shapes of an NNF tree: [(passthrough literal frozenset, table dict)]."""
    if tree is F.TOP:
        return [(frozenset(), {})]
    if tree is F.BOT:
        return []
    tag = tree[0]
    if tag == "lit":
        _, atom, positive = tree
        if atom.term.is_closed:
            value = _closed_literal_value(atom, positive)
            return [(frozenset(), {})] if value else []
        if v in atom.term.free_vars():
            return [(frozenset(), dict(t))
                    for t in _expand_literal(atom, positive, variables)]
        return [(frozenset({(atom, positive)}), {})]
    if tag == "or":
        seen = {}
        for child in tree[1]:
            for shape in _tabulate(child, v, variables):
                seen.setdefault(_fast_shape_key(shape), shape)
        return list(seen.values())
    acc = [(frozenset(), {})]
    for child in tree[1]:
        branches = _tabulate(child, v, variables)
        if not branches:
            return []
        merged = {}
        for passthrough, table in acc:
            for b_pass, b_table in branches:
                if any((a, not p) in passthrough for a, p in b_pass):
                    continue
                joined = _merge_tables(table, b_table)
                if joined is None:
                    continue
                shape = (passthrough | b_pass, joined)
                merged.setdefault(_fast_shape_key(shape), shape)
        acc = list(merged.values())
        if not acc:
            return []
    return acc


def _fast_shape_key(shape):
    passthrough, table = shape
    return (passthrough, frozenset(table.items()))


def _eliminate_exists(v: str, body: F.Formula) -> F.Formula:
    tree = _nnf(body, True)
    v_atom_vars = {u for atom, _ in _literals_in(tree)
                   if v in atom.term.free_vars()
                   for u in atom.term.free_vars()}
    if not v_atom_vars:
        return body  # the bound variable does not occur
    variables = tuple(sorted(v_atom_vars))
    v_index = variables.index(v)
    others = tuple(u for u in variables if u != v)
    shapes = _tabulate(tree, v, variables)
    results = []
    for passthrough, table in sorted(shapes, key=_shape_key):
        pieces = [_literal_formula(l) for l in sorted(
            passthrough, key=lambda l: (F.formula_key(l[0]), l[1]))]
        for ybits in range(1 << len(others)):
            full = 0
            for i, u in enumerate(others):
                if ybits & (1 << i):
                    full |= 1 << variables.index(u)
            d_with = table.get(full | (1 << v_index), TRIVIAL)
            d_without = table.get(full, TRIVIAL)
            if d_with is TRIVIAL and d_without is TRIVIAL:
                continue
            m_term = Minterm(others, ybits).term()
            pieces.append(project_split(SplitSpec(d_with, d_without), m_term))
        results.append(fold_constants(F.and_(*pieces)))
    return F.or_(*results)


def fold_constants(f: F.Formula) -> F.Formula:
    """Evaluate atoms whose term is 0 or 1 and absorb the results."""
    if isinstance(f, F.ATOM_TYPES):
        if f.term.is_closed:
            return F.TOP if _closed_atom_value(f) else F.BOT
        return f
    if isinstance(f, F.Not):
        return F.not_(fold_constants(f.body))
    if isinstance(f, F.And):
        return F.and_(*(fold_constants(a) for a in f.args))
    if isinstance(f, F.Or):
        return F.or_(*(fold_constants(a) for a in f.args))
    if isinstance(f, F.Implies):
        return F.implies(fold_constants(f.left), fold_constants(f.right))
    if isinstance(f, F.Iff):
        return F.iff(fold_constants(f.left), fold_constants(f.right))
    if isinstance(f, (F.Exists, F.Forall)):
        return type(f)(f.var, fold_constants(f.body))
    return f


def eliminate_one(f: F.Formula, theory: TheoryLevel = TheoryLevel.T3) -> F.Formula:
    """Eliminate the quantifier of an existential with quantifier-free body."""
    if not isinstance(f, F.Exists) or not F.is_quantifier_free(f.body):
        raise ValueError("expected an existential over a quantifier-free body")
    check_level(f, theory)
    g = F.alpha_apart(f)
    return _eliminate_exists(g.var, g.body)


def eliminate_all(f: F.Formula, theory: TheoryLevel = TheoryLevel.T3,
                  trace: list | None = None) -> F.Formula:
    """Innermost-first quantifier elimination of an admissible formula."""
    check_level(f, theory)
    return _eliminate_all(F.alpha_apart(f), trace)


def _eliminate_all(f: F.Formula, trace) -> F.Formula:
    if isinstance(f, F.Exists):
        body = _eliminate_all(f.body, trace)
        out = _eliminate_exists(f.var, body)
        if trace is not None:
            trace.append((f"eliminate E {f.var}", F.Exists(f.var, body), out))
        return out
    if isinstance(f, F.Forall):
        body = _eliminate_all(f.body, trace)
        out = F.not_(_eliminate_exists(f.var, F.not_(body)))
        if trace is not None:
            trace.append((f"eliminate A {f.var}", F.Forall(f.var, body), out))
        return out
    if isinstance(f, F.Not):
        return F.not_(_eliminate_all(f.body, trace))
    if isinstance(f, F.And):
        return F.and_(*(_eliminate_all(a, trace) for a in f.args))
    if isinstance(f, F.Or):
        return F.or_(*(_eliminate_all(a, trace) for a in f.args))
    if isinstance(f, F.Implies):
        return F.implies(_eliminate_all(f.left, trace), _eliminate_all(f.right, trace))
    if isinstance(f, F.Iff):
        return F.iff(_eliminate_all(f.left, trace), _eliminate_all(f.right, trace))
    return f


def eval_closed(f: F.Formula) -> bool:
    """Truth of a closed quantifier-free formula."""
    if isinstance(f, F.Top):
        return True
    if isinstance(f, F.Bot):
        return False
    if isinstance(f, F.ATOM_TYPES):
        if not f.term.is_closed:
            raise ValueError(f"free variables remain: {sorted(f.term.free_vars())}")
        return _closed_atom_value(f)
    if isinstance(f, F.Not):
        return not eval_closed(f.body)
    if isinstance(f, F.And):
        return all(eval_closed(a) for a in f.args)
    if isinstance(f, F.Or):
        return any(eval_closed(a) for a in f.args)
    if isinstance(f, F.Implies):
        return (not eval_closed(f.left)) or eval_closed(f.right)
    if isinstance(f, F.Iff):
        return eval_closed(f.left) == eval_closed(f.right)
    raise ValueError(f"not closed and quantifier-free: {f!r}")


def decide(sentence: F.Formula, theory: TheoryLevel = TheoryLevel.T3,
           want_trace: bool = False) -> Verdict:
    """Decide a sentence of the selected theory."""
    if F.free_vars(sentence):
        raise NotSentenceError(
            f"free variables: {sorted(F.free_vars(sentence))}")
    check_level(sentence, theory)
    steps: list | None = [] if want_trace else None
    qf = _eliminate_all(F.alpha_apart(sentence), steps)
    value = eval_closed(qf)
    trace = tuple(_format_step(s) for s in steps) if steps else ()
    return Verdict(value, trace)


def _format_step(step) -> str:
    from .syntax import format_formula

    label, before, after = step
    return f"{label}: {format_formula(before)}  ==>  {format_formula(after)}"


def equivalent(f: F.Formula, g: F.Formula,
               theory: TheoryLevel | None = None) -> bool:
    """Does the theory prove the universal closure of f <-> g?"""
    if theory is None:
        theory = TheoryLevel(max(F.level(f), F.level(g), 1))
    body: F.Formula = F.Iff(f, g)
    for v in sorted(F.free_vars(body)):
        body = F.Forall(v, body)
    return decide(body, theory).value
