"""First-order formulas over Boolean-ring terms.

Atoms are ``t = 0``, ``C[k](t)`` ("at least k atoms below t"), ``Fin(t)``
and ``Res[n,r](t)`` ("finite with cardinality congruent to r mod n").
Formulas are closed under the usual connectives and quantifiers.  Every
formula carries an implicit language level: 1 if it only mentions counts
and equations, 2 once Fin appears, 3 once Res appears.

Constructors normalize as they build: residues are reduced mod n,
conjunction and disjunction are flattened, deduplicated and sorted into
a canonical argument order, and Boolean constants are absorbed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .terms import Term, term_key, term_size


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class ZeroAtom:
    """The equation ``term = 0``."""

    term: Term


@dataclass(frozen=True)
class CountAtLeast:
    """``C[k](term)``: at least k distinct atoms lie below the term."""

    k: int
    term: Term


@dataclass(frozen=True)
class FinAtom:
    """``Fin(term)``: the term denotes a finite element."""

    term: Term


@dataclass(frozen=True)
class ResAtom:
    """``Res[modulus,residue](term)``: finite with cardinality = residue mod modulus."""

    modulus: int
    residue: int
    term: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[
    Top, Bot, ZeroAtom, CountAtLeast, FinAtom, ResAtom,
    Not, And, Or, Implies, Iff, Exists, Forall,
]

TOP = Top()
BOT = Bot()

ATOM_TYPES = (ZeroAtom, CountAtLeast, FinAtom, ResAtom)


# ---------------------------------------------------------------------------
# constructors


def is_zero(t: Term) -> ZeroAtom:
    return ZeroAtom(t)


def at_least(k: int, t: Term) -> CountAtLeast:
    if k < 1:
        raise ValueError("count index must be at least 1")
    return CountAtLeast(k, t)


def fin(t: Term) -> FinAtom:
    return FinAtom(t)


def res(modulus: int, residue: int, t: Term) -> ResAtom:
    if modulus < 1:
        raise ValueError("residue modulus must be at least 1")
    return ResAtom(modulus, residue % modulus, t)


def not_(f: Formula) -> Formula:
    if isinstance(f, Top):
        return BOT
    if isinstance(f, Bot):
        return TOP
    if isinstance(f, Not):
        return f.body
    return Not(f)


def and_(*args: Formula) -> Formula:
    flat: list = []
    for a in args:
        if isinstance(a, And):
            flat.extend(a.args)
        elif isinstance(a, Bot):
            return BOT
        elif not isinstance(a, Top):
            flat.append(a)
    flat = _dedup_sorted(flat)
    if not flat:
        return TOP
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def or_(*args: Formula) -> Formula:
    flat: list = []
    for a in args:
        if isinstance(a, Or):
            flat.extend(a.args)
        elif isinstance(a, Top):
            return TOP
        elif not isinstance(a, Bot):
            flat.append(a)
    flat = _dedup_sorted(flat)
    if not flat:
        return BOT
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def implies(left: Formula, right: Formula) -> Formula:
    if isinstance(left, Bot) or isinstance(right, Top):
        return TOP
    if isinstance(left, Top):
        return right
    if isinstance(right, Bot):
        return not_(left)
    return Implies(left, right)


def iff(left: Formula, right: Formula) -> Formula:
    if isinstance(left, Top):
        return right
    if isinstance(right, Top):
        return left
    if isinstance(left, Bot):
        return not_(right)
    if isinstance(right, Bot):
        return not_(left)
    return Iff(left, right)


def exists(v: str, body: Formula) -> Formula:
    return Exists(v, body)


def forall(v: str, body: Formula) -> Formula:
    return Forall(v, body)


def _dedup_sorted(args: list) -> list:
    seen = set()
    out = []
    for a in args:
        if a not in seen:
            seen.add(a)
            out.append(a)
    out.sort(key=formula_key)
    return out


# ---------------------------------------------------------------------------
# structure


def formula_key(f: Formula) -> tuple:
    """Deterministic total order on formulas (used for canonical arg order)."""
    if isinstance(f, Top):
        return (0,)
    if isinstance(f, Bot):
        return (1,)
    if isinstance(f, ZeroAtom):
        return (2, term_key(f.term))
    if isinstance(f, CountAtLeast):
        return (3, f.k, term_key(f.term))
    if isinstance(f, FinAtom):
        return (4, term_key(f.term))
    if isinstance(f, ResAtom):
        return (5, f.modulus, f.residue, term_key(f.term))
    if isinstance(f, Not):
        return (6, formula_key(f.body))
    if isinstance(f, And):
        return (7,) + tuple(formula_key(a) for a in f.args)
    if isinstance(f, Or):
        return (8,) + tuple(formula_key(a) for a in f.args)
    if isinstance(f, Implies):
        return (9, formula_key(f.left), formula_key(f.right))
    if isinstance(f, Iff):
        return (10, formula_key(f.left), formula_key(f.right))
    if isinstance(f, Exists):
        return (11, f.var, formula_key(f.body))
    if isinstance(f, Forall):
        return (12, f.var, formula_key(f.body))
    raise TypeError(f"not a formula: {f!r}")


def children(f: Formula) -> tuple:
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, (Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, (Exists, Forall)):
        return (f.body,)
    return ()


def atoms(f: Formula) -> Iterator[Formula]:
    if isinstance(f, ATOM_TYPES):
        yield f
    else:
        for c in children(f):
            yield from atoms(c)


def level(f: Formula) -> int:
    """Minimal language level: 1 counts only, 2 adds Fin, 3 adds Res."""
    lv = 1
    for a in atoms(f):
        if isinstance(a, ResAtom):
            return 3
        if isinstance(a, FinAtom):
            lv = 2
    return lv


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, ATOM_TYPES):
        return f.term.free_vars()
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    out: frozenset = frozenset()
    for c in children(f):
        out |= free_vars(c)
    return out


def bound_vars(f: Formula) -> frozenset:
    if isinstance(f, (Exists, Forall)):
        return bound_vars(f.body) | {f.var}
    out: frozenset = frozenset()
    for c in children(f):
        out |= bound_vars(c)
    return out


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, (Exists, Forall)):
        return False
    return all(is_quantifier_free(c) for c in children(f))


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def size(f: Formula) -> int:
    """Node-count size used by the enumeration and generation machinery."""
    if isinstance(f, (Top, Bot)):
        return 1
    if isinstance(f, ATOM_TYPES):
        return 1 + term_size(f.term)
    if isinstance(f, Not):
        return 1 + size(f.body)
    if isinstance(f, (And, Or)):
        return (len(f.args) - 1) + sum(size(a) for a in f.args)
    if isinstance(f, (Implies, Iff)):
        return 1 + size(f.left) + size(f.right)
    if isinstance(f, (Exists, Forall)):
        return 2 + size(f.body)
    raise TypeError(f"not a formula: {f!r}")


def map_terms(f: Formula, fn) -> Formula:
    if isinstance(f, ZeroAtom):
        return ZeroAtom(fn(f.term))
    if isinstance(f, CountAtLeast):
        return CountAtLeast(f.k, fn(f.term))
    if isinstance(f, FinAtom):
        return FinAtom(fn(f.term))
    if isinstance(f, ResAtom):
        return ResAtom(f.modulus, f.residue, fn(f.term))
    if isinstance(f, Not):
        return not_(map_terms(f.body, fn))
    if isinstance(f, And):
        return and_(*(map_terms(a, fn) for a in f.args))
    if isinstance(f, Or):
        return or_(*(map_terms(a, fn) for a in f.args))
    if isinstance(f, Implies):
        return implies(map_terms(f.left, fn), map_terms(f.right, fn))
    if isinstance(f, Iff):
        return iff(map_terms(f.left, fn), map_terms(f.right, fn))
    if isinstance(f, Exists):
        return Exists(f.var, map_terms(f.body, fn))
    if isinstance(f, Forall):
        return Forall(f.var, map_terms(f.body, fn))
    return f


def substitute(f: Formula, name: str, replacement: Term) -> Formula:
    """Substitute a term for a free variable (assumes bound vars are apart)."""
    if isinstance(f, (Exists, Forall)):
        if f.var == name:
            return f
        clash = replacement.free_vars()
        if f.var in clash:
            fresh = _fresh_name(f.var, clash | free_vars(f) | bound_vars(f))
            renamed = substitute(f.body, f.var, _var_term(fresh))
            f = type(f)(fresh, renamed)
        return type(f)(f.var, substitute(f.body, name, replacement))
    if isinstance(f, ATOM_TYPES):
        return map_terms(f, lambda t: t.subst(name, replacement))
    if isinstance(f, Not):
        return not_(substitute(f.body, name, replacement))
    if isinstance(f, And):
        return and_(*(substitute(a, name, replacement) for a in f.args))
    if isinstance(f, Or):
        return or_(*(substitute(a, name, replacement) for a in f.args))
    if isinstance(f, Implies):
        return implies(substitute(f.left, name, replacement),
                       substitute(f.right, name, replacement))
    if isinstance(f, Iff):
        return iff(substitute(f.left, name, replacement),
                   substitute(f.right, name, replacement))
    return f


def _var_term(name: str) -> Term:
    return Term(frozenset({frozenset({name})}))


def _fresh_name(base: str, used) -> str:
    root = base.rstrip("0123456789") or base
    i = 1
    while True:
        cand = f"{root}{i}"
        if cand not in used:
            return cand
        i += 1


def alpha_apart(f: Formula) -> Formula:
    """Rename bound variables so they are pairwise distinct and disjoint
    from every free variable."""
    used = set(free_vars(f))

    def walk(g: Formula, ren: dict) -> Formula:
        if isinstance(g, ATOM_TYPES):
            return map_terms(g, lambda t: t.rename(ren)) if ren else g
        if isinstance(g, (Exists, Forall)):
            name = g.var
            if name in used:
                name = _fresh_name(g.var, used)
            used.add(name)
            inner = dict(ren)
            inner[g.var] = name
            return type(g)(name, walk(g.body, inner))
        if isinstance(g, Not):
            return not_(walk(g.body, ren))
        if isinstance(g, And):
            return and_(*(walk(a, ren) for a in g.args))
        if isinstance(g, Or):
            return or_(*(walk(a, ren) for a in g.args))
        if isinstance(g, Implies):
            return implies(walk(g.left, ren), walk(g.right, ren))
        if isinstance(g, Iff):
            return iff(walk(g.left, ren), walk(g.right, ren))
        return g

    return walk(f, {})
