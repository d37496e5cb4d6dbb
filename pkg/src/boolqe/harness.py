"""Axiom-schema instances, formula enumeration and definability search.

``generate_axioms`` emits, for a bound B, the finitely many instances
with parameters up to B of the axioms of the three theories: atomicity
and unboundedness of the atom counts; the proper-ideal laws, bounded
counts being finite, and the splitting of every non-finite element into
two non-finite parts; and the eight residue-arithmetic schema families
together with the residues of 0.  Every instance is expected to decide
True, which exercises the whole elimination pipeline.

``enumerate_formulas`` provides the exhaustive, size-ordered,
deduplicated candidate streams used by ``defcheck`` to probe, at desk
scale, which predicates are definable from which vocabularies.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from . import formulas as F
from .engine import TheoryLevel, equivalent
from .epmodel import (
    EPSet, ep_complement, eval_bounded, from_elements, make_epset,
)
from .terms import ONE, ZERO, Term, term_size, union, var


# ---------------------------------------------------------------------------
# axiom instances


def _exact_count(n: int, t: Term) -> F.Formula:
    if n == 0:
        return F.ZeroAtom(t)
    return F.and_(F.CountAtLeast(n, t), F.not_(F.CountAtLeast(n + 1, t)))


def generate_axioms(theory: TheoryLevel, bound: int) -> list:
    """Named axiom instances of the theory with parameters up to `bound`."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    x, y = var("x"), var("y")
    out = []

    def add(name: str, f: F.Formula):
        out.append((name, f))

    add("atomicity", F.Forall("x", F.Implies(F.Not(F.ZeroAtom(x)),
                                             F.CountAtLeast(1, x))))
    for n in range(1, bound + 1):
        add(f"infinite[{n}]", F.CountAtLeast(n, ONE))

    if theory.value >= 2:
        add("fin-empty", F.FinAtom(ZERO))
        add("fin-union", F.Forall("x", F.Forall("y", F.Implies(
            F.and_(F.FinAtom(x), F.FinAtom(y)), F.FinAtom(union(x, y))))))
        add("fin-subset", F.Forall("x", F.Forall("y", F.Implies(
            F.and_(F.FinAtom(x), F.ZeroAtom(y * x + y)), F.FinAtom(y)))))
        add("fin-proper", F.Not(F.FinAtom(ONE)))
        for n in range(bound + 1):
            add(f"fin-bounded[{n}]", F.Forall("x", F.Implies(
                F.Not(F.CountAtLeast(n + 1, x)), F.FinAtom(x))))
        below = F.and_(F.ZeroAtom(y * x + y), F.Not(F.ZeroAtom(y + x)))
        add("main-axiom", F.Forall("x", F.Implies(
            F.Not(F.FinAtom(x)),
            F.Exists("y", F.and_(below, F.Not(F.FinAtom(y)),
                                 F.Not(F.FinAtom(x + x * y)))))))

    if theory.value >= 3:
        for n in range(1, bound + 1):
            add(f"res-empty[{n}]", F.ResAtom(n, 0, ZERO))
            for r in range(n):
                add(f"res-implies-fin[{n},{r}]", F.Forall("x", F.Implies(
                    F.ResAtom(n, r, x), F.FinAtom(x))))
            for m in range(bound + 1):
                add(f"res-of-count[{n},{m}]", F.Forall("x", F.Implies(
                    F.and_(F.FinAtom(x), _exact_count(m, x)),
                    F.ResAtom(n, m % n, x))))
            for r in range(n):
                add(f"res-congruence[{n},{r}]", F.Forall("x", F.Implies(
                    F.ResAtom(n, r, x), F.res(n, r + n, x))))
            for r in range(n):
                for s in range(n):
                    if r != s:
                        add(f"res-exclusion[{n},{r},{s}]", F.Forall("x", F.Implies(
                            F.ResAtom(n, r, x), F.Not(F.ResAtom(n, s, x)))))
        for m in range(2, bound + 1):
            for n in range(1, m):
                if m % n == 0:
                    for r in range(m):
                        add(f"res-divisor[{m},{n},{r}]", F.Forall("x", F.Implies(
                            F.ResAtom(m, r, x), F.ResAtom(n, r % n, x))))
        for n in range(1, bound + 1):
            add(f"res-cover[{n}]", F.Forall("x", F.Implies(
                F.FinAtom(x),
                F.or_(*(F.ResAtom(n, r, x) for r in range(n))))))
        for n in range(1, bound + 1):
            for r in range(n):
                for s in range(n):
                    add(f"res-additive[{n},{r},{s}]", F.Forall("x", F.Forall("y", F.Implies(
                        F.and_(F.ZeroAtom(x * y), F.ResAtom(n, r, x), F.ResAtom(n, s, y)),
                        F.res(n, r + s, union(x, y))))))
        for n in range(1, bound + 1):
            for r in range(n):
                pairs = [F.and_(F.ResAtom(n, s, x), F.ResAtom(n, (r - s) % n, y))
                         for s in range(n)]
                add(f"res-split[{n},{r}]", F.Forall("x", F.Forall("y", F.Implies(
                    F.and_(F.ZeroAtom(x * y), F.ResAtom(n, r, union(x, y))),
                    F.or_(*pairs)))))
    return out


# ---------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class EnumerationSpec:
    level: int = 1
    size: int = 7
    free_var: str = "x"
    max_count: int = 4
    moduli: tuple = ()
    include_fin: bool | None = None
    quantifiers: bool = True

    @property
    def with_fin(self) -> bool:
        if self.include_fin is None:
            return self.level >= 2
        return self.include_fin

    @property
    def with_res(self) -> tuple:
        return self.moduli if self.level >= 3 or self.moduli else ()


def _terms_over(variables: tuple, max_size: int) -> list:
    names = [frozenset({v}) for v in variables]
    monos = [frozenset()] + names
    for a, b in combinations(names, 2):
        monos.append(a | b)
    out = []
    for k in range(1, len(monos) + 1):
        for chosen in combinations(monos, k):
            t = Term(frozenset(chosen))
            if not t.is_closed and term_size(t) <= max_size:
                out.append(t)
    out.sort(key=lambda t: (term_size(t), repr(t)))
    return out


def _atoms_over(spec: EnumerationSpec, variables: tuple, max_size: int) -> list:
    out = []
    for t in _terms_over(variables, max_size - 1):
        out.append(F.ZeroAtom(t))
        for k in range(1, spec.max_count + 1):
            out.append(F.CountAtLeast(k, t))
        if spec.with_fin:
            out.append(F.FinAtom(t))
        for n in spec.with_res:
            for r in range(n):
                out.append(F.ResAtom(n, r, t))
    return [a for a in out if F.size(a) <= max_size]


def enumerate_formulas(spec: EnumerationSpec):
    """Exhaustive size-ordered stream of candidate formulas with the given
    free variable, deduplicated up to term normalization and canonical
    argument order."""
    pools = _build_pools(spec, (spec.free_var,), spec.size, depth=0)
    seen = set()
    for s in range(1, spec.size + 1):
        for f in sorted(pools.get(s, ()), key=F.formula_key):
            if f not in seen:
                seen.add(f)
                yield f


def _build_pools(spec: EnumerationSpec, variables: tuple, budget: int,
                 depth: int) -> dict:
    pools: dict = {s: set() for s in range(1, budget + 1)}

    def put(f: F.Formula):
        s = F.size(f)
        if 1 <= s <= budget:
            pools[s].add(f)

    put(F.TOP)
    put(F.BOT)
    for a in _atoms_over(spec, variables, budget):
        put(a)
    inner_pools = None
    if spec.quantifiers and depth == 0 and budget >= 4:
        bound_var = "y" if "y" not in variables else "z"
        inner_pools = _build_pools(spec, variables + (bound_var,), budget - 2,
                                   depth=1)
        for s, fs in inner_pools.items():
            for body in fs:
                put(F.Exists(bound_var, body))
                put(F.Forall(bound_var, body))
    # close under connectives, smallest sizes first; negations are emitted
    # one size up only after the current size is complete
    for s in range(1, budget + 1):
        for s1 in range(1, s - 1):
            s2 = s - 1 - s1
            if s2 < s1 or s2 > budget:
                continue
            for a in list(pools.get(s1, ())):
                for b in list(pools.get(s2, ())):
                    for g in (F.and_(a, b), F.or_(a, b)):
                        if F.size(g) == s:
                            put(g)
        if s + 1 <= budget:
            for f in list(pools[s]):
                if not isinstance(f, (F.Not, F.Top, F.Bot)):
                    put(F.not_(f))
    return pools


# ---------------------------------------------------------------------------
# definability


@dataclass
class Definability:
    target: F.Formula
    found: F.Formula | None
    checked: int

    @property
    def definable(self) -> bool:
        return self.found is not None


def default_panel() -> list:
    """Concrete test values used to reject candidates before the engine runs."""
    sets = [from_elements(range(n)) for n in range(8)]
    sets += [from_elements([1]), from_elements([2, 5]), from_elements(range(9)),
             from_elements(range(10))]
    evens = make_epset((), 0, 2, (0,))
    sets += [
        make_epset((), 0, 1, (0,)),          # all naturals
        evens,
        ep_complement(evens),                # odds
        make_epset((), 0, 3, (0,)),
        make_epset((), 0, 3, (1,)),
        make_epset((), 0, 4, (0,)),
        ep_complement(from_elements([0])),
        ep_complement(from_elements([0, 1, 2])),
        make_epset({1}, 2, 2, (0,)),         # evens with 1 added
    ]
    return sets


def defcheck(target: F.Formula, spec: EnumerationSpec,
             panel: list | None = None) -> Definability:
    """Search the enumeration for a candidate the engine proves equivalent
    to the target; candidates refuted by a concrete model value are
    discarded without an engine call."""
    if panel is None:
        panel = default_panel()
    v = spec.free_var
    target_vals = [_panel_value(target, v, ep) for ep in panel]
    checked = 0
    for cand in enumerate_formulas(spec):
        checked += 1
        rejected = False
        for ep, tv in zip(panel, target_vals):
            cv = _panel_value(cand, v, ep)
            if tv is not None and cv is not None and tv != cv:
                rejected = True
                break
        if rejected:
            continue
        if equivalent(cand, target):
            return Definability(target, cand, checked)
    return Definability(target, None, checked)


def _panel_value(f: F.Formula, v: str, ep: EPSet):
    return eval_bounded(f, {v: ep}, max_transient=2, max_period=3)


# ---------------------------------------------------------------------------
# random formulas


_ATOM_KINDS_BY_LEVEL = {
    1: ("count", "count", "zero"),
    2: ("count", "count", "zero", "fin", "fin"),
    3: ("count", "zero", "fin", "res", "res"),
}


def random_term(rng: random.Random, scope: tuple) -> Term:
    if not scope:
        return ONE if rng.random() < 0.5 else ZERO
    monos = set()
    for _ in range(rng.randint(1, 3)):
        if rng.random() < 0.15:
            monos.add(frozenset())
        else:
            width = min(len(scope), rng.randint(1, 2))
            monos.add(frozenset(rng.sample(scope, width)))
    return Term(frozenset(monos))


def random_atom(rng: random.Random, scope: tuple, level: int) -> F.Formula:
    t = random_term(rng, scope)
    kind = rng.choice(_ATOM_KINDS_BY_LEVEL[level])
    if kind == "count":
        return F.CountAtLeast(rng.randint(1, 4), t)
    if kind == "zero":
        return F.ZeroAtom(t)
    if kind == "fin":
        return F.FinAtom(t)
    n = rng.choice((2, 3, 4))
    return F.ResAtom(n, rng.randrange(n), t)


def random_formula(rng: random.Random, size: int = 12, level: int = 3,
                   scope: tuple = ("u", "w"), qdepth: int = 2,
                   max_vars: int = 3) -> F.Formula:
    if size <= 3 or rng.random() < 0.3:
        return random_atom(rng, scope, level)
    roll = rng.random()
    if qdepth > 0 and len(scope) < max_vars and size >= 5 and roll < 0.3:
        v = f"v{len(scope)}"
        body = random_formula(rng, size - 2, level, scope + (v,), qdepth - 1,
                              max_vars)
        return (F.Exists if rng.random() < 0.5 else F.Forall)(v, body)
    if roll < 0.45:
        return F.not_(random_formula(rng, size - 1, level, scope, qdepth, max_vars))
    a_size = rng.randint(2, max(2, size - 3))
    a = random_formula(rng, a_size, level, scope, qdepth, max_vars)
    b = random_formula(rng, size - 1 - a_size, level, scope, qdepth, max_vars)
    ctor = rng.choice((F.and_, F.or_, F.Implies, F.Iff))
    if ctor in (F.and_, F.or_):
        out = ctor(a, b)
        return out if not isinstance(out, (F.Top, F.Bot)) else F.Implies(a, b)
    return ctor(a, b)


def random_sentence(rng: random.Random, size: int = 12, level: int = 3,
                    qdepth: int = 2) -> F.Formula:
    if rng.random() < 0.85 and size >= 5:
        body = random_formula(rng, size - 2, level, ("v0",), qdepth - 1)
        sentence = (F.Exists if rng.random() < 0.5 else F.Forall)("v0", body)
    else:
        sentence = random_formula(rng, size, level, scope=(), qdepth=0)
    # close any stray free variables
    for v in sorted(F.free_vars(sentence)):
        sentence = F.Forall(v, sentence)
    return F.alpha_apart(sentence)
