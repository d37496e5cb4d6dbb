"""Minterms of a variable list and decomposition of atomic constraints.

For an ordered variable list ``v1 .. vk`` a minterm is a bit vector
selecting each variable or its complement; it denotes the product of the
selected factors.  The 2^k minterms are pairwise disjoint and sum to 1,
and every term over the variables is the disjoint sum of the minterms on
which its polynomial evaluates to 1.

``decompose`` turns an atomic formula into the induced constraint on the
minterms contained in its term: a count atom bounds the sum of the
minterm counts, a finiteness atom requires every minterm finite, a
residue atom additionally constrains the sum of the minterm residues,
and an equation forces every minterm empty.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formulas as F
from .epmodel import eval_term
from .terms import ONE, Term, var


@dataclass(frozen=True)
class Minterm:
    """Bit i set means variable i appears positively."""

    vars: tuple
    bits: int

    def term(self) -> Term:
        acc = ONE
        for i, v in enumerate(self.vars):
            factor = var(v) if self.bits & (1 << i) else ONE + var(v)
            acc = acc * factor
        return acc


def all_minterms(variables: tuple) -> tuple:
    return tuple(Minterm(variables, bits) for bits in range(1 << len(variables)))


def minterm_bits_of_term(t: Term, variables: tuple) -> tuple:
    """Bit vectors of the minterms contained in t (where t evaluates to 1)."""
    missing = t.free_vars() - set(variables)
    if missing:
        raise ValueError(f"term mentions variables outside the list: {sorted(missing)}")
    out = []
    for bits in range(1 << len(variables)):
        point = {v: (bits >> i) & 1 for i, v in enumerate(variables)}
        if t.eval_bits(point):
            out.append(bits)
    return tuple(out)


def minterms_of_term(t: Term, variables: tuple) -> tuple:
    return tuple(Minterm(variables, bits) for bits in minterm_bits_of_term(t, variables))


# constraint kinds
COUNT_GE = "count_ge"
ALL_ZERO = "all_zero"
ALL_FIN = "all_fin"
RES_SUM = "res_sum"


@dataclass(frozen=True)
class MintermConstraint:
    """A joint condition on the descriptors of a tuple of minterms."""

    kind: str
    minterms: tuple
    params: tuple = ()

    def evaluate(self, assignment: dict) -> bool:
        values = [eval_term(m.term(), assignment) for m in self.minterms]
        if self.kind == COUNT_GE:
            (k,) = self.params
            return sum(v.card() for v in values) >= k
        if self.kind == ALL_ZERO:
            return all(v.card() == 0 for v in values)
        if self.kind == ALL_FIN:
            return all(v.is_finite for v in values)
        if self.kind == RES_SUM:
            n, r = self.params
            if not all(v.is_finite for v in values):
                return False
            return sum(v.card() for v in values) % n == r
        raise ValueError(f"unknown constraint kind: {self.kind}")


def decompose(atom: F.Formula, variables: tuple) -> MintermConstraint:
    """Express an atomic formula as a constraint on the minterms of its term."""
    if not isinstance(atom, F.ATOM_TYPES):
        raise ValueError(f"decompose expects an atomic formula, got: {atom!r}")
    ms = minterms_of_term(atom.term, variables)
    if isinstance(atom, F.CountAtLeast):
        return MintermConstraint(COUNT_GE, ms, (atom.k,))
    if isinstance(atom, F.ZeroAtom):
        return MintermConstraint(ALL_ZERO, ms)
    if isinstance(atom, F.FinAtom):
        return MintermConstraint(ALL_FIN, ms)
    return MintermConstraint(RES_SUM, ms, (atom.modulus, atom.residue))
