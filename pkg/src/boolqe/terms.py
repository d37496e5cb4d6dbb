"""Boolean-ring terms: multilinear polynomials over GF(2).

A term is a finite set of monomials, each monomial a finite set of
variable names.  The empty polynomial is 0 and the polynomial whose only
monomial is the empty product is 1.  Addition is symmetric difference of
monomial sets (coefficients live mod 2) and multiplication distributes
with idempotent variables (x.x = x).  Both operations keep the
representation canonical, so two terms denote the same Boolean-ring
function exactly when they are equal.

Lattice operations are provided through the classical translation

    x & y  ->  x.y
    x | y  ->  x + y + x.y
    ~x     ->  1 + x
    x - y  ->  x + x.y
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Term:
    """Canonical multilinear polynomial over the two-element field."""

    monomials: frozenset

    def __add__(self, other: "Term") -> "Term":
        return Term(self.monomials ^ other.monomials)

    def __mul__(self, other: "Term") -> "Term":
        acc: set = set()
        for m1 in self.monomials:
            for m2 in other.monomials:
                m = m1 | m2
                if m in acc:
                    acc.discard(m)
                else:
                    acc.add(m)
        return Term(frozenset(acc))

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    @property
    def is_one(self) -> bool:
        return self.monomials == ONE_MONOMIALS

    @property
    def is_closed(self) -> bool:
        return not self.free_vars()

    def free_vars(self) -> frozenset:
        out: set = set()
        for m in self.monomials:
            out |= m
        return frozenset(out)

    def rename(self, mapping: dict) -> "Term":
        return Term(
            frozenset(frozenset(mapping.get(v, v) for v in m) for m in self.monomials)
        )

    def subst(self, name: str, replacement: "Term") -> "Term":
        """Substitute a term for a variable, renormalizing on the fly."""
        acc = ZERO
        for m in self.monomials:
            if name in m:
                acc = acc + Term(frozenset({m - {name}})) * replacement
            else:
                acc = acc + Term(frozenset({m}))
        return acc

    def eval_bits(self, bits: dict) -> int:
        """Evaluate at a 0/1 point; monomials multiply, terms add mod 2."""
        total = 0
        for m in self.monomials:
            if all(bits[v] for v in m):
                total ^= 1
        return total

    def __repr__(self) -> str:
        if self.is_zero:
            return "Term(0)"
        parts = [".".join(sorted(m)) or "1" for m in sorted(self.monomials, key=_mono_key)]
        return "Term(%s)" % " + ".join(parts)


_EMPTY = frozenset()
ONE_MONOMIALS = frozenset({_EMPTY})

ZERO = Term(frozenset())
ONE = Term(ONE_MONOMIALS)


def var(name: str) -> Term:
    return Term(frozenset({frozenset({name})}))


def complement(t: Term) -> Term:
    return ONE + t


def intersection(a: Term, b: Term) -> Term:
    return a * b


def union(a: Term, b: Term) -> Term:
    return a + b + a * b


def difference(a: Term, b: Term) -> Term:
    return a + a * b


def _mono_key(m) -> tuple:
    return (len(m), tuple(sorted(m)))


def term_key(t: Term) -> tuple:
    """Deterministic sort key; also the canonical monomial order for printing."""
    return tuple(_mono_key(m) for m in sorted(t.monomials, key=_mono_key))


def term_size(t: Term) -> int:
    """Node-count style size: one per constant, one per variable occurrence."""
    if t.is_zero:
        return 1
    return sum(max(1, len(m)) for m in t.monomials)
