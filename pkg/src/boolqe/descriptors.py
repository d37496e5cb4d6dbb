"""Per-element constraint descriptors and the split-projection rules.

A descriptor is a finite summary of what a formula demands of a single
element: an atom-count requirement (an exact value or a lower bound), a
finiteness requirement, and a cardinality-residue requirement which only
makes sense on finite elements.  Descriptors form a meet-semilattice
under ``conjoin``; contradictory requirements collapse to the
distinguished ``UNSAT`` value.

The canonical form bakes in the theory-level facts that make the meet
exact:

* an exact atom count forces finiteness, and forces the cardinality
  residue, so a residue requirement on an exact count is either dropped
  (compatible) or UNSAT;
* a non-finite element has more atoms than any bound, so count lower
  bounds are dropped under a must-not-be-finite requirement, and an
  exact count under it is UNSAT;
* residue requirements imply finiteness, and the residue class set is
  reduced to its minimal modulus.

``project_split`` answers the key question of the elimination: given
requirements (d1, d2) for the two halves of a split of an ambient
element m, which quantifier-free condition on m is equivalent to a
realizing split existing?  The answer is assembled from the sumset of
the two admissible standard-count sets together with a case split on
which halves are allowed to be non-finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import formulas as F
from .terms import Term

FREE = "free"
FIN = "fin"
NOT_FIN = "notfin"


class _Unsat:
    __slots__ = ()

    def __repr__(self) -> str:
        return "UNSAT"

    def __bool__(self) -> bool:
        return False


UNSAT = _Unsat()


# canonical descriptors are interned: equality and hashing are by identity
@dataclass(frozen=True, eq=False)
class Descriptor:
    exact: int | None = None
    at_least: int = 0
    fin: str = FREE
    modulus: int | None = None
    classes: frozenset | None = None

    def __repr__(self) -> str:
        parts = []
        if self.exact is not None:
            parts.append(f"#={self.exact}")
        elif self.at_least:
            parts.append(f"#>={self.at_least}")
        if self.fin != FREE:
            parts.append(self.fin)
        if self.modulus is not None:
            parts.append(f"mod {self.modulus} in {sorted(self.classes)}")
        return "Descriptor(" + ", ".join(parts or ["trivial"]) + ")"


_interned: dict = {}


def make_descriptor(exact=None, at_least=0, fin=FREE, modulus=None, classes=None):
    """Canonicalize raw requirements into a Descriptor or UNSAT."""
    if modulus is not None:
        classes = frozenset(c % modulus for c in classes)
        if not classes:
            return UNSAT
        if fin == NOT_FIN:
            return UNSAT
        fin = FIN
        modulus, classes = _reduce_classes(classes, modulus)
        if modulus == 1:
            modulus, classes = None, None
    if exact is not None:
        if exact < 0 or at_least > exact:
            return UNSAT
        if fin == NOT_FIN:
            return UNSAT
        fin = FIN
        at_least = 0
        if modulus is not None:
            if exact % modulus not in classes:
                return UNSAT
            modulus, classes = None, None
    if fin == NOT_FIN:
        at_least = 0
    key = (exact, at_least, fin, modulus, classes)
    hit = _interned.get(key)
    if hit is None:
        hit = Descriptor(*key)
        _interned[key] = hit
    return hit


TRIVIAL = make_descriptor()


@lru_cache(maxsize=None)
def _reduce_classes(classes: frozenset, modulus: int) -> tuple:
    for d in range(1, modulus + 1):
        if modulus % d:
            continue
        if all(((c + d) % modulus) in classes for c in classes):
            return d, frozenset(c % d for c in classes)
    return modulus, classes


_conjoin_cache: dict = {}


def conjoin(d1, d2):
    """Meet in the descriptor lattice; UNSAT absorbs."""
    if d1 is UNSAT or d2 is UNSAT:
        return UNSAT
    if d1 is TRIVIAL:
        return d2
    if d2 is TRIVIAL:
        return d1
    key = (d1, d2)
    hit = _conjoin_cache.get(key)
    if hit is not None:
        return hit
    out = _conjoin(d1, d2)
    _conjoin_cache[key] = out
    return out


def _conjoin(d1, d2):
    if d1.exact is not None and d2.exact is not None and d1.exact != d2.exact:
        return UNSAT
    exact = d1.exact if d1.exact is not None else d2.exact
    at_least = max(d1.at_least, d2.at_least)
    if FIN in (d1.fin, d2.fin) and NOT_FIN in (d1.fin, d2.fin):
        return UNSAT
    fin = d1.fin if d1.fin != FREE else d2.fin
    if d1.modulus is None:
        modulus, classes = d2.modulus, d2.classes
    elif d2.modulus is None:
        modulus, classes = d1.modulus, d1.classes
    else:
        # lift both class sets to the lcm, then intersect
        modulus = math.lcm(d1.modulus, d2.modulus)
        lifted1 = {c for c in range(modulus) if c % d1.modulus in d1.classes}
        lifted2 = {c for c in range(modulus) if c % d2.modulus in d2.classes}
        classes = frozenset(lifted1 & lifted2)
        if not classes:
            return UNSAT
    return make_descriptor(exact, at_least, fin, modulus, classes)


def satisfiable(d) -> bool:
    """True iff some element of some model meets the descriptor.

    Canonicalization already removed every inconsistency: an exact count
    with an excluded residue is UNSAT, as is any requirement set mixing
    must-be-finite and must-not-be-finite; and a residue class set is
    never empty, so a count lower bound can always be met inside it
    (every nonempty residue class has arbitrarily large members).
    """
    return d is not UNSAT


def holds(d, ep) -> bool:
    """Evaluate a descriptor on a concrete eventually periodic set."""
    if d is UNSAT:
        return False
    card = ep.card()
    if d.exact is not None and card != d.exact:
        return False
    if card < d.at_least:
        return False
    if d.fin == FIN and card == math.inf:
        return False
    if d.fin == NOT_FIN and card != math.inf:
        return False
    if d.modulus is not None:
        if card == math.inf or card % d.modulus not in d.classes:
            return False
    return True


def descriptor_formula(d, t: Term) -> F.Formula:
    """The quantifier-free condition 'the element denoted by t meets d'."""
    if d is UNSAT:
        return F.BOT
    parts = []
    if d.exact is not None:
        parts.append(_exact_count(d.exact, t))
    elif d.at_least:
        parts.append(F.CountAtLeast(d.at_least, t))
    if d.fin == FIN and d.modulus is None and d.exact is None:
        parts.append(F.FinAtom(t))
    if d.fin == NOT_FIN:
        parts.append(F.not_(F.FinAtom(t)))
    if d.modulus is not None:
        parts.append(F.or_(*(F.ResAtom(d.modulus, c, t) for c in sorted(d.classes))))
    return F.and_(*parts)


def _exact_count(n: int, t: Term) -> F.Formula:
    if n == 0:
        return F.ZeroAtom(t)
    return F.and_(F.CountAtLeast(n, t), F.not_(F.CountAtLeast(n + 1, t)))


# ---------------------------------------------------------------------------
# negation of atoms


def negate_atom(atom: F.Formula) -> F.Formula:
    """Rewrite the negation of an atom into the positive vocabulary.

    A failed count bound is a finite disjunction of exact counts, a
    failed residue is either non-finiteness or one of the other residue
    classes, and a failed equation is a count.
    """
    if isinstance(atom, F.CountAtLeast):
        return F.or_(*(_exact_count(e, atom.term) for e in range(atom.k)))
    if isinstance(atom, F.FinAtom):
        return F.Not(atom)
    if isinstance(atom, F.ResAtom):
        others = [F.ResAtom(atom.modulus, s, atom.term)
                  for s in range(atom.modulus) if s != atom.residue]
        return F.or_(F.not_(F.FinAtom(atom.term)), *others)
    if isinstance(atom, F.ZeroAtom):
        return F.CountAtLeast(1, atom.term)
    raise ValueError(f"not an atom: {atom!r}")


# ---------------------------------------------------------------------------
# split projection


@dataclass(frozen=True)
class SplitSpec:
    """Requirements on the two halves (b, m - b) of a sought split of m."""

    first: Descriptor
    second: Descriptor

    def __post_init__(self):
        if self.first is UNSAT or self.second is UNSAT:
            raise ValueError("split spec components must be satisfiable")


def _standard_counts(d: Descriptor):
    """The set of standard finite counts admitted by d, as either
    ('exact', a) or ('tail', k, N, S) meaning {l >= k : l mod N in S}."""
    if d.exact is not None:
        return ("exact", d.exact)
    if d.modulus is None:
        return ("tail", d.at_least, 1, frozenset({0}))
    return ("tail", d.at_least, d.modulus, d.classes)


def _count_member(spec, l: int) -> bool:
    if spec[0] == "exact":
        return l == spec[1]
    _, k, n, s = spec
    return l >= k and (l % n) in s


def _sumset(spec1, spec2) -> tuple:
    """Sumset of the two admissible count sets, as (low, theta, d, cls):
    a finite exceptional part below theta plus, from theta on, the union
    of the residue classes cls mod d."""
    if spec1[0] == "exact" and spec2[0] == "exact":
        total = spec1[1] + spec2[1]
        return ((total,), total + 1, 1, frozenset())
    if spec1[0] == "exact" or spec2[0] == "exact":
        a = spec1[1] if spec1[0] == "exact" else spec2[1]
        _, k, n, s = spec2 if spec1[0] == "exact" else spec1
        theta = a + k
        cls = frozenset((a + c) % n for c in s)
        return _minimize(spec1, spec2, theta + n, n, cls)
    _, k1, n1, s1 = spec1
    _, k2, n2, s2 = spec2
    d = math.gcd(n1, n2)
    cls = frozenset((c1 + c2) % d for c1 in s1 for c2 in s2)
    theta_safe = k1 + k2 + n1 * n2
    return _minimize(spec1, spec2, theta_safe, d, cls)


def _minimize(spec1, spec2, theta_safe: int, d: int, cls: frozenset) -> tuple:
    d, cls = _reduce_classes(cls, d) if cls else (1, cls)
    member = [
        any(_count_member(spec1, l) and _count_member(spec2, s - l) for l in range(s + 1))
        for s in range(theta_safe)
    ]
    theta = theta_safe
    for t in range(theta_safe + 1):
        if all(member[s] == ((s % d) in cls) for s in range(t, theta_safe)):
            theta = t
            break
    low = tuple(s for s in range(theta) if member[s])
    return (low, theta, d, cls)


_project_cache: dict = {}


def project_split(spec: SplitSpec, m: Term) -> F.Formula:
    """Quantifier-free condition on m equivalent to the existence of a
    b <= m with the first descriptor on b and the second on m - b.

    The finite regime contributes the sumset of the two standard-count
    sets (exceptional exact values below a threshold, then a union of
    residue classes); the class set is also exactly the residue
    condition on finite elements beyond every count bound.  Whenever one
    half may be non-finite, any non-finite m splits accordingly: a
    finite half with any admissible count can be carved out of
    infinitely many atoms, and two non-finite halves exist because every
    non-finite element splits into two non-finite parts.
    """
    d1, d2 = spec.first, spec.second
    key = (d1, d2, m)
    hit = _project_cache.get(key)
    if hit is not None:
        return hit
    n_mode = (
        (d1.fin != NOT_FIN and d2.fin != FIN)
        or (d1.fin != FIN and d2.fin != NOT_FIN)
        or (d1.fin != FIN and d2.fin != FIN)
    )
    pieces = []
    if d1.fin != NOT_FIN and d2.fin != NOT_FIN:
        low, theta, d, cls = _sumset(_standard_counts(d1), _standard_counts(d2))
        for l in low:
            pieces.append(_exact_count(l, m))
        if cls:
            threshold = F.TOP if theta == 0 else F.CountAtLeast(theta, m)
            full = len(cls) == d
            if full and n_mode:
                pieces.append(threshold)
                n_mode = False  # the threshold already admits non-finite m
            elif full:
                pieces.append(F.and_(threshold, F.FinAtom(m)))
            else:
                residue = F.or_(*(F.ResAtom(d, c, m) for c in sorted(cls)))
                pieces.append(F.and_(threshold, residue))
    if n_mode:
        pieces.append(F.not_(F.FinAtom(m)))
    out = F.or_(*pieces)
    _project_cache[key] = out
    return out
