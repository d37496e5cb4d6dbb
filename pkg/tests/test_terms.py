"""Ring-term normalization and the lattice dictionary."""

import random

from boolqe.terms import (
    ONE, ZERO, Term, complement, difference, intersection, term_size, union, var,
)
from boolqe.epmodel import (
    EMPTY, FULL, ep_complement, ep_intersection, ep_sum, ep_union, eval_term,
    random_ep,
)

x, y, z = var("x"), var("y"), var("z")


def random_term(rng, names=("x", "y", "z")):
    monos = set()
    for _ in range(rng.randint(0, 4)):
        monos.add(frozenset(rng.sample(names, rng.randint(0, len(names)))))
    return Term(frozenset(monos))


def test_lattice_dictionary():
    assert complement(x) == ONE + x
    assert union(x, x) == x
    assert union(x, y) == x + y + x * y
    assert intersection(x, y) == x * y
    assert difference(x, y) == x + x * y


def test_characteristic_two_and_idempotence():
    assert x + x == ZERO
    assert x * (ONE + x) == ZERO
    assert x * x == x
    assert (x + y) + (x + y) == ZERO


def test_substitution():
    assert x.subst("x", ONE) == ONE
    assert (x * y).subst("x", ONE + y) == ZERO  # (1+y).y = 0
    assert (x + y).subst("x", y) == ZERO


def test_ring_laws_random():
    rng = random.Random(1)
    for _ in range(300):
        s, t, u = (random_term(rng) for _ in range(3))
        assert s + (t + u) == (s + t) + u
        assert s * (t * u) == (s * t) * u
        assert s + t == t + s
        assert s * t == t * s
        assert s * (t + u) == s * t + s * u
        assert t + t == ZERO
        assert t * t == t
        assert t * ONE == t
        assert t + ZERO == t


def test_dictionary_matches_set_semantics():
    rng = random.Random(2)
    for _ in range(150):
        a = random_term(rng, ("x", "y"))
        b = random_term(rng, ("x", "y"))
        sigma = {"x": random_ep(rng, 6, 4), "y": random_ep(rng, 6, 4)}
        va, vb = eval_term(a, sigma), eval_term(b, sigma)
        assert eval_term(a + b, sigma) == ep_sum(va, vb)
        assert eval_term(a * b, sigma) == ep_intersection(va, vb)
        assert eval_term(union(a, b), sigma) == ep_union(va, vb)
        assert eval_term(complement(a), sigma) == ep_complement(va)
    assert eval_term(ONE, {}) == FULL
    assert eval_term(ZERO, {}) == EMPTY


def test_term_size():
    assert term_size(ZERO) == 1
    assert term_size(ONE) == 1
    assert term_size(x) == 1
    assert term_size(ONE + x) == 2
    assert term_size(x + y + x * y) == 4
