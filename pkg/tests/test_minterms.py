"""Minterm decomposition of atomic constraints, checked against the model."""

import random

import pytest

from boolqe import formulas as F
from boolqe.epmodel import EMPTY, FULL, ep_intersection, ep_union, eval_qf, eval_term, random_ep
from boolqe.minterms import Minterm, all_minterms, decompose, minterms_of_term
from boolqe.terms import ONE, ZERO, union, var

x, y = var("x"), var("y")


def test_minterm_terms():
    ms = all_minterms(("x", "y"))
    assert len(ms) == 4
    assert Minterm(("x", "y"), 0b11).term() == x * y
    assert Minterm(("x", "y"), 0b01).term() == x * (ONE + y)
    assert Minterm((), 0).term() == ONE


def test_minterm_partition_random():
    rng = random.Random(3)
    for _ in range(100):
        sigma = {"x": random_ep(rng, 6, 4), "y": random_ep(rng, 6, 4)}
        values = [eval_term(m.term(), sigma) for m in all_minterms(("x", "y"))]
        total = EMPTY
        for i, a in enumerate(values):
            total = ep_union(total, a)
            for b in values[i + 1:]:
                assert ep_intersection(a, b) == EMPTY
        assert total == FULL


def test_term_is_sum_of_its_minterms():
    t = union(x, y)
    bits = {m.bits for m in minterms_of_term(t, ("x", "y"))}
    assert bits == {0b01, 0b10, 0b11}
    acc = ZERO
    for m in minterms_of_term(t, ("x", "y")):
        acc = acc + m.term()
    assert acc == t


def test_decompose_shapes():
    c = decompose(F.FinAtom(union(x, y)), ("x", "y"))
    assert c.kind == "all_fin" and len(c.minterms) == 3

    c = decompose(F.CountAtLeast(1, ZERO), ("x",))
    assert c.kind == "count_ge" and c.minterms == ()
    assert not c.evaluate({})  # no minterms can never sum to 1

    c = decompose(F.ResAtom(2, 1, x), ("x",))
    assert c.kind == "res_sum" and len(c.minterms) == 1 and c.params == (2, 1)

    with pytest.raises(ValueError):
        decompose(F.and_(F.FinAtom(x), F.FinAtom(y)), ("x", "y"))
    with pytest.raises(ValueError):
        decompose(F.FinAtom(x * y), ("x",))


ATOMS = [
    F.CountAtLeast(2, union(x, y)),
    F.CountAtLeast(1, x * y),
    F.ZeroAtom(x + y),
    F.FinAtom(union(x, y)),
    F.FinAtom(x * (ONE + y)),
    F.ResAtom(2, 1, x),
    F.ResAtom(3, 2, union(x, y)),
    F.ResAtom(4, 0, x + y),
]


def test_decompose_agrees_with_model():
    rng = random.Random(4)
    for atom in ATOMS:
        constraint = decompose(atom, ("x", "y"))
        for _ in range(120):
            sigma = {"x": random_ep(rng, 6, 4), "y": random_ep(rng, 6, 4)}
            assert constraint.evaluate(sigma) == eval_qf(atom, sigma)
