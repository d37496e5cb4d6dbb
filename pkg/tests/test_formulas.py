"""Formula structure: levels, free variables, substitution, renaming."""

import pytest

from boolqe import formulas as F
from boolqe.terms import ONE, var

x, y = var("x"), var("y")


def test_levels():
    assert F.level(F.CountAtLeast(1, x)) == 1
    assert F.level(F.ZeroAtom(x)) == 1
    assert F.level(F.FinAtom(x)) == 2
    assert F.level(F.and_(F.FinAtom(x), F.ResAtom(2, 1, x))) == 3
    assert F.level(F.Exists("x", F.CountAtLeast(2, x))) == 1


def test_residues_canonical():
    assert F.res(2, 5, x) == F.ResAtom(2, 1, x)
    assert F.res(3, -1, x) == F.ResAtom(3, 2, x)
    with pytest.raises(ValueError):
        F.res(0, 0, x)
    with pytest.raises(ValueError):
        F.at_least(0, x)


def test_free_vars():
    f = F.Exists("x", F.CountAtLeast(1, x * y))
    assert F.free_vars(f) == {"y"}
    assert F.free_vars(F.CountAtLeast(1, ONE)) == frozenset()


def test_substitute():
    assert F.substitute(F.CountAtLeast(1, x), "x", ONE) == F.CountAtLeast(1, ONE)
    assert F.substitute(F.FinAtom(x * y), "x", ONE + y) == F.FinAtom(x * y + x * y)
    # (1+y).y = 0
    from boolqe.terms import ZERO
    assert F.substitute(F.FinAtom(x * y), "x", ONE + y) == F.FinAtom(ZERO)
    # bound occurrences are untouched
    f = F.Exists("x", F.ZeroAtom(x))
    assert F.substitute(f, "x", ONE) == f


def test_alpha_apart():
    clash = F.and_(F.Exists("x", F.ZeroAtom(x)),
                   F.Exists("x", F.CountAtLeast(1, x)),
                   F.FinAtom(x))
    apart = F.alpha_apart(clash)
    bound = F.bound_vars(apart)
    assert len(bound) == 2
    assert "x" not in bound  # 'x' stays free in the Fin conjunct
    assert F.free_vars(apart) == {"x"}


def test_connective_canonicalization():
    a, b = F.FinAtom(x), F.FinAtom(y)
    assert F.and_(a, a) == a
    assert F.and_(a, F.TOP) == a
    assert F.and_(a, F.BOT) == F.BOT
    assert F.or_(a, F.TOP) == F.TOP
    assert F.and_(F.and_(a, b), a) == F.and_(a, b)
    assert F.and_(a, b) == F.and_(b, a)
    assert F.not_(F.not_(a)) == a


def test_size():
    assert F.size(F.CountAtLeast(1, x)) == 2
    assert F.size(F.CountAtLeast(1, ONE + x)) == 3
    assert F.size(F.ZeroAtom(x)) == 2
    assert F.size(F.Exists("y", F.CountAtLeast(1, x * y))) == 5
