"""Descriptor lattice laws, atom negation, and split projection vs. the model."""

import math
import random
from itertools import combinations

from boolqe import formulas as F
from boolqe.descriptors import (
    FIN, FREE, NOT_FIN, TRIVIAL, UNSAT, SplitSpec, conjoin, holds,
    make_descriptor, negate_atom, project_split, satisfiable,
)
from boolqe.epmodel import (
    ep_difference, ep_intersection, enumerate_epsets, eval_qf, from_elements,
    make_epset, random_ep,
)
from boolqe.terms import union, var

x, y = var("x"), var("y")
m = var("m")


def random_descriptor(rng, max_thresh=6, max_mod=6):
    if rng.random() < 0.3:
        return make_descriptor(exact=rng.randrange(max_thresh + 1))
    fin = rng.choice((FREE, FIN, NOT_FIN))
    at_least = rng.randrange(max_thresh + 1)
    if fin != NOT_FIN and rng.random() < 0.5:
        n = rng.randrange(2, max_mod + 1)
        classes = frozenset(rng.sample(range(n), rng.randint(1, n)))
        return make_descriptor(at_least=at_least, fin=fin, modulus=n, classes=classes)
    return make_descriptor(at_least=at_least, fin=fin)


# -- conjoin ----------------------------------------------------------------


def test_conjoin_examples():
    assert conjoin(make_descriptor(exact=3), make_descriptor(fin=NOT_FIN)) is UNSAT
    # residue meet by brute force: l % 2 == 0 and l % 3 == 1 iff l % 6 == 4
    expected = sorted(l for l in range(6) if l % 2 == 0 and l % 3 == 1)
    got = conjoin(make_descriptor(modulus=2, classes={0}),
                  make_descriptor(modulus=3, classes={1}))
    assert got.modulus == 6 and sorted(got.classes) == expected == [4]

    rng = random.Random(7)
    for _ in range(200):
        d = random_descriptor(rng)
        if d is not UNSAT:
            assert conjoin(d, TRIVIAL) is d
            assert conjoin(TRIVIAL, d) is d


def test_conjoin_lattice_laws():
    rng = random.Random(8)
    for _ in range(400):
        a, b, c = (random_descriptor(rng) for _ in range(3))
        assert conjoin(a, b) is conjoin(b, a)
        assert conjoin(a, conjoin(b, c)) is conjoin(conjoin(a, b), c)
        assert conjoin(a, a) is (a if a is not UNSAT else UNSAT)


def test_conjoin_matches_pointwise_meaning():
    rng = random.Random(9)
    pool = list(enumerate_epsets(4, 4))
    for _ in range(200):
        a, b = random_descriptor(rng, 4, 4), random_descriptor(rng, 4, 4)
        met = conjoin(a, b)
        for ep in pool:
            assert holds(met, ep) == (holds(a, ep) and holds(b, ep))


def test_canonical_invariants():
    # exact counts force finiteness and determine the residue
    d = make_descriptor(exact=3, modulus=2, classes={1})
    assert d.fin == FIN and d.modulus is None
    assert make_descriptor(exact=3, modulus=2, classes={0}) is UNSAT
    # a residue requirement under must-not-be-finite is contradictory
    assert make_descriptor(fin=NOT_FIN, modulus=2, classes={0}) is UNSAT
    # class sets reduce to their minimal modulus
    d = make_descriptor(modulus=4, classes={1, 3})
    assert d.modulus == 2 and d.classes == frozenset({1})
    d = make_descriptor(modulus=3, classes={0, 1, 2})
    assert d.modulus is None and d.fin == FIN


# -- satisfiable -------------------------------------------------------------


def test_satisfiable_examples():
    assert satisfiable(make_descriptor(at_least=5, fin=FIN))
    assert not satisfiable(make_descriptor(fin=NOT_FIN, modulus=2, classes={0}))
    assert not satisfiable(make_descriptor(exact=3, modulus=2, classes={0}))


def test_satisfiable_descriptors_have_model_witnesses():
    # every satisfiable descriptor with thresholds <= 16 is realized by a
    # concrete eventually periodic set: an exact count by that many points,
    # a non-finite requirement by an arithmetic progression, and a count
    # bound inside a residue class by the least admissible cardinality
    rng = random.Random(10)
    evens = make_epset((), 0, 2, (0,))
    for _ in range(400):
        d = random_descriptor(rng, max_thresh=16, max_mod=6)
        if d is UNSAT:
            continue
        assert satisfiable(d)
        if d.fin == NOT_FIN:
            witness = evens
        elif d.exact is not None:
            witness = from_elements(range(d.exact))
        else:
            l = d.at_least
            if d.modulus is not None:
                while l % d.modulus not in d.classes:
                    l += 1
            witness = from_elements(range(l))
        assert holds(d, witness), d


# -- negate_atom -------------------------------------------------------------


def test_negate_atom_shapes():
    na = negate_atom(F.ResAtom(2, 0, x))
    assert na == F.or_(F.Not(F.FinAtom(x)), F.ResAtom(2, 1, x))
    assert negate_atom(F.CountAtLeast(1, x)) == F.ZeroAtom(x)
    assert negate_atom(F.FinAtom(x)) == F.Not(F.FinAtom(x))
    assert negate_atom(F.ZeroAtom(x)) == F.CountAtLeast(1, x)


def test_negate_atom_is_negation():
    rng = random.Random(11)
    atoms = [
        F.CountAtLeast(3, union(x, y)), F.CountAtLeast(1, x),
        F.FinAtom(x * y), F.FinAtom(x + y),
        F.ResAtom(2, 1, x), F.ResAtom(4, 2, union(x, y)), F.ResAtom(3, 0, x + y),
        F.ZeroAtom(x * y),
    ]
    for atom in atoms:
        na = negate_atom(atom)
        for _ in range(80):
            sigma = {"x": random_ep(rng, 6, 4), "y": random_ep(rng, 6, 4)}
            assert eval_qf(atom, sigma) != eval_qf(na, sigma)


# -- project_split -----------------------------------------------------------


def test_project_split_examples():
    p = project_split(SplitSpec(make_descriptor(at_least=1),
                                make_descriptor(at_least=1)), m)
    assert p == F.CountAtLeast(2, m)

    p = project_split(SplitSpec(make_descriptor(fin=NOT_FIN),
                                make_descriptor(fin=NOT_FIN)), m)
    assert p == F.Not(F.FinAtom(m))

    third = make_descriptor(at_least=1, fin=FIN, modulus=3, classes={1})
    p = project_split(SplitSpec(third, third), m)
    # brute force over all splits of finite sets up to size 12: the ambient
    # cardinality must be 2 mod 3 (and then is automatically >= 2)
    for n in range(13):
        ep = from_elements(range(n))
        expected = any(
            holds(third, from_elements(beta))
            and holds(third, from_elements(set(range(n)) - set(beta)))
            for k in range(n + 1) for beta in combinations(range(n), k)
        )
        assert expected == (n % 3 == 2)
        assert eval_qf(p, {"m": ep}) == expected


def test_project_split_rejects_unsat():
    import pytest
    with pytest.raises(ValueError):
        SplitSpec(UNSAT, TRIVIAL)


def test_project_split_exhaustive_on_finite_ambients():
    rng = random.Random(12)
    ambients = [from_elements(rng.sample(range(12), n)) for n in range(11)]
    cases = 0
    for _ in range(250):
        d1, d2 = random_descriptor(rng), random_descriptor(rng)
        if d1 is UNSAT or d2 is UNSAT:
            continue
        proj = project_split(SplitSpec(d1, d2), m)
        for ep in ambients:
            elems = sorted(ep.elements(12))
            found = any(
                holds(d1, from_elements(beta))
                and holds(d2, from_elements(set(elems) - set(beta)))
                for k in range(len(elems) + 1)
                for beta in combinations(elems, k)
            )
            assert found == eval_qf(proj, {"m": ep}), (d1, d2, ep)
            cases += 1
    assert cases > 1500


def test_project_split_sound_on_infinite_ambients():
    rng = random.Random(13)
    sub_pool = enumerate_epsets(4, 4)
    ambients = [make_epset((), 0, 2, (0,)), make_epset((), 0, 3, (1,)),
                make_epset({1}, 2, 2, (0,)), make_epset((), 0, 1, (0,)),
                make_epset((0,), 1, 4, (2, 3))]
    witnessed = 0
    for _ in range(200):
        d1, d2 = random_descriptor(rng), random_descriptor(rng)
        if d1 is UNSAT or d2 is UNSAT:
            continue
        proj = project_split(SplitSpec(d1, d2), m)
        for ep in ambients:
            for cand in sub_pool:
                beta = ep_intersection(ep, cand)
                if holds(d1, beta) and holds(d2, ep_difference(ep, beta)):
                    # an eventually periodic witness must imply the projection
                    assert eval_qf(proj, {"m": ep}), (d1, d2, ep, beta)
                    witnessed += 1
                    break
    assert witnessed > 200
