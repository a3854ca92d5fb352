import json
from collections import Counter
from fractions import Fraction

import pytest

from conftest import R
from krlab.alcove import (
    build_lambda_chain,
    check_chain,
    colevel,
    enumerate_admissible,
    level,
    to_json,
    weight,
    xi,
)
from krlab.errors import InvariantViolation, ResourceError
from krlab.qls import deg, enumerate_qls, make_path, pqbg_for, straight, wt
from krlab.weyl import from_word, identity


def test_a1_chain_and_subsets():
    rs = R("A1")
    ch = build_lambda_chain(rs, (2,))
    assert [(e.root, e.k, e.level) for e in ch.entries] == [(0, 0, 2), (0, 1, 1)]
    subs = enumerate_admissible(ch)
    assert [repr(A) for A in subs] == ["{}", "{1}", "{1,2}", "{2}"]
    both = subs[2]
    assert both.downs == (1,) and both.kappa == identity(rs)
    assert level(both, ch) == 1 and colevel(both, ch) == 1
    assert sorted(weight(A, ch) for A in subs) == [(-2,), (0,), (0,), (2,)]
    assert weight(subs[3], ch) == (0,)
    s1 = from_word(rs, [0])
    assert xi(both, ch) == make_path([identity(rs), s1], [0, Fraction(1, 2), 1])
    assert xi(subs[3], ch) == make_path([s1, identity(rs)], [0, Fraction(1, 2), 1])
    assert xi(subs[0], ch) == straight(identity(rs))


def test_trivial_weight():
    ch = build_lambda_chain(R("A2"), (0, 0))
    assert len(ch) == 0
    assert len(enumerate_admissible(ch)) == 1


def test_a2_omega1():
    rs = R("A2")
    ch = build_lambda_chain(rs, (1, 0))
    assert len(ch) == 2
    assert {rs.positive_roots[e.root] for e in ch.entries} == {(1, 0), (1, 1)}
    assert all(e.k == 0 for e in ch.entries)
    assert len(enumerate_admissible(ch)) == 3


@pytest.mark.parametrize(
    "name,lam",
    [("A1", (3,)), ("A2", (2, 1)), ("A3", (1, 1, 0)), ("C2", (1, 1)), ("B3", (1, 0, 0)), ("G2", (1, 0)), ("G2", (0, 1)), ("D4", (0, 1, 0, 0))],
)
def test_chain_invariants(name, lam):
    rs = R(name)
    ch = build_lambda_chain(rs, lam)
    check_chain(ch)
    assert len(ch) == sum(sum(cv[i] * lam[i] for i in rs.nodes) for cv in rs.coroots)


def test_check_chain_rejects_reordered():
    import dataclasses

    ch = build_lambda_chain(R("A1"), (2,))
    bad = dataclasses.replace(ch, entries=tuple(reversed(ch.entries)))
    with pytest.raises(InvariantViolation):
        check_chain(bad)


@pytest.mark.parametrize("name,lam", [("A1", (3,)), ("A2", (1, 1)), ("A2", (2, 0)), ("C2", (0, 1)), ("G2", (1, 0)), ("A3", (0, 1, 0))])
def test_xi_bijective_and_statistics(name, lam):
    rs = R(name)
    ch = build_lambda_chain(rs, lam)
    g = pqbg_for(rs, lam)
    subs = enumerate_admissible(ch)
    images = [xi(A, ch, g) for A in subs]
    qls = enumerate_qls(rs, lam)
    assert len(set(images)) == len(subs) == len(qls)
    assert set(images) == set(qls)
    for A, eta in zip(subs, images):
        assert weight(A, ch) == wt(eta, lam)
        assert colevel(A, ch) == -deg(eta, g, lam)
    assert Counter((level(A, ch), weight(A, ch)) for A in subs) == Counter((-deg(e, g, lam), wt(e, lam)) for e in qls)


def test_level_is_not_pointwise_minus_deg():
    # the level statistic matches -Deg only after regrouping
    rs = R("A1")
    ch = build_lambda_chain(rs, (3,))
    g = pqbg_for(rs, (3,))
    diffs = [A for A in enumerate_admissible(ch) if level(A, ch) != -deg(xi(A, ch, g), g, (3,))]
    assert diffs


def test_budget():
    ch = build_lambda_chain(R("A2"), (2, 2))
    with pytest.raises(ResourceError):
        enumerate_admissible(ch, cap=10)


def test_json():
    ch = build_lambda_chain(R("A1"), (2,))
    doc = json.loads(to_json(ch, enumerate_admissible(ch)))
    assert doc["lambda"] == [2]
    assert [s["level"] for s in doc["subsets"]] == [0, 0, 1, 0]
    assert doc["chain"] == [{"root": [1], "k": 0, "level": 2}, {"root": [1], "k": 1, "level": 1}]
