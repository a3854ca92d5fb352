import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import R
from krlab.affine import (
    AffineRoot,
    AffineWeylElt,
    LevelZeroPoset,
    LevelZeroWeight,
    adjusted_superantidominant,
    adjusted_variants,
    adjusted_z,
    aff_act_root,
    aff_is_cover,
    aff_length,
    aff_reflection,
    classical,
    connecting_root,
    covers_below,
    decompose,
    in_affine_quotient,
    is_superantidominant,
    lift_edge,
    pi_J,
    pi_J_search,
    poset_to_json,
    project_cover,
    superantidominance_threshold,
    translation,
)
from krlab.errors import PreconditionError
from krlab.qbg import build_pqbg
from krlab.weyl import from_word, identity


def s(rs, *word):
    return classical(from_word(rs, word))


def test_root_action_examples():
    a1 = R("A1")
    assert aff_act_root(translation(a1, (1,)), AffineRoot((1,), 0)) == AffineRoot((1,), -2)
    assert aff_act_root(s(a1, 0), AffineRoot((1,), 1)) == AffineRoot((-1,), 1)


@pytest.mark.parametrize("M", [1, 2, 5])
def test_lengths_and_covers_a1(M):
    a1 = R("A1")
    assert aff_length(translation(a1, (-M,))) == 2 * M
    x = s(a1, 0) * translation(a1, (-M,))
    assert aff_length(x) == 2 * M - 1
    assert aff_is_cover(translation(a1, (-M + 1,)), x) == (M > 1 or True)


def test_cover_example_fixed():
    a1 = R("A1")
    M = 6
    mu = (-M,)
    x = s(a1, 0) * translation(a1, mu)
    y = translation(a1, (-M + 1,))
    assert aff_length(y) == aff_length(x) - 1
    assert aff_is_cover(y, x)


def brute_length(x, nmax=30):
    """Count positive affine roots sent negative, n bounded."""
    rs = x.rs
    count = 0
    for k, a in enumerate(rs.positive_roots):
        for root in (a, tuple(-c for c in a)):
            for n in range(0, nmax):
                b = AffineRoot(root, n)
                if b.is_positive(rs) and not aff_act_root(x, b).is_positive(rs):
                    count += 1
    return count


aff_words = st.tuples(st.lists(st.integers(0, 1), max_size=6), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))


@given(aff_words, aff_words)
def test_group_laws_g2(a, b):
    rs = R("G2")
    x = AffineWeylElt(from_word(rs, a[0]), a[1])
    y = AffineWeylElt(from_word(rs, b[0]), b[1])
    beta = AffineRoot(rs.positive_roots[3], 2)
    assert aff_act_root(x * y, beta) == aff_act_root(x, aff_act_root(y, beta))
    assert (x * x.inverse()) == classical(identity(rs))
    assert aff_length(x) == aff_length(x.inverse())
    assert aff_length(x) == brute_length(x)


def test_reflection_is_involution_and_connecting_root():
    rs = R("C2")
    x = AffineWeylElt(from_word(rs, [0, 1]), (2, -1))
    for a in rs.positive_roots:
        for n in range(-3, 4):
            beta = AffineRoot(a, n)
            r = aff_reflection(rs, beta)
            assert r * r == classical(identity(rs))
            assert aff_act_root(r, beta) == -beta
            assert connecting_root(x, x * r) == beta
    assert connecting_root(x, x * translation(rs, (1, 0))) is None


def test_pi_J_trivial():
    rs = R("A2")
    x = AffineWeylElt(from_word(rs, [1, 0]), (3, -2))
    assert pi_J(x, frozenset()) == (x, classical(identity(rs)))


@pytest.mark.parametrize("name", ["A2", "C2", "G2", "A3"])
def test_pi_J_descent_matches_search(name):
    rs = R(name)
    elems = [AffineWeylElt(from_word(rs, w), mu) for w in ([], [0], [1, 0], [0, 1, 0]) for mu in itertools.product(range(-2, 3), repeat=rs.rank)]
    for J in [frozenset({i}) for i in rs.nodes] + [frozenset(rs.nodes[:2]) if name == "A3" else frozenset()]:
        for x in elems[:: max(1, len(elems) // 30)]:
            w1, w2 = pi_J(x, J)
            assert w1 * w2 == x
            assert in_affine_quotient(w1, J)
            assert (w1, w2) == pi_J_search(x, J)


@pytest.mark.parametrize("name", ["A2", "C2", "G2"])
def test_adjusted_superantidominant(name):
    rs = R(name)
    for i in rs.nodes:
        J = frozenset({i})
        mu = adjusted_superantidominant(rs, J)
        assert is_superantidominant(rs, J, mu)
        assert adjusted_z(rs, J, mu) == identity(rs)
        assert is_superantidominant(rs, J, tuple(2 * c for c in mu))
        for v in adjusted_variants(rs, J, mu):
            assert adjusted_z(rs, J, v) is not None


def test_threshold():
    assert superantidominance_threshold(R("A2")) == 8
    assert superantidominance_threshold(R("G2")) == 14


def test_non_adjusted_rejected():
    rs = R("A2")
    J = frozenset({1})
    g = build_pqbg(rs, J)
    mu = (-9, -9)
    assert is_superantidominant(rs, J, mu)
    assert adjusted_z(rs, J, mu) is None
    with pytest.raises(PreconditionError):
        lift_edge(g, g.edges[0], mu)
    with pytest.raises(PreconditionError):
        lift_edge(g, g.edges[0], (1, 1))


@pytest.mark.parametrize("M", [2, 4])
def test_a1_lift_roots(M):
    a1 = R("A1")
    g = build_pqbg(a1)
    mu = (-M,)
    by_kind = {e.kind: lift_edge(g, e, mu)[2] for e in g.edges}
    assert by_kind["quantum"] == AffineRoot((1,), 1 - 2 * M)
    assert by_kind["bruhat"] == AffineRoot((1,), -2 * M)


@pytest.mark.parametrize("name", ["A2", "C2", "G2"])
def test_lift_project_round_trip(name):
    rs = R(name)
    for J in [frozenset()] + [frozenset({i}) for i in rs.nodes]:
        g = build_pqbg(rs, J)
        base = adjusted_superantidominant(rs, J)
        for mu in [base, tuple(2 * c for c in base)] + adjusted_variants(rs, J, base)[:1]:
            for e in g.edges:
                x, y, _ = lift_edge(g, e, mu)
                assert project_cover(g, y, x) == e


def test_every_cover_projects():
    rs = R("A2")
    J = frozenset({1})
    g = build_pqbg(rs, J)
    mu = adjusted_superantidominant(rs, J, scale=2)
    for w in g.vertices:
        x = AffineWeylElt(w, mu)
        ys = []
        for y in covers_below(x, J, 40):
            assert aff_is_cover(y, x)
            _, zy, muy = decompose(y, J)
            if is_superantidominant(rs, J, muy) and adjusted_z(rs, J, muy) == zy:
                ys.append(y)
        # covers inside the stable region are exactly the lifted edges
        assert len(ys) == len(g.out[w])
        for y in ys:
            project_cover(g, y, x)


def test_level_zero_examples():
    a1 = R("A1")
    P = LevelZeroPoset(a1, (1,))
    assert P.margin == 1
    mu = LevelZeroWeight(from_word(a1, [0]), 0)
    covers = P.covers(mu, 3)
    assert covers == [(AffineRoot((-1,), 1), LevelZeroWeight(identity(a1), -1))]
    with pytest.raises(PreconditionError):
        P.covers(mu, 0)
    a2 = R("A2")
    P2 = LevelZeroPoset(a2, (1, 0))
    assert P2.covers(LevelZeroWeight(from_word(a2, [1, 0]), 0), 6) == [
        (AffineRoot((-1, -1), 1), LevelZeroWeight(identity(a2), -1))
    ]


@pytest.mark.parametrize("name,lam", [("A2", (1, 1)), ("C2", (1, 1)), ("C2", (0, 1)), ("G2", (1, 0))])
def test_closure_matches_construction(name, lam):
    rs = R(name)
    P = LevelZeroPoset(rs, lam)
    for mu in P.nodes(0, 0):
        cov = P.covers(mu, P.margin)
        assert len(cov) == len(P.graph.out[mu.coset])
        for beta, nu in cov:
            assert beta.is_positive(rs) and beta.n in (0, 1)
            assert nu.deg <= mu.deg


def test_poset_json_shape():
    import json

    P = LevelZeroPoset(R("A1"), (1,))
    doc = json.loads(poset_to_json(P, 2))
    assert len(doc["nodes"]) == 2 * 5
    assert all(c["src"]["deg"] >= c["dst"]["deg"] for c in doc["covers"])
