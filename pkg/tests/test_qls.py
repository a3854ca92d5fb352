from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import R
from krlab.errors import ResourceError, UsageError
from krlab.qbg import build_pqbg
from krlab.qls import (
    AffineLSModel,
    QLSPath,
    cl_project,
    crystal_graph,
    crystals_isomorphic,
    deg,
    enumerate_ls_aff,
    enumerate_qls,
    epsilon_phi,
    eval_path,
    is_qls,
    is_sigma_path,
    make_path,
    pqbg_for,
    root_e,
    root_f,
    straight,
    tensor,
    wt,
)
from krlab.rootdata import pairing
from krlab.weyl import from_word, identity

H = Fraction(1, 2)


def a1_paths():
    rs = R("A1")
    e, s1 = identity(rs), from_word(rs, [0])
    return rs, e, s1


def test_sigma_path_examples():
    rs, e, s1 = a1_paths()
    g = build_pqbg(rs)
    assert not is_sigma_path(g, e, s1, H, (1,))
    assert is_sigma_path(g, e, s1, H, (2,))
    assert is_sigma_path(g, s1, s1, Fraction(1, 3), (1,))
    with pytest.raises(UsageError):
        is_sigma_path(g, e, s1, 1, (2,))


def test_enumerate_a1():
    rs, e, s1 = a1_paths()
    assert enumerate_qls(rs, (1,)) == [straight(e), straight(s1)]
    four = enumerate_qls(rs, (2,))
    assert set(four) == {straight(e), straight(s1), make_path([s1, e], [0, H, 1]), make_path([e, s1], [0, H, 1])}
    assert enumerate_qls(R("A2"), (0, 0)) == [straight(identity(R("A2")))]


@pytest.mark.parametrize(
    "name,lam,count",
    [("A2", (1, 0), 3), ("A2", (1, 1), 9), ("C2", (1, 1), 20), ("G2", (0, 1), 15), ("B3", (1, 0, 0), 7), ("A3", (0, 1, 0), 6)],
)
def test_counts_are_kr_dimensions(name, lam, count):
    # known dimensions of the tensor products of fundamental KR modules
    assert len(enumerate_qls(R(name), lam)) == count


def test_eval_and_deg_examples():
    rs, e, s1 = a1_paths()
    g = pqbg_for(rs, (2,))
    assert eval_path(straight(e), (2,), Fraction(1, 3)) == (Fraction(2, 3),)
    eta = make_path([e, s1], [0, H, 1])
    assert eval_path(eta, (2,), 0) == (0,)
    assert wt(eta, (2,)) == (0,)
    assert deg(eta, g, (2,)) == -1
    assert deg(make_path([s1, e], [0, H, 1]), g, (2,)) == 0
    assert deg(straight(s1), g, (2,)) == 0
    with pytest.raises(UsageError):
        eval_path(eta, (2,), 2)


def test_path_validation():
    rs, e, s1 = a1_paths()
    with pytest.raises(UsageError):
        QLSPath((e,), (Fraction(0), Fraction(1, 2)))
    with pytest.raises(UsageError):
        QLSPath((e, s1), (Fraction(0), Fraction(1), Fraction(1)))
    merged = make_path([e, e, s1], [0, Fraction(1, 3), H, 1])
    assert merged == make_path([e, s1], [0, H, 1])
    assert not is_qls(pqbg_for(rs, (1,)), make_path([e, s1], [0, H, 1]), (1,))


def test_root_operator_examples():
    rs, e, s1 = a1_paths()
    assert all(root_e(rs, straight(e), i, (1,)) is None for i in (1,))
    assert root_e(rs, straight(e), 0, (1,)) == straight(s1)
    mid = make_path([e, s1], [0, H, 1])
    assert root_e(rs, mid, 1, (2,)) is None and root_f(rs, mid, 1, (2,)) is None
    with pytest.raises(UsageError):
        root_e(rs, straight(e), 5, (1,))


CASES = [("A1", (2,)), ("A1", (3,)), ("A2", (1, 1)), ("A2", (2, 0)), ("C2", (1, 1)), ("G2", (1, 0))]


@pytest.mark.parametrize("name,lam", CASES)
def test_operator_invariants(name, lam):
    rs = R(name)
    g = pqbg_for(rs, lam)
    paths = enumerate_qls(rs, lam)
    pset = set(paths)
    for eta in paths:
        assert deg(eta, g, lam) <= 0
        w = wt(eta, lam)
        for i in range(rs.rank + 1):
            eps, phi = epsilon_phi(rs, eta, i, lam)
            assert eps >= 0 and phi >= 0
            pair = -pairing(rs.coroot(rs.theta_root), w) if i == 0 else w[i - 1]
            assert phi - eps == pair
            up, down = root_e(rs, eta, i, lam), root_f(rs, eta, i, lam)
            assert (up is None) == (eps == 0) and (down is None) == (phi == 0)
            if up is not None:
                assert up in pset and root_f(rs, up, i, lam) == eta
            if down is not None:
                assert down in pset and root_e(rs, down, i, lam) == eta
                shift = tuple(-c for c in rs.root_weight(rs.theta_root)) if i == 0 else rs.root_weight(rs.simple_root(i - 1))
                assert wt(down, lam) == tuple(a - b for a, b in zip(w, shift))


def test_tensor_isomorphisms():
    a1 = R("A1")
    w1 = crystal_graph(a1, (1,))
    assert crystals_isomorphic(w1, w1)
    assert crystals_isomorphic(crystal_graph(a1, (2,)), tensor(w1, w1))
    assert crystals_isomorphic(crystal_graph(a1, (3,)), tensor(tensor(w1, w1), w1))
    a2 = R("A2")
    adj = crystal_graph(a2, (1, 1))
    f1, f2 = crystal_graph(a2, (1, 0)), crystal_graph(a2, (0, 1))
    assert crystals_isomorphic(adj, tensor(f1, f2))
    assert crystals_isomorphic(adj, tensor(f2, f1))


def test_tensor_negative_control():
    a2 = R("A2")
    f1 = crystal_graph(a2, (1, 0))
    # same size, different crystal
    assert not crystals_isomorphic(crystal_graph(a2, (0, 1)), f1)
    sym = crystal_graph(a2, (2, 0))
    prod = tensor(f1, f1)
    assert crystals_isomorphic(sym, prod)
    # drop one 0-arrow from the product
    key = next(k for k in prod.arrows if k[1] == 0)
    del prod.arrows[key]
    assert not crystals_isomorphic(sym, prod)


def test_classical_highest_weights_a2_adjoint():
    cg = crystal_graph(R("A2"), (1, 1))
    tops = sorted(cg.weights[b] for b in cg.classical_highest())
    assert tops == [(0, 0), (1, 1)]


def test_affine_ls_projection():
    rs, e, s1 = a1_paths()
    lam = (2,)
    model = AffineLSModel(rs, lam, 3)
    aff = model.enumerate()
    assert {cl_project(p) for p in aff} == set(enumerate_qls(rs, lam))
    mid = make_path([e, s1], [0, H, 1])
    assert any(cl_project(p) == mid for p in aff)
    with pytest.raises(ResourceError):
        AffineLSModel(rs, lam, 0)


def test_affine_operators_commute_with_cl():
    rs = R("A2")
    lam = (1, 1)
    model = AffineLSModel(rs, lam, 2 * 3)
    for p in enumerate_ls_aff(rs, lam, 6):
        for i in range(3):
            q = model.root_f(p, i)
            if q is not None:
                assert cl_project(q) == root_f(rs, cl_project(p), i, lam)


@given(st.integers(1, 4))
def test_a1_counts(m):
    rs = R("A1")
    assert len(enumerate_qls(rs, (m,))) == 2**m
