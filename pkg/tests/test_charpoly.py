import json

import pytest
from hypothesis import given, strategies as st

from conftest import R
from krlab.charpoly import (
    GradedCharacter,
    divide_exact,
    macdonald_e,
    macdonald_p,
    qls_graded_character,
    weyl_character,
)
from krlab.errors import InvariantViolation, UsageError
from krlab.weyl import bruhat_leq, enumerate_group, identity, longest_element


def gc(*terms):
    out = GradedCharacter()
    for w, a, c in terms:
        out.add(w, a, c)
    return out


def test_a1_examples():
    rs = R("A1")
    P = macdonald_p(rs, (2,))
    assert P == gc(((2,), 0, 1), ((-2,), 0, 1), ((0,), 0, 1), ((0,), 1, 1))
    assert qls_graded_character(rs, (2,)) == P
    assert qls_graded_character(rs, (1,)) == gc(((1,), 0, 1), ((-1,), 0, 1))
    assert macdonald_p(rs, (0,)) == gc(((0,), 0, 1))
    assert weyl_character(rs, (2,)) == gc(((2,), 0, 1), ((0,), 0, 1), ((-2,), 0, 1))


def test_weyl_examples():
    a2 = R("A2")
    assert weyl_character(a2, (1, 0)) == gc(((1, 0), 0, 1), ((-1, 1), 0, 1), ((0, -1), 0, 1))
    adj = weyl_character(a2, (1, 1))
    assert adj.total() == 8 and adj.terms[(0, 0)] == {0: 2}
    assert macdonald_p(a2, (1, 1)).at_q(0) == adj
    with pytest.raises(UsageError):
        weyl_character(a2, (-1, 0))


def test_macdonald_e_at_identity():
    # E for the identity keeps the empty subset and the subset {1,2},
    # whose walk returns to e
    rs = R("A1")
    E = macdonald_e(rs, (2,), identity(rs))
    assert E == gc(((2,), 0, 1), ((0,), 1, 1))
    assert macdonald_e(rs, (2,), longest_element(rs)) == macdonald_p(rs, (2,))


@pytest.mark.parametrize("name,lam", [("A2", (1, 0)), ("A2", (1, 1)), ("C2", (0, 1))])
def test_e_monotone(name, lam):
    rs = R(name)
    W = enumerate_group(rs)
    Es = {w: macdonald_e(rs, lam, w) for w in W}
    for u in W:
        for w in W:
            if bruhat_leq(u, w):
                for x, poly in Es[u].terms.items():
                    for a, c in poly.items():
                        assert Es[w].terms.get(x, {}).get(a, 0) >= c
    assert Es[longest_element(rs)] == macdonald_p(rs, lam)


@pytest.mark.parametrize("name,lam", [("A1", (3,)), ("A2", (2, 0)), ("C2", (1, 1)), ("G2", (1, 0)), ("B3", (1, 0, 0))])
def test_p_equals_x_and_symmetry(name, lam):
    rs = R(name)
    P = macdonald_p(rs, lam)
    assert P == qls_graded_character(rs, lam)
    assert P.is_w_invariant(rs)
    assert P.at_q(0) == weyl_character(rs, lam)


def test_text_and_json():
    P = macdonald_p(R("A1"), (2,))
    assert P.to_text() == "1 * q^0 * x^[2]\n1 * q^0 * x^[0]\n1 * q^0 * x^[-2]\n1 * q^1 * x^[0]\n"
    assert json.loads(P.to_json())[-1] == {"coeff": 1, "q": 1, "x": [0]}


def test_inexact_division():
    with pytest.raises(InvariantViolation):
        divide_exact({(1,): 1, (0,): 1}, {(1,): 1, (-1,): 1})
    with pytest.raises(UsageError):
        divide_exact({(1,): 1}, {})


laurent = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-4, 4).filter(bool), min_size=1, max_size=5)


@given(laurent, laurent)
def test_division_inverts_multiplication(a, b):
    prod = gc(*((w, 0, c) for w, c in a.items())) * gc(*((w, 0, c) for w, c in b.items()))
    num = {w: p[0] for w, p in prod.terms.items()}
    q = divide_exact(num, b)
    assert q == a


@given(st.integers(0, 3), st.integers(0, 3))
def test_specialization_q1_counts(m, n):
    rs = R("A2")
    P = macdonald_p(rs, (m, n))
    assert P.total() == P.at_q(1).total()
