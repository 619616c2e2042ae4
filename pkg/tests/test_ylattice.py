import itertools

import pytest
from hypothesis import given, settings, strategies as st

from krqt.ylattice import (
    NotADescendant,
    QtCharacter,
    TLaurent,
    YMonomial,
    a_monomial,
    a_product,
    character_add,
    character_scale,
    descendant_v,
    monomial_mul,
    u_exponents,
)

Y = YMonomial.y


def test_inverse_pair_is_one():
    assert monomial_mul(Y(1, 0), Y(1, 0, -1)).is_one()


def test_product_gives_kr_dominant():
    assert monomial_mul(Y(1, 0), Y(1, 2)) == YMonomial.from_dict({(1, 0): 1, (1, 2): 1})


def test_mixed_sign_monomial():
    m = monomial_mul(Y(2, 1), Y(3, 2, -1))
    assert m.to_json() == [[2, 1, 1], [3, 2, -1]]


def test_canonical_form_drops_zeros():
    m = YMonomial.from_dict({(1, 0): 0, (2, 3): 1})
    assert m.items == (((2, 3), 1),)


def test_rejects_bad_node():
    with pytest.raises(ValueError):
        YMonomial.from_dict({(0, 1): 1})


def test_a_monomial_a1():
    assert a_monomial(1, 1, 1) == Y(1, 0) * Y(1, 2)


def test_a_monomial_middle_node():
    assert a_monomial(2, 0, 3) == Y(2, -1) * Y(2, 1) * Y(1, 0, -1) * Y(3, 0, -1)


def test_a_monomial_last_node():
    assert a_monomial(3, 3, 3) == Y(3, 2) * Y(3, 4) * Y(2, 3, -1)


def test_a_monomial_range():
    with pytest.raises(ValueError):
        a_monomial(4, 0, 3)


def test_u_exponents_examples():
    assert u_exponents(Y(1, -2) * Y(1, 0)) == {(1, -2): 1, (1, 0): 1}
    assert u_exponents(YMonomial.one()) == {}
    assert u_exponents(Y(1, 2, -1) * Y(1, 4, -1)) == {(1, 2): -1, (1, 4): -1}


def test_descendant_v_trivial():
    m = Y(1, 0) * Y(1, 2)
    assert descendant_v(m, m, 1) == {}


def test_descendant_v_a1():
    assert descendant_v(Y(1, 2, -1), Y(1, 0), 1) == {(1, 1): 1}


def test_descendant_v_sl4_edges():
    # Y_{3,0} -> Y_{2,1}Y_{3,2}^{-1} is one application of A_{3,1}^{-1}
    assert descendant_v(Y(2, 1) * Y(3, 2, -1), Y(3, 0), 3) == {(3, 1): 1}
    assert descendant_v(Y(1, 4, -1), Y(3, 0), 3) == {(3, 1): 1, (2, 2): 1, (1, 3): 1}


def test_descendant_v_rejects():
    with pytest.raises(NotADescendant):
        descendant_v(Y(1, 2), Y(1, 0), 1)
    with pytest.raises(NotADescendant):
        descendant_v(Y(1, 0) * Y(1, 0), Y(1, 0), 1)  # needs v < 0
    with pytest.raises(ValueError):
        descendant_v(Y(1, 0), Y(1, 2, -1), 1)


def test_tlaurent_arith():
    a = TLaurent.from_dict({0: 1, 1: 2})
    assert (a - a).is_zero()
    assert (a * TLaurent.monomial(-1)).as_dict() == {-1: 1, 0: 2}
    assert a.shift(3).as_dict() == {3: 1, 4: 2}
    assert TLaurent.monomial(5).single_exponent() == 5
    assert a.single_exponent() is None
    assert TLaurent.from_json(a.to_json()) == a


def test_character_add_and_scale():
    chi = QtCharacter.build(Y(1, 0), {Y(1, 0): TLaurent.one(), Y(1, 2, -1): TLaurent.one()}, 1)
    zero = QtCharacter.build(YMonomial.one(), {}, 1)
    assert character_add(chi, zero) == chi
    assert character_scale(chi, TLaurent.one()) == chi
    const = character_scale(QtCharacter.one(1), TLaurent.monomial(-1))
    s = character_add(chi, const)
    assert len(s) == 3
    assert s.coefficient(YMonomial.one()) == TLaurent.monomial(-1)
    assert s.dominant == Y(1, 0)


def test_character_json_roundtrip():
    chi = QtCharacter.build(Y(1, 0), {Y(1, 0): TLaurent.one(), Y(1, 2, -1): TLaurent.monomial(2, 3)}, 1)
    assert QtCharacter.from_json(chi.to_json()) == chi


# property tests

R = 3
keys = st.tuples(st.integers(1, R), st.integers(-6, 6))
monomials = st.dictionaries(keys, st.integers(-3, 3), max_size=6).map(YMonomial.from_dict)


@given(monomials)
def test_canonical_after_ops(m):
    for x in (m, m * m.inverse(), m ** 2, m / m):
        assert all(e != 0 for _, e in x.items)
        assert list(x.items) == sorted(x.items)


@given(monomials, monomials)
def test_u_additivity(m1, m2):
    u = u_exponents(m1 * m2)
    u1, u2 = u_exponents(m1), u_exponents(m2)
    for key in set(u1) | set(u2) | set(u):
        assert u.get(key, 0) == u1.get(key, 0) + u2.get(key, 0)


@given(monomials)
def test_json_roundtrip(m):
    assert YMonomial.from_json(m.to_json()) == m


dominants = st.dictionaries(keys, st.integers(1, 2), max_size=4).map(YMonomial.from_dict)
vmaps = st.dictionaries(keys, st.integers(0, 2), max_size=5)


@settings(max_examples=200)
@given(dominants, vmaps)
def test_descendant_roundtrip(m_plus, v):
    v = {k: n for k, n in v.items() if n}
    m = m_plus * a_product(v, R).inverse()
    assert descendant_v(m, m_plus, R) == v


def test_descendant_matches_brute_force():
    # every product of up to three A^{-1} near the origin, r = 2
    m_plus = Y(1, 0) * Y(2, 1)
    nodes = [(i, j) for i in (1, 2) for j in range(-1, 4)]
    for n in range(4):
        for combo in itertools.combinations_with_replacement(nodes, n):
            v = {}
            for key in combo:
                v[key] = v.get(key, 0) + 1
            m = m_plus * a_product(v, 2).inverse()
            assert descendant_v(m, m_plus, 2) == v
