from fractions import Fraction as Q

import pytest

from dahalab.errors import InvalidType, NotIntermediate
from dahalab.rootdata import FormalWeight, build_root_datum, make_lattice, rho_k


def test_a1_basics(a1_datum):
    d = a1_datum
    assert len(d.positive_indices) == 1
    alpha = d.positive_indices[0]
    assert d.norm2[alpha] == 2
    # omega = alpha/2, rho = omega, m = 2
    assert d.root_omega[alpha] == (2,)
    assert d.rho_sht == (1,)
    assert d.m_constant == 2
    assert d.o_prime == (1,)


def test_g2_lengths():
    d = build_root_datum("G", 2)
    assert sorted(set(d.nu)) == [1, 3]
    assert d.o_prime == ()


def test_b2_theta_and_m():
    d = build_root_datum("B", 2)
    th = d.root_omega[d.theta_idx]
    a1 = d.root_omega[d.simple_indices[0]]
    a2 = d.root_omega[d.simple_indices[1]]
    assert tuple(x + y for x, y in zip(a1, a2)) == th
    assert d.m_constant == 1
    # theta is the maximal short positive root
    assert d.nu[d.theta_idx] == 1
    for i in d.positive_indices:
        if d.nu[i] == 1 and i != d.theta_idx:
            diff = tuple(a - b for a, b in zip(th, d.root_omega[i]))
            # theta - alpha is a nonnegative root combination
            assert any(diff)


@pytest.mark.parametrize(
    "letter,rank,order",
    [("A", 1, 2), ("B", 2, 8), ("G", 2, 12), ("A", 2, 6), ("A", 3, 24), ("B", 3, 48)],
)
def test_weyl_group_order(letter, rank, order):
    assert build_root_datum(letter, rank).weyl_group_order() == order


def test_w0_properties():
    for letter, rank in [("A", 2), ("B", 2), ("G", 2)]:
        d = build_root_datum(letter, rank)
        for p in d.positive_indices:
            assert d.is_negative_root(d.w0.act_root(p))
        assert (d.w0 * d.w0).is_identity


def test_fundamental_weight_pairings():
    for letter, rank in [("A", 2), ("B", 3), ("C", 2)]:
        d = build_root_datum(letter, rank)
        for i in range(rank):
            ei = tuple(1 if j == i else 0 for j in range(rank))
            for j in range(rank):
                expect = 1 if i == j else 0
                assert d.pair_coroot(ei, d.simple_indices[j]) == expect


def test_partial_rho_pairings():
    for letter, rank in [("B", 2), ("G", 2), ("B", 3)]:
        d = build_root_datum(letter, rank)
        for j in range(rank):
            nu = d.nu[d.simple_indices[j]]
            assert d.pair_coroot(d.rho_nu[nu], d.simple_indices[j]) == 1
            other = [n for n in d.rho_nu if n != nu]
            for n in other:
                assert d.pair_coroot(d.rho_nu[n], d.simple_indices[j]) == 0


def test_minuscule_condition():
    for letter, rank in [("A", 3), ("B", 3), ("C", 2)]:
        d = build_root_datum(letter, rank)
        for r in d.o_prime:
            er = tuple(1 if j == r - 1 else 0 for j in range(rank))
            assert all(d.pair_coroot(er, a) <= 1 for a in d.positive_indices)


def test_rho_k_values():
    a1 = build_root_datum("A", 1)
    rk = rho_k(a1)
    # (omega, rho_k) = k/2: the t_sht exponent of X_omega(q^{rho_k}) is 1/2
    eq, es, el = rk.x_exponents(a1, (1,))
    assert (eq, es, el) == (0, Q(1, 2), 0)
    zero = rho_k(a1, 0, 0)
    assert zero.x_exponents(a1, (1,)) == (0, 0, 0)
    b2 = build_root_datum("B", 2)
    # (theta_vee, rho_k) = k_sht + 2 k_lng
    theta_v = b2.root_omega[b2.theta_idx]  # theta is short: theta_vee = theta
    assert b2.pair_coroot(b2.rho_sht, b2.theta_idx) == 1
    assert b2.pair_coroot(b2.rho_lng, b2.theta_idx) == 2


def test_lattices(a1_datum):
    latP = make_lattice(a1_datum, "P")
    latQ = make_lattice(a1_datum, "Q")
    assert latP.m_tilde == 2 and latP.pi_nodes == (1,)
    assert latQ.m_tilde == 1 and latQ.pi_nodes == ()
    assert latQ.contains((2,)) and not latQ.contains((1,))
    b2 = build_root_datum("B", 2)
    assert make_lattice(b2, "P").m_tilde == 1
    with pytest.raises(NotIntermediate):
        make_lattice(build_root_datum("A", 2), [(2, 0), (0, 1)])


def test_invalid_type():
    with pytest.raises(InvalidType):
        build_root_datum("H", 2)
    with pytest.raises(InvalidType):
        build_root_datum("G", 3)
    with pytest.raises(InvalidType):
        build_root_datum("A", 0)


@pytest.mark.parametrize(
    "letter,rank,pos",
    [("D", 4, 12), ("F", 4, 24), ("E", 6, 36), ("C", 3, 9), ("B", 4, 16)],
)
def test_larger_types_construct(letter, rank, pos):
    d = build_root_datum(letter, rank)
    assert len(d.positive_indices) == pos


def test_datum_summary_is_jsonable():
    import json

    d = build_root_datum("B", 2)
    text = json.dumps(d.summary(), sort_keys=True)
    assert "B2" in text


def test_formal_weight_algebra(a1_datum):
    w = FormalWeight((Q(1),), (Q(0),), (Q(0),))
    v = FormalWeight((Q(0),), (Q(1),), (Q(0),))
    s = w + v
    assert s.vq == (1,) and s.vs == (1,)
    assert (-s).vq == (-1,)
    moved = s.apply_w(a1_datum.simple_reflection(0))
    assert moved.vq == (-1,) and moved.vs == (-1,)
