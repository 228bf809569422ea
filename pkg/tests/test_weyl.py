import itertools
import random

import pytest

from dahalab.rootdata import build_root_datum, make_lattice
from dahalab.weyl import AffineRoot, AffineWeyl


@pytest.fixture(scope="module")
def a1w():
    d = build_root_datum("A", 1)
    return d, AffineWeyl(d, make_lattice(d, "P"))


def test_affine_root_action_examples(a1w):
    d, W = a1w
    alpha = d.simple_indices[0]
    e = W.from_word(0, [])
    assert e.act_affine_root(AffineRoot(alpha, 1)) == AffineRoot(alpha, 1)
    t = W.translation((1,))
    assert t.act_affine_root(AffineRoot(alpha, 0)) == AffineRoot(alpha, -1)
    img = W.s[0].act_affine_root(AffineRoot(d.negative_of[alpha], 1))
    assert img == AffineRoot(alpha, -1)


def test_action_composition(a1w):
    d, W = a1w
    rng = random.Random(3)
    elems = [W.translation((m,)) for m in range(-2, 3)] + [W.s[0], W.s[1], W.pi(1)]
    for _ in range(40):
        u, w = rng.choice(elems), rng.choice(elems)
        r = AffineRoot(rng.choice([0, 1]), rng.randint(-2, 2))
        assert (u * w).act_affine_root(r) == u.act_affine_root(w.act_affine_root(r))
        z = (rng.randint(-3, 3),)
        assert (u * w).affine_action(z) == u.affine_action(w.affine_action(z))


def test_length_and_lambda_examples(a1w):
    d, W = a1w
    alpha = d.simple_indices[0]
    assert W.length_and_lambda(W.from_word(0, [])) == (0, [])
    l, lam = W.length_and_lambda(W.translation((1,)))
    assert (l, lam) == (1, [AffineRoot(alpha, 0)])
    l, lam = W.length_and_lambda(W.translation((-1,)))
    assert (l, lam) == (1, [AffineRoot(d.negative_of[alpha], 1)])


def test_decompose_pi_u_examples(a1w):
    d, W = a1w
    pi, u, bm = W.decompose_pi_u((0,))
    assert pi.is_identity and u.is_identity and bm == (0,)
    pi, u, bm = W.decompose_pi_u((1,))
    assert bm == (-1,) and not u.is_identity
    assert W.length(pi) == 0 and pi == W.pi(1)
    pi, u, bm = W.decompose_pi_u((-1,))
    assert bm == (-1,) and u.is_identity and W.length(pi) == 1


def test_lambda_prime_examples(a1w):
    d, W = a1w
    alpha = d.simple_indices[0]
    assert W.lambda_prime((0,)) == []
    assert W.lambda_prime((1,)) == []
    assert W.lambda_prime((-1,)) == [AffineRoot(alpha, 1)]


def test_reduced_words(a1w):
    d, W = a1w
    assert W.reduced_word(W.from_word(0, [])) == (0, ())
    assert W.reduced_word(W.pi(1)) == (1, ())
    r, word = W.reduced_word(W.translation((2,)))
    assert (r, list(word)) == (0, [1, 0])
    assert W.from_word(r, word) == W.translation((2,))


def test_pi_r_alpha0(a1w):
    d, W = a1w
    assert W.pi(1).act_affine_root(W.alpha[0]) == W.alpha[1]


def test_affine_point_action(a1w):
    d, W = a1w
    assert W.from_word(0, []).affine_action((5,)) == (5,)
    assert W.pi(1).affine_action((0,)) == (1,)
    assert W.translation((3,)).affine_action((0,)) == (3,)


@pytest.mark.parametrize("letter,rank", [("A", 1), ("A", 2), ("B", 2)])
def test_lambda_closed_formula_on_ball(letter, rank):
    d = build_root_datum(letter, rank)
    W = AffineWeyl(d, make_lattice(d, "P"))
    for b in itertools.product(range(-4, 5), repeat=rank):
        _, lam = W.length_and_lambda(W.translation(b))
        assert lam == W.lambda_translation_formula(b)
        pi, u, bm = W.decompose_pi_u(b)
        assert W.length(pi) + u.length() == W.length(W.translation(b))
        assert tuple(u.act_weight(b)) == bm
        assert all(x <= 0 for x in bm)
        _, lamp = W.length_and_lambda(pi)
        assert all(a.j != 0 for a in lamp)  # lambda(pi_b) avoids R
        assert W.lambda_prime(b) == W.lambda_prime_formula(b)
    for r in W._pi:
        if r:
            assert W.pi(r).act_affine_root(W.alpha[0]) == W.alpha[r]


def test_length_subadditivity_random_pairs():
    d = build_root_datum("A", 2)
    W = AffineWeyl(d, make_lattice(d, "P"))
    rng = random.Random(11)
    pool = [
        W.translation((a, b))
        for a in range(-2, 3)
        for b in range(-2, 3)
    ] + [W.s[i] for i in range(3)]
    equal_cases = 0
    for _ in range(200):
        u, w = rng.choice(pool), rng.choice(pool)
        lu, lw, luw = W.length(u), W.length(w), W.length(u * w)
        assert luw <= lu + lw
        if luw == lu + lw:
            equal_cases += 1
            # the concatenated word re-extracts to the same total length
            ru, wu = W.reduced_word(u)
            rw, ww = W.reduced_word(w)
            assert len(W.reduced_word(u * w)[1]) == lu + lw
    assert equal_cases > 0
