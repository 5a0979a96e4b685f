import random
from fractions import Fraction

import pytest

from asgder.errors import InvalidPosition, MalformedElement
from asgder.multimap import GradedSpace, MultiMap, compose_partial, vec_add
from asgder.random_data import random_map


def test_identity_composition():
    V = GradedSpace.ungraded(1)
    g = MultiMap(V, 2, 0, {(0, 0): {0: 3}})
    assert compose_partial(MultiMap.identity(V), 1, g) == g
    assert compose_partial(g, 2, MultiMap.identity(V)) == g


def test_ungraded_composition():
    V = GradedSpace.ungraded(1)
    mu = MultiMap(V, 2, 0, {(0, 0): {0: 1}})
    h = MultiMap(V, 1, 0, {(0,): {0: 2}})
    assert compose_partial(mu, 2, h).table == {(0, 0): {0: Fraction(2)}}


def test_koszul_sign_of_odd_map():
    V = GradedSpace(("a", "b"), (1, 0))
    f = MultiMap(V, 2, -1, {(0, 0): {0: 1}})
    g = MultiMap(V, 1, 1, {(1,): {0: 1}})
    # g passes the first input, which has degree 1
    assert compose_partial(f, 2, g).table == {(0, 1): {0: Fraction(-1)}}
    assert compose_partial(f, 1, g).table == {(1, 0): {0: Fraction(1)}}


def test_position_out_of_range():
    V = GradedSpace.ungraded(1)
    with pytest.raises(InvalidPosition):
        compose_partial(MultiMap.identity(V), 2, MultiMap.identity(V))


def test_homogeneity_is_checked():
    V = GradedSpace(("a", "b"), (0, 1))
    with pytest.raises(MalformedElement):
        MultiMap(V, 1, 0, {(0,): {1: 1}})


def test_vec_add_cancels():
    assert vec_add({0: 1}, {0: 1}, -1) == {}


def _eval_equal(a, b):
    return a.table == b.table


@pytest.mark.parametrize("seed", range(15))
def test_operad_associativity_on_random_maps(seed):
    rng = random.Random(seed)
    dim = rng.randint(1, 3)
    V = GradedSpace(tuple(f"v{i}" for i in range(dim)), tuple(rng.choice((-1, 0, 1)) for _ in range(dim)))
    lam = random_map(V, 2, rng.choice((-1, 0, 1)), rng, 0.6)
    mu = random_map(V, 2, rng.choice((-1, 0, 1)), rng, 0.6)
    nu = random_map(V, rng.randint(1, 2), rng.choice((-1, 0, 1)), rng, 0.6)
    l, m = lam.arity, mu.arity
    for i in range(1, l + 1):
        for j in range(1, m + 1):
            lhs = compose_partial(compose_partial(lam, i, mu), i - 1 + j, nu)
            rhs = compose_partial(lam, i, compose_partial(mu, j, nu))
            assert _eval_equal(lhs, rhs)
    for i in range(1, l + 1):
        for k in range(i + 1, l + 1):
            lhs = compose_partial(compose_partial(lam, i, mu), k - 1 + m, nu)
            rhs = compose_partial(compose_partial(lam, k, nu), i, mu)
            s = -1 if (mu.degree * nu.degree) % 2 else 1
            assert _eval_equal(lhs, rhs.scale(s))
