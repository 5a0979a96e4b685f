import random
from fractions import Fraction

import pytest

from asgder.cohomology import (AssDerComplex, GDerComplex, HochschildComplex, KernelComplex, LElem,
                               assder_complex, bracket_via_coderivations, cohomology, differential,
                               h1_kernel_dimension, jacobi_defect, les_dimension_check, lie_bracket, mc_check,
                               structure_element, theta)
from asgder.errors import ResourceGuard
from asgder.multimap import GradedSpace, MultiMap
from asgder.random_data import mutate_triple, random_map, random_module, random_triple
from asgder.triples import AsGDerTriple, GDerModule, validate_triple


def random_elem(space, k, rng):
    f1 = random_map(space, k + 1, 0, rng, 0.5)
    if k == 0:
        return LElem(0, f1)
    return LElem(k, f1, random_map(space, k, 0, rng, 0.5), random_map(space, k, 0, rng, 0.5))


def random_vec(cx, n, rng, density=0.4):
    return {b: Fraction(rng.randint(-2, 2)) for b in cx.basis(n) if rng.random() < density}


def test_structure_element_is_mc_for_valid_triples():
    rng = random.Random(0)
    for _ in range(10):
        rep = mc_check(random_triple(rng, 3))
        assert rep.is_mc and rep.validate_agrees


def test_zero_product_is_mc():
    t = AsGDerTriple(2, {}, {0: {1: 1}}, {1: {0: 3}})
    assert mc_check(t).is_mc


def test_wrong_generalized_derivation_only_breaks_third_component():
    # dual numbers 1, e with h = 0 and delta(e) = e: delta(e * 1) = e but delta(e) 1 + e h(1) = e, fine;
    # delta(1 * e) = e while delta(1) e + 1 h(e) = 0
    mu = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    t = AsGDerTriple(2, mu, {}, {1: {1: 1}})
    rep = mc_check(t)
    assert rep.violated == ["psi3"] and rep.validate_agrees


def test_broken_associativity_shows_in_first_component():
    t = AsGDerTriple(2, {(0, 0): {1: 1}, (1, 0): {0: 1}}, {}, {})
    rep = mc_check(t)
    assert "psi1" in rep.violated and rep.validate_agrees


@pytest.mark.parametrize("seed", range(20))
def test_mc_agrees_with_validator_on_mutations(seed):
    rng = random.Random(seed)
    u = mutate_triple(random_triple(rng, 3), rng)
    assert mc_check(u).validate_agrees


def test_bracket_with_zero():
    rng = random.Random(1)
    V = GradedSpace.ungraded(2)
    f = random_elem(V, 1, rng)
    assert lie_bracket(f, LElem.zero(V, 2)).is_zero()


@pytest.mark.parametrize("seed", range(12))
def test_graded_antisymmetry_and_jacobi(seed):
    rng = random.Random(seed)
    V = GradedSpace.ungraded(rng.randint(1, 2))
    a, b, c = (random_elem(V, rng.randint(0, 2), rng) for _ in range(3))
    s = -1 if (a.k * b.k) % 2 else 1
    assert lie_bracket(a, b) == lie_bracket(b, a).scale(-s)
    if a.k + b.k + c.k <= 3:
        assert jacobi_defect(a, b, c).is_zero()


@pytest.mark.parametrize("seed", range(10))
def test_bracket_matches_commutator_of_coderivations(seed):
    rng = random.Random(seed)
    V = GradedSpace.ungraded(rng.randint(1, 2))
    a, b = random_elem(V, rng.randint(0, 2), rng), random_elem(V, rng.randint(0, 1), rng)
    assert lie_bracket(a, b) == bracket_via_coderivations(a, b)


def test_differential_of_identity():
    rng = random.Random(3)
    t = random_triple(rng, 3)
    cx = GDerComplex(t)
    ident = {(0, (i,), i): Fraction(1) for i in range(t.dim)}
    out = differential(t, None, ident, 1)
    mu = {(0, k, o): v for k, vec in t.mu.items() for o, v in vec.items()}
    assert out == mu
    assert cx.apply(1, ident) == mu


@pytest.mark.parametrize("seed", range(10))
def test_expanded_formulas_match_the_bracket(seed):
    rng = random.Random(seed)
    t = random_triple(rng, 3)
    cx = GDerComplex(t)
    for n in (1, 2, 3):
        v = random_vec(cx, n, rng)
        assert cx.expanded(n, v) == cx.apply(n, v)


@pytest.mark.parametrize("seed", range(10))
def test_square_zero(seed):
    rng = random.Random(seed)
    t = random_triple(rng, 3)
    mod = random_module(t, rng) if seed % 2 else None
    cx = GDerComplex(t, mod)
    for n in (1, 2):
        assert cx.square(n, random_vec(cx, n, rng)) == {}
    assert AssDerComplex(t, mod).square_zero_failures(3) == []
    assert KernelComplex(t, mod).square_zero_failures(3) == []
    assert HochschildComplex(t, mod).square_zero_failures(3) == []


def test_zero_line_cohomology():
    t = AsGDerTriple(1, {}, {}, {})
    rep = cohomology(t, max_degree=4)
    assert [rep.dim_H(n) for n in range(1, 5)] == [1, 3, 3, 3]
    assert rep.h1_agrees


def test_idempotent_line_has_no_h1():
    t = AsGDerTriple(1, {(0, 0): {0: 1}}, {}, {})
    rep = cohomology(t, max_degree=2)
    assert rep.dim_H(1) == 0 and rep.h1_kernel == 0


@pytest.mark.parametrize("seed", range(15))
def test_h1_matches_kernel_description(seed):
    rng = random.Random(seed)
    t = random_triple(rng, 3)
    mod = random_module(t, rng) if seed % 2 else None
    assert cohomology(t, mod, max_degree=1).h1_agrees


@pytest.mark.parametrize("seed", range(6))
def test_assder_with_zero_derivation_splits(seed):
    rng = random.Random(seed)
    base = random_triple(rng, 3)
    t = base.with_maps(h={}, delta={})
    hoch = HochschildComplex(t).report(4)
    ad = AssDerComplex(t).report(4)
    hh = {0: 0, **{n: hoch.dim_H(n) for n in range(1, 5)}}
    for n in range(1, 5):
        assert ad.dim_H(n) == hh[n] + hh[n - 1]


def test_assder_identity():
    rng = random.Random(5)
    t = random_triple(rng, 3)
    cx = AssDerComplex(t)
    ident = {(0, (i,), i): Fraction(1) for i in range(t.dim)}
    assert cx.apply(1, ident) == {(0, k, o): v for k, vec in t.mu.items() for o, v in vec.items()}


@pytest.mark.parametrize("seed", range(8))
def test_projection_is_a_chain_map(seed):
    rng = random.Random(seed)
    t = random_triple(rng, 3)
    C, D = GDerComplex(t), AssDerComplex(t)
    for n in (1, 2, 3):
        v = random_vec(C, n, rng)
        assert theta(n + 1, C.apply(n, v)) == D.apply(n, theta(n, v))


@pytest.mark.parametrize("seed", range(4))
def test_kernel_complex_is_the_restriction(seed):
    rng = random.Random(seed)
    t = random_triple(rng, 3)
    C, K = GDerComplex(t), KernelComplex(t)
    for n in (2, 3):
        v = random_vec(K, n, rng, 0.6)
        assert C.apply(n, v) == K.apply(n, v)


@pytest.mark.parametrize("seed", range(4))
def test_splitting_when_delta_equals_h(seed):
    rng = random.Random(seed)
    t = random_triple(rng, 2, delta_eq_h=True)
    rep = les_dimension_check(t, None, 3)
    assert rep.delta_eq_h and rep.holds and all(rep.splitting)


@pytest.mark.parametrize("seed", range(4))
def test_exact_sequence_constraints(seed):
    rng = random.Random(seed + 100)
    t = random_triple(rng, 2, delta_eq_h=False)
    rep = les_dimension_check(t, random_module(t, rng), 3)
    assert rep.holds


def test_zero_module_is_trivial():
    t = random_triple(random.Random(0), 2)
    rep = les_dimension_check(t, GDerModule.zero(), 3)
    assert rep.gder == rep.assder == rep.kernel == [0, 0, 0] and rep.holds


def test_resource_guard():
    t = random_triple(random.Random(0), 3)
    with pytest.raises(ResourceGuard):
        cohomology(t, max_degree=6, cap=100)


def test_witnesses_are_cocycles():
    t = AsGDerTriple(1, {(0, 0): {0: 1}}, {}, {})
    cx = GDerComplex(t)
    for v in cx.cocycle_vectors(2):
        assert cx.apply(2, v) == {}
    rep = cohomology(t, max_degree=2, witnesses=True)
    assert set(rep.witnesses) == {"1", "2"}
