import random
from fractions import Fraction

import pytest

from asgder.errors import InvalidModule
from asgder.random_data import random_candidate, random_module, random_triple
from asgder.triples import (AsGDerTriple, GDerModule, TripleMorphism, free_extension, free_triple,
                            free_truncation_filters, inner_generalized, semidirect, tensor_triple,
                            validate_assder_pair, validate_module, validate_morphism, validate_triple)


def upper_triangular():
    # E11, E12, E22
    mu = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}
    return AsGDerTriple(3, mu, {}, {})


def test_zero_multiplication_is_always_valid():
    t = AsGDerTriple(2, {}, {0: {1: 3}, 1: {0: -1}}, {0: {0: 2}})
    assert validate_triple(t) == []


@pytest.mark.parametrize("c", [0, 1, -2, Fraction(5, 3)])
def test_nilpotent_line(c):
    t = AsGDerTriple(1, {}, {0: {0: 1}}, {0: {0: c}})
    assert validate_triple(t) == []


def test_idempotent_with_identity_h_is_invalid():
    t = AsGDerTriple(2, {(0, 0): {0: 1}}, {0: {0: 1}}, {})
    bad = validate_triple(t)
    assert any(v.identity.startswith("h(ab)") for v in bad)


def test_unit_axiom():
    t = AsGDerTriple(1, {(0, 0): {0: 1}}, {}, {}, unit=0)
    assert validate_triple(t) == []
    bad = AsGDerTriple(2, {(0, 0): {0: 1}}, {}, {}, unit=0)
    assert validate_triple(bad) != []


def test_inner_generalized_examples():
    t = upper_triangular()
    rep = inner_generalized(t, {}, {})
    assert rep.triple.h == {} and rep.triple.delta == {}
    rep = inner_generalized(t, {0: 1}, {0: 1})
    assert validate_triple(rep.triple) == []
    comm = AsGDerTriple(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, {}, {})
    rep = inner_generalized(comm, {1: 2}, {0: 1, 1: -1})
    assert rep.triple.h == {}
    assert rep.triple.delta == {0: {0: 1, 1: 1}, 1: {1: 1}}


def test_inner_generalized_convention_is_stable():
    rng = random.Random(1)
    conventions = set()
    for _ in range(10):
        a = {i: rng.randint(-2, 2) for i in range(3)}
        b = {i: rng.randint(-2, 2) for i in range(3)}
        rep = inner_generalized(upper_triangular(), a, b)
        if rep.triple.h:
            conventions.add(rep.convention)
    assert conventions == {"h(x) = xb - bx"}


def test_tensor_triple_examples():
    t = tensor_triple(1, {0: {(0,): 1}}, {0: {(0, 0): 1}}, 3)
    assert t.dim == 3 and validate_triple(t) == []
    z = tensor_triple(2, {}, {}, 2)
    assert z.h == {} and z.delta == {}


def test_tensor_triple_delta_formula():
    d = {0: {(1,): 1}, 1: {(0,): 2}}
    d0 = {0: {(0, 1): 1}, 1: {(1,): -1}}
    t = tensor_triple(2, d, d0, 3)
    assert validate_triple(t) == []
    idx = {lab: k for k, lab in enumerate(t.labels)}
    # delta(v1 v2) = delta0(v1) v2 + v1 d(v2)
    got = t.apply_delta({idx["(v1⊗v2)"]: 1})
    assert got == {idx["(v1⊗v2⊗v2)"]: 1, idx["(v1⊗v1)"]: 2}


def test_free_triple_small_case():
    free = free_triple(1, 1, 1)
    t = free.triple
    assert [lab for lab in t.labels] == ["1v1", "xv1", "yv1"]
    assert t.h == {0: {1: 1}}
    assert t.delta == {0: {2: 1}}
    assert validate_triple(t) == []


@pytest.mark.parametrize("dims", [(1, 2, 2), (2, 1, 2), (2, 2, 1)])
def test_free_triples_validate(dims):
    assert validate_triple(free_triple(*dims).triple) == []


def test_free_extension_is_a_morphism():
    rng = random.Random(4)
    free = free_triple(2, 2, 2)
    ok_p, ok_u = free_truncation_filters(free)
    for _ in range(5):
        B = random_triple(rng, 3)
        phi = {v: {i: rng.randint(-2, 2) for i in range(B.dim)} for v in range(2)}
        f = free_extension(free, B, phi)
        assert validate_morphism(f, ok_p, ok_u) == []


def test_identity_and_zero_morphisms():
    rng = random.Random(0)
    t = random_triple(rng, 3)
    ident = TripleMorphism(t, t, {i: {i: 1} for i in range(t.dim)})
    assert validate_morphism(ident) == []
    u = random_triple(rng, 3)
    assert validate_morphism(TripleMorphism(t, u, {})) == []


def test_bad_morphism_detected():
    t = AsGDerTriple(1, {(0, 0): {0: 1}}, {}, {})
    f = TripleMorphism(t, t, {0: {0: 2}})
    assert validate_morphism(f)


def test_regular_and_zero_modules():
    rng = random.Random(2)
    t = random_triple(rng, 3)
    assert validate_module(t, GDerModule.regular(t)) == []
    s = semidirect(t, GDerModule.regular(t))
    assert s.dim == 2 * t.dim and validate_triple(s) == []
    z = semidirect(t, GDerModule.zero())
    assert z.mu == t.mu and z.h == t.h and z.delta == t.delta


def test_invalid_module_rejected():
    t = AsGDerTriple(1, {(0, 0): {0: 1}}, {}, {})
    mod = GDerModule(1, {(0, 0): {0: 2}}, {}, {}, {})
    assert validate_module(t, mod)
    with pytest.raises(InvalidModule):
        semidirect(t, mod)


@pytest.mark.parametrize("seed", range(30))
def test_random_triples_modules_and_semidirect(seed):
    rng = random.Random(seed)
    t = random_triple(rng, 3)
    assert validate_triple(t) == []
    mod = random_module(t, rng)
    assert validate_module(t, mod) == []
    s = semidirect(t, mod)
    assert validate_triple(s) == []
    n = t.dim
    for i in range(n, s.dim):
        for j in range(n, s.dim):
            assert not s.mul({i: 1}, {j: 1})


@pytest.mark.parametrize("seed", range(40))
def test_delta_equal_h_reduces_to_assder_pairs(seed):
    rng = random.Random(seed)
    c = random_candidate(rng, rng.randint(1, 2)) if seed % 2 else random_triple(rng, 2)
    t = c.with_maps(delta=c.h)
    assert (validate_triple(t) == []) == (validate_assder_pair(t) == [])
