import pytest
from hypothesis import given, settings, strategies as st

from asgder.errors import InvalidPosition, MalformedElement
from asgder.rewriting import agd_alphabet, agd_dual_alphabet
from asgder.trees import (LEAF, Alphabet, Generator, Tree, corolla, enumerate_monomials, graft, graft_signed,
                          parse_poly, parse_tree, path_lex_compare, path_sequence, render)

A = agd_alphabet()


def test_graft_gives_left_comb():
    t = graft(corolla("mu", 2), 1, corolla("mu", 2))
    assert t == Tree.vertex("mu", [corolla("mu", 2), LEAF])
    assert render(t) == "mu o1 mu"


def test_graft_h_over_mu():
    t = graft(corolla("h", 1), 1, corolla("mu", 2))
    assert t.arity == 2 and t.weight == 2
    assert render(t) == "h o1 mu"


def test_graft_position_checked():
    with pytest.raises(InvalidPosition):
        graft(corolla("mu", 2), 3, LEAF)


def test_path_sequence_of_pictured_trees():
    alpha = Alphabet([Generator("m1", 3), Generator("m2", 2), Generator("m3", 1)])
    t = Tree.vertex("m1", [corolla("m2", 2), LEAF, corolla("m3", 1)])
    assert path_sequence(t) == (("m1", "m2"), ("m1", "m2"), ("m1",), ("m1", "m3"))
    u = Tree.vertex("m1", [corolla("m2", 2), LEAF])
    assert path_sequence(u) == (("m1", "m2"), ("m1", "m2"), ("m1",))
    assert path_sequence(corolla("mu", 2)) == (("mu",), ("mu",))
    assert alpha.tree_degree(t) == 0


def test_path_lex_order():
    m1m = parse_tree("mu o1 mu", A)
    m2m = parse_tree("mu o2 mu", A)
    assert path_lex_compare(corolla("mu", 2), m1m, A) == -1
    # mu o1 mu is the larger one, so it leads the associativity relator
    assert path_lex_compare(m1m, m2m, A) == 1
    assert path_lex_compare(m1m, m1m, A) == 0


def test_enumeration_examples():
    alpha = Alphabet([Generator("mu", 2)])
    assert {render(t) for t in enumerate_monomials(alpha, 3, 2)} == {"mu o1 mu", "mu o2 mu"}
    unary = enumerate_monomials(A, 1, 2)
    assert len(unary) == 7
    assert enumerate_monomials(A, 1, 0) == [LEAF]


def test_parse_errors():
    with pytest.raises(MalformedElement):
        parse_tree("mu o1", A)
    with pytest.raises(MalformedElement):
        parse_tree("nu o1 mu", A)
    with pytest.raises(MalformedElement):
        parse_tree("(mu o1 mu", A)


def test_odd_generators_pick_up_signs():
    D = agd_dual_alphabet()
    s, t = graft_signed(parse_tree("mubar o1 hbar", D), 2, corolla("hbar", 1), D)
    assert t == parse_tree("(mubar o1 hbar) o2 hbar", D)
    assert s == 1
    s2, t2 = graft_signed(parse_tree("mubar o2 hbar", D), 1, corolla("hbar", 1), D)
    assert t2 == t and s2 == -1


def trees(depth):
    if depth == 0:
        return st.just(LEAF)
    sub = trees(depth - 1)
    return st.one_of(
        st.just(LEAF),
        st.builds(lambda a, b: Tree.vertex("mu", [a, b]), sub, sub),
        st.builds(lambda a: Tree.vertex("h", [a]), sub),
        st.builds(lambda a: Tree.vertex("delta", [a]), sub),
    )


@settings(max_examples=80, deadline=None)
@given(trees(3))
def test_render_parse_roundtrip(t):
    assert parse_tree(render(t), A) == t


@settings(max_examples=60, deadline=None)
@given(trees(2), trees(2), trees(2), st.data())
def test_graft_associativity(t, u, v, data):
    i = data.draw(st.integers(1, t.arity))
    j = data.draw(st.integers(1, u.arity))
    assert graft(graft(t, i, u), i - 1 + j, v) == graft(t, i, graft(u, j, v))


@settings(max_examples=60, deadline=None)
@given(trees(2), trees(2))
def test_order_is_antisymmetric(t, u):
    assert path_lex_compare(t, u, A) == -path_lex_compare(u, t, A)


def test_parse_poly_collects_terms():
    p = parse_poly("mu o1 mu - mu o2 mu + mu o1 mu", A)
    assert p.terms == {parse_tree("mu o1 mu", A): 2, parse_tree("mu o2 mu", A): -1}
