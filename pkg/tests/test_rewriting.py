import pytest
from hypothesis import given, settings, strategies as st

from asgder.errors import ConfluenceNotEstablished, NotQuadratic
from asgder.rewriting import (QuadraticData, as_alphabet, check_confluence, critical_monomials, normal_form,
                              preset, quadratic_from_json, reduced_basis, require_confluent, rewritable, rules_from_quadratic)
from asgder.trees import TreePoly, parse_poly, parse_tree, render

AGD = rules_from_quadratic(preset("agd"))
ALPHA = AGD.alphabet
P = lambda s: parse_poly(s, ALPHA)
T = lambda s: parse_tree(s, ALPHA)


def test_agd_leading_terms():
    assert {render(r.lhs) for r in AGD.rules.values()} == {"mu o1 mu", "h o1 mu", "delta o1 mu"}


def test_dual_has_nine_rules():
    assert len(rules_from_quadratic(preset("agd-dual")).rules) == 9


def test_empty_relators():
    sys_ = rules_from_quadratic(QuadraticData(as_alphabet(), []))
    assert sys_.rules == {}
    assert critical_monomials(sys_) == []


def test_non_quadratic_rejected():
    with pytest.raises(NotQuadratic):
        rules_from_quadratic(QuadraticData(ALPHA, [P("mu")]))


def test_normal_form_of_critical_delta():
    nf = normal_form(T("delta o1 (mu o1 mu)"), AGD)
    assert nf == P("(mu o1 delta) o2 mu + (mu o2 mu) o2 h + (mu o2 mu) o3 h")


def test_reduced_monomial_is_fixed():
    trace = []
    p = P("mu o2 mu")
    assert normal_form(p, AGD, trace=trace) == p
    assert trace == []


def test_both_strategies_agree_on_mu_comb():
    t = T("mu o1 (mu o1 mu)")
    a = normal_form(t, AGD, "outermost")
    b = normal_form(t, AGD, "innermost")
    assert a == b == P("(mu o2 mu) o3 mu")


def test_agd_critical_monomials_and_confluence():
    crit = {render(t) for t in critical_monomials(AGD)}
    assert crit == {render(T(s)) for s in ("mu o1 (mu o1 mu)", "h o1 (mu o1 mu)", "delta o1 (mu o1 mu)")}
    rep = check_confluence(AGD)
    assert rep.confluent and len(rep.critical) == 3


def test_dual_is_confluent():
    assert check_confluence(rules_from_quadratic(preset("agd-dual"))).confluent


def test_deglex_gives_the_same_rules():
    other = rules_from_quadratic(preset("agd"), "deglex")
    assert {render(r.lhs) for r in other.rules.values()} == {render(r.lhs) for r in AGD.rules.values()}
    assert check_confluence(other).confluent


def test_wrong_coefficient_is_not_confluent():
    data = quadratic_from_json({"generators": [{"name": "mu", "arity": 2}], "relators": ["mu o1 mu - 2 mu o2 mu"]})
    system = rules_from_quadratic(data)
    assert not check_confluence(system).confluent
    with pytest.raises(ConfluenceNotEstablished):
        require_confluent(system)


def test_reduced_basis_dimensions():
    dual = rules_from_quadratic(preset("agd-dual"))
    for n in range(1, 7):
        assert len(reduced_basis(dual, n, n + 1)) == 3
    assert len(reduced_basis(AGD, 1, 2)) == 7
    assert len(reduced_basis(rules_from_quadratic(preset("as")), 4, 3)) == 1


MONOS = [t for n in range(1, 4) for t in reduced_basis(rules_from_quadratic(QuadraticData(ALPHA, [])), n, 3)]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(MONOS), st.integers(-3, 3)), min_size=1, max_size=4))
def test_normal_form_is_idempotent(terms):
    p = TreePoly()
    for t, c in terms:
        p.add_term(t, c)
    nf = normal_form(p, AGD)
    assert normal_form(nf, AGD) == nf
    assert all(not rewritable(t, AGD) for t in nf.terms)
