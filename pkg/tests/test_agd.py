import pytest

from asgder.agd import (CooperadTable, Op, OperadTable, agd_presentation, agd_dual_presentation,
                        check_operad_axioms, cooperad_from_table, verify_dual_consistency)
from asgder.errors import InconsistencyFound
from asgder.trees import parse_poly


def test_presentation_relators():
    data = agd_presentation()
    a = data.alphabet
    assert data.relators == [parse_poly(s, a) for s in (
        "mu o1 mu - mu o2 mu", "h o1 mu - mu o1 h - mu o2 h", "delta o1 mu - mu o1 delta - mu o2 h")]


def test_dual_presentation_relators():
    data = agd_dual_presentation()
    a = data.alphabet
    rels = data.relators
    assert parse_poly("mubar o1 mubar - mubar o2 mubar", a) in rels
    assert parse_poly("mubar o2 deltabar", a) in rels
    assert parse_poly("mubar o2 hbar - deltabar o1 mubar - hbar o1 mubar", a) in rels
    assert len(rels) == 9


def test_dual_table_entries():
    t = OperadTable(6)
    assert t.compose(Op("mu", 3), 1, Op("h", 2)) == {Op("h", 4): 1}
    assert t.compose(Op("mu", 3), 2, Op("h", 2)) == {Op("delta", 4): 1, Op("h", 4): 1}
    assert t.compose(Op("h", 2), 1, Op("h", 2)) == {}
    assert t.compose(Op("mu", 2), 2, Op("delta", 2)) == {}
    assert t.compose(Op("delta", 2), 2, Op("mu", 3)) == {Op("delta", 4): 1}


def test_dual_operad_axioms_to_arity_six():
    assert check_operad_axioms(OperadTable(6), 6) == []


def test_cooperad_small_cases():
    co = CooperadTable(3)
    assert co.decompose_dict(Op("mu", 2)) == {
        (Op("mu", 2), 1, Op("mu", 1)): 1, (Op("mu", 2), 2, Op("mu", 1)): 1, (Op("mu", 1), 1, Op("mu", 2)): 1}
    assert co.decompose_dict(Op("delta", 1)) == {
        (Op("delta", 1), 1, Op("mu", 1)): 1, (Op("mu", 1), 1, Op("delta", 1)): 1}
    assert co.counit(Op("mu", 1)) == 1 and co.counit(Op("h", 1)) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_cooperad_matches_dual_of_table(n):
    co = CooperadTable(6)
    derived = cooperad_from_table(OperadTable(6), 6)
    for kind in ("mu", "h", "delta"):
        assert co.decompose_dict(Op(kind, n)) == derived[Op(kind, n)]


def test_consistency_reports():
    rep = verify_dual_consistency(4)
    assert rep.basis_dims == {1: 3, 2: 3, 3: 3, 4: 3}
    assert verify_dual_consistency(1).compositions_checked == 9


class FlippedCooperad(CooperadTable):
    def coefficient(self, kind, p, q, r, part):
        c = super().coefficient(kind, p, q, r, part)
        return -c if (kind, p, q, r, part) == ("h", 1, 2, 0, "x.mu") else c


class FlippedTable(OperadTable):
    def compose(self, x, i, y):
        out = super().compose(x, i, y)
        if (x, i, y) == (Op("mu", 2), 2, Op("h", 2)):
            return {k: -v for k, v in out.items()}
        return out


def test_sign_flip_is_detected():
    with pytest.raises(InconsistencyFound):
        verify_dual_consistency(4, cooperad=FlippedCooperad(4))
    with pytest.raises(InconsistencyFound):
        verify_dual_consistency(4, table=FlippedTable(4))
