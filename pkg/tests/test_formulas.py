import pytest

from scottlo import fs
from scottlo.formulas import (
    And, Atom, Exists, Forall, HeightAtLeast, LabelHas, Not, Or, Top, UnsupportedConnective, eval_formula, free_vars,
    qf_formulas, quantifier_prefix, quantifier_rank, render, transport_formula,
)
from scottlo.oracle import FiniteStructure

PATH = FiniteStructure((0, 1, 2), (("E", 2),), {"E": [(0, 1), (1, 2)]})


def test_negation_only_on_atoms():
    with pytest.raises(UnsupportedConnective):
        Not(And([Atom("E", ("x", "y"))]))


def test_rank_prefix_and_free_vars():
    phi = Forall("x", Exists("y", Atom("E", ("x", "y"))))
    assert quantifier_rank(phi) == 2
    assert quantifier_prefix(phi) == "AE"
    assert free_vars(phi) == set()
    assert free_vars(phi.body) == {"x"}


def test_eval_on_structure():
    has_successor = Exists("y", Atom("E", ("x", "y")))
    assert eval_formula(PATH, has_successor, {"x": 0})
    assert not eval_formula(PATH, has_successor, {"x": 2})
    assert not eval_formula(PATH, Forall("x", has_successor))


def test_unbound_variable():
    with pytest.raises(KeyError):
        eval_formula(PATH, Atom("E", ("x", "y")), {"x": 0})


def test_qf_family_size_and_shape():
    fams = list(qf_formulas([("E", 2)], ["x1"], max_atoms=1))
    assert fams
    assert all(quantifier_rank(f) == 0 for f in fams)


@pytest.mark.parametrize("phi", [
    Exists("y", And([Atom("E", ("x1", "y")), Not(Atom("=", ("x1", "y")))])),
    Forall("y", Or([Not(Atom("E", ("y", "x1"))), Atom("E", ("x1", "x1"))])),
    Exists("y", Forall("z", Or([Not(Atom("E", ("z", "y"))), Atom("=", ("z", "x1"))]))),
])
def test_transport_of_quantified_formulas(phi):
    tree = fs.tree_of_tuples(PATH, 3)
    tphi = transport_formula(phi, ("x1",))
    for a in PATH.universe:
        assert eval_formula(tree, tphi, {"x": (a,)}) == eval_formula(PATH, phi, {"x1": a}), (a, render(tphi))


def test_quantifying_past_the_tree_is_refused():
    tree = fs.tree_of_tuples(PATH, 1)
    tphi = transport_formula(Exists("y", Atom("E", ("x1", "y"))), ("x1",))
    with pytest.raises(ValueError):
        eval_formula(tree, tphi, {"x": (0,)})


def test_transport_of_disjunction():
    tree = fs.tree_of_tuples(PATH, 2)
    phi = Or([Atom("E", ("x1", "x2")), Atom("E", ("x2", "x1"))])
    tphi = transport_formula(phi, ("x1", "x2"))
    for a in PATH.universe:
        for b in PATH.universe:
            want = eval_formula(PATH, phi, {"x1": a, "x2": b})
            assert eval_formula(tree, tphi, {"x": (a, b)}) == want


def test_edge_exists():
    edge = FiniteStructure((0, 1), (("E", 2),), {"E": [(0, 1)]})
    assert eval_formula(edge, Exists("x", Exists("y", Atom("E", ("x", "y")))))


def test_empty_universe_makes_forall_true():
    empty = FiniteStructure((), (("E", 2),), {"E": []})
    assert eval_formula(empty, Forall("x", Atom("=", ("x", "x"))))


def test_atom_transport_shape():
    tphi = transport_formula(Atom("E", ("x1", "x2")), ("x1", "x2"))
    assert render(tphi) == render(And([HeightAtLeast("x", 2), LabelHas("x", "E", (1, 2), True)]))


def test_tautology_transports_to_true():
    assert transport_formula(Top(), ("x1",)) == Top()
    assert transport_formula(Atom("=", ("x1", "x1")), ("x1",)) == HeightAtLeast("x", 1)
