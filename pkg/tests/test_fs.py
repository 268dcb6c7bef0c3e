import itertools

import pytest
from hypothesis import given, settings, strategies as st

from scottlo import fs
from scottlo.engine import Engine
from scottlo.oracle import CapExceeded, FiniteStructure, bf_le_finite
from scottlo.terms import render

EDGE = FiniteStructure((0, 1), (("E", 2),), {"E": [(0, 1)]})

vocabularies = st.lists(st.tuples(st.sampled_from("EPR"), st.integers(1, 2)),
                        max_size=2, unique_by=lambda v: v[0])


@st.composite
def diagrams(draw):
    vocab = draw(vocabularies)
    length = draw(st.integers(0, 3))
    atoms = fs.diagram_atoms(vocab, length)
    values = draw(st.lists(st.booleans(), min_size=len(atoms), max_size=len(atoms)))
    return vocab, length, tuple((r, i, v) for (r, i), v in zip(atoms, values))


@given(diagrams())
@settings(max_examples=500, deadline=None)
def test_label_round_trip(case):
    vocab, length, diagram = case
    code = fs.label_code(diagram, length)
    assert fs.decode_label(code, vocab) == (diagram, length)


@given(st.integers(0, 10**6))
def test_cantor_pair_inverts(z):
    assert fs.cantor_pair(*fs.cantor_unpair(z)) == z


def test_label_code_rejects_duplicates():
    with pytest.raises(ValueError):
        fs.label_code([("E", (1, 1), True), ("E", (1, 1), False)], 1)


def test_tree_of_one_edge():
    tree = fs.tree_of_tuples(EDGE, 2)
    assert len(tree) == 7
    assert tree.children(()) == [(0,), (1,)]
    assert ("E", (1, 2), True) in tree.diagram((0, 1))
    assert ("E", (1, 2), False) in tree.diagram((1, 0))


def test_dump_lists_every_node_with_parent():
    lines = fs.dump_tree(fs.tree_of_tuples(EDGE, 2)).splitlines()
    assert len(lines) == 7
    assert lines[0].startswith("(): -,")
    assert lines[2].strip().startswith("(0,0): (0),")


def test_caps():
    big = FiniteStructure(tuple(range(6)), (("E", 2),), {"E": []})
    with pytest.raises(CapExceeded):
        fs.tree_of_tuples(big, 1)
    with pytest.raises(CapExceeded):
        fs.tree_of_tuples(EDGE, 4)


def test_tree_json_has_parents():
    data = fs.tree_to_json(fs.tree_of_tuples(EDGE, 1))
    assert {tuple(r["id"]): r["parent"] for r in data["nodes"]}[(1,)] == []


def test_bad_trees_rejected():
    with pytest.raises(ValueError):
        fs.LabeledTree({(0,): 1})
    with pytest.raises(ValueError):
        fs.LabeledTree({(): 0, (0, 0): 1})


def test_replication_identifies_copies():
    tree = fs.tree_from_nested([0, [[1, [2]], [1, [2]], [1, []]]])
    types = fs.subtree_types(tree)
    assert types[(0,)] == types[(1,)] != types[(2,)]
    assert len(fs.representatives(tree)) < len(tree)


SMALL = [0, [[1, [0]], [1, []]]]


def test_tree_oracle_matches_direct_game():
    tree = fs.tree_from_nested(SMALL)
    oracle = fs.TreeOracle(tree)
    nodes = tree.nodes
    for k in (0, 1, 2):
        for a, b in itertools.product(nodes, repeat=2):
            if len(a) == len(b):
                assert oracle.le([a], [b], k) == fs.game_le(tree, [a], [b], k), (a, b, k)


def test_oracle_separates_at_level_two_only():
    oracle = fs.TreeOracle(fs.tree_from_nested(SMALL))
    assert oracle.le([(0,)], [(1,)], 1)
    assert not oracle.le([(0,)], [(1,)], 2)


def test_related_nodes_have_related_tuples():
    s = FiniteStructure((0, 1, 2), (("E", 2),), {"E": [(0, 1), (1, 2)]})
    tree = fs.tree_of_tuples(s, 3)
    oracle = fs.TreeOracle(tree)
    pts = [n for n in tree.nodes if len(n) == 1]
    for a, b in itertools.product(pts, repeat=2):
        if oracle.le([a], [b], 1):
            assert bf_le_finite(s, a, s, b, 1)


@pytest.mark.parametrize("shape,order", [
    (3, "5"),
    ([0, [1]], "2 + sh(3)"),
    ([0, [1, 2]], "2 + sh(3, 4)"),
    ([0, [[1, [2]]]], "2 + sh(3 + sh(4))"),
])
def test_order_of_tree(shape, order):
    assert render(fs.order_of_tree(fs.tree_from_nested(shape))) == order


def test_one_edge_order():
    got = render(fs.order_of_tree(fs.tree_of_tuples(EDGE, 2)))
    assert got == "2 + sh(3 + sh(27, 9), 3 + sh(65, 9))"


def test_least_point_separates_from_shuffle_at_level_two():
    # the order of a root with one leaf child starts with a block, so it has a
    # least point; the plain shuffle of the two block sizes does not
    e = Engine(budget=30.0)
    lt = render(fs.order_of_tree(fs.tree_from_nested([0, [1]])))
    assert e.le(lt, "sh(2,3)", 1) and e.le("sh(2,3)", lt, 1)
    assert e.le(lt, "sh(2,3)", 2) is True
    assert e.le("sh(2,3)", lt, 2) is False


def test_block_intervals():
    tree = fs.tree_from_nested([0, [1, 2]])
    left, right = fs.block_intervals(tree, (0,))
    assert render(left) == "2 + sh(3, 4)"
    assert render(right) == "sh(3, 4)"
    left, right = fs.block_intervals(tree, ())
    assert render(left) == "0" and render(right) == "sh(3, 4)"


def test_structure_ssc():
    assert fs.structure_ssc(FiniteStructure((0,), (("E", 2),), {"E": []})) == "Pi_1"
    assert fs.structure_ssc(EDGE) == "dSigma_1"


def test_one_point_structure_tree():
    one = FiniteStructure(("a",), (), {})
    assert len(fs.tree_of_tuples(one, 1)) == 2
    assert fs.label_code([], 0) == 0


def test_swapped_pair_codes():
    both = FiniteStructure((0, 1), (("E", 2),), {"E": [(0, 1), (1, 0)]})
    tree = fs.tree_of_tuples(both, 2)
    assert tree.label((0, 1)) == tree.label((1, 0)) == 117
    directed = fs.tree_of_tuples(EDGE, 2)
    assert directed.label((0, 1)) != directed.label((1, 0))


def test_single_flip_changes_code():
    atoms = fs.diagram_atoms([("E", 2)], 2)
    base = [(r, i, False) for r, i in atoms]
    codes = {fs.label_code(base, 2)}
    for pos in range(len(base)):
        flipped = list(base)
        r, i, _ = flipped[pos]
        flipped[pos] = (r, i, True)
        codes.add(fs.label_code(flipped, 2))
    assert len(codes) == len(base) + 1
