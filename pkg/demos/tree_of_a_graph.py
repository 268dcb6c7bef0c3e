"""From a finite graph to a labeled tree to a linear order.

The tree has one node per tuple of vertices, labeled by the code of the
tuple's diagram.  Related tree nodes have related tuples, and the linear
order built from the tree carries the tree's Scott complexity.
"""
import itertools

from scottlo import fs
from scottlo.classifier import SSCLabel, fs_ssc_transfer
from scottlo.oracle import FiniteStructure, bf_le_finite
from scottlo.terms import render

path = FiniteStructure((0, 1, 2), (("E", 2),), {"E": [(0, 1), (1, 2)]})
tree = fs.tree_of_tuples(path, 2)
print(fs.dump_tree(tree))
print()
print("order:", render(fs.order_of_tree(tree)))

own = SSCLabel.parse(fs.structure_ssc(path))
print(f"complexity: graph {own}, tree of tuples {fs_ssc_transfer(own)}")

# which single vertices look alike, seen from the graph and from a deeper tree
deep = fs.TreeOracle(fs.tree_of_tuples(path, 3))
for k in (0, 1, 2):
    pairs = [(a, b) for a, b in itertools.permutations(path.universe, 2)
             if deep.le([(a,)], [(b,)], k)]
    agree = all(bf_le_finite(path, (a,), path, (b,), k) for a, b in pairs)
    print(f"level {k}: tree-related vertex pairs {pairs}; related in the graph too: {agree}")
