"""Trees of tuples, label coding, the order attached to a labeled tree, and
back-and-forth relations on replicated labeled trees.

Tree nodes are tuples; the parent of a node is the tuple without its last
entry and the root is ().  For the tree of tuples of a structure the node is
literally the tuple of elements it stands for.

A *replicated* tree has infinitely many copies of every child subtree.  A
point of the replicated tree is a `Point(node, copies)` with one copy index
per step below the root.  Plain nodes are read as the copy-0 point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import NamedTuple, Sequence

from .oracle import CapExceeded, FiniteStructure
from .terms import Finite, OrderTerm, Shuffle, canonicalize, sum_of

TREE_UNIVERSE_CAP = 5
TREE_DEPTH_CAP = 3


# ---------------------------------------------------------------- label coding

def cantor_pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def cantor_unpair(z: int) -> tuple[int, int]:
    w = (math.isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def diagram_atoms(vocabulary: Sequence, length: int) -> list[tuple[str, tuple]]:
    """Atoms of the diagram of a length-n tuple in canonical order: equalities
    i < j first, then each relation (by name) on every index tuple."""
    out = [("=", (i, j)) for i in range(1, length + 1) for j in range(i + 1, length + 1)]
    for name, arity in sorted(vocabulary):
        for idx in product(range(1, length + 1), repeat=arity):
            out.append((name, idx))
    return out


def _atom_key(atom):
    rel, idx = atom[0], atom[1]
    return (rel != "=", rel, tuple(idx))


def label_code(diagram, length: int) -> int:
    """Natural number coding a complete diagram of a tuple of the given length.

    The code pairs the length with the bit-vector of truth values listed in
    canonical atom order, so decoding needs the vocabulary.
    """
    entries = sorted(((rel, tuple(idx), bool(v)) for rel, idx, v in diagram), key=_atom_key)
    if len({(r, i) for r, i, _ in entries}) != len(entries):
        raise ValueError("diagram lists an atom twice")
    for rel, idx, _ in entries:
        if any(not 1 <= i <= length for i in idx):
            raise ValueError(f"index out of range in {rel}{idx} for length {length}")
    bits = sum(1 << pos for pos, (_, _, v) in enumerate(entries) if v)
    return cantor_pair(length, bits)


def decode_label(code: int, vocabulary: Sequence) -> tuple[tuple, int]:
    length, bits = cantor_unpair(code)
    atoms = diagram_atoms(vocabulary, length)
    if bits >> len(atoms):
        raise ValueError(f"code {code} is not a diagram over this vocabulary")
    diagram = tuple((rel, idx, bool(bits >> pos & 1)) for pos, (rel, idx) in enumerate(atoms))
    return diagram, length


def tuple_diagram(s: FiniteStructure, tup: Sequence) -> tuple:
    return tuple(
        (rel, idx, (tup[idx[0] - 1] == tup[idx[1] - 1]) if rel == "=" else s.holds(rel, [tup[i - 1] for i in idx]))
        for rel, idx in diagram_atoms(s.vocabulary, len(tup))
    )


def render_diagram(diagram) -> str:
    parts = []
    for rel, idx, v in diagram:
        if rel == "=":
            parts.append(f"{idx[0]}{'=' if v else '!='}{idx[1]}")
        else:
            parts.append(f"{'' if v else '~'}{rel}({','.join(map(str, idx))})")
    return " ".join(parts) if parts else "-"


# ---------------------------------------------------------------- trees

@dataclass(frozen=True)
class LabeledTree:
    labels: dict  # node tuple -> natural number
    vocabulary: tuple | None = None
    replicated: bool = True
    _children: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        labels = {tuple(k): int(v) for k, v in dict(self.labels).items()}
        if () not in labels:
            raise ValueError("a tree needs a root ()")
        kids: dict = {n: [] for n in labels}
        for n in labels:
            if n:
                if n[:-1] not in labels:
                    raise ValueError(f"node {n} has no parent in the tree")
                kids[n[:-1]].append(n)
        for n in kids:
            kids[n].sort(key=repr)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_children", kids)
        if self.vocabulary is not None:
            object.__setattr__(self, "vocabulary", tuple((n, int(a)) for n, a in self.vocabulary))

    def __hash__(self):
        return hash((frozenset(self.labels.items()), self.vocabulary, self.replicated))

    @property
    def nodes(self) -> list:
        return sorted(self.labels, key=lambda n: (len(n), repr(n)))

    @property
    def depth(self) -> int:
        return max(len(n) for n in self.labels)

    def children(self, node) -> list:
        return self._children[tuple(node)]

    def label(self, node) -> int:
        return self.labels[tuple(node)]

    def height(self, node) -> int:
        return len(node)

    def extensions(self, node) -> list:
        node = tuple(node)
        return [n for n in self.nodes if n[:len(node)] == node]

    def diagram(self, node) -> tuple:
        if self.vocabulary is None:
            raise ValueError("labels can only be decoded when the vocabulary is known")
        return _decoded(self.label(node), self.vocabulary)[0]

    def diagram_set(self, node) -> frozenset:
        return _diagram_set(self.label(node), self.vocabulary)

    def __len__(self) -> int:
        return len(self.labels)


@lru_cache(maxsize=None)
def _decoded(code: int, vocabulary: tuple):
    return decode_label(code, vocabulary)


@lru_cache(maxsize=None)
def _diagram_set(code: int, vocabulary: tuple) -> frozenset:
    return frozenset(_decoded(code, vocabulary)[0])


def tree_of_tuples(s: FiniteStructure, depth: int, universe_cap: int = TREE_UNIVERSE_CAP,
                   depth_cap: int = TREE_DEPTH_CAP) -> LabeledTree:
    """Every tuple of length <= depth, each labeled by the code of its diagram."""
    if len(s.universe) > universe_cap:
        raise CapExceeded("universe", len(s.universe), universe_cap)
    if depth > depth_cap:
        raise CapExceeded("depth", depth, depth_cap)
    labels = {}
    for n in range(depth + 1):
        for tup in product(s.universe, repeat=n):
            labels[tup] = label_code(tuple_diagram(s, tup), n)
    return LabeledTree(labels, s.vocabulary)


def tree_from_nested(shape) -> LabeledTree:
    """Build a tree from ``label`` or ``[label, [child, ...]]``; node ids are
    paths of child positions."""
    labels = {}

    def walk(node, path):
        if isinstance(node, int):
            labels[path] = node
            return
        lab, kids = node
        labels[path] = int(lab)
        for i, c in enumerate(kids):
            walk(c, path + (i,))

    walk(shape, ())
    return LabeledTree(labels)


def dump_tree(tree: LabeledTree) -> str:
    """One line per node: ``node-id: parent, label, decoded-diagram``, indented by depth."""
    lines = []

    def walk(n):
        parent = "-" if not n else _node_text(n[:-1])
        decoded = render_diagram(tree.diagram(n)) if tree.vocabulary is not None else "-"
        lines.append(f"{'  ' * len(n)}{_node_text(n)}: {parent}, {tree.label(n)}, {decoded}")
        for c in tree.children(n):
            walk(c)

    walk(())
    return "\n".join(lines)


def _node_text(n: tuple) -> str:
    return "(" + ",".join(map(str, n)) + ")"


def tree_to_json(tree: LabeledTree) -> dict:
    out = {"nodes": [{"id": list(n), "parent": list(n[:-1]) if n else None, "label": tree.label(n)}
                     for n in tree.nodes]}
    if tree.vocabulary is not None:
        out["vocabulary"] = [list(v) for v in tree.vocabulary]
        for row, n in zip(out["nodes"], tree.nodes):
            row["diagram"] = render_diagram(tree.diagram(n))
    return out


# ---------------------------------------------------------------- replicated trees

def subtree_types(tree: LabeledTree) -> dict:
    """Node -> small integer naming the isomorphism type of its replicated subtree
    (label plus the set of child types; multiplicities vanish under replication)."""
    sig: dict = {}
    ids: dict = {}
    for n in sorted(tree.labels, key=len, reverse=True):
        key = (tree.label(n), frozenset(sig[c] for c in tree.children(n)))
        sig[n] = ids.setdefault(key, len(ids))
    return sig


def representatives(tree: LabeledTree) -> list:
    """One stored node per sibling class of isomorphic replicated subtrees."""
    types = subtree_types(tree)
    out, seen = [], set()
    for n in tree.nodes:
        key = (n[:-1], types[n]) if n else ((), types[n])
        if key not in seen:
            seen.add(key)
            out.append(n)
    return out


class Point(NamedTuple):
    node: tuple
    copies: tuple

    def step(self, t: int) -> tuple:
        return (self.node[t], self.copies[t])

    def ancestor(self, depth: int) -> "Point":
        return Point(self.node[:depth], self.copies[:depth])

    def __str__(self):
        if not any(self.copies):
            return _node_text(self.node)
        return _node_text(self.node) + "#" + ".".join(map(str, self.copies))


def as_point(x) -> Point:
    if isinstance(x, Point):
        return x
    x = tuple(x)
    return Point(x, (0,) * len(x))


def _meet(p: Point, q: Point) -> int:
    m = 0
    while m < min(len(p.node), len(q.node)) and p.step(m) == q.step(m):
        m += 1
    return m


def entirely_incomparable(p, q) -> bool:
    """No common ancestor other than the root."""
    return _meet(as_point(p), as_point(q)) == 0


class TreeOracle:
    """Back-and-forth relations between tuples of points of a replicated tree.

    For k >= 1 the universal player may as well name whole downward-closed
    sets, so a position is determined by the ancestor closures of the two
    tuples: they must match level by level with equal labels, and each matched
    pair of nodes must satisfy the rooted-subtree relation `sub`.
    sub(u, v, k+1) asks for equal labels and that every finite rooted subtree
    chosen below v be copied below u, node by node, with the reversed
    relation at level k.  Children can be copied independently because every
    child subtree occurs infinitely often.
    """

    def __init__(self, tree: LabeledTree):
        self.tree = tree
        self.types = subtree_types(tree)
        self._label: dict = {}
        self._kids: dict = {}
        for n, t in self.types.items():
            self._label[t] = tree.label(n)
            self._kids[t] = frozenset(self.types[c] for c in tree.children(n))
        self._sub: dict = {}
        self._copy: dict = {}

    def sub(self, u: int, v: int, k: int) -> bool:
        key = (u, v, k)
        if key not in self._sub:
            if self._label[u] != self._label[v]:
                res = False
            elif k == 0:
                res = True
            else:
                res = self._copies(v, u, k - 1)
            self._sub[key] = res
        return self._sub[key]

    def _copies(self, b: int, a: int, j: int) -> bool:
        key = (b, a, j)
        if key not in self._copy:
            ok = self.sub(b, a, j) if j else self._label[a] == self._label[b]
            self._copy[key] = ok and all(any(self._copies(cb, ca, j) for ca in self._kids[a])
                                         for cb in self._kids[b])
        return self._copy[key]

    def atomic_type(self, pts: Sequence[Point]) -> tuple:
        labels = tuple(self.tree.label(p.node) for p in pts)
        eq = tuple(p == q for i, p in enumerate(pts) for q in pts[i + 1:])
        par = tuple(len(q.node) == len(p.node) + 1 and q.ancestor(len(p.node)) == p
                    for p in pts for q in pts)
        return labels, eq, par

    def le(self, a: Sequence, b: Sequence, k: int) -> bool:
        a = [as_point(x) for x in a]
        b = [as_point(x) for x in b]
        if len(a) != len(b):
            raise ValueError("tuples must have equal length")
        if k == 0:
            return self.atomic_type(a) == self.atomic_type(b)
        pairs = {}
        for i, (p, q) in enumerate(zip(a, b)):
            if len(p.node) != len(q.node):
                return False
            for j in range(i + 1, len(a)):
                if _meet(p, a[j]) != _meet(q, b[j]):
                    return False
            for t in range(len(p.node) + 1):
                pairs[p.ancestor(t)] = q.ancestor(t)
        if not a:
            pairs[Point((), ())] = Point((), ())
        return all(self.sub(self.types[x.node], self.types[y.node], k) for x, y in pairs.items())


def tree_le(tree: LabeledTree, a: Sequence, b: Sequence, k: int) -> bool:
    return TreeOracle(tree).le(a, b, k)


def game_le(tree: LabeledTree, a: Sequence, b: Sequence, k: int, max_move: int = 2) -> bool:
    """Plays the back-and-forth game on the replicated tree directly, with each
    move limited to max_move new points.  Slow; used to cross-check TreeOracle
    on small trees."""
    oracle = TreeOracle(tree)
    memo: dict = {}

    def candidates(pts: tuple) -> list:
        used: dict = {}
        for p in pts:
            for t in range(len(p.node)):
                used.setdefault((p.ancestor(t), p.node[t]), set()).add(p.copies[t])
        out = [Point((), ())]
        frontier = [Point((), ())]
        while frontier:
            nxt = []
            for p in frontier:
                for c in tree.children(p.node):
                    have = used.get((p, c[-1]), set())
                    fresh = [max(have, default=-1) + 1 + i for i in range(max_move)]
                    for cp in sorted(have) + fresh:
                        q = Point(c, p.copies + (cp,))
                        out.append(q)
                        nxt.append(q)
            frontier = nxt
        return out

    def rec(a: tuple, b: tuple, k: int) -> bool:
        key = (a, b, k)
        if key in memo:
            return memo[key]
        res = oracle.atomic_type(a) == oracle.atomic_type(b)
        if res and k > 0 and a != b:  # identical positions: copy every move
            cb, ca = candidates(b), candidates(a)
            for n in range(1, max_move + 1):
                for d in product(cb, repeat=n):
                    target = oracle.atomic_type(b + d)
                    answers = [c for c in product(ca, repeat=n) if oracle.atomic_type(a + c) == target]
                    if a == b and d in answers:
                        answers.remove(d)
                        answers.insert(0, d)
                    if not any(rec(b + d, a + c, k - 1) for c in answers):
                        res = False
                        break
                if not res:
                    break
        memo[key] = res
        return res

    return rec(tuple(as_point(x) for x in a), tuple(as_point(x) for x in b), k)


# ---------------------------------------------------------------- trees to orders

def order_of_tree(tree: LabeledTree, node: tuple = ()) -> OrderTerm:
    """The linear order of a replicated tree: the block of a node (label + 2
    points) followed by a dense mixture of the orders of its child subtrees."""
    return canonicalize(_order(tree, tuple(node)))


def _order(tree: LabeledTree, node: tuple) -> OrderTerm:
    block = Finite(tree.label(node) + 2)
    kids = {_order(tree, c) for c in tree.children(node)}
    if not kids:
        return block
    return sum_of([block, Shuffle(frozenset(kids))])


def block_intervals(tree: LabeledTree, node: tuple) -> tuple[OrderTerm, OrderTerm]:
    """Order types to the left and to the right of one block of `node` inside
    order_of_tree(tree)."""
    node = tuple(node)
    left, right = [], []
    for t in range(len(node)):
        anc = node[:t]
        mix = Shuffle(frozenset(_order(tree, c) for c in tree.children(anc)))
        left += [Finite(tree.label(anc) + 2), mix]
        right.insert(0, mix)
    if tree.children(node):
        right.insert(0, Shuffle(frozenset(_order(tree, c) for c in tree.children(node))))
    return canonicalize(sum_of(left)), canonicalize(sum_of(right))


# ---------------------------------------------------------------- Scott complexity

def structure_ssc(s: FiniteStructure) -> str:
    """Scott sentence complexity of a finite structure in a finite relational
    vocabulary.  One point is pinned down by a universal sentence; anything
    larger has proper substructures, which no universal sentence can exclude,
    while "has a copy of the diagram and no further point" is d-Sigma_1."""
    return "Pi_1" if len(s.universe) <= 1 else "dSigma_1"
