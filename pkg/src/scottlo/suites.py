"""Named verification suites run by `scottlo verify-suite`.

Each suite yields SuiteResult rows.  Expected values carry an anchor naming
the result they come from; seeds and bounds are fixed so reruns are identical
apart from elapsed times.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator

from .classifier import Classifier, SSCLabel, classify, fs_ssc_transfer, k_member, three_universal_witness
from .engine import Engine, Outcome
from .formulas import Atom, Not, eval_formula, qf_formulas, transport_formula
from .oracle import FiniteStructure, bf_le_finite, linear_order
from .terms import DecompositionUnsupported, Finite, canonicalize, decompose_wkr, random_term, render, size
from . import fs

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class SuiteResult:
    claim: str
    expected: str
    anchor: str
    observed: str
    status: str
    bounds: dict = field(default_factory=dict)
    elapsed_s: float = 0.0

    def to_json(self) -> dict:
        return asdict(self)


def _timed(claim: str, expected: str, anchor: str, bounds: dict, fn: Callable[[], tuple[str, str]]) -> SuiteResult:
    start = time.perf_counter()
    observed, status = fn()
    return SuiteResult(claim, expected, anchor, observed, status, bounds, round(time.perf_counter() - start, 3))


def _status(outcome: Outcome, want: bool) -> str:
    if outcome is Outcome.INCONCLUSIVE:
        return INCONCLUSIVE
    return PASS if (outcome is Outcome.TRUE) == want else FAIL


# ---------------------------------------------------------------- relations

RELATIONS = [
    # (lhs, rhs, level, expected, anchor)
    ("3", "2", 1, True, "finite orders, level 1"),
    ("2", "3", 1, False, "finite orders, level 1"),
    ("w+q", "w", 3, True, "3-universality, first case"),
    ("w+z*q+w*", "w+w*", 3, True, "3-universality, both ends infinite"),
    ("z*q", "z", 3, True, "3-universality, infinite blocks"),
    ("2*q+1+q", "2*q+q", 4, True, "Sigma_4 example"),
    ("q+3+q", "q+2+q", 2, True, "successor complexities"),
    ("q+2+q", "q", 2, True, "successor complexities"),
    ("sh(1,w)", "w*q", 3, True, "Sigma_5 example"),
    ("w*q", "sh(1,w)", 2, True, "Sigma_5 example"),
]


def relation_claims(seed: int = 0) -> list[tuple]:
    """The fixed relations plus the seeded random families."""
    out = list(RELATIONS)
    s, n = seed, 0
    while n < 100:
        t = canonicalize(random_term(s, 8))
        s += 1
        if size(t) is None:
            out.append((render(t), "q", 2, True, "2-universality of q"))
            n += 1
    rng = random.Random(seed + 1)
    for _ in range(20):
        k, l = rng.randint(1, 6), rng.randint(1, 6)
        out.append((f"z*{k}", f"z*{l}", 2, True, "copies of z, level 2"))
    for _ in range(20):
        k, l = sorted((rng.randint(1, 6), rng.randint(1, 6)), reverse=True)
        out.append((f"z*{k}", f"z*{l}", 3, True, "copies of z, level 3, |K| >= |L|"))
    return out


def relation_table(engine: Engine | None = None, seed: int = 0) -> Iterator[SuiteResult]:
    engine = engine or Engine()
    for lhs, rhs, k, want, anchor in relation_claims(seed):
        def run(lhs=lhs, rhs=rhs, k=k, want=want):
            v = engine.check_le(lhs, rhs, k)
            return v.outcome.value, _status(v.outcome, want)
        yield _timed(f"{lhs} <=_{k} {rhs}", str(want), anchor,
                     {"C": engine.cuts, "P": engine.params, "seed": seed}, run)


# ---------------------------------------------------------------- classification

GOLDEN_LABELS = [
    ("q", "Pi_2", "rationals"),
    ("1", "Pi_1", "one point"),
    ("2", "dSigma_1", "finite orders"),
    ("5", "dSigma_1", "finite orders"),
    ("q+2+q", "dSigma_2", "successor complexities"),
    ("w", "Pi_3", "3-universal class"),
    ("w^2", "Pi_5", "ordinals"),
    ("w*2", "dSigma_3", "ordinals"),
    ("z*q", "Pi_4", "products with z"),
    ("2*q+1+q", "Sigma_4", "Sigma_4 example"),
    ("sh(1,w)+w+w*q", "Sigma_5", "Sigma_5 example"),
    ("z*(2*q+1+q)", "Sigma_6", "products with z"),
]

# image of each golden label under the tree-of-tuples transfer:
# Pi_{1+a} -> Pi_{3+a}, Sigma_{1+a} and dSigma_{1+a} -> Pi_{4+a}
TRANSFER_GOLDEN = {
    "Pi_1": "Pi_3", "Pi_2": "Pi_4", "Pi_3": "Pi_5", "Pi_4": "Pi_6", "Pi_5": "Pi_7",
    "dSigma_1": "Pi_4", "dSigma_2": "Pi_5", "dSigma_3": "Pi_6",
    "Sigma_4": "Pi_7", "Sigma_5": "Pi_8", "Sigma_6": "Pi_9",
}


def golden_classification(engine: Engine | None = None) -> Iterator[SuiteResult]:
    clf = Classifier(engine or Engine(budget=20.0))
    for text, want, anchor in GOLDEN_LABELS:
        def run(text=text, want=want):
            r = clf.classify(text)
            got = f"{r.lower} .. {r.upper}" if not r.exact else str(r.upper)
            return got, PASS if r.exact and str(r.upper) == want else FAIL
        yield _timed(f"classify {text}", want, anchor, {}, run)
    for src, want in TRANSFER_GOLDEN.items():
        def run(src=src, want=want):
            got = str(fs_ssc_transfer(SSCLabel.parse(src)))
            return got, PASS if got == want else FAIL
        yield _timed(f"transfer {src}", want, "tree-of-tuples transfer", {}, run)


# ---------------------------------------------------------------- engine vs oracle

def oracle_cross(engine: Engine | None = None, max_size: int = 6, max_level: int = 4) -> Iterator[SuiteResult]:
    engine = engine or Engine()

    def run():
        bad, unknown, n = [], 0, 0
        for a, b in itertools.product(range(max_size + 1), repeat=2):
            for k in range(max_level + 1):
                n += 1
                got = engine.le(Finite(a), Finite(b), k)
                want = bf_le_finite(linear_order(a), (), linear_order(b), (), k)
                if got is None:
                    unknown += 1
                elif got != want:
                    bad.append(f"{a}<=_{k}{b}")
        status = PASS if not bad and not unknown else FAIL
        return f"{n} pairs, {len(bad)} disagreements, {unknown} inconclusive", status

    yield _timed(f"engine = oracle on finite orders of size <= {max_size}, level <= {max_level}",
                 "0 disagreements, 0 inconclusive", "brute-force oracle",
                 {"max_size": max_size, "max_level": max_level}, run)


# ---------------------------------------------------------------- trees of tuples

def binary_structures(max_size: int = 3, up_to_iso: bool = False) -> list[FiniteStructure]:
    """Every structure with one binary relation E on {0..n-1}, n = 1..max_size."""
    out = []
    for n in range(1, max_size + 1):
        universe = tuple(range(n))
        pairs = list(itertools.product(universe, repeat=2))
        seen = set()
        for mask in range(1 << len(pairs)):
            edges = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
            if up_to_iso:
                canon = min(tuple(sorted((pi[x], pi[y]) for x, y in edges))
                            for pi in itertools.permutations(universe))
                if canon in seen:
                    continue
                seen.add(canon)
            out.append(FiniteStructure(universe, (("E", 2),), {"E": edges}))
    return out


def check_tree_to_structure(structs, depth: int = 2, spare: int = 1, levels=(0, 1, 2),
                            pair_samples: int = 400, seed: int = 0) -> dict:
    """If node tuples are related in the tree, their entries are related in
    the structure.  Nodes come from the first `depth` levels; the tree oracle
    runs on a truncation `spare` levels deeper so the universal player can
    extend every compared node."""
    rng = random.Random(seed)
    checked = related = failures = 0
    examples = []
    for s in structs:
        tree = fs.tree_of_tuples(s, depth + spare, depth_cap=depth + spare)
        oracle = fs.TreeOracle(tree)
        nodes = [n for n in tree.nodes if len(n) <= depth]
        tuples = [(x,) for x in nodes]
        pairs = [(x, y) for x in tuples for y in tuples if len(x[0]) == len(y[0])]
        two = [(x, y) for x in nodes for y in nodes]
        for _ in range(pair_samples):
            a, b = rng.choice(two), rng.choice(two)
            if (len(a[0]), len(a[1])) == (len(b[0]), len(b[1])):
                pairs.append((a, b))
        for a, b in pairs:
            for k in levels:
                checked += 1
                if oracle.le(a, b, k):
                    related += 1
                    if not all(bf_le_finite(s, x, s, y, k) for x, y in zip(a, b)):
                        failures += 1
                        if len(examples) < 5:
                            examples.append({"E": sorted(s._rel["E"]), "a": a, "b": b, "level": k})
    return {"checked": checked, "related": related, "failures": failures, "examples": examples}


def check_incomparable_parameters(structs, depth: int = 2, levels=(0, 1, 2)) -> dict:
    """a p <= b p iff a <= b when a, b and p share no ancestor but the root."""
    checked = failures = 0
    for s in structs:
        tree = fs.tree_of_tuples(s, depth, depth_cap=depth)
        oracle = fs.TreeOracle(tree)
        nodes = [n for n in tree.nodes if n]
        params = [fs.Point(n, (1,) + (0,) * (len(n) - 1)) for n in nodes]
        params2 = [(p, fs.Point(q.node, (2,) + (0,) * (len(q.node) - 1))) for p in params[:4] for q in params[:4]]
        for a in nodes:
            for b in nodes:
                if not fs.entirely_incomparable(a, b) or len(a) != len(b):
                    continue
                for k in levels:
                    base = oracle.le([a], [b], k)
                    for p in [(p,) for p in params] + params2:
                        checked += 1
                        if oracle.le([a, *p], [b, *p], k) != base:
                            failures += 1
    return {"checked": checked, "failures": failures}


def _closure(points) -> list:
    out = []
    for p in points:
        for t in range(len(p.node) + 1):
            q = p.ancestor(t)
            if q not in out:
                out.append(q)
    return out


def check_factoring(structs, depth: int = 2, levels=(0, 1, 2), pair_samples: int = 150, seed: int = 0) -> dict:
    """For isomorphic downward-closed sets S, T (closures of one node, or of
    two deepest nodes, matched position by position), S <= T iff each node of
    S is <= its image.  Two-node closures are sampled."""
    rng = random.Random(seed)
    checked = failures = 0
    for s in structs:
        tree = fs.tree_of_tuples(s, depth, depth_cap=depth)
        oracle = fs.TreeOracle(tree)
        points = [fs.as_point(n) for n in tree.nodes if n]
        deepest = [p for p in points if len(p.node) == depth]
        pairs = [((x,), (y,)) for x in points for y in points if len(x.node) == len(y.node)]
        for _ in range(pair_samples if len(deepest) >= 2 else 0):
            g = tuple(rng.sample(deepest, 2))
            h = tuple(rng.sample(deepest, 2))
            if fs._meet(*g) == fs._meet(*h):
                pairs.append((g, h))
        for g, h in pairs:
            S, T = _closure(g), _closure(h)
            for k in levels:
                checked += 1
                whole = oracle.le(S, T, k)
                parts = all(oracle.le([x], [y], k) for x, y in zip(S, T))
                if whole != parts:
                    failures += 1
    return {"checked": checked, "failures": failures}


def check_transport(structs, depth: int = 2) -> dict:
    """A |= phi(a) iff the tree satisfies T_phi at every node extending a."""
    variables = ["x1", "x2"]
    formulas = qf_formulas([("E", 2)], variables, max_atoms=2)
    one_var = [f for f in qf_formulas([("E", 2)], ["x1"], max_atoms=2)]
    checked = failures = 0
    transported = {f: transport_formula(f, variables) for f in formulas}
    transported1 = {f: transport_formula(f, ["x1"]) for f in one_var}
    for s in structs:
        tree = fs.tree_of_tuples(s, depth, depth_cap=depth)
        for n in (1, 2):
            fams = transported1 if n == 1 else transported
            vs = variables[:n]
            for a in itertools.product(s.universe, repeat=n):
                env = dict(zip(vs, a))
                ext = tree.extensions(a)
                for f, tf in fams.items():
                    truth = eval_formula(s, f, env)
                    for sigma in ext:
                        checked += 1
                        if eval_formula(tree, tf, {"x": sigma}) != truth:
                            failures += 1
    return {"checked": checked, "failures": failures, "formulas": len(formulas) + len(one_var)}


# hand-picked trees for the block check; every internal node also gets a leaf
# child with the largest label so each interval next to a block holds big blocks
BLOCK_TREES = [
    [0, [1]],
    [0, [1, [2, [3]]]],
    [0, [[1, [3]], [2, [3]]]],
    [0, [[1, [2]], [1, [3]]]],
    [0, [[1, [3]], [1, [3]], 2]],
]
BLOCK_PAD = 4


def pad_tree(shape, pad: int = BLOCK_PAD):
    if isinstance(shape, int):
        return shape
    lab, kids = shape
    return [lab, [pad_tree(k, pad) for k in kids] + [pad]]


def check_block_intervals(engine: Engine | None = None, trees=BLOCK_TREES, pad: int = BLOCK_PAD) -> dict:
    """Whole-block tuples: intervals around the blocks agree at level 3 (engine)
    iff the tree nodes agree at level 1 (tree oracle)."""
    engine = engine or Engine(budget=10.0)
    agree = disagree = unknown = 0
    rows = []
    for shape in trees:
        tree = fs.tree_from_nested(pad_tree(shape, pad))
        oracle = fs.TreeOracle(tree)
        nodes = [n for n in tree.nodes if tree.label(n) != pad]
        for v in nodes:
            for w in nodes:
                if tree.label(v) != tree.label(w):
                    continue
                lv, rv = fs.block_intervals(tree, v)
                lw, rw = fs.block_intervals(tree, w)
                left = engine.le(lv, lw, 3)
                right = engine.le(rv, rw, 3) if left is not False else None
                order = False if False in (left, right) else (None if None in (left, right) else True)
                node = oracle.le([v], [w], 1)
                if order is None:
                    unknown += 1
                elif order == node:
                    agree += 1
                else:
                    disagree += 1
                rows.append((str(shape), v, w, order, node))
    return {"agree": agree, "disagree": disagree, "inconclusive": unknown, "rows": rows}


def fs_lemmas(seed: int = 0) -> Iterator[SuiteResult]:
    structs = binary_structures(3, up_to_iso=True)
    every = binary_structures(3)

    def wrap(fn, *args, **kw):
        def run():
            r = fn(*args, **kw)
            r.pop("examples", None)
            r.pop("rows", None)
            ok = r.get("failures", r.get("disagree", 0)) == 0
            status = (INCONCLUSIVE if r.get("inconclusive") else PASS) if ok else FAIL
            return ", ".join(f"{k}={v}" for k, v in r.items()), status
        return run

    yield _timed("tree-related tuples have related entries", "0 failures", "trees of structures",
                 {"size": 3, "depth": 2, "oracle_depth": 3, "levels": 2, "seed": seed},
                 wrap(check_tree_to_structure, structs, seed=seed))
    yield _timed("entirely incomparable parameters can be dropped", "0 failures", "parameters in trees",
                 {"size": 3, "depth": 2, "levels": 2}, wrap(check_incomparable_parameters, structs))
    yield _timed("downward-closed sets compare node by node", "0 failures", "factoring",
                 {"size": 3, "depth": 2, "levels": 2, "seed": seed}, wrap(check_factoring, structs, seed=seed))
    yield _timed("formula transport is sound", "0 failures", "formula transport",
                 {"size": 3, "depth": 2, "atoms": 2}, wrap(check_transport, every))
    yield _timed("whole blocks: level 3 in the order iff level 1 in the tree", "0 disagreements",
                 "trees to orders", {"trees": len(BLOCK_TREES), "pad": BLOCK_PAD},
                 wrap(check_block_intervals))


SUITES = {
    "paper-relations": relation_table,
    "paper-classify": golden_classification,
    "fs-lemmas": fs_lemmas,
    "oracle-cross": oracle_cross,
}


def run_suite(name: str, seed: int = 0, engine: Engine | None = None) -> list[SuiteResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn = SUITES[name]
    if name == "fs-lemmas":
        return list(fn(seed=seed))
    if name == "paper-relations":
        return list(fn(engine, seed=seed))
    return list(fn(engine))
