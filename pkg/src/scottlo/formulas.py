"""Finitary first-order formulas over relational structures and labeled trees.

Structure formulas: Top, Bottom, Atom (including "="), Not (of an atom only),
And, Or, Exists, Forall.  Tree formulas add HeightAtLeast, LabelHas and the
quantifiers ExistsAbove / ForallAbove, which range over the children of a
node (one more element appended).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product


class UnsupportedConnective(ValueError):
    pass


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    rel: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def __post_init__(self):
        if not isinstance(self.body, Atom):
            raise UnsupportedConnective("negation is only allowed in front of an atom")


@dataclass(frozen=True)
class And(Formula):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


# tree vocabulary

@dataclass(frozen=True)
class HeightAtLeast(Formula):
    var: str
    n: int


@dataclass(frozen=True)
class LabelHas(Formula):
    """The node's decoded diagram contains the literal rel(idx) = truth (1-based indices)."""
    var: str
    rel: str
    idx: tuple
    truth: bool


@dataclass(frozen=True)
class ExistsAbove(Formula):
    var: str
    base: str
    body: Formula


@dataclass(frozen=True)
class ForallAbove(Formula):
    var: str
    base: str
    body: Formula


def render(f: Formula) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Atom):
        if f.rel == "=":
            return f"{f.args[0]} = {f.args[1]}"
        return f"{f.rel}({', '.join(map(str, f.args))})"
    if isinstance(f, Not):
        if f.body.rel == "=":
            return f"{f.body.args[0]} != {f.body.args[1]}"
        return f"~{render(f.body)}"
    if isinstance(f, And):
        return "(" + " & ".join(render(p) for p in f.parts) + ")" if f.parts else "true"
    if isinstance(f, Or):
        return "(" + " | ".join(render(p) for p in f.parts) + ")" if f.parts else "false"
    if isinstance(f, Exists):
        return f"E{f.var}. {render(f.body)}"
    if isinstance(f, Forall):
        return f"A{f.var}. {render(f.body)}"
    if isinstance(f, HeightAtLeast):
        return f"height({f.var}) >= {f.n}"
    if isinstance(f, LabelHas):
        lit = f"{f.rel}({','.join(map(str, f.idx))})"
        return f"label({f.var}) has {'' if f.truth else '~'}{lit}"
    if isinstance(f, ExistsAbove):
        return f"E{f.var}>={f.base}. {render(f.body)}"
    if isinstance(f, ForallAbove):
        return f"A{f.var}>={f.base}. {render(f.body)}"
    raise UnsupportedConnective(f"unknown formula node {f!r}")


def free_vars(f: Formula) -> set:
    if isinstance(f, (Top, Bottom)):
        return set()
    if isinstance(f, Atom):
        return set(f.args)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or)):
        return set().union(*(free_vars(p) for p in f.parts))
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    if isinstance(f, (HeightAtLeast, LabelHas)):
        return {f.var}
    if isinstance(f, (ExistsAbove, ForallAbove)):
        return (free_vars(f.body) - {f.var}) | {f.base}
    raise UnsupportedConnective(f"unknown formula node {f!r}")


def quantifier_rank(f: Formula) -> int:
    if isinstance(f, (And, Or)):
        return max((quantifier_rank(p) for p in f.parts), default=0)
    if isinstance(f, (Exists, Forall, ExistsAbove, ForallAbove)):
        return 1 + quantifier_rank(f.body)
    return 0


def quantifier_prefix(f: Formula) -> str:
    """E/A pattern along the leftmost quantifier path, e.g. "EA"."""
    if isinstance(f, (Exists, ExistsAbove)):
        return "E" + quantifier_prefix(f.body)
    if isinstance(f, (Forall, ForallAbove)):
        return "A" + quantifier_prefix(f.body)
    if isinstance(f, (And, Or)):
        return max((quantifier_prefix(p) for p in f.parts), key=len, default="")
    return ""


# ---------------------------------------------------------------- evaluation

def eval_formula(target, phi: Formula, assignment: dict | None = None) -> bool:
    """Satisfaction in a FiniteStructure or a LabeledTree (stored nodes stand
    in for all of their replicas)."""
    from .fs import LabeledTree
    env = dict(assignment or {})
    missing = free_vars(phi) - env.keys()
    if missing:
        raise KeyError(f"unbound variables: {sorted(missing)}")
    if isinstance(target, LabeledTree):
        return _eval_tree(target, phi, env)
    return _eval_structure(target, phi, env)


def _eval_structure(s, f: Formula, env: dict) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        vals = [env[a] for a in f.args]
        if f.rel == "=":
            return vals[0] == vals[1]
        return s.holds(f.rel, vals)
    if isinstance(f, Not):
        return not _eval_structure(s, f.body, env)
    if isinstance(f, And):
        return all(_eval_structure(s, p, env) for p in f.parts)
    if isinstance(f, Or):
        return any(_eval_structure(s, p, env) for p in f.parts)
    if isinstance(f, Exists):
        return any(_eval_structure(s, f.body, {**env, f.var: u}) for u in s.universe)
    if isinstance(f, Forall):
        return all(_eval_structure(s, f.body, {**env, f.var: u}) for u in s.universe)
    raise UnsupportedConnective(f"{type(f).__name__} is not a structure formula")


def _eval_tree(t, f: Formula, env: dict) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, HeightAtLeast):
        return t.height(env[f.var]) >= f.n
    if isinstance(f, LabelHas):
        node = env[f.var]
        if t.height(node) < max(f.idx, default=0):
            return False
        return (f.rel, f.idx, f.truth) in t.diagram_set(node)
    if isinstance(f, And):
        return all(_eval_tree(t, p, env) for p in f.parts)
    if isinstance(f, Or):
        return any(_eval_tree(t, p, env) for p in f.parts)
    if isinstance(f, (ExistsAbove, ForallAbove)):
        kids = t.children(env[f.base])
        if not kids:
            raise ValueError(f"{render(f)} quantifies below the last level of the tree")
        pick = any if isinstance(f, ExistsAbove) else all
        return pick(_eval_tree(t, f.body, {**env, f.var: y}) for y in kids)
    if isinstance(f, Exists):
        return any(_eval_tree(t, f.body, {**env, f.var: y}) for y in t.nodes)
    if isinstance(f, Forall):
        return all(_eval_tree(t, f.body, {**env, f.var: y}) for y in t.nodes)
    raise UnsupportedConnective(f"{type(f).__name__} is not a tree formula")


# ---------------------------------------------------------------- transport

def _dnf(f: Formula) -> list[list]:
    """Quantifier-free formula as a list of conjunctions of literals
    (literal = (atom, truth))."""
    if isinstance(f, Top):
        return [[]]
    if isinstance(f, Bottom):
        return []
    if isinstance(f, Atom):
        return [[(f, True)]]
    if isinstance(f, Not):
        return [[(f.body, False)]]
    if isinstance(f, Or):
        return [c for p in f.parts for c in _dnf(p)]
    if isinstance(f, And):
        out = [[]]
        for p in f.parts:
            out = [a + b for a in out for b in _dnf(p)]
        return out
    raise UnsupportedConnective(f"{type(f).__name__} inside a quantifier-free part")


def transport_formula(phi: Formula, variables: tuple | list = (), node_var: str = "x") -> Formula:
    """Tree formula T_phi with one free node variable: a structure tuple a
    satisfies phi(variables) iff the node a satisfies T_phi.  For
    quantifier-free phi this also holds at every node extending a; with
    quantifiers the tree must reach |variables| + rank levels.

    Quantifier-free parts become "height >= n and the label contains these
    literals"; each quantifier becomes a quantifier over extensions of the node.
    """
    order = list(variables)
    return _transport(phi, order, node_var, 0)


def _transport(f: Formula, order: list, x: str, depth: int) -> Formula:
    if isinstance(f, Exists) or isinstance(f, Forall):
        y = f"{x}_{depth + 1}"
        body = _transport(f.body, order + [f.var], y, depth + 1)
        return (ExistsAbove if isinstance(f, Exists) else ForallAbove)(y, x, body)
    if isinstance(f, (And, Or)) and any(_has_quantifier(p) for p in f.parts):
        parts = tuple(_transport(p, order, x, depth) for p in f.parts)
        return And(parts) if isinstance(f, And) else Or(parts)
    if _has_quantifier(f):
        raise UnsupportedConnective(f"cannot transport {render(f)}")
    disjuncts = []
    for conj in _dnf(f):
        lits, height, dead = [], 0, False
        for atom, truth in conj:
            idx = []
            for v in atom.args:
                if v not in order:
                    raise KeyError(f"variable {v} is not in the variable order {order}")
                idx.append(order.index(v) + 1)
            height = max(height, *idx)
            if atom.rel == "=":
                i, j = idx
                if i == j:
                    dead = dead or not truth
                    continue
                idx = [min(i, j), max(i, j)]
            lits.append(LabelHas(x, atom.rel, tuple(idx), truth))
        if dead:
            continue
        parts = [HeightAtLeast(x, height)] + lits if height else lits
        disjuncts.append(parts[0] if len(parts) == 1 else And(tuple(parts)) if parts else Top())
    if not disjuncts:
        return Bottom()
    return disjuncts[0] if len(disjuncts) == 1 else Or(tuple(disjuncts))


def _has_quantifier(f: Formula) -> bool:
    if isinstance(f, (Exists, Forall)):
        return True
    if isinstance(f, (And, Or)):
        return any(_has_quantifier(p) for p in f.parts)
    return False


def qf_formulas(relations: list[tuple[str, int]], variables: list[str], max_atoms: int = 2):
    """Every quantifier-free formula with at most max_atoms atoms, built from
    literals with one connective (and / or) between them."""
    atoms = []
    for rel, arity in relations:
        for args in product(variables, repeat=arity):
            atoms.append(Atom(rel, args))
    for i, a in enumerate(variables):
        for b in variables[i + 1:]:
            atoms.append(Atom("=", (a, b)))
    lits = [a for a in atoms] + [Not(a) for a in atoms]
    out = [Top(), Bottom()] + lits
    if max_atoms >= 2:
        for i, p in enumerate(lits):
            for q in lits[i:]:
                out.append(And((p, q)))
                out.append(Or((p, q)))
    return out
