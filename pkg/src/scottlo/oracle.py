"""Exact back-and-forth relations on finite relational structures.

Convention: (A, a) <=_0 (B, b) iff the tuples have the same atomic type, and
(A, a) <=_{k+1} (B, b) iff for every tuple d from B there is c from A with
(B, bd) <=_k (A, ac).  So a finite order A satisfies A <=_1 B iff |A| >= |B|.

On finite structures the universal player loses nothing by naming every
remaining element at once (any answer to a bigger tuple restricts to an
answer for a sub-tuple), so the default search only tries that move.
`exhaustive=True` enumerates all extensions instead and is kept for
cross-checking on very small inputs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Sequence

ALPHA_CAP = 5
UNIVERSE_CAP = 8


class CapExceeded(ValueError):
    def __init__(self, dimension: str, value: int, cap: int):
        super().__init__(f"{dimension} = {value} exceeds cap {cap}")
        self.dimension = dimension


@dataclass(frozen=True)
class FiniteStructure:
    universe: tuple
    vocabulary: tuple  # ((name, arity), ...)
    relations: tuple  # ((name, frozenset of tuples), ...)
    labels: tuple = ()  # ((element, label), ...) or empty
    _rel: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "vocabulary", tuple((n, int(a)) for n, a in self.vocabulary))
        rels = {n: frozenset() for n, _ in self.vocabulary}
        if isinstance(self.relations, dict):
            items = self.relations.items()
        else:
            items = self.relations
        for name, tuples in items:
            if name not in rels:
                raise ValueError(f"relation {name!r} not in vocabulary")
            rels[name] = frozenset(tuple(t) for t in tuples)
        arity = dict(self.vocabulary)
        elems = set(self.universe)
        for name, tuples in rels.items():
            for t in tuples:
                if len(t) != arity[name] or not set(t) <= elems:
                    raise ValueError(f"bad tuple {t} for {name}")
        object.__setattr__(self, "relations", tuple(sorted(rels.items())))
        labels = self.labels.items() if isinstance(self.labels, dict) else self.labels
        object.__setattr__(self, "labels", tuple(sorted(labels, key=lambda kv: repr(kv[0]))))
        object.__setattr__(self, "_rel", dict(self.relations))

    def holds(self, name: str, args: Sequence) -> bool:
        return tuple(args) in self._rel[name]

    def label(self, x) -> int | None:
        return dict(self.labels).get(x) if self.labels else None

    def __len__(self) -> int:
        return len(self.universe)


def linear_order(n: int | Sequence) -> FiniteStructure:
    ids = list(range(n)) if isinstance(n, int) else list(n)
    less = [(ids[i], ids[j]) for i in range(len(ids)) for j in range(i + 1, len(ids))]
    return FiniteStructure(tuple(ids), (("<", 2),), (("<", less),))


def structure_from_json(data: dict | str) -> FiniteStructure:
    if isinstance(data, str):
        data = json.loads(data)
    if "order" in data:
        return linear_order(data["order"])
    labels = data.get("labels") or {}
    universe = data["universe"]
    # JSON object keys are strings; map them back onto universe ids
    by_str = {str(u): u for u in universe}
    labels = {by_str.get(str(k), k): int(v) for k, v in labels.items()}
    return FiniteStructure(
        tuple(universe),
        tuple((n, a) for n, a in data["vocabulary"]),
        {n: [tuple(t) for t in ts] for n, ts in data.get("relations", {}).items()},
        labels,
    )


def structure_to_json(s: FiniteStructure) -> dict:
    out = {
        "universe": list(s.universe),
        "vocabulary": [[n, a] for n, a in s.vocabulary],
        "relations": {n: sorted(list(t) for t in ts) for n, ts in s.relations},
    }
    if s.labels:
        out["labels"] = {str(k): v for k, v in s.labels}
    return out


def atomic_type(s: FiniteStructure, tup: Sequence) -> tuple:
    """Canonical atomic type: equality pattern, labels and every relation instance."""
    k = len(tup)
    eq = tuple(tup[i] == tup[j] for i in range(k) for j in range(i + 1, k))
    labs = tuple(s.label(x) for x in tup) if s.labels else ()
    rels = []
    for name, arity in s.vocabulary:
        for idx in product(range(k), repeat=arity):
            rels.append(s.holds(name, [tup[i] for i in idx]))
    return eq, labs, tuple(rels)


def _check_caps(s: FiniteStructure, alpha: int):
    if alpha > ALPHA_CAP:
        raise CapExceeded("alpha", alpha, ALPHA_CAP)
    if len(s.universe) > UNIVERSE_CAP:
        raise CapExceeded("universe", len(s.universe), UNIVERSE_CAP)


def bf_le_finite(A: FiniteStructure, a: Sequence, B: FiniteStructure, b: Sequence,
                 alpha: int, exhaustive: bool = False) -> bool:
    """(A, a) <=_alpha (B, b)."""
    if len(a) != len(b):
        raise ValueError("tuples must have equal length")
    _check_caps(A, alpha)
    _check_caps(B, alpha)
    if exhaustive:
        return _le_exhaustive(A, tuple(a), B, tuple(b), alpha)
    return _le(A, tuple(a), B, tuple(b), alpha)


def _key(s: FiniteStructure, tup: tuple):
    if _is_plain_order(s):
        pos = {x: i for i, x in enumerate(_order_list(s))}
        return ("order", len(s.universe), tuple(pos[x] for x in tup))
    return (s, tup)


@lru_cache(maxsize=None)
def _is_plain_order(s: FiniteStructure) -> bool:
    if s.labels or s.vocabulary != (("<", 2),):
        return False
    return len(s._rel["<"]) == len(s.universe) * (len(s.universe) - 1) // 2 and _order_list(s) is not None


@lru_cache(maxsize=None)
def _order_list(s: FiniteStructure):
    less = s._rel.get("<", frozenset())
    below = {x: sum((y, x) in less for y in s.universe) for x in s.universe}
    order = sorted(s.universe, key=lambda x: below[x])
    for i in range(len(order)):
        for j in range(len(order)):
            if ((order[i], order[j]) in less) != (i < j):
                return None
    return order


_memo: dict = {}


def clear_memo():
    _memo.clear()


def _le(A, a, B, b, k) -> bool:
    key = (_key(A, a), _key(B, b), k)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    if atomic_type(A, a) != atomic_type(B, b):
        res = False
    elif k == 0:
        res = True
    else:
        rest_b = [x for x in B.universe if x not in b]
        rest_a = [x for x in A.universe if x not in a]
        ext_b = b + tuple(rest_b)
        res = False
        if len(rest_a) >= len(rest_b):
            for c in permutations(rest_a, len(rest_b)):
                if _le(B, ext_b, A, a + c, k - 1):
                    res = True
                    break
    _memo[key] = res
    return res


def _le_exhaustive(A, a, B, b, k) -> bool:
    if atomic_type(A, a) != atomic_type(B, b):
        return False
    if k == 0:
        return True
    for n in range(0, len(B.universe) + 1):
        for d in product(B.universe, repeat=n):
            if not any(_le_exhaustive(B, b + d, A, a + c, k - 1)
                       for c in product(A.universe, repeat=n)):
                return False
    return True


def equiv_classes(items: Sequence[tuple], alpha: int) -> list[list[int]]:
    """Partition indices of (structure, tuple) pairs into <=_alpha-equivalence classes."""
    classes: list[list[int]] = []
    for i, (s, t) in enumerate(items):
        for cls in classes:
            s2, t2 = items[cls[0]]
            if len(t) == len(t2) and bf_le_finite(s, t, s2, t2, alpha) and bf_le_finite(s2, t2, s, t, alpha):
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


# ------------------------------------------------ finite linear orders, interval form

@lru_cache(maxsize=None)
def interval_partition_le(n: int, m: int, alpha: int) -> bool:
    """n <=_alpha m for finite orders, computed from the interval-partition
    characterisation: level 1 is "n >= m"; level k > 1 asks that every cut of
    m by j points be answered by a cut of n by j points whose pieces satisfy
    the reversed relation at level k - 1."""
    if alpha == 0:
        return True
    if alpha == 1:
        return n >= m
    for cuts in range(0, m + 1):
        for pieces_m in _compositions(m - cuts, cuts + 1):
            if not any(all(interval_partition_le(pm, pn, alpha - 1) for pm, pn in zip(pieces_m, pieces_n))
                       for pieces_n in _compositions(n - cuts, cuts + 1) if n >= cuts):
                return False
    return True


def _compositions(total: int, parts: int):
    if total < 0:
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def intervals_of(n: int, tup: Sequence[int]) -> list[int] | None:
    """Sizes of the gaps cut out of the n-element order by an increasing tuple."""
    if any(x >= y for x, y in zip(tup, tup[1:])):
        return None
    bounds = [-1] + list(tup) + [n]
    return [bounds[i + 1] - bounds[i] - 1 for i in range(len(bounds) - 1)]
