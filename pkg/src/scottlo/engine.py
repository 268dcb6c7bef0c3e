"""Symbolic back-and-forth comparison of order terms.

A <=_1 B iff A is infinite or |A| >= |B|.  For k >= 2, A <=_k B iff every
partition of B by n points into intervals B_0..B_n is answered by a partition
of A by n points with B_i <=_{k-1} A_i for every i.

Partitions are read left to right as words: cutting a point off the current
right-hand residual emits its left piece as the next letter.  Every term has
finitely many residuals (once parameters are bounded), so B's partitions are
the words of a finite automaton, and the question becomes whether every word
of B is matched letter-by-letter by some word of A of the same length.  The
existential player sees the whole word before answering, so we track the set
of A-residuals reachable by some matching prefix (a subset construction) and
explore pairs (B-residual, set of A-residuals) until no new pair appears.

Parameters (the n in "cut w at its n-th point") on B's side are instantiated
concretely over 0..T with T = (largest finite constant in either term) + k + 1,
past which the answer no longer changes.  On A's side a parameter that lands in
an emitted piece ranges over 0..2T, while one left in the residual stays open:
the answer may size that block after seeing how many more cuts follow.
"""
from __future__ import annotations

import json
import logging
import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import product as iproduct
from pathlib import Path
from typing import Iterable

from .ordinals import Ordinal
from .terms import (
    EMPTY, ETA, OMEGA, OMEGA_STAR, Eta, Finite, Omega, OmegaPower, OmegaStar, OrderTerm,
    Param, Product, Shuffle, Sum, Zeta, ZetaPower, as_term, atoms, canonicalize, contains_param,
    is_finite, max_constant, omega_power, params_of, render, size, substitute, sum_of,
    zeta_final, zeta_initial, TermLike,
)

log = logging.getLogger(__name__)


class UnsupportedShape(ValueError):
    pass


class UnsupportedLevel(ValueError):
    pass


class Outcome(Enum):
    TRUE = "True"
    FALSE = "False"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


# ---------------------------------------------------------------- split families

@dataclass(frozen=True)
class SplitFamily:
    """Left and right pieces left after deleting one point; templates may
    contain Param blocks, each ranging over all naturals."""
    left: OrderTerm
    right: OrderTerm

    @property
    def params(self) -> list[str]:
        seen = params_of(self.left)
        return seen + [p for p in params_of(self.right) if p not in seen]

    def instantiate(self, values: dict) -> tuple[OrderTerm, OrderTerm]:
        return canonicalize(substitute(self.left, values)), canonicalize(substitute(self.right, values))

    def instances(self, limit: int):
        names = self.params
        for vals in iproduct(range(limit + 1), repeat=len(names)):
            yield self.instantiate(dict(zip(names, vals)))

    def __str__(self):
        ps = self.params
        return f"({render(self.left)} | {render(self.right)})" + (f" for {', '.join(ps)} >= 0" if ps else "")


@dataclass(frozen=True)
class PartitionFamily:
    intervals: tuple

    @property
    def params(self) -> list[str]:
        out: list[str] = []
        for t in self.intervals:
            out += [p for p in params_of(t) if p not in out]
        return out

    def instantiate(self, values: dict) -> tuple:
        return tuple(canonicalize(substitute(t, values)) for t in self.intervals)

    def __str__(self):
        return "(" + ", ".join(render(t) for t in self.intervals) + ")"


class _Fresh:
    def __init__(self, prefix: str = "n"):
        self.i = 0
        self.prefix = prefix

    def __call__(self) -> Param:
        self.i += 1
        return Param(f"{self.prefix}{self.i}")


def _mul(a: OrderTerm, b: OrderTerm) -> OrderTerm:
    """a copied along b, distributing over a sum in b."""
    if isinstance(b, Sum):
        return sum_of(_mul(a, p) for p in b.parts)
    if b == EMPTY:
        return EMPTY
    if isinstance(b, Finite) and b.n == 1:
        return a
    return Product(a, b)


def _cat(*parts: OrderTerm) -> OrderTerm:
    flat = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, Sum) else [p])
    return sum_of(flat)


def _split_templates(t: OrderTerm, fresh: _Fresh) -> list[tuple[OrderTerm, OrderTerm]]:
    if isinstance(t, Finite):
        return [(Finite(i), Finite(t.n - 1 - i)) for i in range(t.n)]
    if isinstance(t, Param):
        # a block whose size the existential side fixes later: any point of it
        # leaves a chosen finite piece on the left and an open block on the right
        return [(fresh(), fresh())]
    if isinstance(t, Omega):
        return [(fresh(), OMEGA)]
    if isinstance(t, OmegaStar):
        return [(OMEGA_STAR, fresh())]
    if isinstance(t, Zeta):
        return [(OMEGA_STAR, OMEGA)]
    if isinstance(t, Eta):
        return [(ETA, ETA)]
    if isinstance(t, ZetaPower):
        return [(zeta_initial(t.d), zeta_final(t.d))]
    if isinstance(t, OmegaPower):
        # every proper initial segment is an ordinal below w^d; the rest is w^d again
        left = sum_of([_mul(omega_power(e), fresh()) for e in range(t.d - 1, 0, -1)] + [fresh()])
        return [(left, t)]
    if isinstance(t, Sum):
        out = []
        for i, p in enumerate(t.parts):
            pre, post = t.parts[:i], t.parts[i + 1:]
            for l, r in _split_templates(p, fresh):
                out.append((_cat(*pre, l), _cat(r, *post)))
        return out
    if isinstance(t, Product):
        a, b = t.left, t.right
        out = []
        for bl, br in _split_templates(b, fresh):
            for al, ar in _split_templates(a, fresh):
                out.append((_cat(_mul(a, bl), al), _cat(ar, _mul(a, br))))
        return out
    if isinstance(t, Shuffle):
        out = []
        for m in t.sorted_members():
            for l, r in _split_templates(m, fresh):
                out.append((_cat(t, l), _cat(r, t)))
        return out
    raise UnsupportedShape(f"no split rule for {t!r}")


def splits(term: TermLike) -> list[SplitFamily]:
    """One-point cut families of a term, deduplicated."""
    t = canonicalize(as_term(term))
    seen, out = set(), []
    for l, r in _split_templates(t, _Fresh()):
        fam = SplitFamily(_normalise_template(l), _normalise_template(r))
        key = _template_key(fam.left, fam.right)
        if key not in seen:
            seen.add(key)
            out.append(fam)
    return out


def _normalise_template(t: OrderTerm) -> OrderTerm:
    return canonicalize(t)


def _template_key(*ts: OrderTerm) -> tuple:
    # rename parameters in order of appearance so equal shapes compare equal
    names: dict = {}
    for t in ts:
        for p in params_of(t):
            names.setdefault(p, f"p{len(names)}")
    return tuple(render(substitute_names(t, names)) for t in ts)


def substitute_names(t: OrderTerm, names: dict) -> OrderTerm:
    if isinstance(t, Param):
        return Param(names.get(t.name, t.name))
    if isinstance(t, Sum):
        return Sum(tuple(substitute_names(p, names) for p in t.parts))
    if isinstance(t, Product):
        return Product(substitute_names(t.left, names), substitute_names(t.right, names))
    if isinstance(t, Shuffle):
        return Shuffle(frozenset(substitute_names(m, names) for m in t.members))
    return t


def partitions(term: TermLike, max_cuts: int) -> list[PartitionFamily]:
    """All partition families with at most max_cuts cuts, composed left to right."""
    t = canonicalize(as_term(term))
    fresh = _Fresh()
    out, seen = [], set()
    frontier = [((), t)]
    for cuts in range(max_cuts + 1):
        nxt = []
        for prefix, rest in frontier:
            fam = PartitionFamily(prefix + (rest,))
            key = _template_key(*fam.intervals)
            if key not in seen:
                seen.add(key)
                out.append(fam)
            if cuts == max_cuts or contains_param(rest) and not _splittable_template(rest):
                continue
            for l, r in _split_templates(rest, fresh):
                nxt.append((prefix + (canonicalize(l),), canonicalize(r)))
        frontier = nxt
    return out


def _splittable_template(t: OrderTerm) -> bool:
    try:
        _split_templates(t, _Fresh("x"))
        return True
    except UnsupportedShape:
        return False


# ---------------------------------------------------------------- verdicts

@dataclass
class Verdict:
    lhs: str
    rhs: str
    alpha: int
    outcome: Outcome
    bounds: dict
    certificate: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def __bool__(self):
        return self.outcome is Outcome.TRUE

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs, "rhs": self.rhs, "alpha": self.alpha,
            "outcome": self.outcome.value, "bounds": self.bounds,
            "certificate": self.certificate, "elapsed_ms": round(self.elapsed_ms, 3),
        }


class _Unknown(Exception):
    """Raised inside a search when a bound was hit."""


DEFAULT_PARAM_BOUND = 40
DEFAULT_EXTRA_CUTS = 4


def default_cut_bound(a: OrderTerm, b: OrderTerm) -> int:
    # a finite block of n points takes n cuts to drain, so the largest
    # constant is added to the count of distinct atomic segments
    return len(atoms(a) | atoms(b)) + max(max_constant(a), max_constant(b)) + DEFAULT_EXTRA_CUTS


class Engine:
    """Decides A <=_k B for finite k.  Results are memoised per engine; the
    bounds are fixed at construction (cuts=None means the default formula)."""

    def __init__(self, cuts: int | None = None, params: int = DEFAULT_PARAM_BOUND,
                 cache: str | Path | None = None, budget: float | None = None):
        self.cuts = cuts
        self.params = params
        self.budget = budget  # seconds per top-level query; None = unlimited
        self._deadline: float | None = None
        self._timed_out = False
        self.cache_path = Path(cache) if cache else None
        self._memo: dict = {}
        self._splits: dict = {}
        self._fresh_entries: list = []
        if self.cache_path and self.cache_path.exists():
            self.load_cache(self.cache_path)

    # ---- public API

    def check_le(self, a: TermLike, b: TermLike, alpha: int | Ordinal) -> Verdict:
        k = _finite_level(alpha)
        A, B = prepare(as_term(a)), prepare(as_term(b))
        start = time.perf_counter()
        cut_bound = self.cuts if self.cuts is not None else default_cut_bound(A, B)
        res = self._timed(A, B, k, cut_bound)
        if self._timed_out:
            cert = {"rule": "time budget exhausted", "budget_s": self.budget}
        else:
            cert = self._certificate(A, B, k, res, cut_bound)
        outcome = {True: Outcome.TRUE, False: Outcome.FALSE, None: Outcome.INCONCLUSIVE}[res]
        bounds = {"C": cut_bound, "P": self.params, "level": k}
        return Verdict(render(A), render(B), k, outcome, bounds, cert,
                       (time.perf_counter() - start) * 1000)

    def check_equiv(self, a: TermLike, b: TermLike, alpha: int | Ordinal) -> Verdict:
        start = time.perf_counter()
        fwd = self.check_le(a, b, alpha)
        back = self.check_le(b, a, alpha)
        if fwd.outcome is Outcome.FALSE or back.outcome is Outcome.FALSE:
            out = Outcome.FALSE
        elif fwd.outcome is Outcome.TRUE and back.outcome is Outcome.TRUE:
            out = Outcome.TRUE
        else:
            out = Outcome.INCONCLUSIVE
        return Verdict(fwd.lhs, fwd.rhs, fwd.alpha, out, fwd.bounds,
                       {"forward": fwd.to_json(), "backward": back.to_json()},
                       (time.perf_counter() - start) * 1000)

    def le(self, a: TermLike, b: TermLike, alpha: int) -> bool | None:
        A, B = prepare(as_term(a)), prepare(as_term(b))
        cut_bound = self.cuts if self.cuts is not None else default_cut_bound(A, B)
        return self._timed(A, B, _finite_level(alpha), cut_bound)

    # ---- core

    def _timed(self, A, B, k, cut_bound) -> bool | None:
        self._deadline = None if self.budget is None else time.perf_counter() + self.budget
        self._timed_out = False
        try:
            return self._le(A, B, k, top_cuts=cut_bound)
        except _Unknown:
            self._timed_out = True
            return None
        finally:
            self._deadline = None

    def _cut_bound(self, A, B) -> int:
        return self.cuts if self.cuts is not None else default_cut_bound(A, B)

    def _le(self, A: OrderTerm, B: OrderTerm, k: int, top_cuts: int | None = None) -> bool | None:
        if k == 0:
            return True
        if k == 1:
            sa, sb = size(A), size(B)
            return sa is None or (sb is not None and sa >= sb)
        if A == B:
            return True
        key = (A, B, k)
        if key in self._memo:
            return self._memo[key]
        cuts = top_cuts if top_cuts is not None else self._cut_bound(A, B)
        res = self._search(A, B, k, cuts, optimistic=False, record=None)
        if res is None:
            # the pessimistic pass could not certify; a failure even when every
            # unknown comparison is granted is still a certified failure
            alt = self._search(A, B, k, cuts, optimistic=True, record=None)
            if alt is False:
                res = False
        self._memo[key] = res
        if res is not None:
            self._fresh_entries.append((A, B, k, res))
        return res

    def thresholds(self, A: OrderTerm, B: OrderTerm, k: int) -> tuple[int, int]:
        t = max(max_constant(A), max_constant(B)) + k + 1
        return t, 2 * t

    def concrete_splits(self, t: OrderTerm, limit: int) -> list[tuple[OrderTerm, OrderTerm]]:
        key = (t, limit)
        hit = self._splits.get(key)
        if hit is None:
            hit = []
            seen = set()
            for fam in splits(t):
                for pair in fam.instances(limit):
                    if pair not in seen:
                        seen.add(pair)
                        hit.append(pair)
            self._splits[key] = hit
        return hit

    def exists_splits(self, t: OrderTerm, limit: int) -> list[tuple[tuple, OrderTerm]]:
        """Cuts available to the existential side, grouped by what is left.

        Parameters that end up in the emitted piece are instantiated (0..limit);
        parameters left in the remainder stay open, because that side sees the
        whole partition before committing to their sizes.
        """
        key = ("E", t, limit)
        hit = self._splits.get(key)
        if hit is None:
            grouped: dict = {}
            for l, r in _split_templates(t, _Fresh("s")):
                l, r = canonicalize(l), canonicalize(r)
                lnames = params_of(l)
                for vals in iproduct(range(limit + 1), repeat=len(lnames)):
                    assign = dict(zip(lnames, vals))
                    letter = canonicalize(substitute(l, assign)) if lnames else l
                    rest = canonicalize(_partial_substitute(r, assign)) if lnames else r
                    rest = rename_params(rest)
                    grouped.setdefault(rest, set()).add(letter)
            hit = [(tuple(sorted(opts, key=_letter_order)), rest) for rest, opts in grouped.items()]
            self._splits[key] = hit
        return hit

    def exists_finals(self, t: OrderTerm, limit: int) -> list[OrderTerm]:
        key = ("F", t, limit)
        hit = self._splits.get(key)
        if hit is None:
            names = params_of(t)
            if not names:
                hit = [t]
            else:
                hit = sorted({canonicalize(substitute(t, dict(zip(names, vals))))
                              for vals in iproduct(range(limit + 1), repeat=len(names))},
                             key=_letter_order)
            self._splits[key] = hit
        return hit

    def _search(self, A, B, k, cuts, optimistic: bool, record: dict | None):
        """Explore (B-residual, A-residual set) pairs.  Returns True, False or
        None; with `record` it stores the exploration for certificates."""
        t_forall, t_exists = self.thresholds(A, B, k)
        incomplete = False
        if t_forall > self.params:
            t_forall = self.params
            incomplete = True
        t_exists = min(t_exists, 2 * self.params)
        unknown = False

        def sub(x, y):
            nonlocal unknown
            r = self._le(x, y, k - 1)
            if r is None:
                unknown = True
                return optimistic
            return r

        start = (B, frozenset([A]))
        seen = {start: 0}
        queue = deque([start])
        parent: dict = {start: None}
        while queue:
            if self._deadline is not None and time.perf_counter() > self._deadline:
                raise _Unknown()
            state = queue.popleft()
            rb, S = state
            depth = seen[state]
            witness = next((ra for ra in S for inst in self.exists_finals(ra, t_exists) if sub(rb, inst)), None)
            if witness is None:
                if record is not None:
                    record["fail"] = (state, None)
                    record["parent"] = parent
                return None if (unknown and not optimistic) else False
            if record is not None:
                record.setdefault("final", {})[state] = witness
            for left, right in self.concrete_splits(rb, t_forall):
                nxt = set()
                for ra in S:
                    for options, rest in self.exists_splits(ra, t_exists):
                        if rest in nxt:
                            continue
                        if any(sub(left, la) for la in options):
                            nxt.add(rest)
                if not nxt:
                    if record is not None:
                        record["fail"] = (state, (left, right))
                        record["parent"] = parent
                    return None if (unknown and not optimistic) else False
                new = (right, frozenset(nxt))
                if record is not None:
                    record.setdefault("edges", {})[(state, left, right)] = new
                if new not in seen:
                    if depth + 1 > cuts:
                        incomplete = True
                        continue
                    seen[new] = depth + 1
                    parent[new] = (state, left)
                    queue.append(new)
        if incomplete or (unknown and optimistic):
            return None
        return True

    # ---- certificates

    def _certificate(self, A, B, k, res, cuts) -> dict:
        if k <= 1:
            if k == 0:
                return {"rule": "level 0 always holds"}
            return {"rule": "cardinality", "size_lhs": _size_text(A), "size_rhs": _size_text(B)}
        if A == B:
            return {"rule": "reflexivity"}
        rec: dict = {}
        self._search(A, B, k, cuts, optimistic=(res is False), record=rec)
        if res is False and "fail" in rec:
            state, step = rec["fail"]
            word = _word_to(rec["parent"], state)
            if step is None:
                intervals = word + [state[0]]
                reason = f"last interval {render(state[0])} has no partner"
            else:
                intervals = word + [step[0], step[1]]
                reason = f"interval {len(word)} ({render(step[0])}) cannot be matched"
            return {"rule": "failing partition", "partition": [render(t) for t in intervals],
                    "reason": reason}
        if res is True:
            strategy = []
            for state, witness in rec.get("final", {}).items():
                strategy.append({"rhs_residual": render(state[0]),
                                 "lhs_options": sorted(render(t) for t in state[1]),
                                 "final_match": render(witness)})
            return {"rule": "matching strategy", "states": len(strategy), "strategy": strategy}
        return {"rule": "bounds exhausted", "cuts": cuts, "params": self.params}

    def strategy_table(self, a: TermLike, b: TermLike, k: int) -> dict:
        """Exploration record used by the replay checker and the game."""
        A, B = prepare(as_term(a)), prepare(as_term(b))
        rec: dict = {}
        self._search(A, B, k, self._cut_bound(A, B), optimistic=False, record=rec)
        rec["start"] = (B, frozenset([A]))
        rec["level"] = k
        rec["thresholds"] = self.thresholds(A, B, k)
        return rec

    # ---- persistence

    def save_cache(self, path: str | Path | None = None):
        path = Path(path or self.cache_path)
        with open(path, "a", encoding="utf-8") as fh:
            for A, B, k, res in self._fresh_entries:
                fh.write(f"{render(A)}\t{render(B)}\t{k}\t{res}\tC={self.cuts},P={self.params}\n")
        self._fresh_entries.clear()

    def load_cache(self, path: str | Path) -> int:
        loaded = 0
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line:
                    continue
                try:
                    a, b, k, res, _bounds = line.split("\t")
                    if res not in ("True", "False"):
                        raise ValueError(f"outcome {res!r}")
                    A, B = prepare(as_term(a)), prepare(as_term(b))
                    self._memo[(A, B, int(k))] = res == "True"
                    loaded += 1
                except Exception as exc:  # corrupt line: skip it
                    log.warning("skipping cache line %d of %s: %s", lineno, path, exc)
        return loaded


def _partial_substitute(t: OrderTerm, values: dict) -> OrderTerm:
    if isinstance(t, Param):
        return Finite(values[t.name]) if t.name in values else t
    if isinstance(t, Sum):
        return Sum(tuple(_partial_substitute(p, values) for p in t.parts))
    if isinstance(t, Product):
        return Product(_partial_substitute(t.left, values), _partial_substitute(t.right, values))
    if isinstance(t, Shuffle):
        return Shuffle(frozenset(_partial_substitute(m, values) for m in t.members))
    return t


def rename_params(t: OrderTerm) -> OrderTerm:
    names = params_of(t)
    if not names:
        return t
    return substitute_names(t, {n: f"e{i}" for i, n in enumerate(names)})


def _letter_order(t: OrderTerm):
    s = size(t) if not contains_param(t) else None
    return (s is None, s or 0, render(t))


def _word_to(parent: dict, state) -> list:
    word = []
    while parent.get(state) is not None:
        state, letter = parent[state]
        word.append(letter)
    return word[::-1]


def _size_text(t: OrderTerm) -> str:
    s = size(t)
    return "infinite" if s is None else str(s)


def _finite_level(alpha) -> int:
    if isinstance(alpha, Ordinal):
        if not alpha.is_finite():
            raise UnsupportedLevel(f"level {alpha} is transfinite")
        return alpha.finite_value()
    if not isinstance(alpha, int) or alpha < 0:
        raise UnsupportedLevel(f"level {alpha!r} is not a natural number")
    return alpha


def prepare(t: OrderTerm) -> OrderTerm:
    if contains_param(t):
        raise UnsupportedShape("parameter blocks are only allowed inside split templates")
    return canonicalize(t)


# ---------------------------------------------------------------- replay checks

def replay_false(engine: Engine, a: TermLike, b: TermLike, k: int, partition: Iterable[str]) -> bool:
    """Independently confirm a failing partition: the pieces must reassemble b
    (checked by re-cutting b with the recorded pieces) and no cut of a with the
    same number of points matches it."""
    A, B = prepare(as_term(a)), prepare(as_term(b))
    pieces = [prepare(as_term(p)) for p in partition]
    t_forall, t_exists = engine.thresholds(A, B, k)
    # the pieces must be a partition of b
    rests = {B}
    for piece in pieces[:-1]:
        rests = {r for rb in rests for l, r in engine.concrete_splits(rb, t_forall) if l == piece}
    if pieces[-1] not in rests:
        return False
    reach = {A}
    for piece in pieces[:-1]:
        reach = {r for ra in reach for l, r in engine.concrete_splits(ra, t_exists)
                 if engine._le(piece, l, k - 1) is not False}
    return not any(engine._le(pieces[-1], ra, k - 1) is not False for ra in reach)


def replay_true(engine: Engine, a: TermLike, b: TermLike, k: int) -> bool:
    """Check that the recorded matching strategy is closed: every universal
    cut from every recorded position leads to a recorded position, and every
    recorded position has a final match."""
    rec = engine.strategy_table(a, b, k)
    if k <= 1:
        return engine.le(a, b, k) is True
    finals = rec.get("final", {})
    edges = rec.get("edges", {})
    if "fail" in rec or rec["start"] not in finals:
        return False
    t_forall, _ = rec["thresholds"]
    for state, witness in finals.items():
        rb, S = state
        if witness not in S or engine._le(rb, witness, k - 1) is not True:
            return False
        for left, right in engine.concrete_splits(rb, min(t_forall, engine.params)):
            nxt = edges.get((state, left, right))
            if nxt is None or nxt not in finals:
                return False
    return True


_default_engine: Engine | None = None


def default_engine() -> Engine:
    global _default_engine
    if _default_engine is None:
        _default_engine = Engine()
    return _default_engine


def check_le(a: TermLike, b: TermLike, alpha: int | Ordinal, bounds: tuple | None = None) -> Verdict:
    eng = default_engine() if bounds is None else Engine(*bounds)
    return eng.check_le(a, b, alpha)


def check_equiv(a: TermLike, b: TermLike, alpha: int | Ordinal, bounds: tuple | None = None) -> Verdict:
    eng = default_engine() if bounds is None else Engine(*bounds)
    return eng.check_equiv(a, b, alpha)
