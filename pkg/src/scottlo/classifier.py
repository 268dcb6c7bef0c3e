"""Scott sentence complexity bounds for order terms.

A classification is built from two kinds of facts:

* upper facts: "the order has a Scott sentence in class G";
* exclusions: "the order has no Scott sentence in class G".

The reported lower bound is the least class that is contained in every upper
fact, escapes every exclusion and is an attainable complexity (Sigma_1,
Sigma_2 and Sigma_3 never are for linear orders, nor is anything inside
d-Sigma_1 for an infinite structure).  Exclusions that come from a
back-and-forth comparison (A <=_b K with A and K non-isomorphic) keep the
comparison, so they can be pushed through Z^d * A.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .engine import Engine, Outcome
from .ordinals import Ordinal, add as ord_add, double_plus, render as render_ordinal
from .terms import (
    EMPTY, ETA, OMEGA, OMEGA_STAR, ZETA, DecompositionUnsupported, Eta, Finite, Omega,
    OmegaPower, OmegaStar, OrderTerm, Product, Shuffle, Sum, TermError, Zeta, ZetaPower,
    TermLike, adjacency_count, as_ordinal, as_term, canonicalize, contains_param,
    decompose_wkr, has_greatest, has_least, render, size, sum_of,
)

SIGMA, PI, DSIGMA = "Sigma", "Pi", "dSigma"
_SHAPE_ORDER = {SIGMA: 0, PI: 1, DSIGMA: 2}
_SHORT = {SIGMA: "S", PI: "P", DSIGMA: "dS"}


class BlockAnalysisUnsupported(TermError):
    pass


@dataclass(frozen=True)
class SSCLabel:
    shape: str
    level: Ordinal
    evidence: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.shape not in _SHAPE_ORDER:
            raise ValueError(f"unknown shape {self.shape!r}")
        if isinstance(self.level, int):
            object.__setattr__(self, "level", Ordinal.of(self.level))
        if self.level.is_zero():
            raise ValueError("complexity levels start at 1")

    @classmethod
    def parse(cls, text: str) -> "SSCLabel":
        """Read "Pi_3", "Sigma_4", "dSigma_2" or "Pi_w"."""
        shape, _, level = text.partition("_")
        from .ordinals import parse_ordinal
        return cls(shape, parse_ordinal(level))

    def __str__(self) -> str:
        return f"{self.shape}_{render_ordinal(self.level).replace(' ', '')}"

    def to_json(self) -> dict:
        out = {"shape": self.shape, "level": render_ordinal(self.level), "label": str(self)}
        if self.evidence:
            out["evidence"] = list(self.evidence)
        return out


def contained(a: SSCLabel, b: SSCLabel) -> bool:
    """Class inclusion: every sentence of class a is equivalent to one of class b."""
    if a.level < b.level:
        return True
    if a.level == b.level:
        return a.shape == b.shape or b.shape == DSIGMA
    return False


def attainable(label: SSCLabel, infinite: bool) -> bool:
    """Whether a countable linear order can have exactly this complexity."""
    n = label.level
    if label.shape == SIGMA and n <= 3:
        return False
    if infinite and contained(label, SSCLabel(DSIGMA, 1)):
        return False
    return True


# ---------------------------------------------------------------- Scott invariants

class ScottInvariants(NamedTuple):
    psr: Ordinal
    sr: Ordinal
    parameters: str


def _pred(o: Ordinal) -> Ordinal:
    if not o.is_successor():
        raise ValueError(f"{o} is not a successor")
    *head, (e, c) = o.cnf
    return Ordinal(tuple(head) + (((0, c - 1),) if c > 1 else ()))


def scott_invariants(label: SSCLabel) -> ScottInvariants:
    """Parameterised Scott rank, Scott rank and parameter-orbit complexity
    implied by a Scott sentence complexity."""
    lv = label.level
    if label.shape == PI:
        if lv.is_limit():
            return ScottInvariants(lv, lv, "none")
        a = _pred(lv)
        return ScottInvariants(a, a, "none")
    if not lv.is_successor():
        raise ValueError(f"{label} does not occur as a Scott sentence complexity")
    below = _pred(lv)
    if label.shape == DSIGMA:
        if below.is_limit():
            raise ValueError(f"{label} does not occur as a Scott sentence complexity")
        return ScottInvariants(below, lv, f"Pi_{render_ordinal(below)}" if not below.is_zero() else "Pi_0")
    # Sigma
    if below.is_limit():
        return ScottInvariants(below, lv, f"Pi_{render_ordinal(below)}")
    if below.is_zero():
        raise ValueError("Sigma_1 does not occur as a Scott sentence complexity")
    a = _pred(below)
    if a.is_zero() and below == Ordinal.of(1):
        raise ValueError("Sigma_2 does not occur as a Scott sentence complexity")
    return ScottInvariants(a, lv, f"Pi_{render_ordinal(below)}")


def fs_ssc_transfer(label: SSCLabel) -> SSCLabel:
    """Complexity of the tree-of-tuples order of a structure with the given
    complexity: writing the level as 1 + a, Pi_{1+a} goes to Pi_{3+a} and
    Sigma/d-Sigma_{1+a} go to Pi_{3+a+1}."""
    lv = label.level
    a = _pred(lv) if lv.is_finite() else lv  # 1 + a = a once a is infinite
    target = ord_add(Ordinal.of(3), a)
    if label.shape == PI:
        return SSCLabel(PI, target)
    return SSCLabel(PI, ord_add(target, Ordinal.of(1)))


# ---------------------------------------------------------------- K membership

def _dense_block(t: OrderTerm) -> int | None:
    if isinstance(t, Eta):
        return 1
    if isinstance(t, Product) and isinstance(t.right, Eta) and isinstance(t.left, Finite):
        return t.left.n
    return None


def _parts(t: OrderTerm) -> list:
    if t == EMPTY:
        return []
    return list(t.parts) if isinstance(t, Sum) else [t]


def k_member(term: TermLike) -> str | None:
    """Which family of the 3-universal class the canonical term belongs to, if any."""
    t = canonicalize(as_term(term))
    parts = _parts(t)
    if size(t) is not None:
        return "k"
    fin = [isinstance(p, Finite) for p in parts]
    shapes = ["n" if f else type(p).__name__ for p, f in zip(parts, fin)]
    if shapes in (["Omega"], ["Omega", "n"]):
        return "w+k"
    if shapes in (["OmegaStar"], ["n", "OmegaStar"]):
        return "k+w*"
    if shapes in (["Zeta"], ["n", "Zeta"], ["Zeta", "n"], ["n", "Zeta", "n"]):
        return "k+z+k'"
    if shapes == ["Omega", "OmegaStar"]:
        return "w+w*"
    inner = parts[1:] if fin[0] else parts
    if inner and isinstance(inner[-1], Finite):
        inner = inner[:-1]
    if not inner or len(inner) % 2 == 0:
        return None
    dense = inner[0::2]
    blocks = inner[1::2]
    ms = [_dense_block(p) for p in dense]
    if any(m is None for m in ms) or not all(isinstance(b, Finite) for b in blocks):
        return None
    for i, b in enumerate(blocks):
        if not b.n > max(ms[i], ms[i + 1]):
            return None
    return "dense blocks"


def finite_sum_of_k(term: TermLike) -> bool:
    """Whether the canonical term splits into consecutive K-members."""
    parts = _parts(canonicalize(as_term(term)))
    n = len(parts)
    ok = [False] * (n + 1)
    ok[0] = True
    for j in range(1, n + 1):
        ok[j] = any(ok[i] and k_member(sum_of(parts[i:j])) is not None for i in range(j))
    return ok[n]


# ---------------------------------------------------------------- blocks

def has_infinite_block(t: OrderTerm) -> bool:
    """Some maximal finite-distance class is infinite (arbitrarily long successor chains)."""
    if isinstance(t, (Omega, OmegaStar, Zeta, ZetaPower, OmegaPower)):
        return True
    if isinstance(t, (Finite, Eta)):
        return False
    if isinstance(t, (Sum, Shuffle)):
        return any(has_infinite_block(p) for p in (t.parts if isinstance(t, Sum) else t.members))
    if isinstance(t, Product):
        if size(t) == 0:
            return False
        return has_infinite_block(t.left) or (size(t.left) is not None and has_infinite_block(t.right))
    raise BlockAnalysisUnsupported(f"no block rule for {render(t)}")


def max_block(t: OrderTerm) -> int:
    """Largest block in an order whose blocks are all finite."""
    if isinstance(t, Finite):
        return t.n
    if isinstance(t, Eta):
        return 1
    if isinstance(t, Shuffle):
        return max(max_block(m) for m in t.members)
    if isinstance(t, Product) and isinstance(t.right, Eta):
        return max_block(t.left)
    if isinstance(t, Sum):
        for p in t.parts:
            if not isinstance(p, Finite) and (has_least(p) or has_greatest(p)):
                raise BlockAnalysisUnsupported(f"endpoint inside {render(t)} may join blocks")
        return max(max_block(p) for p in t.parts)
    raise BlockAnalysisUnsupported(f"block sizes of {render(t)} are not readable")


def _reduce_blocks(pieces: list) -> list:
    top = max(n for _, n in pieces)
    if ("d", top) in pieces:
        return [("d", top)]
    out, seg = [], []
    for piece in pieces:
        if piece == ("b", top):
            out += _reduce_blocks(seg) + [piece]
            seg = []
        else:
            seg.append(piece)
    return out + _reduce_blocks(seg)


def _block_witness(k: OrderTerm) -> OrderTerm:
    pieces = []
    for p in _parts(k):
        if isinstance(p, Finite):
            pieces.append(("b", p.n))
        elif not has_least(p) and not has_greatest(p):
            pieces.append(("d", max_block(p)))
        else:
            raise BlockAnalysisUnsupported(f"middle part {render(p)} has an endpoint")
    terms = [(ETA if n == 1 else Product(Finite(n), ETA)) if kind == "d" else Finite(n)
             for kind, n in _reduce_blocks(pieces)]
    return sum_of(terms)


# ---------------------------------------------------------------- universality witnesses

def two_universal_witness(term: TermLike) -> OrderTerm:
    t = canonicalize(as_term(term))
    return t if size(t) is not None else ETA


def three_universal_witness(term: TermLike, engine: Engine | None = None, check: bool = True):
    """(witness, verdict): a member of the 3-universal class above the term at
    level 3, chosen by the shape of its W + K + R decomposition."""
    t = canonicalize(as_term(term))
    w, k, r = decompose_wkr(t)
    sw, sr = size(w), size(r)
    if sw is None and sr is not None:
        wit = sum_of([OMEGA, Finite(sr)])
    elif sw is not None and sr is None:
        wit = sum_of([Finite(sw), OMEGA_STAR])
    elif sw is None and sr is None:
        wit = sum_of([OMEGA, OMEGA_STAR])
    elif k == EMPTY:
        wit = t
    elif has_infinite_block(k):
        wit = sum_of([Finite(sw), ZETA, Finite(sr)])
    else:
        wit = sum_of([Finite(sw), _block_witness(k), Finite(sr)])
    wit = canonicalize(wit)
    verdict = None
    if check:
        verdict = (engine or default_classifier_engine()).check_le(t, wit, 3)
    return wit, verdict


# ---------------------------------------------------------------- non-isomorphism

def _code(t: OrderTerm) -> OrderTerm | None:
    """Replace every block by a finite block whose size names its type
    (finite n -> 2n, w -> 1, w* -> 3, z -> 5).  The result depends only on the
    isomorphism type, so different images mean different orders."""
    if isinstance(t, Finite):
        return Finite(2 * t.n)
    if isinstance(t, Eta):
        return Product(Finite(2), ETA)
    if isinstance(t, Omega):
        return Finite(1)
    if isinstance(t, OmegaStar):
        return Finite(3)
    if isinstance(t, Zeta):
        return Finite(5)
    if isinstance(t, OmegaPower):
        return OmegaPower(t.d - 1) if t.d > 2 else OMEGA
    if isinstance(t, ZetaPower):
        return Product(Finite(5), ZetaPower(t.d - 1) if t.d > 2 else ZETA)
    if isinstance(t, Shuffle):
        members = [_code(m) for m in t.members]
        return None if any(m is None for m in members) else Shuffle(frozenset(members))
    if isinstance(t, Sum):
        parts = t.parts
        for x, y in zip(parts, parts[1:]):
            if has_greatest(x) and has_least(y):
                return None
        coded = [_code(p) for p in parts]
        return None if any(c is None for c in coded) else Sum(tuple(coded))
    if isinstance(t, Product):
        a, b = t.left, t.right
        if isinstance(a, (Omega, OmegaStar, Zeta)):
            return Product(_code(a), b)
        if isinstance(b, Eta):
            inner = _code(a)
            return None if inner is None else Product(inner, ETA)
        return None
    return None


def distinct(x: TermLike, y: TermLike, engine: Engine | None = None, max_level: int = 6) -> str | None:
    """A reason the two orders are not isomorphic, or None if none was found."""
    a, b = canonicalize(as_term(x)), canonicalize(as_term(y))
    if a == b:
        return None
    if size(a) != size(b):
        return "sizes differ"
    if adjacency_count(a) != adjacency_count(b):
        return "adjacency counts differ"
    if has_least(a) != has_least(b) or has_greatest(a) != has_greatest(b):
        return "endpoints differ"
    eng = engine or default_classifier_engine()
    ca, cb = _code(a), _code(b)
    pairs = [("block codes", a, b)]
    if ca is not None and cb is not None:
        pairs.insert(0, ("block codes", canonicalize(ca), canonicalize(cb)))
        pairs[1] = ("levels", a, b)
    for why, u, v in pairs:
        if u == v:
            continue
        for k in range(2, max_level + 1):
            for p, q in ((u, v), (v, u)):
                if eng.le(p, q, k) is False:
                    return f"{why}: {render(p)} <=_{k} {render(q)} fails"
    return None


# ---------------------------------------------------------------- classification

@dataclass
class Classification:
    term: OrderTerm
    lower: SSCLabel
    upper: SSCLabel | None
    exact: bool
    evidence: list

    def to_json(self) -> dict:
        return {
            "term": render(self.term),
            "lower": str(self.lower),
            "upper": str(self.upper) if self.upper else None,
            "exact": self.exact,
            "evidence": self.evidence,
        }


@dataclass
class _Facts:
    uppers: list = field(default_factory=list)      # (label, rule)
    exclusions: list = field(default_factory=list)  # (label, rule, transfer or None)
    evidence: list = field(default_factory=list)

    def upper(self, label: SSCLabel, rule: str, detail: str = ""):
        self.uppers.append(label)
        self.evidence.append({"rule": rule, "claim": f"has a {label} Scott sentence", "detail": detail})

    def exclude(self, label: SSCLabel, rule: str, detail: str = "", transfer=None):
        self.exclusions.append((label, transfer))
        self.evidence.append({"rule": rule, "claim": f"no {label} Scott sentence", "detail": detail})


_DEFAULT_ENGINE: Engine | None = None


def default_classifier_engine() -> Engine:
    global _DEFAULT_ENGINE
    if _DEFAULT_ENGINE is None:
        _DEFAULT_ENGINE = Engine(budget=20.0)
    return _DEFAULT_ENGINE


def _verdict_ref(v) -> str:
    return f"{v.lhs} <=_{v.alpha} {v.rhs}: {v.outcome}"


class Classifier:
    def __init__(self, engine: Engine | None = None, max_iso_level: int = 6):
        self.engine = engine or default_classifier_engine()
        self.max_iso_level = max_iso_level
        self._memo: dict = {}

    def classify(self, term: TermLike) -> Classification:
        t = canonicalize(as_term(term))
        if contains_param(t):
            raise TermError("cannot classify a template with parameters")
        hit = self._memo.get(t)
        if hit is None:
            facts = self._facts(t)
            hit = self._resolve(t, facts)
            self._memo[t] = (hit, facts)
        else:
            hit = hit[0]
        return hit

    def facts(self, t: OrderTerm) -> _Facts:
        self.classify(t)
        return self._memo[canonicalize(t)][1]

    # ---- rules

    def _le(self, a, b, k):
        return self.engine.check_le(a, b, k)

    def _bf_exclusion(self, f: _Facts, t, other, beta, direction: str, rule: str):
        """Record no-Pi (direction "le": t <= other) or no-Sigma (direction "ge":
        other <= t) at level beta when the engine and a non-isomorphism check agree."""
        v = self._le(t, other, beta) if direction == "le" else self._le(other, t, beta)
        if v.outcome is not Outcome.TRUE:
            f.evidence.append({"rule": rule, "claim": "not used", "detail": _verdict_ref(v)})
            return False
        why = distinct(t, other, self.engine, self.max_iso_level)
        if why is None:
            f.evidence.append({"rule": rule, "claim": "not used",
                               "detail": f"{_verdict_ref(v)} but no non-isomorphism certificate"})
            return False
        shape = PI if direction == "le" else SIGMA
        f.exclude(SSCLabel(shape, beta), rule, f"{_verdict_ref(v)}; {why}",
                  transfer=(shape, beta))
        return True

    def _facts(self, t: OrderTerm) -> _Facts:
        f = _Facts()
        n = size(t)
        if n is not None:
            self._finite_rules(f, t, n)
            return f
        f.evidence.append({"rule": "infinite", "claim": "nothing inside d-Sigma_1", "detail": ""})
        adj = adjacency_count(t)
        if adj is not None:
            self._finite_adjacency_rules(f, t, adj)
            return f
        f.exclude(SSCLabel(SIGMA, 3), "finite adjacency criterion", "adjacency relation is infinite")
        if k_member(t):
            f.upper(SSCLabel(PI, 3), "3-universal class member", k_member(t))
        self._ordinal_rules(f, t)
        self._zeta_rules(f, t)
        self._shuffle_sum_rules(f, t)
        self._block_shuffle_rules(f, t)
        if not k_member(t) and not any(contained(u, SSCLabel(PI, 3)) for u in f.uppers):
            self._three_universal_lower(f, t)
        return f

    def _finite_rules(self, f: _Facts, t, n):
        if n <= 1:
            f.upper(SSCLabel(PI, 1), "finite order", f"{n} points")
            if n == 1:
                self._bf_exclusion(f, t, Finite(2), 1, "ge", "cardinality comparison")
            return
        f.upper(SSCLabel(DSIGMA, 1), "finite order", f"{n} points")
        self._bf_exclusion(f, t, Finite(n - 1), 1, "le", "cardinality comparison")
        self._bf_exclusion(f, t, Finite(n + 1), 1, "ge", "cardinality comparison")

    def _finite_adjacency_rules(self, f: _Facts, t, adj):
        if adj == 0 and not has_least(t) and not has_greatest(t):
            f.upper(SSCLabel(PI, 2), "dense without endpoints", "isomorphic to the rationals")
            self._bf_exclusion(f, t, OMEGA, 2, "ge", "2-universality of the rationals")
            return
        f.upper(SSCLabel(DSIGMA, 2), "finite adjacency",
                f"{adj} adjacencies; skeleton of successor chains and endpoints plus density")
        self._bf_exclusion(f, t, ETA, 2, "le", "2-universality of the rationals")
        bumped = _bump_block(t)
        if bumped is not None:
            self._bf_exclusion(f, t, bumped, 2, "ge", "longer successor chain")

    def _ordinal_rules(self, f: _Facts, t):
        o = as_ordinal(t)
        if o is None or len(o.cnf) != 1:
            return
        d, c = o.cnf[0]
        if d == 0:
            return
        lvl = 2 * d + 1
        if c == 1:
            f.upper(SSCLabel(PI, lvl), "powers of omega", f"w^{d}")
            f.exclude(SSCLabel(SIGMA, lvl), "powers of omega", f"w^{d} is exactly Pi_{lvl}")
        elif c == 2:
            f.upper(SSCLabel(DSIGMA, lvl), "powers of omega", f"w^{d}*2")
            f.exclude(SSCLabel(SIGMA, lvl), "powers of omega", f"w^{d}*2 is exactly d-Sigma_{lvl}")
            f.exclude(SSCLabel(PI, lvl), "powers of omega", f"w^{d}*2 is exactly d-Sigma_{lvl}")

    def _zeta_rules(self, f: _Facts, t):
        split = zeta_factor(t)
        if split is None:
            return
        d, rest = split
        sub = self.classify(rest)
        sub_facts = self.facts(rest)
        shift = Ordinal.of(d)
        detail = f"Z^{d} * ({render(rest)}) with {render(rest)} in [{sub.lower}, {sub.upper}]"
        if sub.upper is not None:
            f.upper(SSCLabel(sub.upper.shape, double_plus(shift, sub.upper.level)),
                    "multiplication by Z^d", detail)
        for label, transfer in sub_facts.exclusions:
            if transfer is None:
                continue
            shape, beta = transfer
            f.exclude(SSCLabel(shape, double_plus(shift, Ordinal.of(beta))),
                      "multiplication by Z^d", f"from no {label} for {render(rest)}",
                      transfer=(shape, 2 * d + beta))

    def _shuffle_sum_rules(self, f: _Facts, t):
        shape = shuffle_sum_shape(t)
        if shape is None:
            return
        a, mid, b = shape
        rest = drop_least(mid)
        pieces = [p for p in (a, rest, b) if p is not None and p != EMPTY]
        srs = []
        for p in pieces:
            c = self.classify(p)
            if c.upper is None:
                srs = None
                break
            srs.append(scott_invariants(c.upper).sr)
        if srs is not None and rest is not None:
            s = max(srs)
            f.upper(SSCLabel(SIGMA, ord_add(s, Ordinal.of(2))), "shuffle sum with a named point",
                    f"naming the least point of {render(mid)} leaves pieces of Scott rank <= {render_ordinal(s)}")
            top = s.finite_value() if s.is_finite() else None
        else:
            top = 3
        if top is None:
            return
        ab = canonicalize(sum_of([a, b]))
        for alpha in range(top, 0, -1):
            v = self._le(a, b, alpha)
            if v.outcome is Outcome.TRUE:
                why = distinct(t, ab, self.engine, self.max_iso_level)
                if why is None:
                    f.evidence.append({"rule": "shuffle sum bound", "claim": "not used",
                                       "detail": f"{_verdict_ref(v)} but no non-isomorphism certificate"})
                    return
                f.exclude(SSCLabel(PI, alpha + 2), "shuffle sum bound",
                          f"{_verdict_ref(v)} so {render(t)} <=_{alpha + 2} {render(ab)}; {why}",
                          transfer=(PI, alpha + 2))
                return

    def _block_shuffle_rules(self, f: _Facts, t):
        if is_block_shuffle(t):
            f.upper(SSCLabel(PI, 4), "shuffle of blocks",
                    "orbits defined by successor-chain formulas, Scott rank <= 3")

    def _three_universal_lower(self, f: _Facts, t):
        try:
            wit, _ = three_universal_witness(t, self.engine, check=False)
        except (DecompositionUnsupported, BlockAnalysisUnsupported):
            return
        self._bf_exclusion(f, t, wit, 3, "le", "3-universal witness")

    # ---- combine

    def _resolve(self, t: OrderTerm, f: _Facts) -> Classification:
        infinite = size(t) is None
        uppers = f.uppers
        upper = None
        for u in uppers:
            if upper is None or contained(u, upper):
                upper = u
        top = max([u.level.finite_value() for u in uppers if u.level.is_finite()]
                  + [lab.level.finite_value() + 1 for lab, _ in f.exclusions if lab.level.is_finite()]
                  + [3])
        cands = []
        for lvl in range(1, top + 2):
            for shape in (SIGMA, PI, DSIGMA):
                c = SSCLabel(shape, lvl)
                if not attainable(c, infinite):
                    continue
                if upper is not None and not all(contained(c, u) for u in uppers):
                    continue
                if any(contained(c, lab) for lab, _ in f.exclusions):
                    continue
                cands.append(c)
        if upper is not None and upper not in cands:
            raise RuntimeError(f"inconsistent facts for {render(t)}: upper {upper} is excluded")
        minimal = [c for c in cands if not any(d != c and contained(d, c) for d in cands)]
        if len(minimal) == 1:
            lower = minimal[0]
        else:
            lvl = min(c.level for c in minimal)
            lower = SSCLabel(DSIGMA, _pred(lvl)) if lvl > Ordinal.of(1) else SSCLabel(PI, 1)
        exact = upper is not None and lower == upper
        lower = SSCLabel(lower.shape, lower.level, tuple(e["rule"] for e in f.evidence if e["claim"].startswith("no ")))
        if upper is not None:
            upper = SSCLabel(upper.shape, upper.level, tuple(e["rule"] for e in f.evidence if e["claim"].startswith("has ")))
        return Classification(t, lower, upper, exact, f.evidence)


# ---------------------------------------------------------------- shape recognisers

def zeta_factor(t: OrderTerm) -> tuple[int, OrderTerm] | None:
    """Split t as Z^d * L with d >= 1."""
    if isinstance(t, Zeta):
        return 1, Finite(1)
    if isinstance(t, ZetaPower):
        return t.d, Finite(1)
    if not isinstance(t, Product):
        return None
    factors = []
    u = t
    while isinstance(u, Product):
        factors.append(u.right)
        u = u.left
    factors.append(u)
    factors.reverse()
    head = factors[0]
    if not isinstance(head, (Zeta, ZetaPower)):
        return None
    d = 1 if isinstance(head, Zeta) else head.d
    rest = factors[1]
    for fct in factors[2:]:
        rest = Product(rest, fct)
    return d, canonicalize(rest)


def is_shuffle_sum(t: OrderTerm) -> bool:
    return isinstance(t, (Shuffle, Eta)) or (isinstance(t, Product) and isinstance(t.right, Eta))


def shuffle_sum_shape(t: OrderTerm):
    """(A, L, B) when t = A + L + B with A a shuffle sum and B = L * q."""
    parts = _parts(t)
    if len(parts) < 3 or not is_shuffle_sum(parts[0]):
        return None
    a, b = parts[0], parts[-1]
    mid = sum_of(parts[1:-1])
    if canonicalize(Product(mid, ETA)) != b:
        return None
    return a, mid, b


def drop_least(t: OrderTerm) -> OrderTerm | None:
    """The order with its least point removed, or None without a least point."""
    if not has_least(t):
        return None
    if isinstance(t, Finite):
        return Finite(t.n - 1)
    if isinstance(t, (Omega, OmegaPower)):
        return t
    if isinstance(t, Sum):
        parts = [p for p in t.parts if size(p) != 0]
        head = drop_least(parts[0])
        return canonicalize(sum_of([head] + parts[1:]))
    if isinstance(t, Product):
        rest_a, rest_b = drop_least(t.left), drop_least(t.right)
        return canonicalize(sum_of([rest_a, Product(t.left, rest_b)]))
    return None


def is_block_shuffle(t: OrderTerm) -> bool:
    single = (Finite, Omega, OmegaStar, Zeta)
    if isinstance(t, Shuffle):
        return all(isinstance(m, single) for m in t.members)
    if isinstance(t, Product) and isinstance(t.right, Eta):
        return isinstance(t.left, single)
    return False


def _bump_block(t: OrderTerm) -> OrderTerm | None:
    parts = _parts(t)
    idx = [i for i, p in enumerate(parts) if isinstance(p, Finite)]
    if not idx:
        return None
    i = max(idx, key=lambda j: parts[j].n)
    parts = list(parts)
    parts[i] = Finite(parts[i].n + 1)
    return canonicalize(sum_of(parts))


def classify(term: TermLike, engine: Engine | None = None) -> Classification:
    return Classifier(engine).classify(term)
