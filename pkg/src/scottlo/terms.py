"""Order terms: a small language for countable linear orders.

Constructors
    Finite(n)         the n-element order
    Omega, OmegaStar  w and its reverse
    Zeta, Eta         the integers and the rationals
    Sum(parts)        ordered sum, left to right
    Product(a, b)     a copied along b (b is the index order)
    Shuffle(members)  dense mixture of copies of each member, every member dense everywhere
    ZetaPower(d)      Z^d
    OmegaPower(d)     w^d
    Param(name)       finite block of unknown size; only inside split templates

Text syntax::

    term := sum
    sum  := prod { "+" prod }
    prod := atom { "*" atom }
    atom := NAT | "w" | "w*" | "z" | "q" | "z^" NAT | "w^" NAT
          | "sh(" term { "," term } ")" | "(" term ")"
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from .ordinals import Ordinal, add as ord_add


class TermError(ValueError):
    pass


class ParseError(TermError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        super().__init__(f"{msg} at position {pos}" + (f": {text!r}" if text else ""))
        self.pos = pos


class DecompositionUnsupported(TermError):
    def __init__(self, blocker: "OrderTerm", why: str):
        super().__init__(f"cannot split off a grammar-expressible W/R around {render(blocker)}: {why}")
        self.blocker = blocker


EXPONENT_CAP = 3


# ---------------------------------------------------------------- node types

class OrderTerm:
    __slots__ = ()

    def __str__(self) -> str:
        return render(self)

    def __add__(self, other: "OrderTerm") -> "OrderTerm":
        return Sum((self, other))

    def __mul__(self, other: "OrderTerm") -> "OrderTerm":
        return Product(self, other)


@dataclass(frozen=True, repr=False)
class Finite(OrderTerm):
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise TermError("Finite size must be >= 0")

    def __repr__(self):
        return f"Finite({self.n})"


@dataclass(frozen=True, repr=False)
class Omega(OrderTerm):
    def __repr__(self):
        return "Omega"


@dataclass(frozen=True, repr=False)
class OmegaStar(OrderTerm):
    def __repr__(self):
        return "OmegaStar"


@dataclass(frozen=True, repr=False)
class Zeta(OrderTerm):
    def __repr__(self):
        return "Zeta"


@dataclass(frozen=True, repr=False)
class Eta(OrderTerm):
    def __repr__(self):
        return "Eta"


@dataclass(frozen=True, repr=False)
class Sum(OrderTerm):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 2:
            raise TermError("Sum needs at least two parts")

    def __repr__(self):
        return "Sum[" + ", ".join(map(repr, self.parts)) + "]"


@dataclass(frozen=True, repr=False)
class Product(OrderTerm):
    left: OrderTerm
    right: OrderTerm

    def __repr__(self):
        return f"Product({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Shuffle(OrderTerm):
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if not self.members:
            raise TermError("Shuffle needs at least one member")

    def sorted_members(self) -> list:
        return sorted(self.members, key=render)

    def __repr__(self):
        return "Shuffle{" + ", ".join(map(repr, self.sorted_members())) + "}"


@dataclass(frozen=True, repr=False)
class ZetaPower(OrderTerm):
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise TermError("ZetaPower exponent must be >= 1")

    def __repr__(self):
        return f"ZetaPower({self.d})"


@dataclass(frozen=True, repr=False)
class OmegaPower(OrderTerm):
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise TermError("OmegaPower exponent must be >= 1")

    def __repr__(self):
        return f"OmegaPower({self.d})"


@dataclass(frozen=True, repr=False)
class Param(OrderTerm):
    name: str

    def __repr__(self):
        return f"Param({self.name})"


EMPTY = Finite(0)
ONE = Finite(1)
OMEGA, OMEGA_STAR, ZETA, ETA = Omega(), OmegaStar(), Zeta(), Eta()


def zeta_initial(d: int) -> OrderTerm:
    """Type of the part of Z^d strictly below any point (d = 0 gives the empty order)."""
    if d <= 0:
        return EMPTY
    return canonicalize(Sum((Product(zeta_power(d - 1), OMEGA_STAR), zeta_initial(d - 1))))


def zeta_final(d: int) -> OrderTerm:
    """Type of the part of Z^d strictly above any point."""
    if d <= 0:
        return EMPTY
    return canonicalize(Sum((zeta_final(d - 1), Product(zeta_power(d - 1), OMEGA))))


def zeta_power(d: int) -> OrderTerm:
    if d == 0:
        return ONE
    return ZETA if d == 1 else ZetaPower(d)


def omega_power(d: int) -> OrderTerm:
    if d == 0:
        return ONE
    return OMEGA if d == 1 else OmegaPower(d)


def sum_of(parts: Iterable[OrderTerm]) -> OrderTerm:
    """Sum constructor tolerant of 0 or 1 parts."""
    parts = [p for p in parts if p != EMPTY]
    if not parts:
        return EMPTY
    if len(parts) == 1:
        return parts[0]
    return Sum(tuple(parts))


# ---------------------------------------------------------------- rendering

def render(t: OrderTerm) -> str:
    return _render(t, 0)


def _render(t: OrderTerm, ctx: int) -> str:
    # ctx: 0 top/sum operand, 1 product operand
    if isinstance(t, Finite):
        return str(t.n)
    if isinstance(t, Omega):
        return "w"
    if isinstance(t, OmegaStar):
        return "(w*)" if ctx else "w*"
    if isinstance(t, Zeta):
        return "z"
    if isinstance(t, Eta):
        return "q"
    if isinstance(t, ZetaPower):
        return f"z^{t.d}"
    if isinstance(t, OmegaPower):
        return f"w^{t.d}"
    if isinstance(t, Param):
        return f"#{t.name}"
    if isinstance(t, Shuffle):
        return "sh(" + ", ".join(render(m) for m in t.sorted_members()) + ")"
    if isinstance(t, Sum):
        s = " + ".join(_render(p, 0) if not isinstance(p, Sum) else f"({render(p)})" for p in t.parts)
        return f"({s})" if ctx else s
    if isinstance(t, Product):
        left = _render(t.left, 1)
        right = _render(t.right, 1)
        if isinstance(t.right, Product):
            right = f"({render(t.right)})"
        return f"{left}*{right}"
    raise TypeError(f"not an order term: {t!r}")


# ---------------------------------------------------------------- parsing

class _Parser:
    def __init__(self, text: str, cap: int):
        self.text = text
        self.i = 0
        self.cap = cap

    def error(self, msg: str):
        raise ParseError(msg, self.i, self.text)

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def eat(self, s: str) -> bool:
        self.skip()
        if self.text.startswith(s, self.i):
            self.i += len(s)
            return True
        return False

    def nat(self) -> int:
        self.skip()
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            self.error("expected a natural number")
        v = int(self.text[self.i:j])
        self.i = j
        return v

    def term(self) -> OrderTerm:
        parts = [self.prod()]
        while self.eat("+"):
            parts.append(self.prod())
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))

    def prod(self) -> OrderTerm:
        t = self.atom()
        while self.peek() == "*":
            self.i += 1
            t = Product(t, self.atom())
        return t

    def exponent(self) -> int:
        pos = self.i
        d = self.nat()
        if d < 1:
            self.i = pos
            self.error("exponent must be at least 1")
        if d > self.cap:
            self.i = pos
            self.error(f"exponent {d} exceeds the configured cap {self.cap}")
        return d

    def atom(self) -> OrderTerm:
        c = self.peek()
        if not c:
            self.error("unexpected end of input")
        if c.isdigit():
            return Finite(self.nat())
        if self.eat("sh("):
            members = [self.term()]
            while self.eat(","):
                members.append(self.term())
            if not self.eat(")"):
                self.error("expected ')' closing sh(")
            return Shuffle(frozenset(members))
        if self.eat("("):
            t = self.term()
            if not self.eat(")"):
                self.error("expected ')'")
            return t
        if self.eat("z^"):
            return ZetaPower(self.exponent())
        if self.eat("w^"):
            return OmegaPower(self.exponent())
        if self.eat("z"):
            return ZETA
        if self.eat("q"):
            return ETA
        if self.eat("w"):
            # "w*" is w-star unless the star is a product operator followed by an atom
            if self.text.startswith("*", self.i):
                j = self.i + 1
                while j < len(self.text) and self.text[j].isspace():
                    j += 1
                nxt = self.text[j] if j < len(self.text) else ""
                if not (nxt and (nxt.isdigit() or nxt in "wzqs(")):
                    self.i += 1
                    return OMEGA_STAR
            return OMEGA
        self.error(f"unexpected character {c!r}")


def parse(text: str, exponent_cap: int = EXPONENT_CAP) -> OrderTerm:
    p = _Parser(text, exponent_cap)
    t = p.term()
    p.skip()
    if p.i != len(text):
        p.error("trailing input")
    return t


# ---------------------------------------------------------------- structural predicates

def node_count(t: OrderTerm) -> int:
    if isinstance(t, Sum):
        return 1 + sum(node_count(p) for p in t.parts)
    if isinstance(t, Product):
        return 1 + node_count(t.left) + node_count(t.right)
    if isinstance(t, Shuffle):
        return 1 + sum(node_count(m) for m in t.members)
    return 1


@lru_cache(maxsize=None)
def size(t: OrderTerm) -> int | None:
    """Number of points, or None when infinite."""
    if isinstance(t, Finite):
        return t.n
    if isinstance(t, Param):
        raise TermError("size of a parameter block is unknown")
    if isinstance(t, Sum):
        total = 0
        for p in t.parts:
            s = size(p)
            if s is None:
                return None
            total += s
        return total
    if isinstance(t, Product):
        a, b = size(t.left), size(t.right)
        if a == 0 or b == 0:
            return 0
        if a is None or b is None:
            return None
        return a * b
    if isinstance(t, Shuffle):
        return 0 if all(size(m) == 0 for m in t.members) else None
    return None


def is_finite(t: OrderTerm) -> bool:
    return size(t) is not None


def is_empty(t: OrderTerm) -> bool:
    return size(t) == 0


@lru_cache(maxsize=None)
def has_least(t: OrderTerm) -> bool:
    if isinstance(t, Finite):
        return t.n > 0
    if isinstance(t, (Omega, OmegaPower)):
        return True
    if isinstance(t, (OmegaStar, Zeta, Eta, ZetaPower, Shuffle)):
        return False
    if isinstance(t, Sum):
        for p in t.parts:
            if not is_empty(p):
                return has_least(p)
        return False
    if isinstance(t, Product):
        if is_empty(t):
            return False
        return has_least(t.left) and has_least(t.right)
    raise TermError(f"no least-element rule for {t!r}")


@lru_cache(maxsize=None)
def has_greatest(t: OrderTerm) -> bool:
    if isinstance(t, Finite):
        return t.n > 0
    if isinstance(t, OmegaStar):
        return True
    if isinstance(t, (Omega, OmegaPower, Zeta, Eta, ZetaPower, Shuffle)):
        return False
    if isinstance(t, Sum):
        for p in reversed(t.parts):
            if not is_empty(p):
                return has_greatest(p)
        return False
    if isinstance(t, Product):
        if is_empty(t):
            return False
        return has_greatest(t.left) and has_greatest(t.right)
    raise TermError(f"no greatest-element rule for {t!r}")


@lru_cache(maxsize=None)
def is_well_ordered(t: OrderTerm) -> bool:
    if isinstance(t, (Finite, Omega, OmegaPower)):
        return True
    if isinstance(t, Sum):
        return all(is_well_ordered(p) for p in t.parts)
    if isinstance(t, Product):
        return is_empty(t) or (is_well_ordered(t.left) and is_well_ordered(t.right))
    if isinstance(t, Shuffle):
        return is_empty(t)
    return False


@lru_cache(maxsize=None)
def is_reverse_well_ordered(t: OrderTerm) -> bool:
    if isinstance(t, (Finite, OmegaStar)):
        return True
    if isinstance(t, Sum):
        return all(is_reverse_well_ordered(p) for p in t.parts)
    if isinstance(t, Product):
        return is_empty(t) or (is_reverse_well_ordered(t.left) and is_reverse_well_ordered(t.right))
    if isinstance(t, Shuffle):
        return is_empty(t)
    return False


def as_ordinal(t: OrderTerm) -> Ordinal | None:
    """The ordinal denoted by a well-ordered term, or None if not readable."""
    if isinstance(t, Finite):
        return Ordinal.of(t.n)
    if isinstance(t, Omega):
        return Ordinal.omega_power(1)
    if isinstance(t, OmegaPower):
        return Ordinal.omega_power(t.d)
    if isinstance(t, Sum):
        total = Ordinal()
        for p in t.parts:
            o = as_ordinal(p)
            if o is None:
                return None
            total = ord_add(total, o)
        return total
    if isinstance(t, Product):
        a, b = as_ordinal(t.left), as_ordinal(t.right)
        if a is None or b is None:
            return None
        return ordinal_mul(a, b)
    return None


def ordinal_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if a.is_zero() or b.is_zero():
        return Ordinal()
    lead, lead_c = a.cnf[0]
    total = Ordinal()
    for e, c in b.cnf:
        if e == 0:
            piece = Ordinal(((lead, lead_c * c),) + a.cnf[1:])
        else:
            piece = Ordinal(((lead + e, c),))
        total = ord_add(total, piece)
    return total


def ordinal_term(o: Ordinal) -> OrderTerm:
    parts = []
    for e, c in o.cnf:
        base = omega_power(e)
        parts.append(base if c == 1 else (Finite(c) if e == 0 else Product(base, Finite(c))))
    return sum_of(parts)


@lru_cache(maxsize=None)
def adjacency_count(t: OrderTerm) -> int | None:
    """Number of adjacent pairs (x, y) with nothing strictly between; None = infinite."""
    if isinstance(t, Finite):
        return max(t.n - 1, 0)
    if isinstance(t, Eta):
        return 0
    if isinstance(t, (Omega, OmegaStar, Zeta, ZetaPower, OmegaPower)):
        return None
    if isinstance(t, Sum):
        parts = [p for p in t.parts if not is_empty(p)]
        total = 0
        for i, p in enumerate(parts):
            c = adjacency_count(p)
            if c is None:
                return None
            total += c
            if i and has_greatest(parts[i - 1]) and has_least(p):
                total += 1
        return total
    if isinstance(t, Product):
        if is_empty(t):
            return 0
        inner = adjacency_count(t.left)
        outer = adjacency_count(t.right)
        copies = size(t.right)
        if inner is None or outer is None:
            # inner adjacencies repeat in every copy; outer ones need endpoints to show
            if inner is None:
                return None
            if has_least(t.left) and has_greatest(t.left):
                return None
            outer = 0
        joins = outer if (has_least(t.left) and has_greatest(t.left)) else 0
        if copies is None:
            return None if inner else joins
        return copies * inner + joins
    if isinstance(t, Shuffle):
        total = 0
        for m in t.members:
            c = adjacency_count(m)
            if c is None or c > 0:
                return None
        return total
    raise TermError(f"no adjacency rule for {t!r}")


def max_constant(t: OrderTerm) -> int:
    """Largest Finite size occurring in t (0 if none)."""
    if isinstance(t, Finite):
        return t.n
    if isinstance(t, Sum):
        return max(max_constant(p) for p in t.parts)
    if isinstance(t, Product):
        return max(max_constant(t.left), max_constant(t.right))
    if isinstance(t, Shuffle):
        return max(max_constant(m) for m in t.members)
    return 0


def atoms(t: OrderTerm) -> set:
    """Distinct atomic subterms."""
    if isinstance(t, Sum):
        return set().union(*(atoms(p) for p in t.parts))
    if isinstance(t, Product):
        return atoms(t.left) | atoms(t.right)
    if isinstance(t, Shuffle):
        return set().union(*(atoms(m) for m in t.members))
    return {t}


def contains_param(t: OrderTerm) -> bool:
    if isinstance(t, Param):
        return True
    if isinstance(t, Sum):
        return any(contains_param(p) for p in t.parts)
    if isinstance(t, Product):
        return contains_param(t.left) or contains_param(t.right)
    if isinstance(t, Shuffle):
        return any(contains_param(m) for m in t.members)
    return False


def substitute(t: OrderTerm, values: dict) -> OrderTerm:
    if isinstance(t, Param):
        return Finite(values[t.name])
    if isinstance(t, Sum):
        return Sum(tuple(substitute(p, values) for p in t.parts))
    if isinstance(t, Product):
        return Product(substitute(t.left, values), substitute(t.right, values))
    if isinstance(t, Shuffle):
        return Shuffle(frozenset(substitute(m, values) for m in t.members))
    return t


def params_of(t: OrderTerm) -> list[str]:
    out: list[str] = []

    def walk(u):
        if isinstance(u, Param):
            if u.name not in out:
                out.append(u.name)
        elif isinstance(u, Sum):
            for p in u.parts:
                walk(p)
        elif isinstance(u, Product):
            walk(u.left)
            walk(u.right)
        elif isinstance(u, Shuffle):
            for m in u.sorted_members():
                walk(m)

    walk(t)
    return out


# ---------------------------------------------------------------- canonicalization
#
# Rules (each rewrites to an isomorphic order and never increases node_count):
#   sums      flatten; drop empty parts; merge neighbouring Finite parts;
#             x + w^d -> w^d when x is an ordinal below w^d (so n + w -> w);
#             w* + n -> w*;  q + q -> q;  S + S -> S for S a shuffle or t*q
#   products  0*a = a*0 = 0;  1*a = a*1 = a;  m*n -> mn;  a*(b*c) -> (a*b)*c;
#             z^i * z^j -> z^(i+j);  w^i * w^j -> w^(i+j);
#             n*w -> w, n*w* -> w*, n*z -> z, n*w^d -> w^d, n*z^d -> z^d  (n >= 1);
#             q*a -> q and sh(S)*a -> sh(S)  (a nonempty)
#   shuffles  canonical members; empty members dropped; duplicates merged
#   powers    z^1 -> z, w^1 -> w


@lru_cache(maxsize=200_000)
def canonicalize(t: OrderTerm) -> OrderTerm:
    if isinstance(t, ZetaPower):
        return ZETA if t.d == 1 else t
    if isinstance(t, OmegaPower):
        return OMEGA if t.d == 1 else t
    if isinstance(t, Sum):
        return _canon_sum([canonicalize(p) for p in t.parts])
    if isinstance(t, Product):
        return _canon_product(canonicalize(t.left), canonicalize(t.right))
    if isinstance(t, Shuffle):
        members = frozenset(m for m in (canonicalize(m) for m in t.members) if m != EMPTY)
        return Shuffle(members) if members else EMPTY
    return t


def _omega_exp(t: OrderTerm) -> int:
    return 1 if isinstance(t, Omega) else t.d


def _canon_product(a: OrderTerm, b: OrderTerm) -> OrderTerm:
    if a == EMPTY or b == EMPTY:
        return EMPTY
    if a == ONE:
        return b
    if b == ONE:
        return a
    if isinstance(a, Finite) and isinstance(b, Finite):
        return Finite(a.n * b.n)
    if isinstance(b, Product):
        return _canon_product(_canon_product(a, b.left), b.right)
    if isinstance(a, (Zeta, ZetaPower)) and isinstance(b, (Zeta, ZetaPower)):
        return ZetaPower((1 if isinstance(a, Zeta) else a.d) + (1 if isinstance(b, Zeta) else b.d))
    if isinstance(a, (Omega, OmegaPower)) and isinstance(b, (Omega, OmegaPower)):
        return OmegaPower(_omega_exp(a) + _omega_exp(b))
    if isinstance(a, Finite) and isinstance(b, (Omega, OmegaStar, Zeta, OmegaPower, ZetaPower)):
        return b
    if isinstance(a, (Eta, Shuffle)) and not contains_param(b):
        return a
    return Product(a, b)


def _is_dense_copy(t: OrderTerm) -> bool:
    return isinstance(t, (Eta, Shuffle)) or (isinstance(t, Product) and isinstance(t.right, Eta))


def _canon_sum(parts: list) -> OrderTerm:
    flat: list = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, Sum) else [p])
    out: list = []
    for p in flat:
        if p == EMPTY:
            continue
        out.append(p)
        while len(out) >= 2:
            x, y = out[-2], out[-1]
            merged = _merge_pair(x, y)
            if merged is None:
                break
            out[-2:] = [merged]
    return sum_of(out)


def _merge_pair(x: OrderTerm, y: OrderTerm) -> OrderTerm | None:
    if isinstance(x, Finite) and isinstance(y, Finite):
        return Finite(x.n + y.n)
    if not contains_param(x) and not contains_param(y) and is_well_ordered(y):
        ox, oy = as_ordinal(x), as_ordinal(y)
        if ox is not None and oy is not None and ox.cnf and oy.cnf and ox.cnf[0][0] < oy.cnf[0][0]:
            return y
    if isinstance(x, OmegaStar) and isinstance(y, Finite):
        return x
    if x == y and _is_dense_copy(x):
        return x
    return None


def is_canonical(t: OrderTerm) -> bool:
    return canonicalize(t) == t


# ---------------------------------------------------------------- W + K + R

def _parts(t: OrderTerm) -> list:
    if t == EMPTY:
        return []
    return list(t.parts) if isinstance(t, Sum) else [t]


def decompose_wkr(term: OrderTerm) -> tuple[OrderTerm, OrderTerm, OrderTerm]:
    """Split into (W, K, R): maximal well-ordered head, middle without endpoints,
    maximal reverse-well-ordered tail.  Empty pieces are Finite(0).

    A finite stretch that could belong to either end goes to R when the head
    is already infinite, otherwise to W.
    """
    t = canonicalize(term)
    parts = _parts(t)
    n = len(parts)
    w_end = 0
    while w_end < n and is_well_ordered(parts[w_end]):
        w_end += 1
    if w_end < n and has_least(parts[w_end]):
        raise DecompositionUnsupported(parts[w_end], "has a least element but is not well-ordered")
    r_start = n
    while r_start > 0 and is_reverse_well_ordered(parts[r_start - 1]):
        r_start -= 1
    if r_start > 0 and r_start > w_end and has_greatest(parts[r_start - 1]):
        raise DecompositionUnsupported(parts[r_start - 1], "has a greatest element but is not reverse-well-ordered")
    if r_start < w_end:
        # overlap is a run of finite parts
        head_only = sum_of(parts[:r_start])
        if is_finite(head_only):
            r_start = w_end
        else:
            w_end = r_start
    w = sum_of(parts[:w_end])
    k = sum_of(parts[w_end:r_start])
    r = sum_of(parts[r_start:])
    return w, k, r


decompose_WKR = decompose_wkr


# ---------------------------------------------------------------- random terms

_ATOM_MAKERS = (
    lambda r: Finite(r.randint(0, 4)),
    lambda r: OMEGA,
    lambda r: OMEGA_STAR,
    lambda r: ZETA,
    lambda r: ETA,
    lambda r: ZetaPower(r.randint(1, 2)),
    lambda r: OmegaPower(r.randint(1, 2)),
)


def random_term(seed: int, budget: int) -> OrderTerm:
    """Deterministic random term with at most `budget` nodes."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    return _rand(random.Random(seed), budget)


def _rand(r: random.Random, budget: int) -> OrderTerm:
    if budget < 3 or r.random() < 0.3:
        return r.choice(_ATOM_MAKERS)(r)
    kind = r.choice(("sum", "sum", "product", "shuffle"))
    inner = budget - 1
    if kind == "product":
        lb = r.randint(1, inner - 1)
        return Product(_rand(r, lb), _rand(r, inner - lb))
    k = r.randint(1 if kind == "shuffle" else 2, min(3, inner))
    if kind == "sum" and k < 2:
        k = 2
    shares = _split_budget(r, inner, k)
    kids = [_rand(r, s) for s in shares]
    if kind == "sum":
        return Sum(tuple(kids))
    return Shuffle(frozenset(kids))


def _split_budget(r: random.Random, total: int, k: int) -> list[int]:
    shares = [1] * k
    for _ in range(total - k):
        shares[r.randrange(k)] += 1
    return shares


TermLike = Union[OrderTerm, str]


def as_term(x: TermLike) -> OrderTerm:
    return parse(x) if isinstance(x, str) else x
