"""Ordinals below w^w in Cantor normal form.

An ordinal is a tuple of (exponent, coefficient) pairs with strictly
decreasing exponents and positive coefficients.  The empty tuple is 0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    cnf: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = None
        for e, c in self.cnf:
            if e < 0 or c < 1:
                raise ValueError(f"bad CNF term ({e}, {c})")
            if prev is not None and e >= prev:
                raise ValueError("CNF exponents must strictly decrease")
            prev = e

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((0, n),)) if n else cls()

    @classmethod
    def omega_power(cls, e: int, c: int = 1) -> "Ordinal":
        return cls(((e, c),))

    def is_zero(self) -> bool:
        return not self.cnf

    def is_finite(self) -> bool:
        return all(e == 0 for e, _ in self.cnf)

    def finite_value(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.cnf[0][1] if self.cnf else 0

    def is_successor(self) -> bool:
        return bool(self.cnf) and self.cnf[-1][0] == 0

    def is_limit(self) -> bool:
        return bool(self.cnf) and self.cnf[-1][0] > 0

    def __add__(self, other: "Ordinal | int") -> "Ordinal":
        return add(self, other if isinstance(other, Ordinal) else Ordinal.of(other))

    def __radd__(self, other: int) -> "Ordinal":
        return add(Ordinal.of(other), self)

    def __lt__(self, other: "Ordinal | int") -> bool:
        return compare(self, _coerce(other)) < 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.cnf == other.cnf

    def __hash__(self) -> int:
        return hash(self.cnf)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Ordinal({render(self)!r})"


def _coerce(x: "Ordinal | int") -> Ordinal:
    return x if isinstance(x, Ordinal) else Ordinal.of(x)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum: terms of a below b's leading exponent are absorbed."""
    if not b.cnf:
        return a
    lead = b.cnf[0][0]
    kept = [(e, c) for e, c in a.cnf if e > lead]
    same = [c for e, c in a.cnf if e == lead]
    head = (lead, b.cnf[0][1] + (same[0] if same else 0))
    return Ordinal(tuple(kept) + (head,) + b.cnf[1:])


def double_plus(a: Ordinal, b: Ordinal) -> Ordinal:
    """(a + a) + b, the level arithmetic used by the Z^a transfer bounds."""
    return add(add(a, a), b)


def compare(a: Ordinal, b: Ordinal) -> int:
    for (ea, ca), (eb, cb) in zip(a.cnf, b.cnf):
        if ea != eb:
            return 1 if ea > eb else -1
        if ca != cb:
            return 1 if ca > cb else -1
    return (len(a.cnf) > len(b.cnf)) - (len(a.cnf) < len(b.cnf))


def is_successor(a: Ordinal) -> bool:
    return a.is_successor()


def is_limit(a: Ordinal) -> bool:
    return a.is_limit()


def render(a: Ordinal) -> str:
    if not a.cnf:
        return "0"
    parts = []
    for e, c in a.cnf:
        if e == 0:
            parts.append(str(c))
        elif e == 1:
            parts.append(f"w*{c}")
        else:
            parts.append(f"w^{e}*{c}")
    return " + ".join(parts)


_TERM = re.compile(r"^(?:w(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


def parse_ordinal(text: str) -> Ordinal:
    """Inverse of render; also accepts bare "w", "w^2" and sums in any CNF order."""
    total = Ordinal()
    for chunk in text.split("+"):
        chunk = chunk.strip().replace(" ", "")
        m = _TERM.match(chunk)
        if not m:
            raise ValueError(f"cannot read ordinal term {chunk!r}")
        if m.group(3) is not None:
            piece = Ordinal.of(int(m.group(3)))
        else:
            e = int(m.group(1)) if m.group(1) else 1
            c = int(m.group(2)) if m.group(2) else 1
            piece = Ordinal.omega_power(e, c) if c else Ordinal()
        total = add(total, piece)
    return total


OMEGA = Ordinal.omega_power(1)
