"""Line-oriented back-and-forth game between a person and the engine.

A claim A <=_k B is played in rounds.  The universal player cuts the right
order into intervals ("3 | w" cuts w once, after three points), the
existential player cuts the left order into the same number of intervals,
then the universal player picks an interval index and play continues on the
reversed claim B_i <=_{k-1} A_i.  At level 1 the claim is settled by sizes.

The person plays one role throughout; the engine plays the other.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .engine import Engine, Outcome
from .terms import OrderTerm, ParseError, TermError, canonicalize, max_constant, parse, render, size

FORALL, EXISTS = "forall", "exists"


class IllegalMove(ValueError):
    pass


@dataclass
class Claim:
    left: OrderTerm
    right: OrderTerm
    level: int

    def __str__(self):
        return f"{render(self.left)} <=_{self.level} {render(self.right)}"


@dataclass
class Game:
    lhs: str
    rhs: str
    alpha: int
    role: str = FORALL
    engine: Engine = field(default_factory=Engine)
    transcript: list = field(default_factory=list)

    def __post_init__(self):
        if self.role not in (FORALL, EXISTS):
            raise ValueError("role must be 'forall' or 'exists'")
        self.claim = Claim(canonicalize(parse(self.lhs)), canonicalize(parse(self.rhs)), int(self.alpha))
        self.verdict = self.engine.check_le(self.claim.left, self.claim.right, self.claim.level)
        if self.verdict.outcome is Outcome.INCONCLUSIVE:
            raise RuntimeError(f"engine cannot decide {self.claim} within its bounds")
        self.winner: str | None = None
        self.phase = "cut"  # cut -> answer -> pick
        self.cut: list | None = None
        self.answer: list | None = None
        self.rounds = 0
        self._log(f"claim {self.claim}: engine verdict {self.verdict.outcome.value}")
        self._log(f"you play {self.role}")
        self._advance()

    # ---- public surface

    @property
    def finished(self) -> bool:
        return self.winner is not None

    def prompt(self) -> str:
        if self.finished:
            return f"game over: {self.winner} wins"
        c = self.claim
        if self.phase == "cut":
            return f"[{c}] cut {render(c.right)} into intervals, separated by '|'"
        if self.phase == "answer":
            return (f"[{c}] answer {' | '.join(map(render, self.cut))} "
                    f"with {len(self.cut)} intervals of {render(c.left)}")
        return f"[{c}] pick an interval index 0..{len(self.cut) - 1}"

    def play(self, line: str) -> str:
        """Apply one line of input; returns the text to show.  Illegal moves
        raise IllegalMove and leave the state unchanged."""
        line = line.strip()
        if line in ("resign", "quit"):
            self.winner = "engine"
            self._log("you resign")
            return "you resign; engine wins"
        if self.finished:
            raise IllegalMove("the game is over")
        start = len(self.transcript)
        if self.phase == "cut" and self.role == FORALL:
            self.cut = self._read_partition(line, self.claim.right)
            self._log(f"you cut: {' | '.join(map(render, self.cut))}")
            self.phase = "answer"
        elif self.phase == "answer" and self.role == EXISTS:
            pieces = self._read_partition(line, self.claim.left)
            if len(pieces) != len(self.cut):
                raise IllegalMove(f"need {len(self.cut)} intervals, got {len(pieces)}")
            self.answer = pieces
            self._log(f"you answer: {' | '.join(map(render, pieces))}")
            self.phase = "pick"
        elif self.phase == "pick" and self.role == FORALL:
            try:
                i = int(line)
            except ValueError:
                raise IllegalMove("type an interval index") from None
            if not 0 <= i < len(self.cut):
                raise IllegalMove(f"index must be in 0..{len(self.cut) - 1}")
            self._descend(i)
        else:
            raise IllegalMove("it is not your turn")
        self._advance()
        return "\n".join(self.transcript[start:])

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(self.transcript) + "\n")

    # ---- internals

    def _log(self, text: str):
        self.transcript.append(text)

    def _advance(self):
        """Let the engine move until it is the person's turn or the game ends."""
        while not self.finished:
            c = self.claim
            if c.level <= 1:
                self._settle()
                return
            if self.phase == "cut":
                if self.role == FORALL:
                    return
                self.cut = self._engine_cut()
                self._log(f"engine cuts: {' | '.join(map(render, self.cut))}")
                self.phase = "answer"
            elif self.phase == "answer":
                if self.role == EXISTS:
                    return
                ans = self._engine_answer(self.cut)
                if ans is None:
                    self._log("engine has no answer to that cut")
                    self.winner = "you"
                    return
                self.answer = ans
                self._log(f"engine answers: {' | '.join(map(render, ans))}")
                self.phase = "pick"
            else:
                if self.role == FORALL:
                    return
                bad = [i for i, (b, a) in enumerate(zip(self.cut, self.answer))
                       if self.engine.le(b, a, c.level - 1) is False]
                i = bad[0] if bad else 0
                self._log(f"engine picks interval {i}")
                self._descend(i)

    def _descend(self, i: int):
        b, a = self.cut[i], self.answer[i]
        self.claim = Claim(b, a, self.claim.level - 1)
        self.rounds += 1
        self.cut = self.answer = None
        self.phase = "cut"
        self._log(f"round {self.rounds}: now {self.claim}")

    def _settle(self):
        c = self.claim
        if c.level == 0:
            holds = True
        else:
            sl, sr = size(c.left), size(c.right)
            holds = sl is None or (sr is not None and sl >= sr)
            if not holds:
                self._log(f"size challenge: {render(c.right)} has {sr} points, "
                          f"{render(c.left)} has only {sl}; no reply exists")
        ex_wins = holds
        self.winner = ("you" if self.role == EXISTS else "engine") if ex_wins else \
                      ("you" if self.role == FORALL else "engine")
        self._log(f"{'existential' if ex_wins else 'universal'} player wins: {self.winner}")

    def _limit(self, *terms: OrderTerm) -> int:
        c = self.claim
        t_forall, t_exists = self.engine.thresholds(c.left, c.right, c.level)
        return max(t_exists, *(max_constant(t) + c.level + 1 for t in terms))

    def _read_partition(self, line: str, whole: OrderTerm) -> list:
        try:
            pieces = [canonicalize(parse(p)) for p in line.split("|")]
        except (ParseError, TermError) as exc:
            raise IllegalMove(f"cannot read interval: {exc}") from None
        limit = self._limit(whole, *pieces)
        rests = {whole}
        for p in pieces[:-1]:
            rests = {r for rb in rests for l, r in self.engine.concrete_splits(rb, limit) if l == p}
            if not rests:
                raise IllegalMove(f"{render(p)} is not an initial interval of what is left")
        if pieces[-1] not in rests:
            left = ", ".join(sorted(render(r) for r in rests))
            raise IllegalMove(f"the last interval must be what is left ({left})")
        return pieces

    def _engine_cut(self) -> list:
        c = self.claim
        v = self.engine.check_le(c.left, c.right, c.level)
        part = v.certificate.get("partition")
        if v.outcome is Outcome.FALSE and part:
            return [canonicalize(parse(p)) for p in part]
        # the claim holds: any cut will do, take the first one-point cut
        splits = self.engine.concrete_splits(c.right, self._limit(c.right))
        if not splits:
            return [c.right]
        l, r = splits[0]
        return [l, r]

    def _engine_answer(self, cut: list) -> list | None:
        c = self.claim
        k = c.level
        limit = self._limit(c.left, *cut)
        frontier = {c.left: []}
        for b in cut[:-1]:
            nxt = {}
            for ra, word in frontier.items():
                for l, r in self.engine.concrete_splits(ra, limit):
                    if r not in nxt and self.engine.le(b, l, k - 1) is True:
                        nxt[r] = word + [l]
            frontier = nxt
        for ra, word in frontier.items():
            if self.engine.le(cut[-1], ra, k - 1) is True:
                return word + [ra]
        return None
