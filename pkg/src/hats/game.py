"""Playing strategies, the win rule, and exhaustive evaluation over Q^n."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from ._parallel import run_chunks, split_range
from .core import (
    Code,
    DimensionError,
    DomainError,
    ExplicitCode,
    ParameterError,
    check_budget,
    check_config,
    coordinate_weight,
    default_budget,
    digits_array,
    format_config,
    index_to_config,
)

PASS = -1
_SWEEP_CHUNK = 1 << 16


def _obs_index(idx: np.ndarray, q: int, n: int, i: int) -> np.ndarray:
    """Index of the (n-1)-word player i sees, in radix order."""
    w = coordinate_weight(q, n, i)
    return (idx // (w * q)) * w + idx % w


def observation(w: Sequence[int], i: int) -> tuple[int, ...]:
    return tuple(w[:i]) + tuple(w[i + 1 :])


class Strategy:
    """Deterministic team strategy: player i maps what it sees to a colour or PASS."""

    q: int
    n: int

    def decide(self, i: int, seen: Sequence[int]) -> int:
        raise NotImplementedError

    def declarations(self, lo: int, hi: int) -> np.ndarray:
        """Declarations of every player on configuration indices lo..hi-1."""
        out = np.empty((hi - lo, self.n), dtype=np.int64)
        for row, idx in enumerate(range(lo, hi)):
            w = index_to_config(idx, self.q, self.n)
            for i in range(self.n):
                out[row, i] = self.decide(i, observation(w, i))
        return out

    def compiled(self) -> "Strategy":
        """A picklable strategy with the same declarations, for worker processes."""
        return self


class CodeStrategy(Strategy):
    """The strategy derived from a code C.

    Player i declares x when x is the only symbol that, written into
    position i, leaves the configuration outside C; otherwise it passes.
    """

    def __init__(self, code: Code):
        self.code = code
        self.q, self.n = code.q, code.n
        self._mem = None

    def decide(self, i, seen):
        seen = tuple(seen)
        outside = [x for x in range(self.q) if seen[:i] + (x,) + seen[i:] not in self.code]
        return outside[0] if len(outside) == 1 else PASS

    def compiled(self):
        if self._mem is None:
            self._mem = self.code.membership()
        return _MembershipStrategy(self.q, self.n, self._mem)

    def declarations(self, lo, hi):
        return self.compiled().declarations(lo, hi)


class _MembershipStrategy(Strategy):
    def __init__(self, q, n, mem):
        self.q, self.n, self.mem = q, n, mem

    def declarations(self, lo, hi):
        q, n, mem = self.q, self.n, self.mem
        idx = np.arange(lo, hi, dtype=np.int64)
        out = np.empty((hi - lo, n), dtype=np.int64)
        for i in range(n):
            w = coordinate_weight(q, n, i)
            base = idx - ((idx // w) % q) * w
            outside = np.stack([~mem[base + x * w] for x in range(q)])
            unique = outside.sum(axis=0) == 1
            out[:, i] = np.where(unique, outside.argmax(axis=0), PASS)
        return out


class TableStrategy(Strategy):
    """Explicit per-player tables indexed by the radix index of the observation."""

    def __init__(self, q: int, n: int, tables):
        tables = np.asarray(tables, dtype=np.int64)
        if tables.shape != (n, q ** (n - 1)):
            raise DimensionError(f"need {n} tables of {q ** (n - 1)} entries, got {tables.shape}")
        if ((tables < PASS) | (tables >= q)).any():
            raise ParameterError("table entries must be PASS or a colour")
        self.q, self.n, self.tables = q, n, tables

    def decide(self, i, seen):
        obs = 0
        for x in seen:
            obs = obs * self.q + x
        return int(self.tables[i, obs])

    def declarations(self, lo, hi):
        idx = np.arange(lo, hi, dtype=np.int64)
        out = np.empty((hi - lo, self.n), dtype=np.int64)
        for i in range(self.n):
            out[:, i] = self.tables[i, _obs_index(idx, self.q, self.n, i)]
        return out

    def describe(self) -> dict:
        name = lambda d: "pass" if d == PASS else str(d)
        return {"type": "table", "q": self.q, "n": self.n,
                "tables": [[name(int(d)) for d in row] for row in self.tables]}


class SymmetricStrategy(Strategy):
    """Every player applies the same rule to the counts of colours it sees.

    ``rule`` maps a count vector (c_0, ..., c_{q-1}) to a colour; absent keys pass.
    """

    def __init__(self, q: int, n: int, rule: Mapping[tuple[int, ...], int]):
        self.q, self.n = q, n
        self.rule = {tuple(k): int(v) for k, v in rule.items() if v != PASS}

    @classmethod
    def binary(cls, n: int, by_ones_seen: Sequence[int]) -> "SymmetricStrategy":
        """Binary rule given as a list indexed by the number of 1s seen."""
        if len(by_ones_seen) != n:
            raise DimensionError(f"need {n} entries (0..{n - 1} ones seen)")
        return cls(2, n, {(n - 1 - k, k): d for k, d in enumerate(by_ones_seen)})

    def decide(self, i, seen):
        counts = tuple(sum(1 for x in seen if x == c) for c in range(self.q))
        return self.rule.get(counts, PASS)

    def declarations(self, lo, hi):
        q, n = self.q, self.n
        digits = digits_array(np.arange(lo, hi, dtype=np.int64), q, n)
        counts = np.stack([(digits == c).sum(axis=1) for c in range(q)], axis=1)
        radix = (n + 1) ** np.arange(q, dtype=np.int64)
        lookup = {int(np.dot(k, radix)): v for k, v in self.rule.items()}
        out = np.empty((hi - lo, n), dtype=np.int64)
        for i in range(n):
            seen = counts.copy()
            seen[np.arange(hi - lo), digits[:, i]] -= 1
            keys, inv = np.unique(seen @ radix, return_inverse=True)
            vals = np.array([lookup.get(int(k), PASS) for k in keys], dtype=np.int64)
            out[:, i] = vals[inv.reshape(-1)]
        return out

    def describe(self) -> dict:
        if self.q == 2:
            rule = [self.rule.get((self.n - 1 - k, k), PASS) for k in range(self.n)]
            return {"type": "symmetric", "q": 2, "n": self.n,
                    "by_ones_seen": ["pass" if d == PASS else str(d) for d in rule]}
        return {"type": "symmetric", "q": self.q, "n": self.n,
                "rule": {",".join(map(str, k)): v for k, v in sorted(self.rule.items())}}


def all_pass(q: int, n: int) -> TableStrategy:
    return TableStrategy(q, n, np.full((n, q ** (n - 1)), PASS))


def strategy_from_code(code: Code) -> CodeStrategy:
    return CodeStrategy(code)


# ---------------------------------------------------------------------------
# playing


@dataclass(frozen=True)
class GameOutcome:
    config: tuple[int, ...]
    declarations: tuple[int | None, ...]  # None means pass
    win: bool
    correct_count: int
    incorrect_count: int
    pass_count: int


def play(S: Strategy, w: Sequence[int]) -> GameOutcome:
    w = check_config(w, S.q, S.n)
    decl = tuple(S.decide(i, observation(w, i)) for i in range(S.n))
    correct = sum(1 for d, x in zip(decl, w) if d == x)
    passes = sum(1 for d in decl if d == PASS)
    wrong = S.n - correct - passes
    return GameOutcome(
        config=w,
        declarations=tuple(None if d == PASS else d for d in decl),
        win=correct >= 1 and wrong == 0,
        correct_count=correct,
        incorrect_count=wrong,
        pass_count=passes,
    )


def _score(decl: np.ndarray, digits: np.ndarray):
    correct = decl == digits
    wrong = (decl != PASS) & ~correct
    c, x = correct.sum(axis=1), wrong.sum(axis=1)
    win = (c >= 1) & (x == 0)
    # perfect: a win has one correct and the rest pass; a loss has everybody wrong
    perfect = np.where(win, c == 1, x == decl.shape[1])
    return win, perfect


def _sweep_chunk(strategy: Strategy, lo: int, hi: int, want_wins: bool):
    decl = strategy.declarations(lo, hi)
    digits = digits_array(np.arange(lo, hi, dtype=np.int64), strategy.q, strategy.n)
    win, perfect = _score(decl, digits)
    wins = (np.flatnonzero(win) + lo) if want_wins else None
    return int((~win).sum()), bool(perfect.all()), wins


def _parts(total: int, workers: int) -> list[tuple[int, int]]:
    # fixed-size chunks keep memory bounded; results never depend on the worker count
    return split_range(total, max(-(-total // _SWEEP_CHUNK), 4 * workers if workers > 1 else 1))


def _sweep(S: Strategy, budget, workers, want_wins):
    total = S.q**S.n
    check_budget(total, budget, "configuration sweep")
    compiled = S.compiled()
    parts = _parts(total, workers)
    results = run_chunks(_sweep_chunk, [(compiled, lo, hi, want_wins) for lo, hi in parts], workers)
    losing = sum(r[0] for r in results)
    perfect = all(r[1] for r in results)
    wins = np.concatenate([r[2] for r in results]) if want_wins else None
    return losing, perfect, wins


def winning_set(S: Strategy, budget: int | None = None, workers: int = 1) -> ExplicitCode:
    """All configurations on which S wins, as an explicit code."""
    _, _, wins = _sweep(S, budget, workers, True)
    return ExplicitCode(S.q, S.n, wins.tolist())


@dataclass(frozen=True)
class EvaluationReport:
    n: int
    q: int
    losing_count: int
    total: int
    losing_probability: Fraction
    is_perfect_strategy: bool
    method: str = "sweep"

    @property
    def winning_probability(self) -> Fraction:
        return 1 - self.losing_probability

    def to_json(self) -> dict:
        p = self.losing_probability
        return {
            "q": self.q,
            "n": self.n,
            "losing_count": self.losing_count,
            "total": self.total,
            "losing_probability": {"num": p.numerator, "den": p.denominator, "decimal": f"{float(p):.12g}"},
            "perfect": self.is_perfect_strategy,
        }


def evaluate(S: Strategy, budget: int | None = None, workers: int = 1) -> EvaluationReport:
    """Exact losing probability and perfectness of S.

    Beyond the sweep budget, a code-derived strategy whose code carries a
    strong-covering certificate is evaluated by exact size counting instead.
    """
    total = S.q**S.n
    budget = default_budget() if budget is None else budget
    if total > budget and isinstance(S, CodeStrategy) and getattr(S.code, "certified_strong", False):
        code = S.code
        size = code.size()
        perfect = size * (code.n + code.q - 1) == total * (code.q - 1)
        return EvaluationReport(S.n, S.q, size, total, Fraction(size, total), perfect, "count")
    losing, perfect, _ = _sweep(S, budget, workers, False)
    return EvaluationReport(S.n, S.q, losing, total, Fraction(losing, total), perfect)


# ---------------------------------------------------------------------------
# covering properties


def find_uncovered(code: Code, radius: int, budget: int | None = None) -> tuple[int, ...] | None:
    """First configuration (radix order) farther than ``radius`` from the code."""
    if radius < 0:
        raise ParameterError("radius must be >= 0")
    q, n = code.q, code.n
    covered = code.membership(budget).reshape((q,) * n)
    for _ in range(min(radius, n)):
        grown = covered.copy()
        for axis in range(n):
            grown |= covered.any(axis=axis, keepdims=True)
        covered = grown
    missing = np.flatnonzero(~covered.reshape(-1))
    return index_to_config(int(missing[0]), q, n) if missing.size else None


def is_covering(code: Code, radius: int, budget: int | None = None) -> bool:
    return find_uncovered(code, radius, budget) is None


def _strong_chunk(q, n, mem, lo, hi):
    idx = np.arange(lo, hi, dtype=np.int64)
    ok = mem[lo:hi].copy()
    for i in range(n):
        w = coordinate_weight(q, n, i)
        base = idx - ((idx // w) % q) * w
        on_line = sum(mem[base + x * w].astype(np.int64) for x in range(q))
        ok |= on_line == q - 1
    bad = np.flatnonzero(~ok)
    return int(bad[0]) + lo if bad.size else None


def find_strong_violation(code: Code, budget: int | None = None, workers: int = 1) -> tuple[int, ...] | None:
    """First w outside the code with no coordinate whose q-1 variants all lie in it."""
    q, n = code.q, code.n
    check_budget(q**n * n * q, budget, "strong covering check")
    mem = code.membership(budget)
    parts = _parts(q**n, workers)
    hits = run_chunks(_strong_chunk, [(q, n, mem, lo, hi) for lo, hi in parts], workers)
    hits = [h for h in hits if h is not None]
    return index_to_config(min(hits), q, n) if hits else None


def is_strong_covering(code: Code, budget: int | None = None, workers: int = 1) -> bool:
    return find_strong_violation(code, budget, workers) is None


def meets_strong_bound(code: Code) -> bool:
    """|C|(n+q-1) == q^n (q-1): equality in the strong-covering bound."""
    return code.size() * (code.n + code.q - 1) == code.q**code.n * (code.q - 1)


def is_perfect_strong_covering(code: Code, budget: int | None = None) -> bool:
    certified = getattr(code, "certified_strong", False)
    if not certified and not is_strong_covering(code, budget):
        raise DomainError("code is not a strong covering")
    return meets_strong_bound(code)


def complement(code: Code, budget: int | None = None) -> ExplicitCode:
    mem = code.membership(budget)
    return ExplicitCode(code.q, code.n, np.flatnonzero(~mem).tolist())


def describe_outcome(o: GameOutcome) -> str:
    decl = " ".join("-" if d is None else str(d) for d in o.declarations)
    return f"{format_config(o.config)}: [{decl}] {'win' if o.win else 'lose'}"
