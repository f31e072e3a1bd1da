"""Desk-scale optimality searches over strategies and codes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
from scipy.optimize import minimize_scalar

from ._parallel import run_chunks, split_range
from .core import ExplicitCode, ParameterError, check_budget, default_budget, digits_array
from .game import PASS, SymmetricStrategy, TableStrategy, _obs_index, is_strong_covering


@dataclass
class SearchResult:
    best_win_probability: Fraction | float
    witness: object
    search_space_size: int
    exhaustive: bool
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        p = self.best_win_probability
        if isinstance(p, Fraction):
            best = {"num": p.numerator, "den": p.denominator, "decimal": f"{float(p):.12g}"}
        else:
            best = {"decimal": repr(p)}
        witness = self.witness.describe() if hasattr(self.witness, "describe") else self.witness
        return {"best_win_probability": best, "witness": witness,
                "search_space_size": self.search_space_size, "exhaustive": self.exhaustive, **self.extra}


# ---------------------------------------------------------------------------
# all deterministic strategies


def _player_masks(q: int, n: int, i: int) -> tuple[list[int], list[int]]:
    """Bitmasks over configurations where player i guesses right / wrong, per table."""
    k = q ** (n - 1)
    idx = np.arange(q**n, dtype=np.int64)
    obs = _obs_index(idx, q, n, i)
    own = digits_array(idx, q, n)[:, i]
    # masks for "observation o, declare x"
    right = [[0] * q for _ in range(k)]
    wrong = [[0] * q for _ in range(k)]
    for conf, (o, d) in enumerate(zip(obs.tolist(), own.tolist())):
        for x in range(q):
            if x == d:
                right[o][x] |= 1 << conf
            else:
                wrong[o][x] |= 1 << conf
    rights, wrongs = [0], [0]
    # tables in lexicographic order, first observation most significant, PASS < 0 < ... < q-1
    for o in range(k):
        nr, nw = [], []
        for r, w in zip(rights, wrongs):
            nr.append(r)
            nw.append(w)
            for x in range(q):
                nr.append(r | right[o][x])
                nw.append(w | wrong[o][x])
        rights, wrongs = nr, nw
    return rights, wrongs


def _table_from_index(t: int, q: int, k: int) -> list[int]:
    out = [0] * k
    for o in range(k - 1, -1, -1):
        t, d = divmod(t, q + 1)
        out[o] = d - 1  # digit 0 is PASS
    return out


def _exhaustive_chunk(masks, lo, hi):
    n = len(masks)
    best, arg = -1, None
    choice = [0] * n

    def rec(level, right, wrong):
        nonlocal best, arg
        rights, wrongs = masks[level]
        if level == n - 1:
            for t, (r, w) in enumerate(zip(rights, wrongs)):
                score = ((right | r) & ~(wrong | w)).bit_count()
                if score > best:
                    best = score
                    choice[level] = t
                    arg = tuple(choice)
            return
        for t, (r, w) in enumerate(zip(rights, wrongs)):
            choice[level] = t
            rec(level + 1, right | r, wrong | w)

    rights0, wrongs0 = masks[0]
    for t in range(lo, hi):
        choice[0] = t
        if n == 1:
            score = (rights0[t] & ~wrongs0[t]).bit_count()
            if score > best:
                best, arg = score, (t,)
        else:
            rec(1, rights0[t], wrongs0[t])
    return best, arg


def exhaustive_strategy_search(n: int, q: int = 2, budget: int | None = None, workers: int = 1) -> SearchResult:
    """Score every deterministic strategy vector on all q^n configurations."""
    if n < 1 or q < 2:
        raise ParameterError("need n >= 1 and q >= 2")
    k = q ** (n - 1)
    per_player = (q + 1) ** k
    space = per_player**n
    check_budget(space, budget, "strategy enumeration")
    masks = [_player_masks(q, n, i) for i in range(n)]
    parts = split_range(per_player, max(1, workers) * 4 if workers > 1 else 1)
    results = run_chunks(_exhaustive_chunk, [(masks, lo, hi) for lo, hi in parts], workers)
    # parts are in enumeration order, so the first maximum is the least witness
    best, arg = max(results, key=lambda r: r[0])
    tables = [_table_from_index(t, q, k) for t in arg]
    return SearchResult(Fraction(best, q**n), TableStrategy(q, n, tables), space, True)


# ---------------------------------------------------------------------------
# symmetric binary strategies

_SYM_CHOICES = (PASS, 0, 1)


def _symmetric_chunk(n, lo, hi):
    weights = [comb(n, k) for k in range(n + 1)]
    best, arg = -1, None
    step = 1 << 15
    for a in range(lo, hi, step):
        b = min(a + step, hi)
        rules = digits_array(np.arange(a, b, dtype=np.int64), 3, n)  # 0 pass, 1 say 0, 2 say 1
        wins = np.zeros(b - a, dtype=np.int64)
        for k in range(n + 1):
            right = np.zeros(b - a, dtype=bool)
            wrong = np.zeros(b - a, dtype=bool)
            if k >= 1:  # a player wearing 1 sees k-1 ones
                right |= rules[:, k - 1] == 2
                wrong |= rules[:, k - 1] == 1
            if k <= n - 1:  # a player wearing 0 sees k ones
                right |= rules[:, k] == 1
                wrong |= rules[:, k] == 2
            wins += weights[k] * (right & ~wrong)
        j = int(wins.argmax())
        if wins[j] > best:
            best, arg = int(wins[j]), a + j
    return best, arg


def symmetric_strategy_search(n: int, budget: int | None = None, workers: int = 1) -> SearchResult:
    """Best binary strategy in which every player maps 'ones seen' to the same decision."""
    if n < 1:
        raise ParameterError("need n >= 1")
    space = 3**n
    check_budget(space, budget, "symmetric enumeration")
    parts = split_range(space, max(1, workers) * 4 if workers > 1 else 1)
    results = run_chunks(_symmetric_chunk, [(n, lo, hi) for lo, hi in parts], workers)
    best, arg = max(results, key=lambda r: r[0])
    rule = [_SYM_CHOICES[d] for d in digits_array(np.array([arg]), 3, n)[0]]
    return SearchResult(Fraction(best, 2**n), SymmetricStrategy.binary(n, rule), space, True)


# ---------------------------------------------------------------------------
# zero-information play


def zero_info_win_probability(n: int, s: float) -> float:
    """Each player guesses a uniform colour with probability s, else passes."""
    return (1 - s / 2) ** n - (1 - s) ** n


def zero_info_optimum(n: int, tol: float = 1e-10) -> SearchResult:
    if n < 1:
        raise ParameterError("need n >= 1")
    res = minimize_scalar(lambda s: -zero_info_win_probability(n, s), bounds=(0.0, 1.0),
                          method="bounded", options={"xatol": tol})
    candidates = [(zero_info_win_probability(n, s), s) for s in (float(res.x), 0.0, 1.0)]
    value, s = max(candidates)
    return SearchResult(value, {"type": "zeroinfo", "n": n, "s": s}, 0, False, {"s": s})


# ---------------------------------------------------------------------------
# perfect strong coverings


@dataclass
class ScanVerdict:
    kind: str  # ImpossibleByIntegrality | NoneFoundExhaustive | Found | BudgetExceeded
    q: int
    n: int
    bound: Fraction
    code: ExplicitCode | None = None
    candidates: int = 0

    def to_json(self) -> dict:
        out = {"verdict": self.kind, "q": self.q, "n": self.n,
               "bound": {"num": self.bound.numerator, "den": self.bound.denominator},
               "candidates": self.candidates}
        if self.code is not None:
            from .core import format_config

            out["code"] = [format_config(w) for w in self.code.words()]
        return out


def perfect_strong_covering_scan(q: int, n: int, budget: int | None = None) -> ScanVerdict:
    """Look for a strong covering meeting the bound q^n(q-1)/(n+q-1) with equality."""
    if q < 2 or n < 1:
        raise ParameterError("need q >= 2 and n >= 1")
    bound = Fraction(q**n * (q - 1), n + q - 1)
    if bound.denominator != 1:
        return ScanVerdict("ImpossibleByIntegrality", q, n, bound)
    size = bound.numerator
    candidates = comb(q**n, size)
    budget = default_budget() if budget is None else budget
    if candidates > budget:
        return ScanVerdict("BudgetExceeded", q, n, bound, candidates=candidates)
    for subset in combinations(range(q**n), size):
        code = ExplicitCode(q, n, subset)
        if is_strong_covering(code):
            return ScanVerdict("Found", q, n, bound, code, candidates)
    return ScanVerdict("NoneFoundExhaustive", q, n, bound, candidates=candidates)


# ---------------------------------------------------------------------------
# greedy strong coverings


def covering_greedy(q: int, n: int, seed: int | None = 0, budget: int | None = None) -> ExplicitCode:
    """Grow a strong covering by repeatedly adding the word fixing the most violations.

    The seed picks the first codeword; after that ties go to the lowest index.
    """
    total = q**n
    check_budget(total * n * q, budget, "greedy covering")
    weights = [q ** (n - 1 - i) for i in range(n)]
    digit = [[(w // weights[i]) % q for i in range(n)] for w in range(total)]
    line_of = [[w - digit[w][i] * weights[i] for i in range(n)] for w in range(total)]
    in_code = [False] * total
    count = [dict() for _ in range(n)]  # members on each line, keyed by line base

    def violating(w):
        return not in_code[w] and all(count[i].get(line_of[w][i], 0) != q - 1 for i in range(n))

    def add(c):
        in_code[c] = True
        for i in range(n):
            base = line_of[c][i]
            count[i][base] = count[i].get(base, 0) + 1

    def gain(c):
        g = 1 if violating(c) else 0
        for i in range(n):
            base = line_of[c][i]
            if count[i].get(base, 0) + 1 != q - 1:
                continue
            for x in range(q):
                w = base + x * weights[i]
                if w != c and violating(w):
                    g += 1
        return g

    if seed is not None:
        add(int(np.random.default_rng(seed).integers(total)))
    while any(violating(w) for w in range(total)):
        best, arg = 0, None
        for c in range(total):
            if in_code[c]:
                continue
            g = gain(c)
            if g > best:
                best, arg = g, c
        add(arg)
    return ExplicitCode(q, n, [w for w in range(total) if in_code[w]])
