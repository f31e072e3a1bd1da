"""Shared value types: alphabets, configurations, codes and syndrome maps.

Configurations are words over Z_q.  Internally they are handled through their
radix-q index, with the symbol of player 1 as the most significant digit; this
ordering is also the line order of the code file format.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
EXPLICIT_CAP = 2**28
_CHUNK = 1 << 16


class HatsError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(HatsError, ValueError):
    pass


class ParameterError(HatsError, ValueError):
    pass


class DomainError(HatsError, ValueError):
    pass


class BudgetError(HatsError):
    def __init__(self, needed: int, budget: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {needed} steps, budget is {budget}")
        self.needed = needed
        self.budget = budget


class ConstructionError(HatsError):
    def __init__(self, message: str, witness: tuple[int, ...] | None = None):
        super().__init__(message)
        self.witness = witness


def default_budget() -> int:
    """Enumeration budget, overridable through the HATS_BUDGET variable."""
    return int(os.environ.get("HATS_BUDGET", 10**8))


def check_budget(needed: int, budget: int | None, what: str = "enumeration") -> None:
    budget = default_budget() if budget is None else budget
    if needed > budget:
        raise BudgetError(needed, budget, what)


@dataclass(frozen=True)
class Alphabet:
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ParameterError(f"alphabet needs q >= 2, got {self.q}")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q


def check_config(v: Sequence[int], q: int, n: int | None = None) -> tuple[int, ...]:
    v = tuple(int(x) for x in v)
    if n is not None and len(v) != n:
        raise DimensionError(f"configuration has length {len(v)}, expected {n}")
    if any(x < 0 or x >= q for x in v):
        raise ParameterError(f"configuration {v} has symbols outside 0..{q - 1}")
    return v


def config_to_index(v: Sequence[int], q: int) -> int:
    idx = 0
    for x in v:
        idx = idx * q + x
    return idx


def index_to_config(idx: int, q: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        idx, out[i] = divmod(idx, q)
    return tuple(out)


def digits_array(indices: np.ndarray, q: int, n: int) -> np.ndarray:
    """Rows of radix-q digits (player 1 first) for an array of indices."""
    indices = np.asarray(indices, dtype=np.int64)
    out = np.empty((indices.size, n), dtype=np.int64)
    rest = indices.copy()
    for i in range(n - 1, -1, -1):
        out[:, i] = rest % q
        rest //= q
    return out


def indices_of(digits: np.ndarray, q: int) -> np.ndarray:
    digits = np.asarray(digits, dtype=np.int64)
    weights = q ** np.arange(digits.shape[1] - 1, -1, -1, dtype=np.int64)
    return digits @ weights


def format_config(v: Sequence[int]) -> str:
    return "".join(DIGITS[x] for x in v)


def parse_config(s: str, q: int) -> tuple[int, ...]:
    try:
        v = tuple(DIGITS.index(ch) for ch in s.strip().lower())
    except ValueError:
        raise ParameterError(f"bad configuration string {s!r}") from None
    return check_config(v, q)


def coordinate_weight(q: int, n: int, i: int) -> int:
    """Radix weight of coordinate i (0-based) in the configuration index."""
    return q ** (n - 1 - i)


# ---------------------------------------------------------------------------
# parity checks and syndromes


@dataclass(frozen=True)
class ParityCheck:
    """A 0/1 matrix with distinct nonzero columns, stored as column bitmasks.

    Bit r of a column mask is the entry in row r+1.
    """

    m: int
    columns: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.columns)) != len(self.columns):
            raise ParameterError("parity check has duplicate columns")
        if any(c <= 0 or c >= 1 << self.m for c in self.columns):
            raise ParameterError("parity check columns must be nonzero m-bit vectors")

    @property
    def rows(self) -> int:
        return self.m

    @property
    def cols(self) -> int:
        return len(self.columns)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[(c >> r) & 1 for c in self.columns] for r in range(self.m)], dtype=np.int64
        ).reshape(self.m, self.cols)

    def column(self, j: int) -> tuple[int, ...]:
        c = self.columns[j]
        return tuple((c >> r) & 1 for r in range(self.m))

    def has_all_unit_columns(self) -> bool:
        cols = set(self.columns)
        return all(1 << r in cols for r in range(self.m))


def hamming_parity_check(m: int) -> ParityCheck:
    """Parity check of the binary Hamming code of order m; column j holds j in binary."""
    if m < 2:
        raise ParameterError(f"Hamming order must be >= 2, got {m}")
    return ParityCheck(m, tuple(range(1, 2**m)))


def filtered_parity_check(m: int, max_weight: int) -> ParityCheck:
    """Columns of the order-m Hamming matrix with weight at most max_weight."""
    if m < 1 or not 1 <= max_weight <= m:
        raise ParameterError(f"need 1 <= max_weight <= m, got m={m}, max_weight={max_weight}")
    cols = tuple(j for j in range(1, 2**m) if j.bit_count() <= max_weight)
    return ParityCheck(m, cols)


def syndrome_map(H: ParityCheck, v: Sequence[int], q: int) -> tuple[int, ...]:
    if len(v) != H.cols:
        raise DimensionError(f"configuration length {len(v)} != {H.cols} columns")
    out = []
    for r in range(H.m):
        bit = 1 << r
        out.append(sum(x for x, c in zip(v, H.columns) if c & bit) % q)
    return tuple(out)


def syndromes(H: ParityCheck, digits: np.ndarray, q: int) -> np.ndarray:
    """Vectorised syndrome_map over the rows of a digit array."""
    digits = np.asarray(digits, dtype=np.int64)
    if digits.shape[1] != H.cols:
        raise DimensionError(f"configuration length {digits.shape[1]} != {H.cols} columns")
    return (digits @ H.matrix.T) % q


# ---------------------------------------------------------------------------
# codes


class Code:
    """A subset of Q^n.  Subclasses supply membership and exact size."""

    q: int
    n: int

    @property
    def space_size(self) -> int:
        return self.q**self.n

    def __len__(self) -> int:
        return self.size()

    def size(self) -> int:
        raise NotImplementedError

    def contains_digits(self, digits: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __contains__(self, v) -> bool:
        v = check_config(v, self.q, self.n)
        return bool(self.contains_digits(np.array([v], dtype=np.int64))[0])

    def membership(self, budget: int | None = None) -> np.ndarray:
        """Boolean membership array over all q^n configuration indices."""
        check_budget(self.space_size, budget, "membership sweep")
        out = np.empty(self.space_size, dtype=bool)
        for lo in range(0, self.space_size, _CHUNK):
            hi = min(lo + _CHUNK, self.space_size)
            idx = np.arange(lo, hi, dtype=np.int64)
            out[lo:hi] = self.contains_digits(digits_array(idx, self.q, self.n))
        return out

    def indices(self, budget: int | None = None) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.membership(budget)))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for i in self.indices():
            yield index_to_config(i, self.q, self.n)

    def to_explicit(self, budget: int | None = None) -> "ExplicitCode":
        if self.space_size > EXPLICIT_CAP:
            raise BudgetError(self.space_size, EXPLICIT_CAP, "explicit code")
        return ExplicitCode(self.q, self.n, self.indices(budget))


class ExplicitCode(Code):
    """An enumerated code held as a sorted tuple of configuration indices."""

    def __init__(self, q: int, n: int, indices: Iterable[int]):
        Alphabet(q)
        if n < 1:
            raise ParameterError(f"length must be >= 1, got {n}")
        if q**n > EXPLICIT_CAP:
            raise BudgetError(q**n, EXPLICIT_CAP, "explicit code")
        self.q, self.n = q, n
        idx = sorted(set(int(i) for i in indices))
        if idx and (idx[0] < 0 or idx[-1] >= q**n):
            raise ParameterError("codeword index outside the configuration space")
        self._indices = tuple(idx)
        self._set = frozenset(idx)

    @classmethod
    def from_words(cls, q: int, n: int, words: Iterable) -> "ExplicitCode":
        idx = []
        for w in words:
            if isinstance(w, str):
                w = parse_config(w, q)
            idx.append(config_to_index(check_config(w, q, n), q))
        return cls(q, n, idx)

    @classmethod
    def full_space(cls, q: int, n: int) -> "ExplicitCode":
        return cls(q, n, range(q**n))

    def size(self) -> int:
        return len(self._indices)

    def indices(self, budget: int | None = None) -> tuple[int, ...]:
        return self._indices

    def contains_index(self, idx: int) -> bool:
        return idx in self._set

    def __contains__(self, v) -> bool:
        return config_to_index(check_config(v, self.q, self.n), self.q) in self._set

    def contains_digits(self, digits: np.ndarray) -> np.ndarray:
        idx = indices_of(digits, self.q)
        return np.isin(idx, np.fromiter(self._indices, dtype=np.int64, count=len(self._indices)))

    def membership(self, budget: int | None = None) -> np.ndarray:
        check_budget(self.space_size, budget, "membership sweep")
        out = np.zeros(self.space_size, dtype=bool)
        out[list(self._indices)] = True
        return out

    def to_explicit(self, budget: int | None = None) -> "ExplicitCode":
        return self

    def words(self) -> list[tuple[int, ...]]:
        return [index_to_config(i, self.q, self.n) for i in self._indices]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExplicitCode):
            return NotImplemented
        return (self.q, self.n, self._indices) == (other.q, other.n, other._indices)

    def __hash__(self) -> int:
        return hash((self.q, self.n, self._indices))

    def __repr__(self) -> str:
        shown = ", ".join(format_config(w) for w in self.words()[:8])
        more = ", ..." if self.size() > 8 else ""
        return f"ExplicitCode(q={self.q}, n={self.n}, {{{shown}{more}}})"


@dataclass(frozen=True, eq=False)
class ImplicitCode(Code):
    """A code given by a vectorised membership predicate and its exact size.

    ``descriptor`` records how the code was built so it can be rebuilt from
    JSON; ``certified_strong`` is set by constructions whose strong covering
    property was established at the syndrome level.
    """

    q: int
    n: int
    predicate: Callable[[np.ndarray], np.ndarray]
    exact_size: int
    descriptor: dict = field(default_factory=dict)
    certified_strong: bool = False

    def size(self) -> int:
        return self.exact_size

    def contains_digits(self, digits: np.ndarray) -> np.ndarray:
        return np.asarray(self.predicate(np.asarray(digits, dtype=np.int64)), dtype=bool)

    def __repr__(self) -> str:
        return f"ImplicitCode(q={self.q}, n={self.n}, size={self.exact_size}, {self.descriptor})"


def size_fraction(code: Code) -> Fraction:
    return Fraction(code.size(), code.space_size)


# ---------------------------------------------------------------------------
# code file format


def write_code(code: Code) -> str:
    """Serialise a code: header ``q n`` then one sorted word per line."""
    if code.q > len(DIGITS):
        raise ParameterError("file format supports q <= 36")
    lines = [f"{code.q} {code.n}"]
    lines += [format_config(index_to_config(i, code.q, code.n)) for i in code.indices()]
    return "\n".join(lines) + "\n"


def read_code(text: str) -> ExplicitCode:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParameterError("empty code file")
    try:
        q, n = (int(x) for x in lines[0].split())
    except ValueError:
        raise ParameterError(f"bad header line {lines[0]!r}") from None
    if not 2 <= q <= len(DIGITS) or n < 1:
        raise ParameterError(f"bad header values q={q} n={n}")
    idx = []
    for ln in lines[1:]:
        if len(ln) != n:
            raise ParameterError(f"line {ln!r} does not have length {n}")
        idx.append(config_to_index(parse_config(ln, q), q))
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ParameterError("code file lines must be sorted and duplicate-free")
    return ExplicitCode(q, n, idx)
