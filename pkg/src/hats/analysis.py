"""Bounds and exact losing probabilities.

Rational quantities are returned as ``Fraction``.  The two logarithmic
quantities take an explicit ``base`` (natural log by default).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .constructions import generalized_size, syndrome_level_witness
from .core import Code, ConstructionError, DomainError, ParameterError, filtered_parity_check


def _log(x: float, base) -> float:
    if base in (None, "e"):
        return math.log(x)
    return math.log(x, float(base))


def sphere_covering_bound(n: int) -> Fraction:
    if n < 1:
        raise ParameterError("n must be >= 1")
    return Fraction(2**n, n + 1)


def strong_covering_bound(q: int, n: int) -> Fraction:
    if q < 2 or n < 1:
        raise ParameterError("need q >= 2 and n >= 1")
    return Fraction(q**n * (q - 1), n + q - 1)


def satisfies_strong_bound(code: Code) -> bool:
    return code.size() * (code.n + code.q - 1) >= code.q**code.n * (code.q - 1)


def density(code: Code) -> Fraction:
    """|C|(n+1)/2^n for a binary code."""
    if code.q != 2:
        raise DomainError("density is only defined for binary codes")
    return Fraction(code.size() * (code.n + 1), 2**code.n)


def syndrome_losing_probability(q: int, m: int) -> Fraction:
    """((q-1)/q)^m, the losing probability of the plain syndrome construction."""
    if q < 2 or m < 1:
        raise ParameterError("need q >= 2 and m >= 1")
    return Fraction(q - 1, q) ** m


def generalized_losing_probability(q: int, m: int, beta, max_weight: int) -> Fraction:
    """|C|/q^n for the generalized construction, by counting accepted syndromes."""
    witness = syndrome_level_witness(q, m, beta, max_weight)
    if witness is not None:
        raise ConstructionError(f"inadmissible parameters, witness syndrome {witness}", witness)
    n = filtered_parity_check(m, max_weight).cols
    return Fraction(generalized_size(q, m, beta, max_weight), q**n)


def decay_exponent_bound(q: int, base="e") -> float:
    """Lower bound on the decay exponent c with |C| q^-n = O(n^-c)."""
    if q <= 5:
        raise DomainError(f"defined for q > 5, got {q}")
    return (1 - 1 / q) * (1 + 1 / (2 * (q - 1))) / (math.e * _log(q - 1, base))


def alon_bound(q: int, n: int, base="e") -> float:
    """((q-1) log n + 1)/n + (1 - 1/q)^n: existence bound on the losing probability."""
    if q < 2 or n < 2:
        raise ParameterError("need q >= 2 and n >= 2")
    return ((q - 1) * _log(n, base) + 1) / n + (1 - 1 / q) ** n


def _rational(x: Fraction | None):
    if x is None:
        return None
    return {"num": x.numerator, "den": x.denominator, "decimal": f"{float(x):.12g}"}


@dataclass
class BoundsReport:
    q: int
    n: int
    m: int | None = None
    beta: object = None
    sphere_bound: Fraction | None = None
    strong_bound: Fraction | None = None
    density: Fraction | None = None
    syndrome_pl: Fraction | None = None
    decay_exponent_bound: float | None = None
    alon_bound: float | None = None
    log_base: str = "e"

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "m": self.m,
            "beta": None if self.beta is None else str(self.beta),
            "sphere_bound": _rational(self.sphere_bound),
            "strong_bound": _rational(self.strong_bound),
            "density": _rational(self.density),
            "syndrome_pl": _rational(self.syndrome_pl),
            "decay_exponent_bound": self.decay_exponent_bound,
            "alon_bound": self.alon_bound,
            "log_base": self.log_base,
        }

    CSV_FIELDS = ("q", "n", "m", "sphere_bound", "strong_bound", "density", "syndrome_pl",
                  "decay_exponent_bound", "alon_bound", "log_base")

    def csv_row(self) -> list[str]:
        def cell(v):
            if v is None:
                return ""
            if isinstance(v, float):
                return repr(v)
            return str(v)

        return [cell(getattr(self, f)) for f in self.CSV_FIELDS]


def bounds_report(q: int, n: int | None = None, m: int | None = None, code: Code | None = None,
                  log_base="e") -> BoundsReport:
    """Every applicable bound for (q, n); m implies n = 2^m - 1 when n is omitted."""
    if code is not None:
        q, n = code.q, code.n
    if n is None:
        if m is None:
            raise ParameterError("need n or m")
        n = 2**m - 1
    if m is None and (n + 1) & n == 0:
        m = (n + 1).bit_length() - 1
    return BoundsReport(
        q=q,
        n=n,
        m=m,
        sphere_bound=sphere_covering_bound(n) if q == 2 else None,
        strong_bound=strong_covering_bound(q, n),
        density=density(code) if code is not None and q == 2 else None,
        syndrome_pl=syndrome_losing_probability(q, m) if m is not None and 2**m - 1 == n else None,
        decay_exponent_bound=decay_exponent_bound(q, log_base) if q > 5 else None,
        alon_bound=alon_bound(q, n, log_base) if n >= 2 else None,
        log_base=str(log_base),
    )
