"""Code families: repetition, Hamming cosets, direct sums, syndrome constructions.

The q-ary constructions are implicit codes: membership is decided from the
syndrome of a configuration, and sizes come from coset counting.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from math import comb

import numpy as np

from .core import (
    EXPLICIT_CAP,
    Code,
    ConstructionError,
    DimensionError,
    DomainError,
    ExplicitCode,
    ImplicitCode,
    ParameterError,
    ParityCheck,
    check_config,
    config_to_index,
    digits_array,
    filtered_parity_check,
    hamming_parity_check,
    indices_of,
    syndromes,
)

BISECTION_EPS = 1e-6


def repetition_code(n: int = 3, q: int = 2) -> ExplicitCode:
    """The constant words; for q=2, n=3 this is {000, 111}."""
    return ExplicitCode.from_words(q, n, [(x,) * n for x in range(q)])


def hamming_coset_covering(m: int) -> Code:
    """Binary words whose Hamming syndrome is all-ones; a perfect 1-covering of length 2^m-1."""
    H = hamming_parity_check(m)
    n = H.cols
    if 2**n > EXPLICIT_CAP:
        return syndrome_construction(2, m)
    # positions 2^r are unit columns: solve for them given the free coordinates
    pivots = [(1 << r) - 1 for r in range(m)]
    free = [j for j in range(n) if (j + 1) & j]
    members = []
    for bits in product((0, 1), repeat=len(free)):
        v = [0] * n
        for j, b in zip(free, bits):
            v[j] = b
        for r, p in enumerate(pivots):
            parity = sum(v[j] for j in free if (j + 1) >> r & 1) & 1
            v[p] = 1 ^ parity
        members.append(config_to_index(v, 2))
    return ExplicitCode(2, n, members)


def direct_sum_covering(n: int) -> ExplicitCode:
    """Hamming coset on the first n' = 2^m-1 <= n coordinates, free suffix on the rest."""
    if n < 3:
        raise ParameterError(f"direct sum needs n >= 3, got {n}")
    m = (n + 1).bit_length() - 1
    head = hamming_coset_covering(m)
    pad = n - head.n
    members = [h * 2**pad + s for h in head.indices() for s in range(2**pad)]
    return ExplicitCode(2, n, members)


def hamming_prefix_length(n: int) -> int:
    """Largest 2^m - 1 not exceeding n."""
    return 2 ** ((n + 1).bit_length() - 1) - 1


def _syndrome_predicate(H: ParityCheck, q: int, accept):
    def predicate(digits):
        return accept(syndromes(H, digits, q))

    return predicate


def syndrome_construction(q: int, m: int) -> ImplicitCode:
    """Words of Q^n, n = 2^m-1, whose syndrome has no zero entry."""
    if q < 2 or m < 2:
        raise ParameterError(f"need q >= 2 and m >= 2, got q={q}, m={m}")
    H = hamming_parity_check(m)
    n = H.cols
    size = (q - 1) ** m * q ** (n - m)
    return ImplicitCode(
        q,
        n,
        _syndrome_predicate(H, q, lambda s: (s != 0).all(axis=1)),
        size,
        {"family": "syndrome", "q": q, "m": m, "n": n, "beta": 0, "max_weight": m, "size": size},
        certified_strong=True,
    )


# ---------------------------------------------------------------------------
# generalized construction


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def gamma_q(q: int, tol: float = 1e-10) -> float:
    """Nonzero root of h2(g) = g log2(q-1), by bisection on (eps, 1-eps)."""
    if q <= 5:
        raise DomainError(f"gamma_q is defined here for q > 5, got {q}")
    if tol <= 0:
        raise ParameterError("tol must be positive")
    slope = math.log2(q - 1)
    f = lambda g: binary_entropy(g) - g * slope
    lo, hi = BISECTION_EPS, 1 - BISECTION_EPS
    # f > 0 near 0 (entropy dominates), f < 0 near 1
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gamma_parameters(q: int, m: int) -> tuple[float, int]:
    """(beta, max_weight) = (1 - gamma_q, floor(gamma_q m)) for q > 5."""
    g = gamma_q(q)
    return 1.0 - g, max(1, math.floor(g * m))


def default_parameters(q: int, m: int) -> tuple[float, int]:
    """Plain syndrome construction below q = 11, the gamma_q parameters from there on."""
    if q < 11:
        return 0, m
    return gamma_parameters(q, m)


def low_weight_limit(beta, m: int) -> int:
    """Number of syndrome weights w with w < beta*m (weights 0..limit-1)."""
    bm = Fraction(beta) * m
    return max(0, math.ceil(bm))


def _check_generalized(q, m, beta, max_weight):
    if q < 2 or m < 1:
        raise ParameterError(f"need q >= 2 and m >= 1, got q={q}, m={m}")
    if not 0 <= Fraction(beta) < 1:
        raise ParameterError(f"beta must lie in [0, 1), got {beta}")
    if not 1 <= max_weight <= m:
        raise ParameterError(f"need 1 <= max_weight <= m, got {max_weight}")


def syndrome_level_witness(q: int, m: int, beta, max_weight: int) -> tuple[int, ...] | None:
    """First syndrome (radix order) that lies outside C and has no matching column.

    A syndrome s outside C has some zero entry and weight >= beta*m; the
    construction is a strong covering exactly when the indicator of the
    zero positions of every such s is a column of the filtered matrix.
    Only the zero pattern matters, so the 2^m patterns are scanned.
    """
    _check_generalized(q, m, beta, max_weight)
    cols = set(filtered_parity_check(m, max_weight).columns)
    limit = low_weight_limit(beta, m)
    best = None
    for zmask in range(1, 2**m):
        weight = m - zmask.bit_count()
        if weight < limit or zmask in cols:
            continue
        # least syndrome with exactly this zero set: 1 on every nonzero position
        s = tuple(0 if zmask >> r & 1 else 1 for r in range(m))
        if best is None or s < best:
            best = s
    return best


def verify_syndrome_level(q: int, m: int, beta, max_weight: int) -> bool:
    return syndrome_level_witness(q, m, beta, max_weight) is None


def generalized_size(q: int, m: int, beta, max_weight: int) -> int:
    n = filtered_parity_check(m, max_weight).cols
    limit = low_weight_limit(beta, m)
    accepted = (q - 1) ** m + sum(comb(m, w) * (q - 1) ** w for w in range(min(limit, m)))
    return q ** (n - m) * accepted


def generalized_construction(q: int, m: int, beta=None, max_weight: int | None = None) -> ImplicitCode:
    """Words whose filtered syndrome has no zero entry or has weight below beta*m."""
    if beta is None or max_weight is None:
        d_beta, d_mw = default_parameters(q, m)
        beta = d_beta if beta is None else beta
        max_weight = d_mw if max_weight is None else max_weight
    _check_generalized(q, m, beta, max_weight)
    witness = syndrome_level_witness(q, m, beta, max_weight)
    if witness is not None:
        raise ConstructionError(
            f"q={q} m={m} beta={beta} max_weight={max_weight} is not admissible; "
            f"syndrome {witness} has no matching column",
            witness,
        )
    H = filtered_parity_check(m, max_weight)
    limit = low_weight_limit(beta, m)

    def accept(s):
        weight = (s != 0).sum(axis=1)
        return (weight == m) | (weight < limit)

    size = generalized_size(q, m, beta, max_weight)
    beta_out = beta if isinstance(beta, float) else str(Fraction(beta))
    return ImplicitCode(
        q,
        H.cols,
        _syndrome_predicate(H, q, accept),
        size,
        {"family": "generalized", "q": q, "m": m, "n": H.cols, "beta": beta_out,
         "max_weight": max_weight, "size": size},
        certified_strong=True,
    )


# ---------------------------------------------------------------------------
# translations


def translate(code: Code, t) -> Code:
    """The code shifted by t (componentwise addition mod q)."""
    if len(t) != code.n:
        raise DimensionError(f"translation has length {len(t)}, code has n={code.n}")
    t = check_config(t, code.q, code.n)
    q, n = code.q, code.n
    if isinstance(code, ExplicitCode):
        words = digits_array(np.array(code.indices(), dtype=np.int64), q, n)
        return ExplicitCode(q, n, indices_of((words + np.array(t)) % q, q).tolist())
    shift = np.array(t, dtype=np.int64)
    base = code.predicate
    descriptor = dict(code.descriptor)
    if any(t):
        prev = descriptor.get("translation")
        if prev is not None:
            shift_total = (np.array([int(c, 36) for c in prev]) + shift) % q
        else:
            shift_total = shift
        descriptor["translation"] = "".join(np.base_repr(int(x), 36).lower() for x in shift_total)
    return ImplicitCode(
        q, n, lambda digits: base((digits - shift) % q), code.exact_size, descriptor, code.certified_strong
    )


def random_translation(code: Code, rng: np.random.Generator) -> tuple[Code, tuple[int, ...]]:
    t = tuple(int(x) for x in rng.integers(0, code.q, size=code.n))
    return translate(code, t), t


def from_descriptor(desc: dict) -> Code:
    """Rebuild an implicit code from its JSON descriptor."""
    family = desc.get("family")
    if family == "syndrome":
        code = syndrome_construction(int(desc["q"]), int(desc["m"]))
    elif family == "generalized":
        beta = desc["beta"]
        beta = float(beta) if isinstance(beta, float) else Fraction(str(beta))
        code = generalized_construction(int(desc["q"]), int(desc["m"]), beta, int(desc["max_weight"]))
    else:
        raise ParameterError(f"unknown code family {family!r}")
    for key in ("n", "size"):
        if key in desc and int(desc[key]) != getattr(code, "n" if key == "n" else "exact_size"):
            raise ParameterError(f"descriptor {key} does not match the rebuilt code")
    if desc.get("translation"):
        code = translate(code, [int(c, 36) for c in desc["translation"]])
    return code
