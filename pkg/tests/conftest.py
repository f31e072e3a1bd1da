"""Brute-force oracles shared by the tests.

Everything here works on plain tuples and sets and follows the definitions
directly, so it stays independent of the vectorised paths under test.
"""

from itertools import product

import pytest


def space(q, n):
    return list(product(range(q), repeat=n))


def hamming(u, v):
    return sum(a != b for a, b in zip(u, v))


def brute_is_covering(C, q, n, r):
    return all(any(hamming(v, c) <= r for c in C) for v in space(q, n))


def brute_is_strong(C, q, n):
    C = set(C)
    for w in space(q, n):
        if w in C:
            continue
        if not any(all(w[:i] + (x,) + w[i + 1:] in C for x in range(q) if x != w[i]) for i in range(n)):
            return False
    return True


def brute_declare(C, q, n, w, i):
    outside = [x for x in range(q) if w[:i] + (x,) + w[i + 1:] not in C]
    return outside[0] if len(outside) == 1 else None


def brute_outcome(C, q, n, w):
    """(win, correct, wrong) for the code-derived strategy on w."""
    C = set(C)
    decl = [brute_declare(C, q, n, w, i) for i in range(n)]
    correct = sum(d == x for d, x in zip(decl, w))
    wrong = sum(d is not None and d != x for d, x in zip(decl, w))
    return correct >= 1 and wrong == 0, correct, wrong


def brute_syndrome(columns, v, q, m):
    """Row r sums the coordinates whose column has bit r set."""
    return tuple(sum(x for x, c in zip(v, columns) if c >> r & 1) % q for r in range(m))


def words(code):
    return set(code.words()) if hasattr(code, "words") else set(code)


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


@pytest.fixture
def rng():
    import random

    return random.Random(20011)
