import json
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from hats.constructions import hamming_coset_covering, syndrome_construction
from hats.core import BudgetError, DomainError, ExplicitCode
from hats.game import (
    PASS,
    SymmetricStrategy,
    all_pass,
    complement,
    evaluate,
    find_strong_violation,
    is_covering,
    is_perfect_strong_covering,
    is_strong_covering,
    play,
    strategy_from_code,
    winning_set,
)

from conftest import brute_is_covering, brute_is_strong, brute_outcome, space, words

REP3 = ExplicitCode.from_words(2, 3, ["000", "111"])


def test_strategy_from_repetition_code():
    S = strategy_from_code(REP3)
    o = play(S, (0, 0, 1))
    assert o.declarations == (None, None, 1)
    assert o.win and (o.correct_count, o.incorrect_count, o.pass_count) == (1, 0, 2)
    o = play(S, (0, 0, 0))
    assert o.declarations == (1, 1, 1) and not o.win and o.incorrect_count == 3


def test_full_space_code_always_passes():
    S = strategy_from_code(ExplicitCode.full_space(3, 2))
    for w in space(3, 2):
        o = play(S, w)
        assert o.pass_count == 2 and not o.win


def test_three_player_rule_on_011():
    # "seeing two equal colours, declare the opposite"
    S = SymmetricStrategy.binary(3, [1, PASS, 0])
    o = play(S, (0, 1, 1))
    assert o.win and o.correct_count == 1 and o.pass_count == 2


def test_all_pass_loses():
    S = all_pass(2, 3)
    assert not any(play(S, w).win for w in space(2, 3))
    assert winning_set(S).size() == 0


def test_coset_strategy_wins_on_111():
    S = strategy_from_code(ExplicitCode.from_words(2, 3, ["001", "110"]))
    assert play(S, (1, 1, 1)).win
    assert words(winning_set(S)) == set(space(2, 3)) - {(0, 0, 1), (1, 1, 0)}


def test_winning_set_examples():
    W = winning_set(strategy_from_code(REP3))
    assert W.size() == 6 and (0, 0, 0) not in W and (1, 1, 1) not in W
    S = strategy_from_code(syndrome_construction(3, 2))
    assert 27 - winning_set(S).size() == 12


def test_evaluate_examples():
    r = evaluate(strategy_from_code(REP3))
    assert r.losing_probability == Fraction(1, 4) and r.is_perfect_strategy
    r = evaluate(strategy_from_code(hamming_coset_covering(3)))
    assert r.losing_probability == Fraction(1, 8) and r.is_perfect_strategy
    r = evaluate(strategy_from_code(syndrome_construction(3, 2)))
    assert r.losing_probability == Fraction(4, 9) and not r.is_perfect_strategy


def test_evaluation_report_json():
    doc = evaluate(strategy_from_code(REP3)).to_json()
    assert list(doc) == ["q", "n", "losing_count", "total", "losing_probability", "perfect"]
    assert doc["losing_probability"]["num"] == 1 and doc["losing_probability"]["den"] == 4
    json.dumps(doc)


def test_evaluate_counts_large_certified_code():
    code = syndrome_construction(3, 4)  # 3^15 configurations
    r = evaluate(strategy_from_code(code), budget=10**6)
    assert r.method == "count" and r.losing_probability == Fraction(2, 3) ** 4


def test_budget_exceeded():
    with pytest.raises(BudgetError):
        evaluate(strategy_from_code(REP3), budget=4)
    with pytest.raises(BudgetError):
        evaluate(all_pass(2, 3), budget=4)


def test_is_covering_examples():
    assert is_covering(REP3, 1)
    assert not is_covering(ExplicitCode(2, 3, []), 1)
    assert is_covering(ExplicitCode.full_space(2, 2), 0)
    assert not is_covering(REP3, 0)
    assert is_covering(ExplicitCode.from_words(2, 4, ["0000"]), 4)
    assert not is_covering(ExplicitCode.from_words(2, 4, ["0000"]), 3)


def test_is_strong_covering_examples():
    assert is_strong_covering(syndrome_construction(3, 2))
    assert is_strong_covering(ExplicitCode.full_space(3, 2))
    assert find_strong_violation(ExplicitCode.from_words(2, 3, ["000"])) is not None


def test_perfect_strong_covering_examples():
    assert is_perfect_strong_covering(REP3)
    assert not is_perfect_strong_covering(syndrome_construction(3, 2))
    assert is_perfect_strong_covering(hamming_coset_covering(3))
    with pytest.raises(DomainError):
        is_perfect_strong_covering(ExplicitCode.from_words(2, 3, ["000"]))


def _all_subsets(q, n):
    for mask in range(2 ** (q**n)):
        yield ExplicitCode(q, n, [i for i in range(q**n) if mask >> i & 1])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_covering_predicates_match_oracle(n):
    for code in _all_subsets(2, n):
        C = words(code)
        assert is_covering(code, 1) == brute_is_covering(C, 2, n, 1)
        assert is_strong_covering(code) == brute_is_strong(C, 2, n)


def _random_codes(q, n, count, seed):
    rnd = random.Random(seed)
    for _ in range(count):
        k = rnd.randint(0, q**n)
        yield ExplicitCode(q, n, rnd.sample(range(q**n), k))


@pytest.mark.parametrize("q,n", [(3, 2), (3, 3), (2, 4), (4, 2)])
def test_strong_covering_matches_oracle_qary(q, n):
    for code in _random_codes(q, n, 60, q * 10 + n):
        assert is_strong_covering(code) == brute_is_strong(words(code), q, n)


def test_winning_set_is_complement_for_one_coverings():
    # every 1-covering for n <= 3, and a large sample at n = 4
    checked = 0
    for n in (1, 2, 3):
        for code in _all_subsets(2, n):
            if is_covering(code, 1):
                assert winning_set(strategy_from_code(code)) == complement(code)
                checked += 1
    rnd = random.Random(7)
    while checked < 1100:
        code = ExplicitCode(2, 4, rnd.sample(range(16), rnd.randint(4, 12)))
        if is_covering(code, 1):
            assert winning_set(strategy_from_code(code)) == complement(code)
            checked += 1


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)])
def test_no_incorrect_guess_outside_code(q, n):
    for code in _random_codes(q, n, 25, 100 + q * 10 + n):
        C = words(code)
        wins = words(winning_set(strategy_from_code(code)))
        strong_ok = True
        for w in space(q, n):
            win, _, wrong = brute_outcome(C, q, n, w)
            assert (w in wins) == win
            if w not in C:
                assert wrong == 0
                strong_ok &= win
        assert strong_ok == is_strong_covering(code)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2), (3, 3)]), st.data())
def test_play_agrees_with_sweep(qn, data):
    q, n = qn
    idx = data.draw(st.sets(st.integers(0, q**n - 1)))
    code = ExplicitCode(q, n, idx)
    S = strategy_from_code(code)
    wins = winning_set(S)
    for w in space(q, n):
        assert play(S, w).win == (w in wins)


def _perfect_by_definition(code):
    q, n = code.q, code.n
    C = words(code)
    for w in space(q, n):
        win, correct, wrong = brute_outcome(C, q, n, w)
        if win and correct != 1:
            return False
        if not win and wrong != n:
            return False
    return True


def test_perfectness_equivalence_small():
    seen_perfect = 0
    scans = [_all_subsets(2, n) for n in (1, 2, 3)]
    scans.append(ExplicitCode(3, 2, c) for k in range(10) for c in combinations(range(9), k))
    for scan in scans:
        for code in scan:
            if not is_strong_covering(code):
                continue
            flag = evaluate(strategy_from_code(code)).is_perfect_strategy
            assert flag == _perfect_by_definition(code)
            assert is_perfect_strong_covering(code) == flag
            seen_perfect += flag
    assert seen_perfect > 0


def test_symmetric_strategy_vectorised_matches_decide():
    S = SymmetricStrategy(3, 3, {(2, 0, 0): 1, (0, 1, 1): 0, (1, 1, 0): 2})
    decl = S.declarations(0, 27)
    for idx, w in enumerate(space(3, 3)):
        for i in range(3):
            assert decl[idx, i] == S.decide(i, w[:i] + w[i + 1:])
