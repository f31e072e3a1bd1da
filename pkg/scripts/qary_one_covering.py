"""Winning probability of strategies derived from plain q-ary 1-coverings.

Compares them with the syndrome construction at the same length.  Uses the
ternary Hamming code of length 4 (a perfect 1-covering) and its direct sums.

    python scripts/qary_one_covering.py
"""

from itertools import product

from hats.constructions import syndrome_construction
from hats.core import ExplicitCode, config_to_index
from hats.game import evaluate, is_covering, is_strong_covering, strategy_from_code

# parity checks of the [4, 2] ternary Hamming code
H = [(0, 1, 1, 1), (1, 0, 1, 2)]


def ternary_hamming():
    members = [v for v in product(range(3), repeat=4)
               if all(sum(h * x for h, x in zip(row, v)) % 3 == 0 for row in H)]
    return ExplicitCode(3, 4, [config_to_index(v, 3) for v in members])


def main():
    code = ternary_hamming()
    r = evaluate(strategy_from_code(code))
    print(f"ternary Hamming n=4: |C|={code.size()} 1-covering={is_covering(code, 1)} "
          f"strong={is_strong_covering(code)} win={float(r.winning_probability):.4f}")
    s = syndrome_construction(3, 2)
    r = evaluate(strategy_from_code(s))
    print(f"syndrome construction q=3 n=3: win={float(r.winning_probability):.4f}")
    s = syndrome_construction(3, 3)
    r = evaluate(strategy_from_code(s))
    print(f"syndrome construction q=3 n=7: win={float(r.winning_probability):.4f}")


if __name__ == "__main__":
    main()
