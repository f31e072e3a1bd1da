"""Regenerate the CSV tables under results/.

    python scripts/golden_tables.py [--out results]
"""

import argparse
import csv
from fractions import Fraction
from pathlib import Path

from hats.analysis import density, syndrome_losing_probability, generalized_losing_probability, strong_covering_bound
from hats.constructions import direct_sum_covering, hamming_prefix_length, gamma_parameters
from hats.game import evaluate, strategy_from_code
from hats.search import covering_greedy, symmetric_strategy_search, zero_info_optimum


def write(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(exist_ok=True)

    rows = []
    for n in range(3, 21):
        code = direct_sum_covering(n)
        p = evaluate(strategy_from_code(code)).losing_probability
        rows.append([n, hamming_prefix_length(n), code.size(), p, Fraction(1, n + 1), Fraction(2, n + 1), density(code)])
    write(out / "direct_sum.csv", ["n", "prefix", "size", "p_l", "lower", "upper", "density"], rows)

    rows = [[q, m, 2**m - 1, syndrome_losing_probability(q, m)] for q in (2, 3, 4, 5, 8) for m in range(1, 9)]
    write(out / "syndrome_pl.csv", ["q", "m", "n", "p_l"], rows)

    rows = []
    for q in (6, 7, 11, 16):
        for m in range(4, 11):
            beta, mw = gamma_parameters(q, m)
            rows.append([q, m, mw, f"{beta:.6f}", generalized_losing_probability(q, m, beta, mw),
                         f"{float(syndrome_losing_probability(q, m)):.6f}"])
    write(out / "generalized_pl.csv", ["q", "m", "max_weight", "beta", "p_l", "plain_p_l"], rows)

    rows = []
    for n in range(1, 13):
        res = symmetric_strategy_search(n)
        best_known = 1 - Fraction(1, hamming_prefix_length(n) + 1) if n >= 3 else Fraction(1, 2)
        rows.append([n, res.best_win_probability, f"{float(res.best_win_probability):.6f}", best_known,
                     " ".join(res.witness.describe()["by_ones_seen"])])
    write(out / "symmetric.csv", ["n", "best", "decimal", "best_known_overall", "rule_by_ones_seen"], rows)

    rows = [[n, f"{r.best_win_probability:.10f}", f"{r.extra['s']:.8f}"]
            for n in (1, 2, 3, 5, 10, 20, 50, 100, 1000) for r in [zero_info_optimum(n)]]
    write(out / "zero_info.csv", ["n", "best", "s"], rows)

    rows = []
    for q, n in [(2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (3, 5), (4, 3)]:
        sizes = [covering_greedy(q, n, seed).size() for seed in range(5)]
        rows.append([q, n, min(sizes), max(sizes), strong_covering_bound(q, n)])
    write(out / "greedy.csv", ["q", "n", "min_size", "max_size", "strong_bound"], rows)


if __name__ == "__main__":
    main()
