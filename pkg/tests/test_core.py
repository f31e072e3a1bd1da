import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hats.core import (
    DimensionError,
    ExplicitCode,
    ParameterError,
    config_to_index,
    digits_array,
    filtered_parity_check,
    hamming_parity_check,
    index_to_config,
    read_code,
    syndrome_map,
    syndromes,
    write_code,
)

from conftest import brute_syndrome, space


def test_syndrome_examples():
    H = hamming_parity_check(2)
    assert syndrome_map(H, (1, 1, 1), 2) == (0, 0)
    assert syndrome_map(H, (0, 0, 1), 3) == (1, 1)
    assert syndrome_map(hamming_parity_check(3), (0,) * 7, 5) == (0, 0, 0)


def test_syndrome_length_mismatch():
    with pytest.raises(DimensionError):
        syndrome_map(hamming_parity_check(2), (0, 1), 2)


def test_hamming_columns():
    assert set(hamming_parity_check(2).column(j) for j in range(3)) == {(0, 1), (1, 0), (1, 1)}
    H3 = hamming_parity_check(3)
    assert H3.cols == 7 == 2**3 - 1
    cols = [H3.column(j) for j in range(7)]
    assert len(set(cols)) == 7 and (0, 0, 0) not in cols
    # column j is j in binary, row 1 least significant
    assert cols[0] == (1, 0, 0) and cols[5] == (0, 1, 1)
    with pytest.raises(ParameterError):
        hamming_parity_check(1)


def test_filtered_parity_check():
    assert filtered_parity_check(5, 2).cols == 15
    assert filtered_parity_check(3, 3) == hamming_parity_check(3)
    unit = filtered_parity_check(4, 1)
    assert sorted(unit.columns) == [1, 2, 4, 8]
    assert unit.has_all_unit_columns()
    for bad in (0, 6):
        with pytest.raises(ParameterError):
            filtered_parity_check(5, bad)


MATRICES = [hamming_parity_check(2), hamming_parity_check(3), hamming_parity_check(4),
            filtered_parity_check(4, 2), filtered_parity_check(5, 2), filtered_parity_check(5, 1)]


@settings(max_examples=200)
@given(st.sampled_from(MATRICES), st.sampled_from([2, 3, 5]), st.data())
def test_syndrome_is_homomorphism(H, q, data):
    vec = st.lists(st.integers(0, q - 1), min_size=H.cols, max_size=H.cols)
    u, v = data.draw(vec), data.draw(vec)
    s = tuple((a + b) % q for a, b in zip(syndrome_map(H, u, q), syndrome_map(H, v, q)))
    assert syndrome_map(H, [(a + b) % q for a, b in zip(u, v)], q) == s
    assert syndrome_map(H, u, q) == brute_syndrome(H.columns, u, q, H.m)


@pytest.mark.parametrize("q,H", [(2, hamming_parity_check(2)), (3, hamming_parity_check(2)),
                                 (2, hamming_parity_check(3)), (3, hamming_parity_check(3)),
                                 (3, filtered_parity_check(3, 1)), (2, filtered_parity_check(3, 2))])
def test_fibers_are_equal(q, H):
    n = H.cols
    S = syndromes(H, digits_array(np.arange(q**n), q, n), q)
    _, counts = np.unique(S @ (q ** np.arange(H.m)), return_counts=True)
    assert len(counts) == q**H.m
    assert set(counts.tolist()) == {q ** (n - H.m)}


@given(st.integers(2, 7), st.integers(1, 6), st.data())
def test_index_roundtrip(q, n, data):
    idx = data.draw(st.integers(0, q**n - 1))
    v = index_to_config(idx, q, n)
    assert config_to_index(v, q) == idx
    assert tuple(digits_array(np.array([idx]), q, n)[0]) == v


def test_radix_order_player_one_most_significant():
    assert [index_to_config(i, 2, 3) for i in range(3)] == [(0, 0, 0), (0, 0, 1), (0, 1, 0)]


@given(st.integers(2, 12), st.integers(1, 4), st.data())
def test_code_file_roundtrip(q, n, data):
    idx = data.draw(st.sets(st.integers(0, q**n - 1), max_size=20))
    code = ExplicitCode(q, n, idx)
    text = write_code(code)
    assert text.endswith("\n") and "\r" not in text
    assert read_code(text) == code


def test_code_file_format():
    code = ExplicitCode.from_words(12, 2, ["b0", "0a", "00"])
    assert write_code(code) == "12 2\n00\n0a\nb0\n"


@pytest.mark.parametrize("text", ["", "2\n", "2 3\n001\n000\n", "2 3\n000\n000\n", "2 3\n0011\n",
                                  "2 3\n002\n", "x y\n"])
def test_code_file_rejects_malformed(text):
    with pytest.raises(ParameterError):
        read_code(text)


def test_explicit_code_membership():
    code = ExplicitCode.from_words(3, 2, [(0, 1), (2, 2)])
    assert (0, 1) in code and (1, 0) not in code
    assert code.membership().tolist() == [v in {(0, 1), (2, 2)} for v in space(3, 2)]
    with pytest.raises(DimensionError):
        (0, 1, 2) in code
