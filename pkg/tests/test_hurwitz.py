import random
from fractions import Fraction

import pytest

import oracles
from hcl.arith import is_fundamental, sigma1
from hcl.hurwitz import (
    build_table,
    class_number,
    hurwitz,
    hurwitz_via_formula,
    read_table_csv,
    write_table_csv,
)


def test_hurwitz_examples():
    assert hurwitz(0).as_fraction == Fraction(-1, 12)
    assert hurwitz(3).as_fraction == Fraction(1, 3)
    assert hurwitz(23).as_fraction == 3
    assert hurwitz(275).as_fraction == 5


def test_hurwitz_zero_pattern():
    for D in range(1, 10**4 + 1):
        value = hurwitz(D).twelve_h
        if D % 4 in (1, 2):
            assert value == 0
        else:
            assert value > 0, D


def test_class_number_examples():
    assert class_number(23) == 3
    assert class_number(4) == 1
    assert class_number(11) == 1
    with pytest.raises(ValueError):
        class_number(12)  # -12 = -3 * 2^2 is not fundamental


def test_class_number_equals_hurwitz_for_fundamental():
    for D in range(5, 3001):
        if is_fundamental(D):
            assert 12 * class_number(D) == hurwitz(D).twelve_h


def test_formula_examples():
    assert hurwitz_via_formula(11, 5).as_fraction == 5
    assert hurwitz_via_formula(3, 1).as_fraction == Fraction(1, 3)
    assert hurwitz_via_formula(3, 7).twelve_h == hurwitz(147).twelve_h
    with pytest.raises(ValueError):
        hurwitz_via_formula(12, 2)


def test_formula_matches_enumeration_sample():
    for D in range(3, 301):
        if not is_fundamental(D):
            continue
        for f in range(1, 9):
            assert hurwitz_via_formula(D, f).twelve_h == hurwitz(D * f * f).twelve_h, (D, f)


def test_kronecker_hurwitz_relation(table_small):
    # sum over all m of H(4n - m^2) equals 2*sigma1(n) - sum_{d|n} min(d, n/d)
    for n in range(1, 2001):
        total = Fraction(0)
        m = 0
        while m * m <= 4 * n:
            term = Fraction(table_small.twelve_h(4 * n - m * m), 12)
            total += term if m == 0 else 2 * term
            m += 1
        lam = sum(min(d, n // d) for d in range(1, n + 1) if n % d == 0)
        assert total == 2 * sigma1(n) - lam, n


def test_build_table_small_values():
    t = build_table(4)
    assert [int(v) for v in t.values] == [-1, 0, 0, 4, 6]
    t0 = build_table(0)
    assert [int(v) for v in t0.values] == [-1]


def test_build_table_support_pattern():
    t = build_table(30)
    nonzero = {D for D in range(1, 31) if t.twelve_h(D)}
    assert nonzero == {3, 4, 7, 8, 11, 12, 15, 16, 19, 20, 23, 24, 27, 28}


def test_build_table_matches_pointwise(table_1m):
    rng = random.Random(11)
    for _ in range(1000):
        D = rng.randrange(0, 10**6 + 1)
        assert table_1m.twelve_h(D) == hurwitz(D).twelve_h, D


def test_enumeration_matches_independent_oracle_sample():
    rng = random.Random(12)
    for _ in range(300):
        D = rng.randrange(0, 5000)
        assert hurwitz(D).twelve_h == oracles.hurwitz_twelve_brute(D), D


def test_table_csv_roundtrip(tmp_path):
    t = build_table(50)
    path = tmp_path / "t.csv"
    write_table_csv(t, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "D,twelveH"
    assert len(lines) == 52
    back = read_table_csv(path)
    assert back.n_max == 50
    assert [int(v) for v in back.values] == [int(v) for v in t.values]


def test_table_csv_rejects_garbage(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("nope\n")
    with pytest.raises(ValueError):
        read_table_csv(path)
