"""Hurwitz class numbers: per-value enumeration, the multiplicative formula,
and a dense table built by a single sweep over reduced quadratic forms.

All values are carried as the integer 12*H(D) so that every computation stays
in exact integer arithmetic; congruence checks modulo primes ell > 3 are then
valid on 12*H directly since gcd(12, ell) = 1.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .arith import factorize, is_fundamental, kronecker, sigma1

__all__ = [
    "HurwitzValue",
    "HurwitzTable",
    "hurwitz",
    "class_number",
    "hurwitz_via_formula",
    "build_table",
    "write_table_csv",
    "read_table_csv",
]


@dataclass(frozen=True)
class HurwitzValue:
    """Exact Hurwitz class number, stored as the integer 12*H(D)."""

    twelve_h: int

    @property
    def as_fraction(self) -> Fraction:
        return Fraction(self.twelve_h, 12)


def _twelve_h_enumerate(D: int) -> int:
    """12*H(D) by direct enumeration of reduced forms (a, b, c).

    Reduced means |b| <= a <= c with b >= 0 whenever |b| = a or a = c.
    Forms proportional to x^2+y^2 weigh 1/2 and to x^2+xy+y^2 weigh 1/3;
    the loop below runs over b >= 0 and books 24 per (a, b, c) with
    0 < b < a < c to account for the +-b pair.
    """
    total = 0
    for b in range(D % 2, isqrt(D // 3) + 1, 2):
        m4 = b * b + D
        if m4 % 4:
            continue
        m = m4 // 4
        for a in range(max(b, 1), isqrt(m) + 1):
            if m % a:
                continue
            c = m // a
            if b == a == c:
                total += 4
            elif b == 0 and a == c:
                total += 6
            elif b == 0 or b == a or a == c:
                total += 12
            else:
                total += 24
    return total


def hurwitz(D: int) -> HurwitzValue:
    """H(D): H(0) = -1/12, H(D) = 0 unless -D is congruent to 0 or 1 mod 4,
    otherwise the weighted count of classes of positive definite binary
    quadratic forms of discriminant -D."""
    if D < 0:
        raise ValueError("hurwitz expects D >= 0")
    if D == 0:
        return HurwitzValue(-1)
    if D % 4 in (1, 2):
        return HurwitzValue(0)
    return HurwitzValue(_twelve_h_enumerate(D))


def class_number(D: int) -> int:
    """h(-D) for a fundamental discriminant -D; equals H(D) for D > 4."""
    if not is_fundamental(D):
        raise ValueError(f"-{D} is not a fundamental discriminant")
    if D in (3, 4):
        return 1
    twelve = hurwitz(D).twelve_h
    if twelve % 12:
        raise ArithmeticError(f"H({D}) is not an integer for fundamental -{D}")
    return twelve // 12


def hurwitz_via_formula(D: int, f: int) -> HurwitzValue:
    """H(D*f^2) via the multiplicative class number formula
    H(D f^2) = H(D) * prod_{p | f} (sigma1(f_p) - (-D|p) * sigma1(f_p / p)).
    """
    if not is_fundamental(D):
        raise ValueError(f"-{D} is not a fundamental discriminant")
    if f < 1:
        raise ValueError("f must be a positive integer")
    twelve = hurwitz(D).twelve_h
    for p, e in factorize(f).factors:
        fp = p**e
        twelve *= sigma1(fp) - kronecker(-D, p) * sigma1(fp // p)
    return HurwitzValue(twelve)


@dataclass(frozen=True)
class HurwitzTable:
    """Dense table of 12*H(D) for 0 <= D <= n_max."""

    n_max: int
    values: np.ndarray  # int64, values[D] == 12*H(D)

    def covers(self, n: int) -> bool:
        return n <= self.n_max

    def twelve_h(self, D: int) -> int:
        if not 0 <= D <= self.n_max:
            raise IndexError(f"table covers 0..{self.n_max}, got {D}")
        return int(self.values[D])

    def hurwitz(self, D: int) -> HurwitzValue:
        return HurwitzValue(self.twelve_h(D))


def build_table(n_max: int) -> HurwitzTable:
    """Table of 12*H(D) for all D <= n_max in one sweep over form triples.

    For each (a, b) with 0 <= b <= a the discriminants 4ac - b^2, c >= a,
    form an arithmetic progression handled as a strided slice update.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if n_max > 10**8:
        raise ValueError("n_max beyond the supported 10^8 memory bound")
    values = np.zeros(n_max + 1, dtype=np.int64)
    values[0] = -1
    for a in range(1, isqrt(n_max // 3) + 1):
        base = 4 * a * a
        for b in range(0, a + 1):
            first = base - b * b  # D at c = a
            if first > n_max:
                continue
            if b == a:
                w_eq, w_gen = 4, 12
            elif b == 0:
                w_eq, w_gen = 6, 12
            else:
                w_eq, w_gen = 12, 24
            values[first] += w_eq
            if first + 4 * a <= n_max:
                values[first + 4 * a :: 4 * a] += w_gen
    return HurwitzTable(n_max, values)


def write_table_csv(table: HurwitzTable, path) -> None:
    """Persist the table as CSV with header `D,twelveH`, one row per D."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["D", "twelveH"])
        for D in range(table.n_max + 1):
            writer.writerow([D, int(table.values[D])])


def read_table_csv(path) -> HurwitzTable:
    """Read a table written by write_table_csv."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["D", "twelveH"]:
            raise ValueError(f"{path}: not a Hurwitz table cache (bad header {header})")
        rows = [(int(d), int(v)) for d, v in reader]
    if not rows or [d for d, _ in rows] != list(range(len(rows))):
        raise ValueError(f"{path}: table rows must enumerate D = 0..n_max")
    values = np.array([v for _, v in rows], dtype=np.int64)
    return HurwitzTable(len(rows) - 1, values)
