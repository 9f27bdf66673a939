"""Truncated Fourier expansions on fractional exponent grids.

A series keeps exact rational coefficients on the grid (1/M)Z, knows all
coefficients for exponents below its precision bound, and stores only the
nonzero ones.  Series are immutable values: every operation returns a new
instance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .arith import is_prime, sqrt_mod
from .hurwitz import HurwitzTable

__all__ = [
    "QSeries",
    "ModLSeries",
    "theta_series",
    "eisenstein_hol",
    "u_operator",
    "u_theta_decomposition",
    "multiply",
    "reduce_mod",
    "series_to_json",
    "series_from_json",
]


@dataclass(frozen=True)
class QSeries:
    """Sparse expansion sum c_n e(n tau / M) with exact rational coefficients.

    Coefficients are known exactly for all exponents n/M < precision; an
    absent index below the precision bound means the coefficient is zero.
    """

    grid: int
    precision: Fraction
    coeffs: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.grid < 1:
            raise ValueError("grid denominator must be >= 1")
        bound = self.precision
        clean = {}
        for idx, val in self.coeffs.items():
            if idx < 0:
                raise ValueError("negative exponents are not representable")
            if Fraction(idx, self.grid) >= bound:
                raise ValueError(
                    f"index {idx} lies at/beyond the precision bound {bound}"
                )
            frac = Fraction(val)
            if frac:
                clean[idx] = frac
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "precision", Fraction(bound))

    def coefficient(self, exponent) -> Fraction:
        """Coefficient at the given exponent (int or Fraction)."""
        exp = Fraction(exponent)
        if exp >= self.precision:
            raise ValueError(f"exponent {exp} is beyond precision {self.precision}")
        idx = exp * self.grid
        if idx.denominator != 1 or idx < 0:
            return Fraction(0)
        return self.coeffs.get(int(idx), Fraction(0))

    def exponents(self) -> list[Fraction]:
        return [Fraction(i, self.grid) for i in sorted(self.coeffs)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def rescaled(self, new_grid: int) -> "QSeries":
        """Same series on a finer grid (new_grid must be a multiple of grid)."""
        if new_grid % self.grid:
            raise ValueError("new grid must refine the old one")
        k = new_grid // self.grid
        return QSeries(new_grid, self.precision, {i * k: c for i, c in self.coeffs.items()})

    def __add__(self, other: "QSeries") -> "QSeries":
        m = self.grid * other.grid // gcd(self.grid, other.grid)
        a, b = self.rescaled(m), other.rescaled(m)
        bound = min(a.precision, b.precision)
        out: dict[int, Fraction] = {}
        for idx, val in list(a.coeffs.items()) + list(b.coeffs.items()):
            if Fraction(idx, m) < bound:
                out[idx] = out.get(idx, Fraction(0)) + val
        return QSeries(m, bound, out)

    def __mul__(self, other: "QSeries") -> "QSeries":
        m = self.grid * other.grid // gcd(self.grid, other.grid)
        a, b = self.rescaled(m), other.rescaled(m)
        bound = min(a.precision, b.precision)
        limit = bound * m  # indices strictly below this survive
        out: dict[int, Fraction] = {}
        for i1, c1 in a.coeffs.items():
            if i1 >= limit:
                continue
            for i2, c2 in b.coeffs.items():
                idx = i1 + i2
                if idx < limit:
                    out[idx] = out.get(idx, Fraction(0)) + c1 * c2
        return QSeries(m, bound, out)

    def agrees_with(self, other: "QSeries") -> bool:
        """Coefficientwise equality below the smaller precision bound."""
        m = self.grid * other.grid // gcd(self.grid, other.grid)
        a, b = self.rescaled(m), other.rescaled(m)
        bound = min(a.precision, b.precision) * m
        for idx in set(a.coeffs) | set(b.coeffs):
            if idx < bound and a.coeffs.get(idx, 0) != b.coeffs.get(idx, 0):
                return False
        return True


@dataclass(frozen=True)
class ModLSeries:
    """Same grid/precision structure with coefficients in Z/ellZ, ell prime > 3."""

    modulus: int
    grid: int
    precision: Fraction
    coeffs: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.modulus <= 3 or not is_prime(self.modulus):
            raise ValueError("modulus must be a prime > 3")
        clean = {i: v % self.modulus for i, v in self.coeffs.items()}
        object.__setattr__(self, "coeffs", {i: v for i, v in clean.items() if v})

    def coefficient(self, exponent) -> int:
        exp = Fraction(exponent)
        if exp >= self.precision:
            raise ValueError(f"exponent {exp} is beyond precision {self.precision}")
        idx = exp * self.grid
        if idx.denominator != 1 or idx < 0:
            return 0
        return self.coeffs.get(int(idx), 0)

    def is_zero(self) -> bool:
        return not self.coeffs


def theta_series(a: int, beta: int, precision) -> QSeries:
    """Theta series on the grid (1/a)Z: coefficient at n^2/a counts integers
    n == beta (mod a) with that square."""
    if a < 1:
        raise ValueError("a must be >= 1")
    bound = Fraction(precision)
    coeffs: dict[int, Fraction] = {}
    # n^2 < a * bound
    top = a * bound
    n = beta % a
    while Fraction(n * n) < top:
        coeffs[n * n] = coeffs.get(n * n, Fraction(0)) + 1
        n += a
    n = beta % a - a
    while Fraction(n * n) < top:
        coeffs[n * n] = coeffs.get(n * n, Fraction(0)) + 1
        n -= a
    return QSeries(a, bound, coeffs)


def eisenstein_hol(precision, table: HurwitzTable) -> QSeries:
    """Holomorphic generating series of Hurwitz class numbers: coefficient H(D)
    at integer exponent D."""
    bound = Fraction(precision)
    top = bound.numerator // bound.denominator
    if Fraction(top) == bound:
        top -= 1  # strict inequality: exponents < bound
    if top > table.n_max:
        raise ValueError(f"table covers D <= {table.n_max}, need D <= {top}")
    coeffs = {}
    for D in range(0, top + 1):
        t = table.twelve_h(D)
        if t:
            coeffs[D] = Fraction(t, 12)
    return QSeries(1, bound, coeffs)


def u_operator(series: QSeries, a: int, b: int) -> QSeries:
    """Sieve exponents congruent to b (mod a) and divide them by a.

    On the grid (1/M)Z this keeps indices n with n == b*M (mod a*M); the
    output lives on the grid (1/(M*a))Z with the same indices.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    m = series.grid
    keep = (b * m) % (a * m)
    coeffs = {i: c for i, c in series.coeffs.items() if i % (a * m) == keep}
    return QSeries(m * a, series.precision / a, coeffs)


def u_theta_decomposition(a: int, b: int, precision) -> QSeries:
    """Sum of theta_series(a, beta) over the square roots beta of b mod a.

    Coefficientwise equal to u_operator(theta_series(1, 0), a, b).
    """
    bound = Fraction(precision)
    out = QSeries(a, bound, {})
    for beta in sqrt_mod(b, a):
        out = out + theta_series(a, beta, bound)
    return out


def multiply(x: QSeries, y: QSeries) -> QSeries:
    """Cauchy product on the common grid; precision is the minimum of the two."""
    return x * y


def reduce_mod(x: QSeries, ell: int) -> ModLSeries:
    """Coefficientwise reduction mod ell; denominators must be prime to ell."""
    if ell <= 3 or not is_prime(ell):
        raise ValueError("ell must be a prime > 3")
    out: dict[int, int] = {}
    for idx, val in x.coeffs.items():
        if val.denominator % ell == 0:
            raise ValueError(
                f"coefficient {val} at index {idx} has denominator divisible by {ell}"
            )
        out[idx] = val.numerator * pow(val.denominator, -1, ell) % ell
    return ModLSeries(ell, x.grid, x.precision, out)


def series_to_json(series: QSeries) -> str:
    """JSON form: {"M": int, "B": "p/q", "coeffs": [[index, "num/den"], ...]}."""
    payload = {
        "M": series.grid,
        "B": f"{series.precision.numerator}/{series.precision.denominator}",
        "coeffs": [
            [i, f"{c.numerator}/{c.denominator}"] for i, c in sorted(series.coeffs.items())
        ],
    }
    return json.dumps(payload)


def series_from_json(text: str) -> QSeries:
    payload = json.loads(text)
    coeffs = {int(i): Fraction(c) for i, c in payload["coeffs"]}
    return QSeries(int(payload["M"]), Fraction(payload["B"]), coeffs)
