"""Verification, search, and certification of Ramanujan-type congruences
H(a*n + b) == 0 (mod ell), plus the square-class, maximality-bound, and
divisibility property checks.

Certificates are heuristic: they record the finite range n_max_checked that
was verified and never claim a proof.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from math import gcd

import numpy as np

from .arith import factorize, is_prime, ord_p, sqrt_mod
from .hurwitz import HurwitzTable

__all__ = [
    "HolomorphicClass",
    "ArithmeticProgression",
    "CongruenceCertificate",
    "OrdBoundReport",
    "verify_congruence",
    "classify_progression",
    "search",
    "square_class_check",
    "square_class_witness",
    "ord_bound_report",
    "certificate_to_json",
]


class HolomorphicClass(Enum):
    HOLOMORPHIC = "holomorphic"
    NONHOLOMORPHIC = "nonholomorphic"


@dataclass(frozen=True)
class ArithmeticProgression:
    """The progression a*Z + b with the canonical residue 0 <= b < a."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or not 0 <= self.b < self.a:
            raise ValueError(f"need a >= 1 and 0 <= b < a, got ({self.a}, {self.b})")


@dataclass(frozen=True)
class CongruenceCertificate:
    ell: int
    progression: ArithmeticProgression
    n_max_checked: int
    holomorphic_class: HolomorphicClass
    maximal_up_to_check: bool


def _check_ell(ell: int) -> None:
    if ell <= 3 or not is_prime(ell):
        raise ValueError("ell must be a prime > 3")


def verify_congruence(
    ell: int, a: int, b: int, n_max: int, table: HurwitzTable
) -> tuple[bool, int | None]:
    """Check 12*H(a*n + b) == 0 (mod ell) for every n >= 0 with a*n + b <= n_max.

    Returns (True, None) on success, else (False, least failing value a*n+b).
    """
    _check_ell(ell)
    if a < 1 or not 0 <= b < a:
        raise ValueError("need a >= 1 and 0 <= b < a")
    if n_max > table.n_max:
        raise ValueError(f"table covers D <= {table.n_max}, need {n_max}")
    vals = table.values[b : n_max + 1 : a]
    bad = np.nonzero(vals % ell)[0]
    if bad.size:
        return False, b + a * int(bad[0])
    return True, None


def classify_progression(a: int, b: int) -> HolomorphicClass:
    """Non-holomorphic iff -b is a square modulo a."""
    if sqrt_mod(-b, a):
        return HolomorphicClass.NONHOLOMORPHIC
    return HolomorphicClass.HOLOMORPHIC


def _has_discriminant_support(a: int, b: int) -> bool:
    """Whether a*Z + b contains any value D with -D == 0 or 1 (mod 4).

    Progressions without such values have H identically zero on them and
    verify vacuously; the search excludes them.
    """
    if a % 4 == 0:
        return b % 4 in (0, 3)
    return True


def _passing_residues(nz_any: np.ndarray, a: int, n_max: int) -> list[int]:
    return [b for b in range(a) if not nz_any[b::a].any()]


def search(
    ell: int, a_max: int, n_max: int, table: HurwitzTable, jobs: int = 1
) -> list[CongruenceCertificate]:
    """All progressions with a <= a_max whose values up to n_max verify the
    congruence, reduced to maximal ones: a progression is dropped when some
    super-progression (a/q)*Z + (b mod a/q), q prime, also verifies.

    Progressions containing no discriminants at all (identically zero H) are
    excluded from the output.
    """
    _check_ell(ell)
    if n_max < 100 * a_max:
        raise ValueError("need n_max >= 100 * a_max for a meaningful search")
    if n_max > table.n_max:
        raise ValueError(f"table covers D <= {table.n_max}, need {n_max}")
    nz = (table.values[: n_max + 1] % ell) != 0

    passing: set[tuple[int, int]] = set()

    def scan(a: int) -> list[tuple[int, int]]:
        return [(a, b) for b in _passing_residues(nz, a, n_max)]

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(scan, range(1, a_max + 1)):
                passing.update(chunk)
    else:
        for a in range(1, a_max + 1):
            passing.update(scan(a))

    certificates = []
    for a, b in sorted(passing):
        if not _has_discriminant_support(a, b):
            continue
        covered = any(
            (a // q, b % (a // q)) in passing
            for q, _ in factorize(a).factors
        )
        if covered:
            continue
        certificates.append(
            CongruenceCertificate(
                ell,
                ArithmeticProgression(a, b),
                n_max,
                classify_progression(a, b),
                True,
            )
        )
    return certificates


def square_class_check(
    cert: CongruenceCertificate, u_max: int, n_max: int, table: HurwitzTable
) -> tuple[bool, list[tuple[int, int]]]:
    """Verify the congruence on a*Z + b*u^2 for every u <= u_max coprime to a.

    Returns (ok, failures) where failures lists (u, least counterexample).
    """
    a, b = cert.progression.a, cert.progression.b
    failures = []
    for u in range(1, u_max + 1):
        if gcd(u, a) != 1:
            continue
        ok, witness = verify_congruence(cert.ell, a, b * u * u % a, n_max, table)
        if not ok:
            failures.append((u, witness))
    return not failures, failures


def square_class_witness(m: int, a: int, b: int, p: int) -> int:
    """Smallest u coprime to a with m == b*u^2 (mod a).

    Preconditions follow the lifting argument that guarantees existence:
    p odd prime, r = ord_p(a/gcd(a,b)) >= 2, and m == b (mod a/p).
    """
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    r = ord_p(a // gcd(a, b), p)
    if r < 2:
        raise ValueError(f"need ord_{p}(a/gcd(a,b)) >= 2, got {r}")
    if (m - b) % (a // p):
        raise ValueError(f"need m == b (mod {a // p})")
    for u in range(1, a + 1):
        if gcd(u, a) == 1 and (m - b * u * u) % a == 0:
            return u
    raise ValueError(f"no witness u exists for m={m} on {a}Z+{b} at p={p}")


@dataclass(frozen=True)
class OrdBoundReport:
    """Valuations ord_p(a / gcd(a,b)) for the primes p dividing a, flagged
    against the maximality bounds (<= 3 at p = 2, <= 1 at odd p)."""

    orders: dict[int, int]
    violations: list[int]

    @property
    def within_bounds(self) -> bool:
        return not self.violations


def ord_bound_report(cert: CongruenceCertificate) -> OrdBoundReport:
    a, b = cert.progression.a, cert.progression.b
    quotient = a // gcd(a, b)
    orders = {}
    violations = []
    for p, _ in factorize(a).factors:
        e = ord_p(quotient, p)
        orders[p] = e
        if e > (3 if p == 2 else 1):
            violations.append(p)
    return OrdBoundReport(orders, violations)


def certificate_to_json(cert: CongruenceCertificate) -> str:
    """Schema: {"ell", "a", "b", "n_max", "class", "maximal"}."""
    payload = {
        "ell": cert.ell,
        "a": cert.progression.a,
        "b": cert.progression.b,
        "n_max": cert.n_max_checked,
        "class": cert.holomorphic_class.value,
        "maximal": cert.maximal_up_to_check,
    }
    return json.dumps(payload)
