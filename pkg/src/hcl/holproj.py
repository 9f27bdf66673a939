"""Closed-form holomorphic-projection coefficients and the subprogression
construction.

Two exact routes to the non-holomorphic part of the projected product are
implemented: `proj_theta_product` enumerates integer solutions of
m^2 - mt^2 = a*n (the sign-enumeration form), while `nonhol_coefficient`
evaluates the factorization double sum over a*n = d1*d2 with congruence
conditions mod a.  `q_subset_decomposition` regroups the latter by subsets of
the prime divisors of a.  All values are exact integers or rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .arith import (
    Factorization,
    divisors,
    factorize,
    is_prime,
    next_prime_in_class,
    ord_p,
    sqrt_mod,
)
from .hurwitz import HurwitzTable
from .qseries import eisenstein_hol, theta_series, u_operator

__all__ = [
    "proj_theta_product",
    "nonhol_coefficient",
    "QSubsetDecomposition",
    "q_subset_decomposition",
    "SubprogressionWitness",
    "subprogression_conditions",
    "subprogression_construct",
    "DistinguishedPrimes",
    "find_distinguished_primes",
    "exact_projection_coefficient",
]

PRIME_SEARCH_CAP = 10**7


def proj_theta_product(a: int, beta_tilde: int, beta: int, n: int) -> int:
    """Coefficient at e(n*tau) of the normalized projection of the product of
    the completed theta component theta*_{a,beta_tilde} with theta_{a,beta}:

        -4 * ( [beta_tilde == 0 (mod a)] * sum |m|  over m != 0, m == beta (mod a), m^2 = a*n
               + sum (m^2 - mt^2)/(|m| + |mt|)  over mt != 0, m == beta, mt == beta_tilde (mod a),
                                                      m^2 - mt^2 = a*n )

    Solutions (m, mt) are enumerated through factorizations a*n = e*f with
    e == f (mod 2): m = +-(e+f)/2, mt = +-(f-e)/2, all four sign choices,
    filtered by the congruences.
    """
    if a < 1 or n < 0:
        raise ValueError("need a >= 1 and n >= 0")
    an = a * n
    total = 0
    if beta_tilde % a == 0 and an > 0:
        r = isqrt(an)
        if r * r == an:
            for m in (r, -r):
                if (m - beta) % a == 0:
                    total += r
    if an > 0:
        for e in divisors(an):
            f = an // e
            if e > f or (e - f) % 2:
                continue
            m0, mt0 = (e + f) // 2, (f - e) // 2
            if mt0 == 0:
                continue
            # each admissible sign pair contributes an / (|m| + |mt|) = e
            for m in (m0, -m0):
                for mt in (mt0, -mt0):
                    if (m - beta) % a == 0 and (mt - beta_tilde) % a == 0:
                        total += e
    return -4 * total


def _root_classes(a: int, b: int) -> list[int]:
    roots = sqrt_mod(-b, a)
    if not roots:
        raise ValueError(f"-{b} is not a square modulo {a}")
    return roots


def _factor_pair_sum(a: int, beta: int, n: int, roots: list[int], an_fact: Factorization) -> int:
    total = 0
    divs = divisors(an_fact)
    for bt in roots:
        r1 = (beta + bt) % a
        r2 = (beta - bt) % a
        for d1 in divs:
            d2 = an_fact.n // d1
            if d1 % a == r1 and d2 % a == r2 and d1 != d2:
                total += min(d1, d2)
    return total


def nonhol_coefficient(a: int, b: int, beta: int, n: int) -> int:
    """Factorization form of the projected-product coefficient at e(n*tau):

        -1/2 * sum over beta_tilde^2 == -b (mod a)
               sum over a*n = d1*d2, d1,d2 > 0,
                        d1 == beta + beta_tilde, d2 == beta - beta_tilde (mod a)
               of  d1*[d1 < d2] + d2*[d2 < d1]

    Perfect squares a*n are rejected: the strict inequalities drop d1 = d2 and
    the derivation assumes that case away.
    """
    if a < 1 or n < 1:
        raise ValueError("need a >= 1 and n >= 1")
    if (beta * beta + b) % a:
        raise ValueError(f"beta^2 must be == -b (mod {a})")
    an = a * n
    r = isqrt(an)
    if r * r == an:
        raise ValueError(f"a*n = {an} is a perfect square")
    roots = _root_classes(a, b)
    total = _factor_pair_sum(a, beta, n, roots, factorize(an))
    if total % 2:
        raise ArithmeticError("factorization sum must be even")
    return -(total // 2)


@dataclass(frozen=True)
class QSubsetDecomposition:
    """Per-subset split of the factorization sum over the prime divisors of a.

    contributions maps each subset Q of the primes dividing a to the inner
    factorization sum attached to the residue beta_tilde_Q which is beta at
    the primes in Q and -beta elsewhere.  total = -1/2 * sum of contributions.
    """

    a: int
    b: int
    beta: int
    n: int
    contributions: dict[frozenset, int]

    @property
    def total(self) -> int:
        s = sum(self.contributions.values())
        if s % 2:
            raise ArithmeticError("subset contributions must sum to an even value")
        return -(s // 2)


def q_subset_decomposition(a: int, b: int, beta: int, n: int) -> QSubsetDecomposition:
    """Split nonhol_coefficient by subsets Q of the primes dividing a.

    Requires the square roots of -b modulo every prime power a_q to be exactly
    the two classes +-beta; the subsets are then in bijection with the roots
    modulo a through the Chinese Remainder Theorem.
    """
    if a < 1 or n < 1:
        raise ValueError("need a >= 1 and n >= 1")
    if (beta * beta + b) % a:
        raise ValueError(f"beta^2 must be == -b (mod {a})")
    an = a * n
    r = isqrt(an)
    if r * r == an:
        raise ValueError(f"a*n = {an} is a perfect square")
    a_fact = factorize(a)
    prime_powers = {p: p**e for p, e in a_fact.factors}
    for p, pe in prime_powers.items():
        expected = sorted({beta % pe, (-beta) % pe})
        local = sqrt_mod(-b, pe)
        if local != expected or len(expected) != 2:
            raise ValueError(
                f"square-root classes of -{b} mod {pe} are {local}, "
                f"not the two distinct classes +-{beta}; subset decomposition undefined"
            )
    primes = sorted(prime_powers)
    an_fact = factorize(an)
    contributions: dict[frozenset, int] = {}
    for mask in range(1 << len(primes)):
        subset = frozenset(p for i, p in enumerate(primes) if mask >> i & 1)
        residue, modulus = 0, 1
        for p in primes:
            pe = prime_powers[p]
            target = beta % pe if p in subset else (-beta) % pe
            residue += modulus * ((target - residue) * pow(modulus, -1, pe) % pe)
            modulus *= pe
        contributions[subset] = _factor_pair_sum(a, beta, n, [residue], an_fact)
    return QSubsetDecomposition(a, b, beta, n, contributions)


@dataclass(frozen=True)
class SubprogressionWitness:
    """Progression a*Z + b refining a_tilde*Z + b_tilde, with -b == beta^2 (mod a),
    every gcd(a_q, 2*beta) a proper divisor of the p-part a_q, and a prime
    p_big | a with a < p_big^2 and 0 <= 2*beta < p_big."""

    a_tilde: int
    b_tilde: int
    beta: int
    a: int
    b: int
    p_big: int


def subprogression_conditions(w: SubprogressionWitness) -> dict[str, bool]:
    """Evaluate the four defining conditions of a witness."""
    divides = w.a % w.a_tilde == 0 and (w.b - w.b_tilde) % w.a_tilde == 0
    square = (w.b + w.beta * w.beta) % w.a == 0
    proper = all(gcd(p**e, 2 * w.beta) != p**e for p, e in factorize(w.a).factors)
    large = (
        w.a % w.p_big == 0
        and is_prime(w.p_big)
        and w.a < w.p_big**2
        and 0 <= 2 * w.beta < w.p_big
    )
    return {
        "refines_input": divides,
        "minus_b_is_square": square,
        "proper_local_gcds": proper,
        "large_prime": large,
    }


def subprogression_construct(a_tilde: int, b_tilde: int, beta: int) -> SubprogressionWitness:
    """Build a witness from (a_tilde, b_tilde, beta) with -b_tilde == beta^2 (mod a_tilde).

    Sets a' = prod over primes q | a_tilde of q^max(ord_q(a_tilde), ord_q(2*beta)+1),
    then multiplies by the first prime p > max(a', 2*beta) for which all four
    conditions verify, and takes b = -beta^2 mod a.  beta is normalized to its
    least nonnegative residue mod a_tilde first; beta == 0 (mod a_tilde) admits
    no witness (the gcd condition fails at p) and is rejected.
    """
    if a_tilde < 1:
        raise ValueError("a_tilde must be >= 1")
    beta %= a_tilde
    if (b_tilde + beta * beta) % a_tilde:
        raise ValueError(f"-b_tilde must be == beta^2 (mod {a_tilde})")
    if beta == 0:
        raise ValueError(
            "beta == 0 (mod a_tilde): gcd(p, 2*beta) = p is never a proper divisor"
        )
    a_prime = 1
    for q, e in factorize(a_tilde).factors:
        a_prime *= q ** max(e, ord_p(2 * beta, q) + 1)
    lower = max(a_prime, 2 * beta)
    p = lower
    for _ in range(64):
        p = next_prime_in_class(p, 0, 1, cap=PRIME_SEARCH_CAP)
        a = a_prime * p
        b = (-beta * beta) % a
        w = SubprogressionWitness(a_tilde, b_tilde, beta, a, b, p)
        if all(subprogression_conditions(w).values()):
            return w
    raise ValueError(f"no admissible prime found for ({a_tilde}, {b_tilde}, {beta})")


@dataclass(frozen=True)
class DistinguishedPrimes:
    """Primes attached to a witness: a'*p == 2*beta (mod a) with p > a/a', and
    p' == 1 (mod a).  When 2*beta == a' (mod a) no p is needed and p' > a/a';
    otherwise p' > p*a/a'."""

    a_prime: int
    degenerate: bool
    p: int | None
    p_prime: int


def find_distinguished_primes(
    w: SubprogressionWitness, cap: int = PRIME_SEARCH_CAP
) -> DistinguishedPrimes:
    """Smallest qualifying primes for a valid witness (deterministic)."""
    conditions = subprogression_conditions(w)
    if not all(conditions.values()):
        failed = [k for k, v in conditions.items() if not v]
        raise ValueError(f"witness fails conditions: {failed}")
    a, beta = w.a, w.beta
    a_prime = gcd(a, 2 * beta)
    if (2 * beta - a_prime) % a == 0:
        p_prime = next_prime_in_class(a // a_prime, 1, a, cap=cap)
        return DistinguishedPrimes(a_prime, True, None, p_prime)
    # a'*p == 2*beta (mod a)  <=>  p == (2*beta/a') (mod a/a')
    residue = (2 * beta // a_prime) % (a // a_prime)
    p = next_prime_in_class(a // a_prime, residue, a // a_prime, cap=cap)
    p_prime = next_prime_in_class(p * a // a_prime, 1, a, cap=cap)
    return DistinguishedPrimes(a_prime, False, p, p_prime)


def exact_projection_coefficient(
    a: int, b: int, beta: int, n: int, table: HurwitzTable
) -> Fraction:
    """Coefficient at e(n*tau) of the full projected product: the holomorphic
    part of the sieved class number series times (theta_{a,beta} + theta_{a,-beta}),
    plus 1/16 of the completed-part contributions from proj_theta_product over
    all square roots beta_tilde of -b mod a."""
    if a < 1 or n < 0:
        raise ValueError("need a >= 1 and n >= 0")
    if (beta * beta + b) % a:
        raise ValueError(f"beta^2 must be == -b (mod {a})")
    if a * n > table.n_max:
        raise ValueError(f"table covers D <= {table.n_max}, need {a * n}")
    bound = Fraction(a * n + 1, a)
    sieved = u_operator(eisenstein_hol(a * n + 1, table), a, b)
    thetas = theta_series(a, beta, bound) + theta_series(a, -beta, bound)
    hol = (sieved * thetas).coefficient(n)
    completed = 0
    for bt in sqrt_mod(-b, a):
        completed += proj_theta_product(a, bt, beta, n)
        completed += proj_theta_product(a, bt, -beta, n)
    return hol + Fraction(completed, 16)
