import sys
from math import gcd
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hcl.holproj import find_distinguished_primes, subprogression_construct
from hcl.hurwitz import build_table


@pytest.fixture(scope="session")
def table_1m():
    return build_table(10**6)


@pytest.fixture(scope="session")
def table_small():
    return build_table(3 * 10**5)


def generate_witnesses(count=50):
    """Deterministic generic witnesses whose square-root classes mod every
    prime power of a are exactly +-beta, paired with their primes.

    The draw keeps ord_2(a_tilde) <= 2 and beta coprime to a_tilde (beta >= 3
    when a_tilde is even) so the subset decomposition applies and the
    two-beta case split lands on the generic branch.
    """
    out = []
    seen = set()
    for a_tilde in (3, 4, 5, 6, 7, 9, 10, 11, 12, 13, 14, 15, 17, 18, 19, 20, 21, 22):
        for beta in range(1, a_tilde):
            if len(out) >= count:
                return out
            if gcd(beta, a_tilde) != 1:
                continue
            if a_tilde % 2 == 0 and beta < 3:
                continue
            b_tilde = (-beta * beta) % a_tilde
            w = subprogression_construct(a_tilde, b_tilde, beta)
            key = (w.a, w.b, w.beta)
            if key in seen:
                continue
            seen.add(key)
            try:
                primes = find_distinguished_primes(w)
            except ValueError:
                continue
            if primes.degenerate:
                continue
            out.append((w, primes))
    return out


@pytest.fixture(scope="session")
def generic_witnesses():
    witnesses = generate_witnesses(50)
    assert len(witnesses) == 50
    return witnesses
