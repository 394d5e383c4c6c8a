"""Incomplete poly-Bernoulli numbers from their Stirling-number sums.

For integer ``mu`` and a block-size variant ``v``::

    B_{n,v}^{(mu)} = sum_{k=0}^{n} (-1)^(n-k) * k! / (k+1)^mu * S_v(n, k)

With the classical variant this is Kaneko's formula for the poly-Bernoulli
numbers (``B_1^{(1)} = +1/2``). For ``mu <= 0`` every term is an integer, and
the residues of ``B_p`` modulo a prime ``p`` follow a simple pattern that
:func:`divisibility_scan` checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, NotPrimeError
from .stirling import stirling_row
from .variant import ASSOCIATED, RESTRICTED, Variant

__all__ = [
    "BernoulliValue",
    "ScanRow",
    "incomplete_poly_bernoulli",
    "incomplete_poly_bernoulli_value",
    "poly_bernoulli",
    "is_prime",
    "residue_mod_p",
    "predicted_residue",
    "divisibility_scan",
]


@dataclass(frozen=True)
class BernoulliValue:
    n: int
    mu: int
    variant: Variant
    value: Fraction


def _weight(k: int, mu: int):
    # k!/(k+1)^mu; integral when mu <= 0
    if mu <= 0:
        return math.factorial(k) * (k + 1) ** (-mu)
    return Fraction(math.factorial(k), (k + 1) ** mu)


def incomplete_poly_bernoulli(n: int, mu: int, variant: Variant) -> Fraction:
    """Exact ``B_{n,v}^{(mu)}`` for integer ``mu`` of either sign.

    >>> incomplete_poly_bernoulli(1, 1, Variant.classical())
    Fraction(1, 2)
    >>> incomplete_poly_bernoulli(2, 1, Variant.associated(2))
    Fraction(-1, 2)
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not isinstance(mu, int):
        raise TypeError("the exact path needs an integer mu; see ipb.analytic for complex orders")
    row = stirling_row(n, variant)
    total = 0
    for k, s in enumerate(row):
        if s:
            term = _weight(k, mu) * s
            total += term if (n - k) % 2 == 0 else -term
    return Fraction(total)


def incomplete_poly_bernoulli_value(n: int, mu: int, variant: Variant) -> BernoulliValue:
    return BernoulliValue(n, mu, variant, incomplete_poly_bernoulli(n, mu, variant))


def poly_bernoulli(n: int, mu: int) -> Fraction:
    """Kaneko's poly-Bernoulli number ``B_n^{(mu)}``."""
    return incomplete_poly_bernoulli(n, mu, Variant.classical())


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def residue_mod_p(p: int, mu: int, variant: Variant) -> int:
    """``B_{p,v}^{(mu)} mod p`` for ``mu <= 0``, from the exact integer value."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if mu > 0:
        raise DomainError("residues are only defined for mu <= 0, where the value is an integer")
    value = incomplete_poly_bernoulli(p, mu, variant)
    assert value.denominator == 1
    return value.numerator % p


def predicted_residue(p: int, mu: int, variant: Variant) -> int | None:
    """Residue the divisibility theorem predicts; ``None`` for the classical variant."""
    if variant.kind == RESTRICTED:
        return 0
    if variant.kind == ASSOCIATED:
        return pow(2, -mu, p)
    return None


@dataclass(frozen=True)
class ScanRow:
    p: int
    mu: int
    m: int
    variant: Variant
    residue: int
    predicted: int
    in_range: bool  # m < p, where the theorem applies
    passed: bool


def divisibility_scan(
    primes: Iterable[int],
    mu_range: Iterable[int],
    m_range: Iterable[int],
    kinds: Iterable[str] = (RESTRICTED, ASSOCIATED),
) -> list[ScanRow]:
    """Compare computed and predicted residues over a parameter grid.

    Rows with ``m >= p`` are still computed and flagged but sit outside the
    range where the prediction holds; nothing here raises on a mismatch.
    """
    primes = list(primes)
    mus = list(mu_range)
    ms = list(m_range)
    if any(mu > 0 for mu in mus):
        raise DomainError("the divisibility scan needs mu <= 0")
    rows = []
    for p in primes:
        for mu in mus:
            for m in ms:
                for kind in kinds:
                    v = Variant(kind, m)
                    r = residue_mod_p(p, mu, v)
                    want = predicted_residue(p, mu, v)
                    rows.append(ScanRow(p, mu, m, v, r, want, m < p, r == want))
    return rows
