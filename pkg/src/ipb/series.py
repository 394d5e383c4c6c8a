"""Exact truncated power series over the rationals.

A :class:`TruncatedEGF` stores ordinary coefficients ``c_0..c_N`` of
``sum c_j t^j``; the exponential-generating-function numbers are recovered
with :meth:`TruncatedEGF.egf_coefficients` (``j! * c_j``). Binary operations
truncate to the smaller of the two orders, so precision loss is always
visible in the ``order`` of the result.

The module also builds the two generating-function pipelines for the
incomplete poly-Bernoulli numbers: the polylogarithm quotient
``Li_mu(g)/g`` and the nested-integral form obtained by integrating
``mu - 1`` times from ``Li_1(g) = -log(1 - g)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonzeroConstantTermError, ValuationError
from .variant import ASSOCIATED, RESTRICTED, Variant

__all__ = [
    "TruncatedEGF",
    "em_series",
    "exp_series",
    "series_compose",
    "series_div",
    "series_log1p",
    "series_antiderivative",
    "series_derivative",
    "polylog_series",
    "variant_argument",
    "gf_incomplete_bernoulli",
    "gf_iterated_integral",
]

INFINITY = math.inf


class TruncatedEGF:
    """Power series ``c_0 + c_1 t + ... + c_N t^N`` known up to ``O(t^(N+1))``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least one coefficient")
        self._coeffs = coeffs

    @classmethod
    def zero(cls, order: int) -> TruncatedEGF:
        return cls([0] * (order + 1))

    @classmethod
    def monomial(cls, power: int, order: int, coeff=1) -> TruncatedEGF:
        c = [0] * (order + 1)
        if power <= order:
            c[power] = coeff
        return cls(c)

    @classmethod
    def from_egf(cls, values: Sequence) -> TruncatedEGF:
        """Series whose EGF numbers (``j! c_j``) are ``values``."""
        return cls(Fraction(v) / math.factorial(j) for j, v in enumerate(values))

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def __getitem__(self, j):
        return self._coeffs[j]

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, TruncatedEGF):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"TruncatedEGF({[str(c) for c in self._coeffs]})"

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` for the zero series."""
        for j, c in enumerate(self._coeffs):
            if c:
                return j
        return None

    def truncate(self, order: int) -> TruncatedEGF:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedEGF(self._coeffs[: order + 1])

    def egf_coefficients(self) -> list[Fraction]:
        return [c * math.factorial(j) for j, c in enumerate(self._coeffs)]

    def _coerce(self, other) -> TruncatedEGF:
        if isinstance(other, TruncatedEGF):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedEGF.monomial(0, self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return TruncatedEGF(a + b for a, b in zip(self._coeffs[: n + 1], other._coeffs))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedEGF(-c for c in self._coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedEGF(c * other for c in self._coeffs)
        if not isinstance(other, TruncatedEGF):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self._coeffs, other._coeffs
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(n + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return TruncatedEGF(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedEGF(c / other for c in self._coeffs)
        if not isinstance(other, TruncatedEGF):
            return NotImplemented
        return series_div(self, other)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = TruncatedEGF.monomial(0, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, inner: TruncatedEGF) -> TruncatedEGF:
        return series_compose(self, inner)


def exp_series(order: int, sign: int = 1) -> TruncatedEGF:
    return em_series(INFINITY, sign, order)


def em_series(m, sign: int, order: int) -> TruncatedEGF:
    """Partial exponential sum ``E_m(sign * t) = sum_{j<=m} (sign t)^j / j!``.

    ``m`` may be ``math.inf`` (the full exponential) or ``-1``, which by
    convention gives the zero series.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if order < 0:
        raise ValueError("order must be nonnegative")
    if m != INFINITY and (m < -1 or m != int(m)):
        raise ValueError(f"m must be an integer >= -1 or infinity, got {m!r}")
    top = order if m == INFINITY else min(int(m), order)
    c = [Fraction(0)] * (order + 1)
    for j in range(top + 1):
        c[j] = Fraction(sign**j, math.factorial(j))
    return TruncatedEGF(c)


def series_compose(f: TruncatedEGF, g: TruncatedEGF) -> TruncatedEGF:
    """``f(g(t))`` by Horner's rule; ``g`` must have zero constant term."""
    if g[0] != 0:
        raise NonzeroConstantTermError("inner series of a composition must vanish at 0")
    n = min(f.order, g.order)
    g = g.truncate(n)
    result = TruncatedEGF.monomial(0, n, f[n])
    for j in range(n - 1, -1, -1):
        result = result * g + f[j]
    return result


def series_div(f: TruncatedEGF, g: TruncatedEGF) -> TruncatedEGF:
    """``f / g``.

    If ``g`` has valuation ``v > 0`` the common factor ``t^v`` is cancelled
    first, which costs ``v`` orders of precision. Raises
    :class:`ValuationError` when ``f`` is not divisible by ``t^v``.
    """
    v = g.valuation()
    if v is None:
        raise ValuationError("division by the zero series")
    if v:
        vf = f.valuation()
        if vf is not None and vf < v:
            raise ValuationError(f"numerator valuation {vf} is below denominator valuation {v}")
        if f.order < v:
            raise ValuationError("numerator is too short to cancel the denominator's t-power")
        f = TruncatedEGF(f.coeffs[v:])
        g = TruncatedEGF(g.coeffs[v:])
    n = min(f.order, g.order)
    inv0 = 1 / g[0]
    q: list[Fraction] = []
    for j in range(n + 1):
        acc = f[j]
        for i in range(1, j + 1):
            if g[i]:
                acc -= g[i] * q[j - i]
        q.append(acc * inv0)
    return TruncatedEGF(q)


def series_log1p(u: TruncatedEGF) -> TruncatedEGF:
    """``log(1 + u)`` for ``u`` with zero constant term."""
    if u[0] != 0:
        raise NonzeroConstantTermError("log1p needs a series vanishing at 0")
    mercator = [Fraction(0)] + [Fraction((-1) ** (j - 1), j) for j in range(1, u.order + 1)]
    return series_compose(TruncatedEGF(mercator), u)


def series_antiderivative(f: TruncatedEGF) -> TruncatedEGF:
    return TruncatedEGF([Fraction(0)] + [c / (j + 1) for j, c in enumerate(f.coeffs)])


def series_derivative(f: TruncatedEGF) -> TruncatedEGF:
    if f.order == 0:
        return TruncatedEGF([0])
    return TruncatedEGF(c * j for j, c in enumerate(f.coeffs) if j)


def polylog_series(mu: int, order: int) -> TruncatedEGF:
    """``Li_mu(z) = sum_{j>=1} z^j / j^mu`` truncated at ``z^order``."""
    if mu < 1:
        raise ValueError("mu must be >= 1")
    return TruncatedEGF([Fraction(0)] + [Fraction(1, j**mu) for j in range(1, order + 1)])


def variant_argument(variant: Variant, order: int) -> TruncatedEGF:
    """Polylogarithm argument ``g(t)`` for the variant.

    restricted: ``1 - E_m(-t)``; associated: ``E_{m-1}(-t) - e^{-t}``;
    classical: ``1 - e^{-t}``.
    """
    if variant.kind == RESTRICTED:
        return 1 - em_series(variant.m, -1, order)
    if variant.kind == ASSOCIATED:
        return em_series(variant.m - 1, -1, order) - exp_series(order, -1)
    return 1 - exp_series(order, -1)


def _valuation_of(variant: Variant) -> int:
    return variant.m if variant.kind == ASSOCIATED else 1


def gf_incomplete_bernoulli(mu: int, variant: Variant, order: int) -> list[Fraction]:
    """``[B_0, ..., B_order]`` read off ``Li_mu(g(t)) / g(t)``."""
    if mu < 1:
        raise ValueError("mu must be >= 1")
    v = _valuation_of(variant)
    work = order + v
    g = variant_argument(variant, work)
    quotient = series_div(series_compose(polylog_series(mu, work), g), g)
    return quotient.truncate(order).egf_coefficients()


def gf_iterated_integral(mu: int, variant: Variant, order: int) -> list[Fraction]:
    """``[B_0, ..., B_order]`` from the nested-integral representation.

    Starts from ``-log(1 - g)`` (``-log E_m(-t)`` for restricted,
    ``-log(1 + e^{-t} - E_{m-1}(-t))`` for associated), then ``mu - 1``
    times multiplies by ``g'/g`` and integrates from 0, and finally divides
    by ``g``. The product with ``g'`` is formed before dividing by ``g`` so
    every division is by an exact power of ``t``.
    """
    if mu < 1:
        raise ValueError("mu must be >= 1")
    v = _valuation_of(variant)
    work = order + mu * v
    if variant.kind == RESTRICTED:
        m = variant.m
        g = 1 - em_series(m, -1, work)
        dg = em_series(m - 1, -1, work)
        inner = -series_log1p(em_series(m, -1, work) - 1)
    elif variant.kind == ASSOCIATED:
        m = variant.m
        g = em_series(m - 1, -1, work) - exp_series(work, -1)
        dg = exp_series(work, -1) - em_series(m - 2, -1, work)
        inner = -series_log1p(exp_series(work, -1) - em_series(m - 1, -1, work))
    else:
        g = 1 - exp_series(work, -1)
        dg = exp_series(work, -1)
        inner = -series_log1p(exp_series(work, -1) - 1)
    f = inner
    for _ in range(mu - 1):
        f = series_antiderivative(series_div(dg * f, g))
    result = series_div(f, g)
    if result.order < order:
        raise AssertionError("insufficient working order")  # pragma: no cover
    return result.truncate(order).egf_coefficients()

