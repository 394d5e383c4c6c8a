"""Arbitrary-precision evaluation: Lambert W, polylogarithm, zeta, and the
Lambert-W series for zeta built from associated poly-Bernoulli numbers.

Every function takes its working precision in bits as an argument and runs in
a private :class:`mpmath.MPContext`, so nothing touches ``mpmath.mp`` and the
functions are safe to call from several threads at once. Returned numbers are
``mpf``/``mpc`` instances at the requested precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath

from .errors import DomainError, NoConvergenceError
from .stirling import stirling_row
from .variant import Variant

__all__ = [
    "DEFAULT_PRECISION",
    "ZetaSeriesRun",
    "lambert_w",
    "lambert_branch_index",
    "polylog_numeric",
    "zeta_reference",
    "incomplete_bernoulli_numeric",
    "zeta_series",
]

DEFAULT_PRECISION = 128
MIN_PRECISION = 64
_GUARD = 32


def _context(precision: int) -> mpmath.MPContext:
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} bits")
    ctx = mpmath.MPContext()
    ctx.prec = precision
    return ctx


def _round(value, precision: int):
    return _context(precision).convert(value)


# ---------------------------------------------------------------------------
# Lambert W


def lambert_branch_index(w, a, precision: int = DEFAULT_PRECISION) -> int:
    """Branch ``k`` with ``w + log(w) = log(a) + 2*pi*i*k`` (principal logs).

    Ambiguous on the branch cuts themselves; callers should not rely on it
    when both ``a`` and ``w`` are real.
    """
    ctx = _context(precision)
    w, a = ctx.convert(w), ctx.convert(a)
    k = (w + ctx.log(w) - ctx.log(a)) / (2j * ctx.pi)
    return int(ctx.nint(k.real))


def _initial_guess(ctx, k: int, a):
    if a == -1 and k in (0, -1):
        seed = ctx.mpc(-0.3, 1.3)
        return seed if k == 0 else ctx.conj(seed)
    near_real = a.real < 0 and ((k == -1 and a.imag >= 0) or (k == 1 and a.imag < 0))
    if (k == 0 or near_real) and abs(a + ctx.exp(-1)) < 0.3:
        # series about the branch point -1/e; W_0 meets W_-1 above the axis, W_1 below
        p = ctx.sqrt(2 * (ctx.e * a + 1))
        if k != 0:
            p = -p
        return -1 + p - p**2 / 3 + 11 * p**3 / 72
    if near_real:
        # the branch that is real on (-1/e, 0) continues across the negative axis
        L1 = ctx.log(-a)
        return L1 - ctx.log(-L1)
    if k == 0:
        if abs(a) < 0.5:
            return a - a**2
        if abs(a) < 3 and abs(1 + a) > 0.3:
            return ctx.log(1 + a)
    L1 = ctx.log(a) + 2j * ctx.pi * k
    L2 = ctx.log(L1)
    return L1 - L2 + L2 / L1


def lambert_w(k: int, a, precision: int = DEFAULT_PRECISION, max_iter: int = 200):
    """Branch ``k`` of the Lambert W function at ``a`` (``w * exp(w) = a``).

    Halley iteration from a branch-specific starting point. The result
    satisfies ``|w e^w - a| < 2^(-precision/2) * (1 + |a|)``; otherwise
    :class:`NoConvergenceError` is raised.
    """
    ctx = _context(precision + _GUARD)
    a = ctx.convert(a)
    if a == 0:
        raise DomainError("lambert_w is only supported for a != 0")
    w = ctx.mpc(_initial_guess(ctx, k, a))
    eps = ctx.ldexp(1, -(precision + _GUARD - 8))
    for _ in range(max_iter):
        ew = ctx.exp(w)
        f = w * ew - a
        w1 = w + 1
        if w1 == 0:
            break
        dw = f / (ew * w1 - (w + 2) * f / (2 * w1))
        w -= dw
        if abs(dw) <= eps * (1 + abs(w)):
            break
    else:
        raise NoConvergenceError(f"Halley iteration for W_{k}({a}) did not converge in {max_iter} steps")

    residual = abs(w * ctx.exp(w) - a)
    if residual >= ctx.ldexp(1, -precision // 2) * (1 + abs(a)):
        raise NoConvergenceError(f"W_{k}({a}) residual {residual} too large")
    if abs(w.imag) > ctx.ldexp(1, -precision // 2):
        found = lambert_branch_index(w, a, precision + _GUARD)
        if found != k:
            raise NoConvergenceError(f"iteration for W_{k}({a}) landed on branch {found}")
    if w.imag == 0:
        w = ctx.mpf(w.real)
    return _round(w, precision)


# ---------------------------------------------------------------------------
# polylogarithm and zeta


def _default_tol(ctx):
    return ctx.ldexp(1, -ctx.prec)


def polylog_numeric(s, z, tol=None, precision: int = DEFAULT_PRECISION):
    """``Li_s(z) = sum_{j>=1} z^j / j^s`` by direct summation.

    For ``|z| < 1`` the sum stops once a geometric bound on the tail is below
    ``tol``. On ``|z| = 1`` (requires ``Re(s) > 1``) the tail bound is
    ``M^(1-Re s)/(Re s - 1)``, which is slow for tight tolerances; ``z = 1``
    is handed to :func:`zeta_reference`.
    """
    ctx = _context(precision + _GUARD)
    s, z = ctx.convert(s), ctx.convert(z)
    tol = _default_tol(_context(precision)) if tol is None else ctx.convert(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    r = abs(z)
    sigma = ctx.re(s)
    if z == 0:
        return _round(ctx.zero, precision)
    if r > 1:
        raise DomainError("polylog_numeric needs |z| <= 1")
    if r == 1:
        if sigma <= 1:
            raise DomainError("on |z| = 1 the series needs Re(s) > 1")
        if z == 1:
            return zeta_reference(s, tol, precision)
        M = int(ctx.ceil((tol * (sigma - 1)) ** (-1 / (sigma - 1)))) + 1
        total = ctx.fsum(z**j * ctx.power(j, -s) for j in range(1, M + 1))
        return _round(total, precision)

    total = ctx.zero
    zj = ctx.one
    j = 0
    while True:
        j += 1
        zj *= z
        total += zj * ctx.power(j, -s)
        # tail after term j: next term magnitude times 1/(1-q), q bounds the term ratio
        nxt = r ** (j + 1) * ctx.power(j + 1, -sigma)
        q = r * max(ctx.one, ctx.power(1 + ctx.one / (j + 1), -sigma))
        if q < 1 and nxt / (1 - q) <= tol:
            break
    return _round(total, precision)


def zeta_reference(s, tol=None, precision: int = DEFAULT_PRECISION):
    """Riemann zeta for ``Re(s) > 1`` by Euler-Maclaurin summation.

    ``sum_{n<M} n^-s + M^(1-s)/(s-1) + M^-s/2`` plus Bernoulli corrections
    ``B_2j/(2j)! * s(s+1)...(s+2j-2) * M^(1-s-2j)`` until the next correction
    drops below ``tol``. ``M`` doubles if the corrections start to grow first.
    """
    outer = _context(precision)
    tol = _default_tol(outer) if tol is None else outer.convert(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    bits = max(precision, int(-outer.log(tol, 2)) + 1) + _GUARD
    ctx = _context(bits)
    s = ctx.convert(s)
    if ctx.re(s) <= 1:
        raise DomainError("zeta_reference needs Re(s) > 1")

    M = max(8, int(abs(s)) + 8)
    while True:
        head = ctx.fsum(ctx.power(n, -s) for n in range(1, M))
        total = head + ctx.power(M, 1 - s) / (s - 1) + ctx.power(M, -s) / 2
        rising = s  # s(s+1)...(s+2j-2)
        Mpow = ctx.power(M, -s - 1)  # M^(1-s-2j)
        last = None
        converged = False
        for j in range(1, 4 * bits):
            term = ctx.bernoulli(2 * j) / ctx.factorial(2 * j) * rising * Mpow
            size = abs(term)
            if last is not None and size > last:
                break
            total += term
            last = size
            rising *= (s + 2 * j - 1) * (s + 2 * j)
            Mpow /= M * M
            if size <= tol / 4:
                converged = True
                break
        if converged:
            return _round(total, precision)
        M *= 2


# ---------------------------------------------------------------------------
# incomplete poly-Bernoulli numbers of complex order


def incomplete_bernoulli_numeric(n: int, s, variant: Variant, precision: int = DEFAULT_PRECISION):
    """``sum_k (-1)^(n-k) k! (k+1)^(-s) S_v(n,k)`` for complex ``s``.

    The alternating sum cancels heavily for large ``n``: the largest term can
    exceed the result by hundreds of bits. The working precision is raised
    by the measured cancellation so the result keeps about ``precision``
    correct bits (relative), except when the exact value is zero.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    row = stirling_row(n, variant)
    weights = [math.factorial(k) * c for k, c in enumerate(row)]
    ctx0 = _context(precision)
    s0 = ctx0.convert(s)
    neg_sigma = max(0, -int(ctx0.floor(ctx0.re(s0))))
    top = max((w.bit_length() + neg_sigma * (k + 1).bit_length() for k, w in enumerate(weights) if w), default=0)

    guard = top + _GUARD
    for _ in range(3):
        ctx = _context(precision + guard)
        sv = ctx.convert(s)
        total = ctx.zero
        for k, wk in enumerate(weights):
            if not wk:
                continue
            term = ctx.mpf(wk) * ctx.exp(-sv * ctx.log(k + 1))
            total += term if (n - k) % 2 == 0 else -term
        if total == 0:
            break
        size = int(ctx.floor(ctx.log(abs(total), 2)))
        lost = top - size
        if lost + _GUARD <= guard:
            break
        guard = lost + 2 * _GUARD
    return _round(total, precision)


# ---------------------------------------------------------------------------
# zeta series through W_k(-1)


@dataclass
class ZetaSeriesRun:
    """Partial sums of ``sum_n B_{n,>=2}^{(s)} W_k(-1)^n / n!``.

    ``est_error`` is the heuristic ``|P_N - P_(N-1)|``, not a bound.
    """

    s: object
    branch: int
    n_terms: int
    precision: int
    w: object
    summands: list = field(repr=False)
    terms: list = field(repr=False)
    final: object = None
    est_error: object = None

    def __post_init__(self):
        if len(self.terms) != self.n_terms + 1:
            raise ValueError("terms must hold N+1 partial sums")
        self.final = self.terms[-1]


def zeta_series(s, branch: int, N: int, precision: int = DEFAULT_PRECISION) -> ZetaSeriesRun:
    """Evaluate the series for ``zeta(s)`` at ``t = -W_branch(-1)``, ``n = 0..N``."""
    ctx = _context(precision + _GUARD)
    sv = ctx.convert(s)
    if ctx.re(sv) <= 1:
        raise DomainError("the zeta series needs Re(s) > 1")
    if branch not in (0, -1):
        raise DomainError("only branches 0 and -1 lie in the convergence domain")
    if N < 0:
        raise ValueError("N must be nonnegative")

    w = lambert_w(branch, -1, precision + _GUARD)
    variant = Variant.associated(2)
    summands, partial = [], []
    total = ctx.zero
    wn = ctx.one
    nfact = 1
    for n in range(N + 1):
        if n:
            wn *= w
            nfact *= n
        b = incomplete_bernoulli_numeric(n, sv, variant, precision + _GUARD)
        term = b * wn / nfact
        total += term
        summands.append(_round(term, precision))
        partial.append(_round(total, precision))
    est = abs(partial[-1] - partial[-2]) if N else abs(partial[0])
    return ZetaSeriesRun(
        s=_round(sv, precision),
        branch=branch,
        n_terms=N,
        precision=precision,
        w=_round(w, precision),
        summands=summands,
        terms=partial,
        est_error=_round(est, precision),
    )
