"""Stirling numbers of the second kind with bounded block sizes.

Three regimes are supported (see :class:`ipb.variant.Variant`):

* classical ``S(n, k)``,
* restricted ``S(n, k)_{<=m}``: every block has at most ``m`` elements,
* associated ``S(n, k)_{>=m}``: every block has at least ``m`` elements.

Values are exact Python integers. Triangles are built bottom-up and memoized
per (variant, recurrence rule); the cache is read-only once a triangle is
published, so concurrent callers always see identical values.

All functions return 0 outside the support instead of raising, and every
regime has ``S(0, 0) = 1``.
"""

from __future__ import annotations

import os
import threading
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import InputTooLargeError
from .variant import ASSOCIATED, CLASSICAL, RESTRICTED, Variant

__all__ = [
    "StirlingTable",
    "stirling2",
    "stirling2_restricted",
    "stirling2_associated",
    "stirling_value",
    "stirling_row",
    "stirling_triangle",
    "partition_count_oracle",
    "DEFAULT_ENUM_CAP",
]

DEFAULT_ENUM_CAP = 16

# Triangles are grown in chunks so that a sweep over n reuses one build.
_CHUNK = 32

# rule name -> recurrence; "sum" convolves over the size of the block holding
# the new element, "linear" is the k*S(n,k) + correction form.
DEFAULT_RULE = {CLASSICAL: "linear", RESTRICTED: "sum", ASSOCIATED: "linear"}
RULES = ("sum", "linear")


@dataclass(frozen=True)
class StirlingTable:
    variant: Variant
    n_max: int
    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, nk: tuple[int, int]) -> int:
        n, k = nk
        if n < 0 or k < 0 or n > self.n_max:
            raise IndexError(nk)
        row = self.rows[n]
        return row[k] if k < len(row) else 0


def _at(row, k):
    return row[k] if 0 <= k < len(row) else 0


def _build(kind: str, m: int | None, rule: str, size: int) -> tuple[tuple[int, ...], ...]:
    rows: list[list[int]] = [[1]]
    for n in range(size):
        prev = rows[n]
        new = [0] * (n + 2)
        for k in range(1, n + 2):
            if rule == "linear":
                v = k * _at(prev, k)
                if kind == CLASSICAL:
                    v += _at(prev, k - 1)
                elif kind == RESTRICTED:
                    v += _at(prev, k - 1)
                    if n >= m:
                        v -= comb(n, m) * _at(rows[n - m], k - 1)
                else:
                    if n - m + 1 >= 0:
                        v += comb(n, m - 1) * _at(rows[n - m + 1], k - 1)
            else:
                if kind == RESTRICTED:
                    lo, hi = 0, min(m - 1, n)
                elif kind == ASSOCIATED:
                    lo, hi = m - 1, n
                else:
                    lo, hi = 0, n
                v = 0
                for i in range(lo, hi + 1):
                    v += comb(n, i) * _at(rows[n - i], k - 1)
            new[k] = v
        rows.append(new)
    return tuple(tuple(r) for r in rows)


_lock = threading.Lock()
_tables: dict[tuple, tuple[tuple[int, ...], ...]] = {}


def _rows(kind: str, m: int | None, rule: str, n: int) -> tuple[tuple[int, ...], ...]:
    # S(n, k)_{<=m} does not depend on m once m >= n, so big m share a table.
    key_m = m
    size = (n // _CHUNK + 1) * _CHUNK
    if kind == RESTRICTED and m >= size:
        key_m = size
    key = (kind, key_m, rule)
    rows = _tables.get(key)
    if rows is None or len(rows) <= n:
        built = _build(kind, key_m, rule, size)
        with _lock:
            current = _tables.get(key)
            if current is None or len(current) < len(built):
                _tables[key] = built
            rows = _tables[key]
    return rows


def _value(n: int, k: int, kind: str, m: int | None, rule: str | None = None) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    rule = rule or DEFAULT_RULE[kind]
    if rule not in RULES:
        raise ValueError(f"unknown recurrence rule {rule!r}")
    return _rows(kind, m, rule, n)[n][k]


def stirling2(n: int, k: int) -> int:
    """Classical Stirling number of the second kind ``S(n, k)``.

    >>> stirling2(4, 2)
    7
    """
    return _value(n, k, CLASSICAL, None)


def stirling2_restricted(n: int, k: int, m: int, rule: str | None = None) -> int:
    """Number of k-block partitions of an n-set with every block of size <= m.

    ``rule="sum"`` (default) convolves over the size of the block containing
    the last element; ``rule="linear"`` uses the inclusion-exclusion form
    ``k S(n,k) + S(n,k-1) - C(n,m) S(n-m,k-1)``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    return _value(n, k, RESTRICTED, m, rule)


def stirling2_associated(n: int, k: int, m: int, rule: str | None = None) -> int:
    """Number of k-block partitions of an n-set with every block of size >= m.

    ``rule="linear"`` (default) is ``k S(n,k) + C(n,m-1) S(n-m+1,k-1)``;
    ``rule="sum"`` convolves over the size of the block containing the last
    element.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    return _value(n, k, ASSOCIATED, m, rule)


def stirling_value(n: int, k: int, variant: Variant, rule: str | None = None) -> int:
    return _value(n, k, variant.kind, variant.m, rule)


def stirling_row(n: int, variant: Variant, rule: str | None = None) -> list[int]:
    """``[S(n,0), ..., S(n,n)]`` for the given variant."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    rule = rule or DEFAULT_RULE[variant.kind]
    return list(_rows(variant.kind, variant.m, rule, n)[n])


def stirling_triangle(n_max: int, variant: Variant, rule: str | None = None) -> StirlingTable:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    rule = rule or DEFAULT_RULE[variant.kind]
    rows = _rows(variant.kind, variant.m, rule, n_max)[: n_max + 1]
    return StirlingTable(variant, n_max, rows)


# ---------------------------------------------------------------------------
# brute-force oracle


def _enum_cap() -> int:
    raw = os.environ.get("IPB_ENUM_CAP")
    return int(raw) if raw else DEFAULT_ENUM_CAP


@lru_cache(maxsize=None)
def _shape_histogram(n: int) -> Counter:
    """Walk every set partition of {0..n-1}; tally (blocks, min size, max size)."""
    hist: Counter = Counter()
    if n == 0:
        hist[(0, 0, 0)] = 1
        return hist
    sizes = [1]

    def place(i):
        if i == n:
            hist[(len(sizes), min(sizes), max(sizes))] += 1
            return
        for j in range(len(sizes)):
            sizes[j] += 1
            place(i + 1)
            sizes[j] -= 1
        sizes.append(1)
        place(i + 1)
        sizes.pop()

    place(1)
    return hist


def partition_count_oracle(
    n: int,
    k: int,
    min_size: int = 1,
    max_size: int | None = None,
    *,
    cap: int | None = None,
) -> int:
    """Count k-block partitions of an n-set with block sizes in [min_size, max_size].

    Exhaustive enumeration of all ``Bell(n)`` set partitions; ``max_size=None``
    means unbounded. Independent of the recurrences above and meant only for
    small n. Raises :class:`InputTooLargeError` when ``n`` exceeds ``cap``
    (default 16, or ``$IPB_ENUM_CAP``).
    """
    cap = _enum_cap() if cap is None else cap
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if n > cap:
        raise InputTooLargeError(f"n={n} exceeds the enumeration cap {cap}")
    if min_size < 1:
        raise ValueError("min_size must be >= 1")
    if max_size is not None and min_size > max_size:
        raise ValueError("min_size must not exceed max_size")
    total = 0
    for (blocks, lo, hi), count in _shape_histogram(n).items():
        if blocks != k:
            continue
        if blocks and (lo < min_size or (max_size is not None and hi > max_size)):
            continue
        total += count
    return total
