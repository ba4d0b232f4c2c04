"""Exact combinatorial coefficients: binomials, signed Stirling numbers of the
first kind, fractional-binomial series terms, and integer compositions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

_MAX_STIRLING = 30


def binomial(n: int, k: int) -> int:
    """C(n, k) with the usual convention C(n, k) = 0 for k > n or k < 0."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` nonnegative integers summing to `total`.

    Deterministic lexicographic order. `parts == 0` yields the empty tuple
    exactly when `total == 0`.
    """
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class StirlingTable:
    """Triangular table of signed Stirling numbers of the first kind.

    Convention fixed by the falling factorial: x(x-1)...(x-k+1) = sum_l S[k][l] x^l.
    Values are exact Python integers.
    """

    max_n: int
    values: tuple[tuple[int, ...], ...]

    def value(self, k: int, l: int) -> int:
        if k < 0 or k > self.max_n:
            raise IndexError(f"row {k} outside table (max {self.max_n})")
        if l < 0 or l > k:
            return 0
        return self.values[k][l]


def stirling_first_kind(max_n: int) -> StirlingTable:
    """Build the signed first-kind Stirling triangle up to row `max_n`.

    Rows follow S[k+1][l] = S[k][l-1] - k*S[k][l]; capped at 30 so every
    entry stays well inside exact integer range.
    """
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    if max_n > _MAX_STIRLING:
        raise ValueError(f"max_n={max_n} exceeds the exact-width cap {_MAX_STIRLING}")
    rows = [(1,)]
    for k in range(max_n):
        prev = rows[k]
        row = []
        for l in range(k + 2):
            left = prev[l - 1] if 1 <= l <= k + 1 else 0
            right = prev[l] if l <= k else 0
            row.append(left - k * right)
        rows.append(tuple(row))
    return StirlingTable(max_n=max_n, values=tuple(rows))


@dataclass(frozen=True)
class SeriesCoefficients:
    """Taylor coefficients b_n of (1 - z)^(1/p) around z = 0.

    b_0 = 1 and every later term is negative; the sequence is produced by the
    stable ratio recurrence b_{n+1} = b_n (n - 1/p) / (n + 1).
    """

    p: int
    terms: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.terms, dtype=np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "terms", arr)

    def __len__(self) -> int:
        return len(self.terms)


def series_coefficients(p: int, n_terms: int) -> SeriesCoefficients:
    """First `n_terms` coefficients of the (1 - z)^(1/p) binomial series."""
    if p < 2:
        raise ValueError("p must be an integer >= 2")
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    terms = np.empty(n_terms, dtype=np.float64)
    terms[0] = 1.0
    if n_terms > 1:
        terms[1] = -1.0 / p
    for n in range(1, n_terms - 1):
        terms[n + 1] = terms[n] * (n - 1.0 / p) / (n + 1.0)
    return SeriesCoefficients(p=p, terms=terms)
