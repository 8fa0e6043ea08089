"""Integer/rational primitives shared by the rest of the package.

Scalars are plain ``int`` and ``fractions.Fraction``; both are arbitrary
precision and ``Fraction`` is always kept in lowest terms with a positive
denominator, so no wrapper types are needed.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = ["binomial", "prefix_symmetric", "to_fraction", "rank"]


def binomial(n: int, j: int) -> int:
    """C(n, j), with C(n, j) = 0 for j > n."""
    if n < 0 or j < 0:
        raise ValueError(f"binomial needs non-negative arguments, got ({n}, {j})")
    return math.comb(n, j)


def prefix_symmetric(degrees: Sequence[int], jmax: int) -> list[list[int]]:
    """Table ``E`` with ``E[t][j]`` = e_j(degrees[0], ..., degrees[t-1]).

    Rows run over 0 <= t <= len(degrees), columns over 0 <= j <= jmax.
    Built with the one-step recurrence E[t][j] = E[t-1][j] + d_t E[t-1][j-1].
    """
    if jmax < 0:
        return [[] for _ in range(len(degrees) + 1)]
    for d in degrees:
        if d < 1:
            raise ValueError(f"degrees must be positive, got {d}")
    row = [1] + [0] * jmax
    table = [row]
    for d in degrees:
        prev = table[-1]
        row = [1] + [prev[j] + d * prev[j - 1] for j in range(1, jmax + 1)]
        table.append(row)
    return table


def to_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"num/den"`` string into an exact Fraction.

    Floats are refused: they would carry binary rounding into exact code.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def rank(rows: Iterable[Sequence]) -> int:
    """Exact rank of a rational matrix by Gaussian elimination over the rationals."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                f /= p
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r
