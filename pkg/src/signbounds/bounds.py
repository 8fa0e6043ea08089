"""Closed-form bounds on the number of connected components of sign conditions.

Everything here is exact integer (or, for one leading-term formula, rational)
arithmetic. Parameter names follow the usual conventions:

    s       number of polynomials in the family P
    k       ambient dimension
    kprime  dimension of the real variety Z(Q, R^k)
    d       bound on the degrees of the polynomials in P
    d0      bound on the degrees of the polynomials in Q
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from signbounds.exactmath import binomial, prefix_symmetric

__all__ = [
    "BoundParams",
    "BoundReport",
    "DegreeSequence",
    "chi",
    "chi_bound",
    "betti_sum_bound",
    "F",
    "main_bound_uniform",
    "main_bound_per_degree",
    "main_bound_per_degree_naive",
    "bpr8_bound",
    "bpr_tight_leading",
    "tightness_lower_bound",
    "counterexample_degrees_product",
    "grassmannian_application_bound",
    "bound_report",
]


def _check_nat(name: str, value: int, minimum: int = 0) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")


@dataclass(frozen=True)
class BoundParams:
    s: int
    k: int
    kprime: int
    d: int
    d0: int

    def __post_init__(self):
        _check_nat("s", self.s)
        _check_nat("k", self.k, 1)
        _check_nat("kprime", self.kprime)
        _check_nat("d", self.d, 1)
        _check_nat("d0", self.d0, 1)
        if self.kprime > self.k:
            raise ValueError(f"kprime={self.kprime} exceeds k={self.k}")


class DegreeSequence(tuple):
    """Sorted tuple of positive degrees d_1 <= ... <= d_m."""

    def __new__(cls, degrees: Iterable[int] = ()):
        degrees = sorted(degrees)
        for d in degrees:
            _check_nat("degree", d, 1)
        return super().__new__(cls, degrees)

    @property
    def m(self) -> int:
        return len(self)


def _as_degrees(degrees) -> DegreeSequence:
    return degrees if isinstance(degrees, DegreeSequence) else DegreeSequence(degrees)


def _check_codim(k: int, degrees: DegreeSequence) -> None:
    _check_nat("k", k)
    if len(degrees) > k:
        raise ValueError(f"{len(degrees)} hypersurfaces cannot be a complete intersection in P^{k}")


@lru_cache(maxsize=None)
def _chi(k: int, degrees: tuple) -> int:
    m = len(degrees)
    if m == 0:
        return k + 1
    if m == k:
        return math.prod(degrees)
    dm = degrees[-1]
    return dm * _chi(k - 1, degrees[:-1]) - (dm - 1) * _chi(k - 1, degrees)


def chi(k: int, degrees) -> int:
    """Euler characteristic of a smooth complete intersection in complex P^k.

    ``degrees`` are the degrees of the m <= k defining forms; the value only
    depends on the sorted degree sequence.
    """
    degrees = _as_degrees(degrees)
    _check_codim(k, degrees)
    return _chi(k, tuple(degrees))


def chi_bound(k: int, degrees) -> int:
    """C(k+1, m+1) * d_1 ... d_{m-1} * d_m^(k-m+1), an upper bound on |chi|."""
    degrees = _as_degrees(degrees)
    _check_codim(k, degrees)
    m = len(degrees)
    if m == 0:
        return binomial(k + 1, 1)
    return binomial(k + 1, m + 1) * math.prod(degrees[:-1]) * degrees[-1] ** (k - m + 1)


def betti_sum_bound(k: int, degrees) -> int:
    """Bound on the sum of Z/2 Betti numbers of the complete intersection."""
    degrees = _as_degrees(degrees)
    return chi_bound(k, degrees) + 2 * (k - len(degrees) + 1)


def F(params: BoundParams, j: int) -> int:
    """Per-level algebraic factor of the uniform main bound."""
    k, kp, d, d0 = params.k, params.kprime, params.d, params.d0
    _check_nat("j", j)
    if j > kp:
        raise ValueError(f"j={j} exceeds kprime={kp}")
    return (
        binomial(k + 1, k - kp + j + 1) * (2 * d0) ** (k - kp) * d**j * max(2 * d0, d) ** (kp - j)
        + 2 * (k - j + 1)
    )


def main_bound_uniform(params: BoundParams) -> int:
    """sum_{j<=k'} 4^j C(s+1, j) F(j): the bound when every deg P <= d."""
    return sum(4**j * binomial(params.s + 1, j) * F(params, j) for j in range(params.kprime + 1))


def _check_per_degree_args(p_degrees, d0, k, kprime):
    p_degrees = list(p_degrees)
    for dp in p_degrees:
        _check_nat("degree", dp, 1)
    _check_nat("d0", d0, 1)
    _check_nat("k", k, 1)
    _check_nat("kprime", kprime)
    if kprime > k:
        raise ValueError(f"kprime={kprime} exceeds k={k}")
    return p_degrees


def _subset_term(j: int, d_I: int, top: int, d0: int, k: int, kprime: int) -> int:
    return 4**j * (
        binomial(k + 1, k - kprime + j + 1) * (2 * d0) ** (k - kprime) * d_I * top ** (kprime - j)
        + 2 * (k - j + 1)
    )


def main_bound_per_degree(p_degrees: Sequence[int], d0: int, k: int, kprime: int) -> int:
    """Main bound with one degree per polynomial of P, without subset enumeration.

    Subsets I with |I| = j are grouped by their last element t in the order of
    m_P = max(2 d0, d_P) (ties broken by input position). Within a group the
    max factor is m_t and the products d_I add up to d_t * e_{j-1} of the
    degrees ordered before t. The empty subset uses max = 2 d0.
    """
    p_degrees = _check_per_degree_args(p_degrees, d0, k, kprime)
    s = len(p_degrees)
    two_d0 = 2 * d0
    order = sorted(range(s), key=lambda i: (max(two_d0, p_degrees[i]), i))
    ordered = [p_degrees[i] for i in order]
    tops = [max(two_d0, dp) for dp in ordered]
    jmax = min(kprime, s)
    table = prefix_symmetric(ordered, max(jmax - 1, 0))

    total = _subset_term(0, 1, two_d0, d0, k, kprime)
    coeff = (2 * d0) ** (k - kprime)
    for j in range(1, jmax + 1):
        weighted = sum(ordered[t] * table[t][j - 1] * tops[t] ** (kprime - j) for t in range(s))
        total += 4**j * (
            binomial(k + 1, k - kprime + j + 1) * coeff * weighted + 2 * (k - j + 1) * binomial(s, j)
        )
    return total


def main_bound_per_degree_naive(p_degrees: Sequence[int], d0: int, k: int, kprime: int) -> int:
    """Same value as :func:`main_bound_per_degree` by listing every subset."""
    from itertools import combinations

    p_degrees = _check_per_degree_args(p_degrees, d0, k, kprime)
    total = 0
    for j in range(0, min(kprime, len(p_degrees)) + 1):
        for subset in combinations(p_degrees, j):
            top = max([2 * d0, *subset])
            total += _subset_term(j, math.prod(subset), top, d0, k, kprime)
    return total


def bpr8_bound(s: int, d: int, k: int, kprime: int, i: int = 0, include_zero: bool = True) -> int:
    """Earlier bound sum_{j<=k'-i} C(s,j) 4^j d (2d-1)^(k-1), same degree bound d for P and Q.

    ``include_zero=False`` starts the sum at j = 1, which is the range quoted
    in some statements of this bound.
    """
    _check_nat("s", s)
    _check_nat("d", d, 1)
    _check_nat("k", k, 1)
    _check_nat("kprime", kprime)
    _check_nat("i", i)
    if i > kprime:
        raise ValueError(f"i={i} exceeds kprime={kprime}")
    base = d * (2 * d - 1) ** (k - 1)
    start = 0 if include_zero else 1
    return sum(binomial(s, j) * 4**j * base for j in range(start, kprime - i + 1))


def bpr_tight_leading(s: int, d: int, k: int) -> Fraction:
    """Leading term (2d)^k s^k / k! of the asymptotically tight bound.

    Only the leading term: the O(s^(k-1)) remainder has no explicit constant,
    so this is not an upper bound by itself.
    """
    _check_nat("s", s)
    _check_nat("d", d, 1)
    _check_nat("k", k, 1)
    return Fraction((2 * d) ** k * s**k, math.factorial(k))


def tightness_lower_bound(s: int, d: int, d0: int, k: int) -> int:
    """d0 * sum_{i<k} C(sd, i): strict-condition count of the witness family."""
    _check_nat("s", s)
    _check_nat("d", d, 1)
    _check_nat("d0", d0, 1)
    _check_nat("k", k, 1)
    return d0 * sum(binomial(s * d, i) for i in range(k))


def counterexample_degrees_product(d: int, k: int, m: int) -> tuple[int, int]:
    """(2 d^k, 2 d m!): isolated zero count vs. degree product of the Bezout counterexample."""
    _check_nat("d", d, 1)
    _check_nat("k", k, 1)
    _check_nat("m", m, 2)
    return 2 * d**k, 2 * d * math.factorial(m)


def grassmannian_application_bound(n: int, k: int, d: int) -> int:
    """Main bound for geometric permutations of n bodies in R^d by k-transversals.

    C(2^(k+1)-2, k) C(n, k+1) polynomials of degree <= 2k in d^2 variables, on
    the Grassmannian of k-planes (dimension k(d-k), cut out by quadrics).
    """
    _check_nat("k", k, 1)
    _check_nat("d", d, 1)
    _check_nat("n", n)
    if k >= d:
        raise ValueError(f"need k < d, got k={k}, d={d}")
    if n < k + 1:
        raise ValueError(f"need n >= k+1, got n={n}, k={k}")
    s = binomial(2 ** (k + 1) - 2, k) * binomial(n, k + 1)
    return main_bound_uniform(BoundParams(s=s, k=d * d, kprime=k * (d - k), d=2 * k, d0=2))


@dataclass(frozen=True)
class BoundReport:
    params: BoundParams
    main_uniform: int
    bpr8: int
    tightness_lower: int
    bpr_tight_leading: Fraction
    main_per_degree: Optional[int] = None

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.main_uniform, self.bpr8)


def bound_report(params: BoundParams, p_degrees: Optional[Sequence[int]] = None) -> BoundReport:
    per_degree = None
    if p_degrees is not None:
        if len(p_degrees) != params.s:
            raise ValueError(f"expected {params.s} degrees, got {len(p_degrees)}")
        per_degree = main_bound_per_degree(p_degrees, params.d0, params.k, params.kprime)
    return BoundReport(
        params=params,
        main_uniform=main_bound_uniform(params),
        bpr8=bpr8_bound(params.s, params.d, params.k, params.kprime),
        tightness_lower=tightness_lower_bound(params.s, params.d, params.d0, params.k),
        bpr_tight_leading=bpr_tight_leading(params.s, params.d, params.k),
        main_per_degree=per_degree,
    )
