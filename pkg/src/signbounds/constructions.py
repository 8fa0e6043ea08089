"""Witness instances and the moment-curve subspace family."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from signbounds.exactmath import rank, to_fraction
from signbounds.polyalg import SparsePolynomial

__all__ = [
    "LinearForm",
    "SubspaceBasis",
    "tightness_forms",
    "make_tightness_instance",
    "make_counterexample_instance",
    "moment_vector",
    "transversal_family",
    "is_transversal",
    "random_subspace",
]


@dataclass(frozen=True)
class LinearForm:
    """coefficients . X + constant"""

    coefficients: tuple[Fraction, ...]
    constant: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(to_fraction(c) for c in self.coefficients))
        object.__setattr__(self, "constant", to_fraction(self.constant))
        if not any(self.coefficients):
            raise ValueError("a linear form needs a nonzero coefficient vector")

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    def __call__(self, point: Sequence) -> Fraction:
        return sum((c * to_fraction(x) for c, x in zip(self.coefficients, point)), self.constant)

    def to_polynomial(self) -> SparsePolynomial:
        k = self.nvars
        terms = {(0,) * k: self.constant}
        for i, c in enumerate(self.coefficients):
            e = [0] * k
            e[i] = 1
            terms[tuple(e)] = c
        return SparsePolynomial(k, terms)


def _random_rational(rng: random.Random, nonzero: bool = True) -> Fraction:
    while True:
        num = rng.randint(-12, 12)
        if num or not nonzero:
            return Fraction(num, rng.randint(1, 12))


def tightness_forms(s: int, d: int, k: int, seed: int) -> list[list[LinearForm]]:
    """s groups of d pseudo-random linear forms in k variables (all coefficients nonzero)."""
    if min(s, d, k) < 1:
        raise ValueError("s, d and k must be >= 1")
    rng = random.Random(seed)
    return [
        [
            LinearForm(tuple(_random_rational(rng) for _ in range(k)), _random_rational(rng, nonzero=False))
            for _ in range(d)
        ]
        for _ in range(s)
    ]


def make_tightness_instance(s: int, d: int, d0: int, k: int, seed: int = 0):
    """Family of s products of d linear forms, and Q = prod_{i=1..d0} (X_k - i).

    Returns ``(family, variety)``. Genericity is not checked here; the
    counting oracle reports degenerate draws and the caller reseeds.
    """
    if d0 < 1:
        raise ValueError("d0 must be >= 1")
    family = []
    for forms in tightness_forms(s, d, k, seed):
        p = SparsePolynomial.constant(k, 1)
        for form in forms:
            p = p * form.to_polynomial()
        family.append(p)
    xk = SparsePolynomial.variable(k, k - 1)
    variety = SparsePolynomial.constant(k, 1)
    for i in range(1, d0 + 1):
        variety = variety * (xk - i)
    return family, variety


def make_counterexample_instance(d: int, k: int, m: int) -> list[SparsePolynomial]:
    """P_1 = sum_{i<=k} prod_{j<=d} (X_i - j)^2 and P_j = prod_{i<=m-j+2} (X_{k+1} - i), 2 <= j <= m."""
    if d < 1 or k < 1 or m < 2:
        raise ValueError("need d >= 1, k >= 1, m >= 2")
    n = k + 1
    p1 = SparsePolynomial(n)
    for i in range(k):
        xi = SparsePolynomial.variable(n, i)
        f = SparsePolynomial.constant(n, 1)
        for j in range(1, d + 1):
            f = f * (xi - j)
        p1 = p1 + f * f
    last = SparsePolynomial.variable(n, k)
    polys = [p1]
    for j in range(2, m + 1):
        p = SparsePolynomial.constant(n, 1)
        for i in range(1, m - j + 3):
            p = p * (last - i)
        polys.append(p)
    return polys


def moment_vector(k: int, x) -> tuple[Fraction, ...]:
    """(1, x, x^2, ..., x^(k-1))"""
    if k < 1:
        raise ValueError("k must be >= 1")
    x = to_fraction(x)
    return tuple(x**i for i in range(k))


@dataclass(frozen=True)
class SubspaceBasis:
    """Linearly independent spanning vectors of a subspace of Q^k."""

    vectors: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        vecs = tuple(tuple(to_fraction(x) for x in v) for v in self.vectors)
        if not vecs:
            raise ValueError("empty basis")
        if len({len(v) for v in vecs}) != 1:
            raise ValueError("basis vectors have different lengths")
        if rank(vecs) != len(vecs):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "vectors", vecs)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def ambient(self) -> int:
        return len(self.vectors[0])


def transversal_family(k: int, j: int, eps) -> list[SubspaceBasis]:
    """The k(k-j)+1 subspaces span{v(m eps), v(m eps + 1), ..., v(m eps + k-j-1)}, 0 <= m <= k(k-j).

    Every j-dimensional subspace of Q^k meets at least one of them only in 0.
    """
    eps = to_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not 1 <= j < k:
        raise ValueError(f"need 1 <= j < k, got j={j}, k={k}")
    return [
        SubspaceBasis(tuple(moment_vector(k, m * eps + t) for t in range(k - j)))
        for m in range(k * (k - j) + 1)
    ]


def is_transversal(a: SubspaceBasis, b: SubspaceBasis, k: int) -> bool:
    """True iff a and b intersect only in 0."""
    if a.ambient != k or b.ambient != k:
        raise ValueError("subspaces do not live in the stated ambient space")
    if a.dim + b.dim > k:
        raise ValueError(f"dimensions {a.dim} + {b.dim} exceed ambient {k}")
    return rank(a.vectors + b.vectors) == a.dim + b.dim


def random_subspace(k: int, j: int, rng: random.Random) -> SubspaceBasis:
    """Pseudo-random j-dimensional rational subspace of Q^k."""
    while True:
        vecs = tuple(tuple(_random_rational(rng, nonzero=False) for _ in range(k)) for _ in range(j))
        if rank(vecs) == j:
            return SubspaceBasis(vecs)
