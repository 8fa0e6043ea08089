"""Exact polynomial arithmetic over Q.

Multivariate polynomials are sparse (exponent tuple -> Fraction). Univariate
work (square-free parts, Sturm sequences, root isolation) is done on dense
coefficient lists, lowest degree first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from signbounds.exactmath import to_fraction

__all__ = [
    "SparsePolynomial",
    "IsolatedRoot",
    "MergedRoot",
    "eval_sign",
    "isolate_roots",
    "merge_roots",
    "square_free_part",
    "count_real_roots",
]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class SparsePolynomial:
    """Polynomial in ``nvars`` variables with exact rational coefficients."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | Iterable = ()):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], Fraction] = {}
        for exps, coef in items:
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has length {len(exps)}, expected {nvars}")
            if any(isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in exps):
                raise ValueError(f"exponents must be non-negative ints, got {exps}")
            acc[exps] = acc.get(exps, Fraction(0)) + to_fraction(coef)
        self._terms = {e: c for e, c in acc.items() if c != 0}

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, nvars: int, value) -> "SparsePolynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "SparsePolynomial":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def univariate(cls, coeffs: Sequence) -> "SparsePolynomial":
        """From dense coefficients, constant term first."""
        return cls(1, {(i,): c for i, c in enumerate(coeffs)})

    # -- basic queries --------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; the zero polynomial reports 0 (check :meth:`is_zero`)."""
        return max((sum(e) for e in self._terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return f"SparsePolynomial({self.nvars}, 0)"
        parts = []
        for exps, c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(
                f"X{i + 1}" if e == 1 else f"X{i + 1}^{e}" for i, e in enumerate(exps) if e
            )
            parts.append(f"{c}" if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return f"SparsePolynomial({self.nvars}, {' + '.join(parts)})"

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return SparsePolynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return SparsePolynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return SparsePolynomial(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = SparsePolynomial.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- evaluation -----------------------------------------------------------

    def __call__(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        point = [to_fraction(x) for x in point]
        total = Fraction(0)
        for exps, c in self._terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v *= x**e
            total += v
        return total

    def restrict(self, values: Mapping[int, object]) -> "SparsePolynomial":
        """Substitute exact values for some variables; the rest keep their order."""
        keep = [i for i in range(self.nvars) if i not in values]
        fixed = {i: to_fraction(v) for i, v in values.items()}
        for i in fixed:
            if not 0 <= i < self.nvars:
                raise IndexError(f"variable index {i} out of range")
        terms: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self._terms.items():
            for i, x in fixed.items():
                if exps[i]:
                    c = c * x ** exps[i]
            e = tuple(exps[i] for i in keep)
            terms[e] = terms.get(e, 0) + c
        return SparsePolynomial(len(keep), terms)

    def coefficients(self) -> list[Fraction]:
        """Dense coefficient list (constant first) of a univariate polynomial."""
        if self.nvars != 1:
            raise ValueError(f"expected a univariate polynomial, got {self.nvars} variables")
        out = [Fraction(0)] * (self.degree() + 1)
        for (e,), c in self._terms.items():
            out[e] = c
        return out


def eval_sign(p: SparsePolynomial, point: Sequence) -> int:
    """Exact sign (-1, 0 or 1) of ``p`` at a rational point."""
    return _sign(p(point))


# -- dense univariate helpers ---------------------------------------------------


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _deriv(a: Sequence) -> list:
    return _trim([i * a[i] for i in range(1, len(a))])


def _horner(a: Sequence, x) -> Fraction:
    v = Fraction(0)
    for c in reversed(a):
        v = v * x + c
    return v


def _rem(a: Sequence, b: Sequence) -> list:
    a = [Fraction(c) for c in a]
    lb, db = b[-1], len(b) - 1
    while len(_trim(a)) - 1 >= db:
        shift = len(a) - 1 - db
        f = a[-1] / lb
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
    return _trim(a)


def _quo(a: Sequence, b: Sequence) -> list:
    a = [Fraction(c) for c in a]
    lb, db = b[-1], len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 1)
    while len(_trim(a)) - 1 >= db:
        shift = len(a) - 1 - db
        f = a[-1] / lb
        q[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
    return _trim(q)


def _gcd(a: Sequence, b: Sequence) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _rem(a, b)
    if not a:
        return a
    return [c / a[-1] for c in a]


def _primitive(a: Sequence) -> list[int]:
    """Scale to integer coefficients with content 1 and positive leading term."""
    den = lcm(*(Fraction(c).denominator for c in a))
    ints = [int(Fraction(c) * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _square_free(a: Sequence) -> list[int]:
    a = _trim([Fraction(c) for c in a])
    if len(a) <= 1:
        return _primitive(a)
    g = _gcd(a, _deriv(a))
    return _primitive(_quo(a, g))


def _sturm_chain(a: Sequence) -> list[list]:
    chain = [list(a), _deriv(a)]
    while chain[-1]:
        r = _rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(chain: Sequence[Sequence], x) -> int:
    signs = [s for s in (_sign(_horner(p, x)) for p in chain) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _require_univariate(p) -> list[Fraction]:
    if isinstance(p, SparsePolynomial):
        coeffs = p.coefficients()
    else:
        coeffs = [to_fraction(c) for c in p]
    coeffs = _trim(coeffs)
    if not coeffs:
        raise ValueError("the zero polynomial has no isolated roots")
    return coeffs


def square_free_part(p: SparsePolynomial) -> SparsePolynomial:
    """Primitive integer square-free part p / gcd(p, p')."""
    return SparsePolynomial.univariate(_square_free(_require_univariate(p)))


def count_real_roots(p: SparsePolynomial) -> int:
    """Number of distinct real roots, from Sturm sign variations at +-infinity."""
    q = _square_free(_require_univariate(p))
    if len(q) == 1:
        return 0
    chain = _sturm_chain(q)
    at_neg = [s for s in (_sign(c[-1]) * (-1) ** (len(c) - 1) for c in chain) if s]
    at_pos = [s for s in (_sign(c[-1]) for c in chain) if s]
    var = lambda ss: sum(1 for u, v in zip(ss, ss[1:]) if u != v)  # noqa: E731
    return var(at_neg) - var(at_pos)


# -- isolated roots -------------------------------------------------------------


@dataclass(frozen=True)
class IsolatedRoot:
    """A real root of a square-free integer polynomial.

    The root lies in the open interval (lo, hi) and is the only root there;
    ``exact`` is set when the root is known to be that rational number.
    """

    coeffs: tuple[int, ...]
    lo: Fraction
    hi: Fraction
    exact: Optional[Fraction] = None
    _poly: Optional[SparsePolynomial] = field(default=None, compare=False, repr=False)

    @property
    def poly(self) -> SparsePolynomial:
        return self._poly if self._poly is not None else SparsePolynomial.univariate(self.coeffs)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def width(self) -> Fraction:
        return Fraction(0) if self.exact is not None else self.hi - self.lo

    def refine(self, width) -> "IsolatedRoot":
        """Bisect until the interval is narrower than ``width`` (or the root turns out exact)."""
        if self.exact is not None:
            return self
        lo, hi = self.lo, self.hi
        s_lo = _sign(_horner(self.coeffs, lo))
        while hi - lo >= width:
            mid = (lo + hi) / 2
            s = _sign(_horner(self.coeffs, mid))
            if s == 0:
                return IsolatedRoot(self.coeffs, lo, hi, mid, self._poly)
            if s == s_lo:
                lo = mid
            else:
                hi = mid
        return IsolatedRoot(self.coeffs, lo, hi, None, self._poly)

    def __lt__(self, other: "IsolatedRoot") -> bool:
        return self._key() < other._key()

    def _key(self):
        return (self.exact if self.exact is not None else self.lo, self.hi)

    def approx(self) -> float:
        """Float value for display only."""
        return float(self.exact if self.exact is not None else (self.lo + self.hi) / 2)


def _cauchy_bound(q: Sequence[int]) -> Fraction:
    lc = abs(q[-1])
    return 1 + max(Fraction(abs(c), lc) for c in q[:-1])


def _detect_rational(root: IsolatedRoot) -> IsolatedRoot:
    # a rational root a/b of a primitive integer polynomial has b | lc, and two
    # distinct fractions with denominators <= Q are at least 1/Q^2 apart
    Q = abs(root.coeffs[-1])
    r = root.refine(Fraction(1, Q * Q))
    if r.exact is not None:
        return r
    cand = ((r.lo + r.hi) / 2).limit_denominator(Q)
    if r.lo < cand < r.hi and _horner(r.coeffs, cand) == 0:
        return IsolatedRoot(r.coeffs, r.lo, r.hi, cand, r._poly)
    return r


def _isolate_square_free(q: list[int]) -> list[IsolatedRoot]:
    if len(q) <= 1:
        return []
    poly = SparsePolynomial.univariate(q)
    chain = _sturm_chain(q)
    B = _cauchy_bound(q)
    out: list[IsolatedRoot] = []
    stack = [(-B, B, _variations(chain, -B), _variations(chain, B))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append(IsolatedRoot(tuple(q), lo, hi, None, poly))
            continue
        mid = (lo + hi) / 2
        if _horner(q, mid) == 0:
            delta = (hi - lo) / 4
            while True:
                a, b = mid - delta, mid + delta
                if _horner(q, a) and _horner(q, b):
                    va, vb = _variations(chain, a), _variations(chain, b)
                    if va - vb == 1:
                        break
                delta /= 2
            out.append(IsolatedRoot(tuple(q), a, b, mid, poly))
            stack.append((lo, a, vlo, va))
            stack.append((b, hi, vb, vhi))
        else:
            vm = _variations(chain, mid)
            stack.append((lo, mid, vlo, vm))
            stack.append((mid, hi, vm, vhi))
    out = [r if r.exact is not None else _detect_rational(r) for r in out]
    return sorted(out)


def isolate_roots(p) -> list[IsolatedRoot]:
    """All distinct real roots of a nonzero univariate polynomial, increasing.

    Works on the square-free part with a Sturm sequence and bisection from the
    Cauchy bound; rational roots come back with ``exact`` set.
    """
    return _isolate_square_free(_square_free(_require_univariate(p)))


class MergedRoot(NamedTuple):
    root: IsolatedRoot
    members: frozenset


def merge_roots(families: Sequence) -> list[MergedRoot]:
    """Distinct real roots of all the inputs together, with which inputs vanish there.

    Roots are isolated for the square-free part g of the product, so the
    intervals are disjoint and every input keeps a constant sign between
    consecutive roots. Membership of an irrational root is decided by a sign
    change of gcd(P_i, g) across its isolating interval.
    """
    coeff_lists = [_require_univariate(p) for p in families]
    if not coeff_lists:
        return []
    product = [Fraction(1)]
    for c in coeff_lists:
        nxt = [Fraction(0)] * (len(product) + len(c) - 1)
        for i, a in enumerate(product):
            for j, b in enumerate(c):
                nxt[i + j] += a * b
        product = nxt
    g = _square_free(product)
    gcds = [_gcd(c, g) for c in coeff_lists]
    merged = []
    for root in _isolate_square_free(g):
        members = set()
        for i, (c, h) in enumerate(zip(coeff_lists, gcds)):
            if root.exact is not None:
                if _horner(c, root.exact) == 0:
                    members.add(i)
            elif len(h) > 1 and _sign(_horner(h, root.lo)) * _sign(_horner(h, root.hi)) < 0:
                members.add(i)
        merged.append(MergedRoot(root, frozenset(members)))
    return merged
