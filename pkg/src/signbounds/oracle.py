"""Brute-force counts of connected components of sign-condition realizations.

The univariate, tightness and counterexample counters are exact. The 2-D grid
counter is a heuristic: it can merge or miss components but never makes up
new ones for open sign conditions once the grid resolves them.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from signbounds.constructions import make_counterexample_instance, make_tightness_instance
from signbounds.exactmath import binomial, to_fraction
from signbounds.polyalg import SparsePolynomial, eval_sign, isolate_roots, merge_roots

__all__ = [
    "ComponentCountReport",
    "DegenerateInstance",
    "OracleLimitExceeded",
    "UnionFind",
    "generic_arrangement_cells",
    "sign_cells",
    "count_univariate",
    "count_grid_2d",
    "count_tightness_instance",
    "count_counterexample_instance",
]


class DegenerateInstance(ValueError):
    """A generated instance is not in general position; draw another one."""


class OracleLimitExceeded(ValueError):
    pass


SignVector = tuple[int, ...]


@dataclass
class ComponentCountReport:
    per_condition: dict[SignVector, int] = field(default_factory=dict)
    exact: bool = True

    def __post_init__(self):
        for cond, n in self.per_condition.items():
            if n < 1:
                raise ValueError(f"stored count for {cond} must be >= 1, got {n}")

    @property
    def total(self) -> int:
        return sum(self.per_condition.values())

    @property
    def realizable_count(self) -> int:
        return len(self.per_condition)

    def strict(self) -> "ComponentCountReport":
        """Only the conditions in {-1, +1}^P."""
        return ComponentCountReport(
            {c: n for c, n in self.per_condition.items() if 0 not in c}, exact=self.exact
        )

    def merged(self, other: "ComponentCountReport") -> "ComponentCountReport":
        """Counts for a disjoint union of the two underlying sets."""
        counts = Counter(self.per_condition)
        counts.update(other.per_condition)
        return ComponentCountReport(dict(counts), exact=self.exact and other.exact)


def generic_arrangement_cells(n: int, k: int) -> int:
    """Number of regions cut out of R^k by n hyperplanes in general position."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    return sum(binomial(n, i) for i in range(k + 1))


def _check_univariate(polys, what):
    for p in polys:
        if p.nvars != 1:
            raise ValueError(f"{what} must be univariate, got {p.nvars} variables")
        if p.is_zero():
            raise ValueError(f"{what} contains the zero polynomial")


def sign_cells(polys: Sequence[SparsePolynomial]) -> list[tuple[str, object, SignVector]]:
    """Cell decomposition of R for the given univariate polynomials.

    Returns ``(kind, where, signs)`` in increasing order, where kind is
    ``"point"`` (``where`` is a MergedRoot) or ``"interval"`` (``where`` is a
    rational sample point inside the open cell).
    """
    _check_univariate(polys, "family")
    merged = merge_roots(polys)
    signs_at = lambda x: tuple(eval_sign(p, [x]) for p in polys)  # noqa: E731

    if not merged:
        return [("interval", Fraction(0), signs_at(Fraction(0)))]

    def point_signs(mr):
        root = mr.root
        if root.exact is not None:
            return signs_at(root.exact)
        # lo is not a root of any input, and no input changes sign on (lo, root)
        return tuple(0 if i in mr.members else eval_sign(p, [root.lo]) for i, p in enumerate(polys))

    def left(r):
        return r.exact if r.exact is not None else r.lo

    def right(r):
        return r.exact if r.exact is not None else r.hi

    cells = []
    x = left(merged[0].root) - 1
    cells.append(("interval", x, signs_at(x)))
    for a, b in zip(merged, merged[1:]):
        cells.append(("point", a, point_signs(a)))
        x = (right(a.root) + left(b.root)) / 2
        cells.append(("interval", x, signs_at(x)))
    cells.append(("point", merged[-1], point_signs(merged[-1])))
    x = right(merged[-1].root) + 1
    cells.append(("interval", x, signs_at(x)))
    return cells


def count_univariate(
    family: Sequence[SparsePolynomial], variety: Optional[SparsePolynomial] = None
) -> ComponentCountReport:
    """Exact component counts per sign condition of ``family`` on R or on Z(variety).

    Every cell of the root partition is one component: neighbouring cells
    always carry different sign vectors.
    """
    family = list(family)
    if variety is None:
        cells = sign_cells(family)
        return ComponentCountReport(dict(Counter(sig for _, _, sig in cells)))
    _check_univariate([variety], "variety")
    cells = sign_cells([variety] + family)
    counts = Counter(sig[1:] for kind, _, sig in cells if kind == "point" and sig[0] == 0)
    return ComponentCountReport(dict(counts))


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller root index wins so labels do not depend on merge order
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def count_grid_2d(
    family: Sequence[SparsePolynomial],
    bbox=(-1, -1, 1, 1),
    resolution: int = 64,
) -> ComponentCountReport:
    """Heuristic component counts on a resolution x resolution grid over bbox.

    Each cell takes the exact sign vector at its centre; cells with the same
    vector are joined across shared edges. The result is flagged inexact.
    """
    family = list(family)
    if not family:
        raise ValueError("family must be nonempty")
    for p in family:
        if p.nvars != 2:
            raise ValueError(f"grid oracle needs bivariate polynomials, got {p.nvars} variables")
        if p.is_zero():
            raise ValueError("family contains the zero polynomial")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    x0, y0, x1, y1 = (to_fraction(v) for v in bbox)
    if x1 <= x0 or y1 <= y0:
        raise ValueError(f"degenerate bounding box {bbox}")

    n = resolution
    xs = [x0 + (x1 - x0) * (2 * i + 1) / (2 * n) for i in range(n)]
    ys = [y0 + (y1 - y0) * (2 * j + 1) / (2 * n) for j in range(n)]
    signs = [tuple(eval_sign(p, (x, y)) for p in family) for y in ys for x in xs]

    uf = UnionFind(n * n)
    for j in range(n):
        for i in range(n):
            c = j * n + i
            if i + 1 < n and signs[c] == signs[c + 1]:
                uf.union(c, c + 1)
            if j + 1 < n and signs[c] == signs[c + n]:
                uf.union(c, c + n)

    roots = {}
    for c in range(n * n):
        roots.setdefault(uf.find(c), signs[c])
    return ComponentCountReport(dict(Counter(roots.values())), exact=False)


def _count_tightness_once(s: int, d: int, d0: int, seed: int) -> ComponentCountReport:
    family, variety = make_tightness_instance(s, d, d0, 2, seed)
    heights = isolate_roots(variety.restrict({0: 0}))
    if any(r.exact is None for r in heights):
        raise ValueError("variety lines must sit at rational heights")
    report = ComponentCountReport()
    for h in heights:
        line = [p.restrict({1: h.exact}) for p in family]
        if any(p.is_zero() for p in line):
            raise DegenerateInstance(f"a family member vanishes on X2 = {h.exact}")
        roots = merge_roots(line)
        expected = sum(p.degree() for p in line)
        if any(p.degree() != d for p in line) or len(roots) != expected:
            raise DegenerateInstance(f"roots collide or escape on X2 = {h.exact}")
        report = report.merged(count_univariate(line))
    return report


def count_tightness_instance(
    s: int, d: int, d0: int, seed: int = 0, max_attempts: int = 100
) -> ComponentCountReport:
    """Exact counts for the planar witness family on the d0 lines X2 = 1..d0.

    The lines are disjoint, so per-line univariate reports add up. Degenerate
    draws are discarded and the seed advanced.
    """
    if min(s, d, d0) < 1:
        raise ValueError("s, d and d0 must be >= 1")
    last = None
    for attempt in range(max_attempts):
        try:
            return _count_tightness_once(s, d, d0, seed + attempt)
        except DegenerateInstance as exc:
            last = exc
    raise DegenerateInstance(f"no generic instance in {max_attempts} draws: {last}")


def _uses_only(p: SparsePolynomial, allowed: set[int]) -> bool:
    return all(i in allowed for exps in p.terms for i, e in enumerate(exps) if e)


def _nonnegative(p: SparsePolynomial) -> bool:
    return all(min(sig) >= 0 for _, _, sig in sign_cells([p]))


def count_counterexample_instance(d: int, k: int, m: int, cap: int = 10**6) -> int:
    """Number of points (hence components) of the common zero set of the Bezout counterexample.

    The first polynomial is split into univariate nonnegative parts h_i(X_i),
    so its zeros form the product of their root sets; the others only involve
    the last variable and their common roots are intersected. Every point of
    the resulting grid is checked against all polynomials.
    """
    polys = make_counterexample_instance(d, k, m)
    n = k + 1
    p1, rest = polys[0], polys[1:]
    if not _uses_only(p1, set(range(k))) or not all(_uses_only(p, {k}) for p in rest):
        raise ValueError("instance does not separate into coordinate blocks")
    if any(sum(1 for e in exps if e) > 1 for exps in p1.terms):
        raise ValueError("first polynomial is not a sum of univariate parts")

    share = p1([0] * n) * Fraction(k - 1, k)
    parts = []
    for i in range(k):
        axis = SparsePolynomial.variable(1, 0)
        point = [SparsePolynomial.constant(1, 0)] * n
        point[i] = axis
        h = _compose(p1, point) - share
        parts.append(h)
    rebuilt = SparsePolynomial(n)
    for i, h in enumerate(parts):
        rebuilt = rebuilt + _compose(h, [SparsePolynomial.variable(n, i)])
    if rebuilt != p1 or not all(_nonnegative(h) for h in parts):
        raise ValueError("could not certify the first polynomial as a sum of nonnegative parts")

    axis_roots = [isolate_roots(h) for h in parts]
    last_roots = [
        mr.root for mr in merge_roots([p.restrict({i: 0 for i in range(k)}) for p in rest])
        if len(mr.members) == len(rest)
    ]
    size = len(last_roots)
    for roots in axis_roots:
        size *= len(roots)
    if size > cap:
        raise OracleLimitExceeded(f"zero set has {size} points, cap is {cap}")

    coords = axis_roots + [last_roots]
    if any(r.exact is None for roots in coords for r in roots):
        return size
    count = 0
    for pt in product(*[[r.exact for r in roots] for roots in coords]):
        if any(eval_sign(p, pt) for p in polys):
            raise ValueError(f"enumerated point {pt} is not a common zero")
        count += 1
    return count


def _compose(p: SparsePolynomial, subs: Sequence[SparsePolynomial]) -> SparsePolynomial:
    nv = subs[0].nvars
    out = SparsePolynomial(nv)
    for exps, c in p.terms.items():
        term = SparsePolynomial.constant(nv, c)
        for s, e in zip(subs, exps):
            if e:
                term = term * s**e
        out = out + term
    return out
