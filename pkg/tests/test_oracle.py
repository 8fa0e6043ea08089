import random

import pytest

from signbounds.bounds import BoundParams, main_bound_per_degree, main_bound_uniform, tightness_lower_bound
from signbounds.oracle import (
    ComponentCountReport,
    DegenerateInstance,
    OracleLimitExceeded,
    UnionFind,
    count_counterexample_instance,
    count_grid_2d,
    count_tightness_instance,
    count_univariate,
    generic_arrangement_cells,
    sign_cells,
)
from signbounds.polyalg import SparsePolynomial, isolate_roots

X = SparsePolynomial.variable(1, 0)
x, y = SparsePolynomial.variable(2, 0), SparsePolynomial.variable(2, 1)


def test_generic_arrangement_cells():
    assert generic_arrangement_cells(3, 2) == 7
    assert generic_arrangement_cells(0, 4) == 1
    for n in range(0, 6):
        assert generic_arrangement_cells(n, n + 2) == 2**n


def test_report_invariants():
    r = ComponentCountReport({(1, -1): 2, (0, 1): 1})
    assert r.total == 3 and r.realizable_count == 2
    assert r.strict().per_condition == {(1, -1): 2}
    assert r.merged(r).total == 6
    with pytest.raises(ValueError):
        ComponentCountReport({(1,): 0})


def test_count_univariate_examples():
    assert count_univariate([X]).per_condition == {(-1,): 1, (0,): 1, (1,): 1}
    r = count_univariate([X * X - 1, X])
    assert r.total == 7 and r.realizable_count == 7
    assert set(r.per_condition.values()) == {1}
    assert count_univariate([X], X * X - 4).per_condition == {(-1,): 1, (1,): 1}


def test_count_univariate_repeated_condition():
    # X^2 - 1 is positive on two separate intervals
    r = count_univariate([X * X - 1])
    assert r.per_condition == {(1,): 2, (0,): 2, (-1,): 1}


def test_count_univariate_irrational_variety():
    r = count_univariate([X - 1, X], X * X - 2)
    assert r.per_condition == {(-1, -1): 1, (1, 1): 1}


def test_count_univariate_rejects_zero():
    with pytest.raises(ValueError):
        count_univariate([SparsePolynomial(1)])
    with pytest.raises(ValueError):
        count_univariate([X], SparsePolynomial(1))


def test_sign_cells_alternate():
    cells = sign_cells([X**3 - 2 * X])
    assert [kind for kind, _, _ in cells] == ["interval", "point"] * 3 + ["interval"]
    assert [sig for _, _, sig in cells] == [(-1,), (0,), (1,), (0,), (-1,), (0,), (1,)]


def random_poly(rng, max_deg):
    deg = rng.randint(1, max_deg)
    coeffs = [rng.randint(-5, 5) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
    return SparsePolynomial.univariate(coeffs)


def test_univariate_counts_below_bounds():
    rng = random.Random(7)
    for _ in range(60):
        family = [random_poly(rng, 4) for _ in range(rng.randint(1, 4))]
        degrees = [p.degree() for p in family]
        free = count_univariate(family).total
        assert free <= main_bound_uniform(BoundParams(len(family), 1, 1, max(degrees), 1))
        q = random_poly(rng, 3)
        on_q = count_univariate(family, q).total
        assert on_q == len(isolate_roots(q))
        assert on_q <= main_bound_per_degree(degrees, q.degree(), 1, 0)


def test_union_find():
    uf = UnionFind(5)
    uf.union(3, 4)
    uf.union(1, 4)
    assert uf.find(3) == uf.find(1) == 1
    assert uf.find(0) != uf.find(2)


def test_grid_examples():
    assert count_grid_2d([x], (-1, -1, 1, 1), 16).strict().per_condition == {(-1,): 1, (1,): 1}
    disk = count_grid_2d([x * x + y * y - 1], (-2, -2, 2, 2), 64)
    assert disk.strict().per_condition == {(-1,): 1, (1,): 1}
    assert not disk.exact
    quadrants = count_grid_2d([x * y], (-1, -1, 1, 1), 64)
    assert quadrants.strict().per_condition == {(1,): 2, (-1,): 2}


def test_grid_rejects():
    with pytest.raises(ValueError):
        count_grid_2d([x], (1, 0, 0, 1), 8)
    with pytest.raises(ValueError):
        count_grid_2d([x], resolution=1)
    with pytest.raises(ValueError):
        count_grid_2d([X])
    with pytest.raises(ValueError):
        count_grid_2d([])


def test_grid_open_counts_below_bound():
    rng = random.Random(3)
    for _ in range(12):
        family = []
        for _ in range(rng.randint(1, 3)):
            deg = rng.randint(1, 3)
            terms = {(i, j): rng.randint(-4, 4) for i in range(deg + 1) for j in range(deg + 1 - i)}
            terms[(deg, 0)] = rng.choice([-2, -1, 1, 2])
            family.append(SparsePolynomial(2, terms))
        strict = count_grid_2d(family, (-2, -2, 2, 2), 32).strict().total
        assert strict <= main_bound_uniform(BoundParams(len(family), 2, 2, max(p.degree() for p in family), 1))


@pytest.mark.parametrize("s, d, d0, expected", [(1, 1, 1, 2), (2, 2, 3, 15), (1, 2, 2, 6)])
def test_tightness_examples(s, d, d0, expected):
    assert count_tightness_instance(s, d, d0).strict().total == expected


def test_tightness_reports_all_conditions():
    r = count_tightness_instance(1, 2, 2)
    # on each line: 3 open intervals and 2 roots
    assert r.total == 2 * (3 + 2)
    assert r.strict().total == tightness_lower_bound(1, 2, 2, 2)


def test_tightness_gives_up_when_always_degenerate(monkeypatch):
    import signbounds.oracle as oracle

    def always_degenerate(*args):
        raise DegenerateInstance("forced")

    monkeypatch.setattr(oracle, "_count_tightness_once", always_degenerate)
    with pytest.raises(DegenerateInstance):
        count_tightness_instance(1, 1, 1, max_attempts=3)


@pytest.mark.parametrize("d, k, m, expected", [(2, 2, 2, 8), (1, 1, 2, 2), (3, 2, 3, 18)])
def test_counterexample_examples(d, k, m, expected):
    assert count_counterexample_instance(d, k, m) == expected


def test_counterexample_identity():
    for d in range(1, 5):
        for k in range(1, 4):
            for m in range(2, 5):
                assert count_counterexample_instance(d, k, m, cap=10**4) == 2 * d**k


def test_counterexample_cap():
    with pytest.raises(OracleLimitExceeded):
        count_counterexample_instance(4, 3, 2, cap=100)
