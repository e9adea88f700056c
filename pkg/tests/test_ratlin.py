from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsscheck.errors import DimensionMismatch, InvalidForm
from wsscheck.ratlin import (
    RatMatrix,
    Subspace,
    contains,
    image,
    intersect,
    kernel,
    quotient_map,
    rank,
    signature,
    solve,
    subspace_sum,
)

M = RatMatrix.from_rows


def small_matrix(max_dim=5, lo=-4, hi=4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            ).map(lambda rows: M(rows, cols=c))
        )
    )


def vectors(dim, count, lo=-3, hi=3):
    return st.lists(
        st.tuples(*[st.integers(lo, hi) for _ in range(dim)]),
        min_size=count,
        max_size=count,
    )


# -- kernel / image -----------------------------------------------------------


def test_kernel_zero_map():
    assert kernel(RatMatrix.zeros(2, 2)).dim == 2


def test_kernel_identity():
    assert kernel(RatMatrix.identity(2)).dim == 0


def test_kernel_rank_one():
    k = kernel(M([[1, 1], [1, 1]]))
    assert k.dim == 1
    assert k.basis.columns() == [(1, -1)]


def test_image_identity_and_zero():
    assert image(RatMatrix.identity(3)) == Subspace.full(3)
    assert image(RatMatrix.zeros(3, 2)) == Subspace.zero(3)


def test_image_rank_one():
    i = image(M([[1, 2], [2, 4]]))
    assert i.dim == 1
    assert i.basis.columns() == [(1, 2)]


@settings(max_examples=120)
@given(small_matrix())
def test_rank_nullity(m):
    assert kernel(m).dim + image(m).dim == m.cols


@settings(max_examples=80)
@given(small_matrix())
def test_kernel_really_annihilated(m):
    k = kernel(m)
    for idx in range(k.dim):
        assert all(x == 0 for x in m.apply(k.basis.col_tuple(idx)))


# -- intersections and sums -----------------------------------------------------


def test_intersect_full():
    u = Subspace.full(3)
    assert intersect(u, u) == u


def test_intersect_transversal_lines():
    u = Subspace.span(2, [(1, 0)])
    w = Subspace.span(2, [(0, 1)])
    assert intersect(u, w).dim == 0


def test_intersect_planes():
    u = Subspace.span(3, [(1, 0, 0), (0, 1, 0)])
    w = Subspace.span(3, [(0, 1, 0), (0, 0, 1)])
    got = intersect(u, w)
    assert got == Subspace.span(3, [(0, 1, 0)])


def test_sum_examples():
    u = Subspace.span(2, [(1, 0)])
    assert subspace_sum(u, Subspace.zero(2)) == u
    assert subspace_sum(u, Subspace.span(2, [(0, 1)])) == Subspace.full(2)
    got = subspace_sum(
        Subspace.span(3, [(1, 1, 0)]), Subspace.span(3, [(1, -1, 0)])
    )
    assert got == Subspace.span(3, [(1, 0, 0), (0, 1, 0)])


def test_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        intersect(Subspace.full(2), Subspace.full(3))


@settings(max_examples=100)
@given(st.integers(2, 4).flatmap(lambda d: st.tuples(vectors(d, 2), vectors(d, 2))))
def test_modular_dimension_law(pair):
    vs, ws = pair
    d = len(vs[0])
    u = Subspace.span(d, vs)
    w = Subspace.span(d, ws)
    assert intersect(u, w).dim + subspace_sum(u, w).dim == u.dim + w.dim


@settings(max_examples=60)
@given(st.integers(2, 4).flatmap(lambda d: st.tuples(vectors(d, 3), vectors(d, 2))))
def test_contains_after_sum(pair):
    vs, ws = pair
    d = len(vs[0])
    u = Subspace.span(d, vs)
    w = Subspace.span(d, ws)
    total = subspace_sum(u, w)
    assert contains(total, u) and contains(total, w)
    if contains(u, w) and contains(w, u):
        assert u == w


def test_contains_examples():
    full = Subspace.full(2)
    line = Subspace.span(2, [(1, 0)])
    skew = Subspace.span(2, [(1, 1)])
    assert contains(full, line)
    assert contains(line, Subspace.zero(2))
    assert not contains(line, skew)


def test_span_canonical_under_shuffle():
    a = Subspace.span(3, [(1, 2, 3), (0, 1, 1), (1, 3, 4)])
    b = Subspace.span(3, [(0, 1, 1), (1, 3, 4), (1, 2, 3)])
    assert a == b and a.basis.entries == b.basis.entries


# -- signatures ----------------------------------------------------------------


def test_signature_identity():
    assert signature(RatMatrix.identity(3)) == (3, 0, 0)


def test_signature_hyperbolic():
    assert signature(M([[0, 1], [1, 0]])) == (1, 1, 0)


def test_signature_diagonal():
    assert signature(M([[2, 0, 0], [0, -3, 0], [0, 0, 0]])) == (1, 1, 1)


def test_signature_rejects_asymmetric():
    with pytest.raises(InvalidForm):
        signature(M([[0, 1], [2, 0]]))
    with pytest.raises(InvalidForm):
        signature(RatMatrix.zeros(2, 3))


def symmetric_matrix(dim, lo=-3, hi=3):
    return st.lists(
        st.lists(st.integers(lo, hi), min_size=dim, max_size=dim),
        min_size=dim,
        max_size=dim,
    ).map(lambda rows: _symmetrize(rows))


def _symmetrize(rows):
    n = len(rows)
    out = [[rows[i][j] + rows[j][i] for j in range(n)] for i in range(n)]
    return M(out, cols=n)


def unitriangular(dim, rng_rows):
    rows = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        rows[i][i] = 1
        for j in range(i + 1, dim):
            rows[i][j] = rng_rows[i][j]
    return M(rows, cols=dim)


@settings(max_examples=60)
@given(
    st.integers(2, 4).flatmap(
        lambda d: st.tuples(
            symmetric_matrix(d),
            st.lists(st.lists(st.integers(-2, 2), min_size=d, max_size=d),
                     min_size=d, max_size=d),
        )
    )
)
def test_signature_congruence_invariant(args):
    s, trows = args
    t = unitriangular(s.rows, trows)
    assert signature(s) == signature(t.transpose() @ s @ t)


# -- quotients ------------------------------------------------------------------


def test_quotient_map_zero_subspace():
    q = quotient_map(3, Subspace.zero(3))
    assert q.shape == (3, 3) and rank(q) == 3


def test_quotient_map_full():
    q = quotient_map(2, Subspace.full(2))
    assert q.shape == (0, 2)


def test_quotient_map_line():
    u = Subspace.span(2, [(1, 0)])
    q = quotient_map(2, u)
    assert q.shape == (1, 2)
    assert q.apply((1, 0)) == (0,)
    assert kernel(q) == u


@settings(max_examples=60)
@given(st.integers(2, 5).flatmap(lambda d: vectors(d, 2)))
def test_quotient_map_kernel_matches(vs):
    d = len(vs[0])
    u = Subspace.span(d, vs)
    q = quotient_map(d, u)
    assert q.rows == d - u.dim
    assert kernel(q) == u


def test_solve_consistency():
    a = M([[1, 2], [3, 4]])
    x = solve(a, (5, 11))
    assert x is not None and a.apply(x) == (5, 11)
    assert solve(M([[1, 1], [1, 1]]), (0, 1)) is None
