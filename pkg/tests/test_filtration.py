import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import jordan_graded_dims
from wsscheck.errors import InvalidOperator
from wsscheck.filtration import (
    Filtration,
    NilpotentOp,
    compare_shifted,
    monodromy_filtration,
    verify_monodromy_axioms,
)
from wsscheck.ratlin import RatMatrix, Subspace, image


def jordan_matrix(sizes):
    n = sum(sizes)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for s in sizes:
        for t in range(s - 1):
            rows[off + t][off + t + 1] = 1
        off += s
    return RatMatrix.from_rows(rows, cols=n) if n else RatMatrix.zeros(0, 0)


def random_conjugator(n, rng):
    upper = [[0] * n for _ in range(n)]
    lower = [[0] * n for _ in range(n)]
    for i in range(n):
        upper[i][i] = lower[i][i] = 1
        for j in range(i + 1, n):
            upper[i][j] = rng.randint(-2, 2)
            lower[j][i] = rng.randint(-2, 2)
    return RatMatrix.from_rows(upper, cols=n) @ RatMatrix.from_rows(lower, cols=n)


def test_build_rejects_non_nilpotent():
    with pytest.raises(InvalidOperator):
        NilpotentOp.build(RatMatrix.identity(2))


def test_nilpotency_index():
    assert NilpotentOp.build(RatMatrix.zeros(3, 3)).nilpotency_index == 1
    assert NilpotentOp.build(jordan_matrix([4])).nilpotency_index == 4


def test_zero_operator_filtration():
    op = NilpotentOp.build(RatMatrix.zeros(4, 4))
    f = monodromy_filtration(op, 0)
    assert f.step(-1).dim == 0 and f.step(0).dim == 4
    assert verify_monodromy_axioms(op, f).ok


def test_jordan_two_block():
    op = NilpotentOp.build(jordan_matrix([2]))
    f = monodromy_filtration(op, 0)
    assert f.step(-2).dim == 0
    assert f.step(-1) == f.step(0) == image(op.matrix)
    assert f.step(1).dim == 2
    assert verify_monodromy_axioms(op, f).ok


def test_jordan_three_block():
    op = NilpotentOp.build(jordan_matrix([3]))
    f = monodromy_filtration(op, 0)
    assert [f.step(i).dim for i in range(-3, 3)] == [0, 1, 1, 2, 2, 3]
    assert [f.graded_dim(k) for k in range(-2, 3)] == [1, 0, 1, 0, 1]


def test_axioms_fail_on_trivial_filtration_for_j2():
    # N maps the full space onto its image, so the lowering axiom breaks at 0
    op = NilpotentOp.build(jordan_matrix([2]))
    triv = Filtration.from_steps(2, 0, [(0, Subspace.full(2))])
    report = verify_monodromy_axioms(op, triv)
    assert not report.ok
    assert dict(report.lowering)[0] is False


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.integers(-3, 3))
def test_graded_dims_match_jordan_oracle(sizes, center):
    op = NilpotentOp.build(jordan_matrix(sizes))
    f = monodromy_filtration(op, center)
    e = op.nilpotency_index
    for k in range(-e - 1, e + 2):
        assert f.graded_dim(center + k) == jordan_graded_dims(sizes, k)
    assert verify_monodromy_axioms(op, f).ok


def test_base_change_invariance():
    rng = random.Random(2024)
    for _ in range(10):
        sizes = [rng.randint(1, 4) for _ in range(rng.randint(1, 3))]
        n = sum(sizes)
        nmat = jordan_matrix(sizes)
        t = random_conjugator(n, rng)
        from wsscheck.ratlin import inverse

        conj = t @ nmat @ inverse(t)
        f_plain = monodromy_filtration(NilpotentOp.build(nmat), 0)
        f_conj = monodromy_filtration(NilpotentOp.build(conj), 0)
        for idx in range(f_plain.lowest_index - 1, f_plain.highest_index + 2):
            moved = image(t @ f_plain.step(idx).basis)
            assert moved == f_conj.step(idx)


def test_determinism():
    op = NilpotentOp.build(jordan_matrix([3, 2, 2, 1]))
    f1 = monodromy_filtration(op, 5)
    f2 = monodromy_filtration(op, 5)
    assert f1 == f2


def test_compare_shifted():
    op = NilpotentOp.build(jordan_matrix([2, 1]))
    m = monodromy_filtration(op, 0)
    w = monodromy_filtration(op, 7)
    assert compare_shifted(m, w, 7)
    assert not compare_shifted(m, w, 6)
    triv0 = Filtration.from_steps(3, 0, [(0, Subspace.full(3))])
    trivw = Filtration.from_steps(3, 4, [(4, Subspace.full(3))])
    assert compare_shifted(triv0, trivw, 4)
    assert not compare_shifted(triv0, trivw, 3)


def test_shift_mismatch_detected():
    # one-dimensional discrepancy: jump at -1 versus jump exactly at the shift
    sub = Subspace.span(2, [(1, 0)])
    m = Filtration.from_steps(2, 0, [(-1, sub), (0, Subspace.full(2))])
    w = Filtration.from_steps(2, 3, [(3, sub), (4, Subspace.full(2))])
    assert not compare_shifted(m, w, 3)  # m at -1 has dim 1, w at 2 has dim 0


def test_serialization_shape():
    op = NilpotentOp.build(jordan_matrix([2]))
    doc = monodromy_filtration(op, 0).to_json_dict()
    assert [s["index"] for s in doc["steps"]] == [-2, -1, 1]
    assert all("basis" in s for s in doc["steps"])
