import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cohom32.config import ResourceCapError, get_config, set_config
from cohom32.f2 import BitMatrix, f2_matmul, naive_rank, pack_rows, rank, rref, unpack_rows

matrices = st.integers(0, 12).flatmap(
    lambda r: st.integers(1, 140).flatmap(lambda c: arrays(np.uint8, (r, c), elements=st.integers(0, 1)))
)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_matches_textbook_elimination(m):
    assert rank(BitMatrix.from_dense(m)) == naive_rank(m)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_pack_roundtrip(m):
    assert np.array_equal(unpack_rows(pack_rows(m), m.shape[1]), m)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_vectors_annihilate(m):
    M = BitMatrix.from_dense(m)
    red = rref(M, track=True)
    ker = red.left_kernel()
    assert len(ker) == m.shape[0] - red.rank
    for v in ker:
        assert not f2_matmul(v[None, :], m).any()


@settings(max_examples=60, deadline=None)
@given(matrices, st.data())
def test_span_membership_and_witness(m, data):
    if m.shape[0] == 0:
        return
    coeffs = data.draw(arrays(np.uint8, m.shape[0], elements=st.integers(0, 1)))
    v = f2_matmul(coeffs[None, :], m)[0]
    ok, wit = rref(BitMatrix.from_dense(m), track=True).in_span(v)
    assert ok
    assert np.array_equal(f2_matmul(wit[None, :], m)[0], v)


def test_rref_is_canonical_and_reduced():
    rng = np.random.default_rng(3)
    m = rng.integers(0, 2, size=(30, 90), dtype=np.uint8)
    perm = rng.permutation(30)
    a = rref(BitMatrix.from_dense(m))
    b = rref(BitMatrix.from_dense(m[perm]))
    assert a.pivots == b.pivots
    assert np.array_equal(a.reduced[: a.rank], b.reduced[: b.rank])
    R = unpack_rows(a.reduced[: a.rank], 90)
    for i, c in enumerate(a.pivots):
        assert R[:, c].sum() == 1 and R[i, c] == 1


def test_threaded_elimination_agrees():
    rng = np.random.default_rng(5)
    M = BitMatrix.random(600, 700, rng)
    a = rref(M, threads=1)
    b = rref(M, threads=4)
    assert a.pivots == b.pivots and np.array_equal(a.reduced, b.reduced)


def test_solver_solves_and_rejects():
    m = np.array([[1, 0, 1, 0], [0, 1, 1, 0]], dtype=np.uint8)
    s = rref(BitMatrix.from_dense(m), track=True).solver()
    x = s.solve(np.array([1, 1, 0, 0], dtype=np.uint8))
    assert np.array_equal(f2_matmul(x[None, :], m)[0], [1, 1, 0, 0])
    with pytest.raises(ArithmeticError):
        s.solve(np.array([0, 0, 0, 1], dtype=np.uint8))


def test_identity_and_transpose():
    assert rank(BitMatrix.identity(70)) == 70
    m = np.random.default_rng(0).integers(0, 2, size=(5, 67), dtype=np.uint8)
    assert np.array_equal(BitMatrix.from_dense(m).transpose().to_dense(), m.T)


def test_memory_cap_is_a_hard_error():
    prev = set_config(get_config().replace(memory_cap=64 << 20))
    try:
        with pytest.raises(ResourceCapError):
            rref(BitMatrix.zeros(30000, 1), track=True)
    finally:
        set_config(prev)
