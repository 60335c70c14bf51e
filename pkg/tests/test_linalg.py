from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from herglotz.arith import GaussRat, Rat
from herglotz.errors import ConstantKernelViolated, IndexOutOfRange, NotHermitian, RankDeficient
from herglotz.linalg import (
    CMat,
    MatRatFn,
    index_sets,
    is_psd,
    moore_penrose_const,
    moore_penrose_ratfn,
    mp_axioms_hold,
    principal_submatrix,
    projection_onto_colspace,
    sample_points,
)
from herglotz.ratfn import RatFn

from helpers import rand_hermitian, rand_matrix, random_constant_kernel

Z = RatFn.z()
I = GaussRat(0, 1)


def test_index_sets_order():
    assert list(index_sets(3)) == [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]
    assert list(index_sets(4, 3))[0] == (1, 2, 3)


def test_principal_submatrix_examples():
    M = CMat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert principal_submatrix(M, (1, 3)) == CMat([[1, 3], [7, 9]])
    assert principal_submatrix(M, (1, 2, 3)) == M
    assert principal_submatrix(CMat.diag([1, 2, 3]), (2,)) == CMat([[2]])
    Q = MatRatFn([[Z, 1], [1, -1 / Z]])
    assert principal_submatrix(Q, (2,)) == MatRatFn([[-1 / Z]])
    with pytest.raises(IndexOutOfRange):
        principal_submatrix(M, (0, 2))
    with pytest.raises(IndexOutOfRange):
        principal_submatrix(M, (2, 1))


def test_is_psd_examples():
    assert not is_psd(CMat([[1, 2], [2, 1]]))
    assert is_psd(CMat.identity(3))
    assert is_psd(CMat([[1, 1], [1, 1]]))
    with pytest.raises(NotHermitian):
        is_psd(CMat([[1, 2], [0, 1]]))


def test_is_psd_agrees_with_eigenvalues():
    # oracle: numpy eigvalsh, skipping matrices with an eigenvalue near 0
    rng = random.Random(4)
    checked = 0
    while checked < 150:
        n = rng.randint(1, 4)
        M = rand_hermitian(rng, n, complex_=rng.random() < 0.5)
        if rng.random() < 0.5:
            M = M @ M
        eig = np.linalg.eigvalsh(M.to_numpy())
        if np.min(np.abs(eig)) < 1e-6:
            continue
        assert is_psd(M) == (eig.min() >= -1e-9)
        checked += 1


def test_moore_penrose_const_examples():
    assert moore_penrose_const(CMat.diag([1, 0])) == CMat.diag([1, 0])
    ones = CMat([[1, 1], [1, 1]])
    assert moore_penrose_const(ones) == ones.scale(Rat(1, 4))
    assert moore_penrose_const(CMat.zeros(3)) == CMat.zeros(3)


def test_moore_penrose_const_random():
    # oracle: numpy pinv on the same matrix
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randint(1, 5)
        T = rand_matrix(rng, n)
        Tp = moore_penrose_const(T)
        assert mp_axioms_hold(T, Tp)
        assert moore_penrose_const(Tp) == T
        assert np.allclose(Tp.to_numpy(), np.linalg.pinv(T.to_numpy()), atol=1e-8)
        lam = GaussRat(rng.randint(1, 4), rng.randint(-3, 3))
        assert moore_penrose_const(T.scale(lam)) == Tp.scale(lam.inverse())
        assert T.kernel_rref() == (Tp @ T).kernel_rref()


def test_moore_penrose_rectangular():
    rng = random.Random(12)
    for _ in range(20):
        T = rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        assert mp_axioms_hold(T, moore_penrose_const(T))


def test_projection_examples():
    e1 = CMat([[1], [0], [0]])
    assert projection_onto_colspace(e1) == CMat.diag([1, 0, 0])
    assert projection_onto_colspace(CMat([[1], [1]])) == CMat([[1, 1], [1, 1]]).scale(Rat(1, 2))
    assert projection_onto_colspace(CMat.identity(2)) == CMat.identity(2)
    with pytest.raises(RankDeficient):
        projection_onto_colspace(CMat([[1, 2], [2, 4]]))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=2, max_size=6))
def test_projection_is_hermitian_idempotent(entries):
    col = [GaussRat(a, b) for a, b in entries]
    if not any(col):
        return
    P = projection_onto_colspace(CMat([[c] for c in col]))
    assert P.is_hermitian() and P @ P == P and P.rank() == 1


def test_moore_penrose_ratfn_examples():
    R = MatRatFn.scalar(GaussRat(0, -2) / (Z + I), 2)
    assert moore_penrose_ratfn(R) == MatRatFn.scalar(I * (Z + I) / 2, 2)
    assert moore_penrose_ratfn(MatRatFn.diag([Z, 0])) == MatRatFn.diag([1 / Z, 0])
    with pytest.raises(ConstantKernelViolated):
        moore_penrose_ratfn(MatRatFn([[1, Z], [0, 0]]))


def test_moore_penrose_ratfn_random():
    rng = random.Random(17)
    for _ in range(25):
        T = random_constant_kernel(rng)
        Tp = moore_penrose_ratfn(T)
        assert T @ Tp @ T == T and Tp @ T @ Tp == Tp
        left, right = T @ Tp, Tp @ T
        assert left.is_constant() and left.constant_value().is_hermitian()
        assert right.is_constant() and right.constant_value().is_hermitian()
        assert moore_penrose_ratfn(Tp) == T
        for z in sample_points(T, Tp):
            assert T(z).kernel_rref() == right(z).kernel_rref()


def test_matratfn_algebra():
    A = MatRatFn([[Z, 1], [0, 1 / Z]])
    assert A @ A.inverse() == MatRatFn.identity(2)
    assert A.det() == RatFn.const(1)
    assert A.sharp() == MatRatFn([[Z, 0], [1, 1 / Z]])
    assert A(GaussRat(2)) == CMat([[2, 1], [0, Rat(1, 2)]])
    assert MatRatFn([[Z, Z], [Z, Z]]).rank() == 1
