from __future__ import annotations

import random

import pytest

from herglotz.arith import GaussRat, Rat
from herglotz.debranges import (
    DeBrangesInput,
    R_from_Q_subspace,
    build_RQ,
    check_debranges,
    check_hb_n,
    inner_check,
    schur_quotient,
    split_AB,
    upper_halfplane_root_count,
)
from herglotz.errors import SingularE, SingularEPlus, SubspaceTooSmall
from herglotz.linalg import CMat, MatRatFn, projection_onto_colspace
from herglotz.matrix import verify_criterion_ii
from herglotz.poly import Poly
from herglotz.ratfn import RatFn
from herglotz.scalar import classical_hb_check

from helpers import rand_rat, random_herglotz_rep

Z = RatFn.z()
I = GaussRat(0, 1)
B1 = (Z - I) / (Z + I)
# a rational orthogonal matrix, used to mix diagonal Blaschke products
ROT = CMat([[Rat(3, 5), Rat(4, 5)], [Rat(-4, 5), Rat(3, 5)]])


def failed_conditions(v):
    return [c.condition for c in v.checks if c.failed]


def test_schur_quotient_examples():
    assert schur_quotient(DeBrangesInput(MatRatFn([[Z - I]]), MatRatFn([[Z + I]]))) == MatRatFn([[B1]])
    s = schur_quotient(DeBrangesInput(MatRatFn.scalar(Z - I, 2), MatRatFn.scalar(Z + I, 2)))
    assert s == MatRatFn.scalar(B1, 2)
    Ep = MatRatFn([[Z + I, 1], [0, Z + I]])
    s = schur_quotient(DeBrangesInput(Ep.sharp(), Ep))
    assert Ep @ s == Ep.sharp()
    with pytest.raises(SingularEPlus):
        schur_quotient(DeBrangesInput(MatRatFn.identity(2), MatRatFn([[1, 1], [1, 1]])))


def test_inner_check_examples():
    assert inner_check(MatRatFn([[B1]])).accepted
    v = inner_check(MatRatFn([[RatFn.const(Rat(1, 2))]]))
    assert v.rejected and v.checks[0].witness["defect"] == "3/4"
    assert inner_check(MatRatFn([[B1 * B1]])).accepted


def test_build_RQ_examples():
    data = build_RQ(MatRatFn([[B1]]))
    assert data.R == MatRatFn([[GaussRat(0, -2) / (Z + I)]])
    assert data.Rplus == MatRatFn([[I * (Z + I) / 2]])
    assert data.Q == MatRatFn([[Z]])
    data = build_RQ(MatRatFn.identity(2))
    assert data.R.is_zero() and data.Rplus.is_zero() and data.Q.is_zero()
    assert build_RQ(MatRatFn([[(Z + I) / (Z - I)]])).Q == MatRatFn([[-Z]])


def test_check_debranges_examples():
    v = check_debranges(DeBrangesInput(MatRatFn.scalar(Z - I, 2), MatRatFn.scalar(Z + I, 2)))
    assert v.accepted and v.data.Q == MatRatFn.scalar(Z, 2)
    assert [c.result for c in v.checks if c.condition == "bounded_type"] == ["vacuous"]
    v = check_debranges(DeBrangesInput(MatRatFn.scalar(Z + I, 2), MatRatFn.scalar(Z - I, 2)))
    assert v.rejected and "herglotz_Q" in failed_conditions(v)
    assert v.data.Q == MatRatFn.scalar(-Z, 2)
    v = check_debranges(DeBrangesInput(MatRatFn([[(Z - I) / 2]]), MatRatFn([[Z + I]])))
    assert v.rejected and failed_conditions(v)[0] == "inner"


def test_check_hb_n_examples():
    assert check_hb_n(MatRatFn.scalar(Z + I, 2)).accepted
    assert check_hb_n(MatRatFn.scalar(Z - I, 2)).rejected
    v = check_hb_n(MatRatFn.identity(2))
    assert v.accepted and v.data.Q.is_zero()
    with pytest.raises(SingularE):
        check_hb_n(MatRatFn.zeros(2))


def test_R_from_Q_subspace_examples():
    assert R_from_Q_subspace(MatRatFn.zeros(1), CMat([[1]])) == MatRatFn([[-2]])
    assert R_from_Q_subspace(MatRatFn([[Z]]), CMat([[1]])) == MatRatFn([[GaussRat(0, -2) / (Z + I)]])
    R = R_from_Q_subspace(MatRatFn.zeros(2), CMat([[1], [0]]))
    assert R == MatRatFn.diag([-2, 0])
    with pytest.raises(SubspaceTooSmall):
        R_from_Q_subspace(MatRatFn.diag([Z, Z]), CMat([[1], [0]]))


def test_split_AB_examples():
    A, B = split_AB(DeBrangesInput(MatRatFn([[Z - I]]), MatRatFn([[Z + I]])))
    assert A == MatRatFn([[Z]]) and B == MatRatFn([[1]])
    E = MatRatFn([[Z + 3, 1], [0, Z * Z]])
    assert split_AB(DeBrangesInput(E, E))[1].is_zero()
    A, B = split_AB(DeBrangesInput(MatRatFn.scalar(Z - I, 2), MatRatFn.scalar(Z + I, 2)))
    assert A == MatRatFn.scalar(Z, 2) and B == MatRatFn.identity(2)
    assert B.inverse() @ A == build_RQ(MatRatFn.scalar(B1, 2)).Q


def test_upper_halfplane_root_count():
    assert upper_halfplane_root_count(Poly([I, 1])) == 0
    assert upper_halfplane_root_count(Poly([-I, 1])) == 1
    assert upper_halfplane_root_count(Poly.real([1, 0, 1])) == 1
    assert upper_halfplane_root_count(Poly.real([-2, 0, 1])) == 0


# --- random Blaschke products ----------------------------------------------


def blaschke_factors(rng: random.Random, k: int) -> tuple[RatFn, RatFn]:
    """Numerator and denominator of a product of factors (z - w)/(z - conj w), Im w > 0."""
    num, den = RatFn.const(1), RatFn.const(1)
    for _ in range(k):
        w = GaussRat(rand_rat(rng, -5, 5), Rat(rng.randint(1, 12), rng.randint(1, 4)))
        num = num * (Z - w)
        den = den * (Z - w.conjugate())
    return num, den


def random_blaschke_input(rng: random.Random, n: int, mix: bool = False) -> DeBrangesInput:
    nums, dens = zip(*(blaschke_factors(rng, rng.randint(0, 2)) for _ in range(n)))
    Em, Ep = MatRatFn.diag(list(nums)), MatRatFn.diag(list(dens))
    if mix:
        V = MatRatFn.from_const(ROT)
        Vt = MatRatFn.from_const(ROT.transpose())
        Em, Ep = V @ Em @ Vt, V @ Ep @ Vt
    return DeBrangesInput(Em, Ep)


def test_blaschke_products_give_herglotz_Q():
    rng = random.Random(41)
    for trial in range(15):
        data = random_blaschke_input(rng, 2, mix=trial % 2 == 1)
        v = check_debranges(data)
        assert v.accepted, v.to_text()
        assert verify_criterion_ii(v.data.Q).accepted
        # halve one entry of E_minus: no longer inner
        rows = [list(r) for r in data.E_minus.rows]
        rows[0][0] = rows[0][0] * Rat(1, 2)
        bad = check_debranges(DeBrangesInput(MatRatFn(rows), data.E_plus))
        assert bad.rejected and "inner" in failed_conditions(bad)


def test_proof_identity_at_random_points():
    rng = random.Random(43)
    for _ in range(4):
        data = random_blaschke_input(rng, 2, mix=True)
        sd = build_RQ(schur_quotient(data))
        ident = CMat.identity(2)
        done = 0
        while done < 10:
            z = GaussRat(rand_rat(rng, -4, 4), Rat(rng.randint(1, 16), 4))
            if sd.s.has_pole_at(z) or sd.Q.has_pole_at(z):
                continue
            s, R, Q = sd.s(z), sd.R(z), sd.Q(z)
            lhs = R.adjoint() @ (ident - s @ s.adjoint()) @ R
            rhs = R.adjoint() @ R @ Q.imag_part() @ R.adjoint() @ R
            assert lhs == rhs
            done += 1


def test_herglotz_kernel_is_constant_and_self_adjoint():
    rng = random.Random(47)
    pts = [I, GaussRat(0, 2), GaussRat(1, 1), -I]
    for _ in range(10):
        # V q V* with q a 2x2 Herglotz function has a non-trivial kernel in C^3
        V = CMat([[1, 0], [1, 1], [0, 2]])
        q = random_herglotz_rep(rng, n=2).to_matratfn()
        Q = MatRatFn.from_const(V) @ q @ MatRatFn.from_const(V.adjoint())
        kernels = set()
        for z in pts:
            if Q.has_pole_at(z):
                continue
            M = Q(z)
            if z.im > 0:
                assert M.kernel_rref() == M.adjoint().kernel_rref()
            kernels.add(M.kernel_rref())
        assert len(kernels) == 1


def test_R_from_Q_round_trip():
    rng = random.Random(53)
    W = CMat([[1, 0], [GaussRat(1, 1), 1], [0, 2]])
    P = projection_onto_colspace(W)
    for _ in range(8):
        inner = random_herglotz_rep(rng, n=2).to_matratfn()
        Q = MatRatFn.from_const(W) @ inner @ MatRatFn.from_const(W.adjoint())
        for L in (W, CMat.identity(3)):
            R = R_from_Q_subspace(Q, L)
            sd = build_RQ(R + MatRatFn.identity(3))
            assert sd.Q == Q
            PL = projection_onto_colspace(L) if L is W else CMat.identity(3)
            for z in (I, GaussRat(1, 2)):
                Rz = R(z)
                assert Rz.rank() == L.rank() and PL @ Rz == Rz
        assert P @ Q(I) == Q(I)


def random_scalar_E(rng: random.Random) -> Poly:
    """Polynomial with nonreal roots and no conjugate pair among them."""
    while True:
        roots = []
        for _ in range(rng.randint(1, 6)):
            roots.append(GaussRat(rand_rat(rng, -3, 3, 2), Rat(rng.randint(1, 6), 2) * rng.choice([1, 1, -1])))
        if any(r.conjugate() in roots for r in roots) or len(set(roots)) < len(roots):
            continue
        return Poly.from_roots(roots).scale(GaussRat(rng.choice([1, 2, -3])))


def test_scalar_consistency_with_classical_hb():
    rng = random.Random(59)
    for _ in range(40):
        E = random_scalar_E(rng)
        A, B = E.real_part(), E.imag_part()
        if B.is_zero():
            continue
        e = RatFn.from_poly(E)
        v = check_debranges(DeBrangesInput(MatRatFn([[e.sharp()]]), MatRatFn([[e]])))
        assert not v.undecided
        assert v.accepted == classical_hb_check(A, B).accepted
