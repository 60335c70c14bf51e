"""Random instance generators shared by the test modules."""

from __future__ import annotations

import random

import numpy as np

from herglotz.arith import GaussRat, Rat
from herglotz.linalg import CMat, MatRatFn
from herglotz.matrix import PartialFractionRep
from herglotz.poly import Poly
from herglotz.ratfn import RatFn

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def rand_rat(rng: random.Random, lo: int = -10, hi: int = 10, den: int = 4) -> Rat:
    return Rat(rng.randint(lo * den, hi * den), rng.randint(1, den))


def rand_vector(rng: random.Random, n: int, complex_: bool = False) -> list[GaussRat]:
    return [GaussRat(rng.randint(-3, 3), rng.randint(-2, 2) if complex_ else 0) for _ in range(n)]


def outer(v: list[GaussRat]) -> CMat:
    return CMat([[a * b.conjugate() for b in v] for a in v])


def rand_psd(rng: random.Random, n: int, rank: int | None = None, complex_: bool = False) -> CMat:
    """Sum of ``rank`` outer products v v* of small Gaussian-integer vectors."""
    r = rng.randint(0, n) if rank is None else rank
    M = CMat.zeros(n)
    for _ in range(r):
        M = M + outer(rand_vector(rng, n, complex_))
    return M


def rand_hermitian(rng: random.Random, n: int, complex_: bool = False) -> CMat:
    rows = [[GaussRat(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = GaussRat(rand_rat(rng, -3, 3))
        for j in range(i + 1, n):
            rows[i][j] = GaussRat(rand_rat(rng, -3, 3), rand_rat(rng, -3, 3) if complex_ else 0)
            rows[j][i] = rows[i][j].conjugate()
    return CMat(rows)


def make_indefinite(rng: random.Random, A: CMat) -> CMat:
    """A - t·w wᵀ with t chosen so the Rayleigh quotient at w is below -1/4."""
    n = A.n
    w = [GaussRat(0)] * n
    while all(not x for x in w):
        w = rand_vector(rng, n)
    ww = sum((x * x.conjugate()).re for x in w)
    quad = sum((w[i].conjugate() * A.rows[i][j] * w[j]).re for i in range(n) for j in range(n))
    t = (quad + ww / 4) / (ww * ww) + 1
    return A - outer(w).scale(GaussRat(t))


def random_herglotz_rep(rng: random.Random, n: int | None = None, max_poles: int = 5,
                        complex_: bool | None = None) -> PartialFractionRep:
    """C + Dz + Σ A_j(1/(z_j - z) - z_j/(1+z_j²)) with PSD A_j, D and Hermitian C."""
    n = n or rng.choice([2, 3, 4])
    cplx = rng.random() < 0.5 if complex_ is None else complex_
    k = rng.randint(1, max_poles)
    poles = sorted({rand_rat(rng, -10, 10, 2) for _ in range(k)})
    terms = []
    for z in poles:
        A = CMat.zeros(n)
        while A.is_zero():
            A = rand_psd(rng, n, rng.randint(1, n), cplx)
        terms.append((z, A))
    D = rand_psd(rng, n, rng.randint(0, 1), cplx)
    C = rand_hermitian(rng, n, cplx)
    return PartialFractionRep.from_terms(C, D, terms)


def perturb_rep(rng: random.Random, rep: PartialFractionRep) -> PartialFractionRep:
    terms = list(rep.terms)
    j = rng.randrange(len(terms))
    z, A = terms[j]
    terms[j] = (z, make_indefinite(rng, A))
    return PartialFractionRep.from_terms(rep.C, rep.D, terms)


def min_eig(M: CMat) -> float:
    return float(np.linalg.eigvalsh(M.to_numpy()).min())


def real_rooted_poly(rng: random.Random, roots: list[Rat]) -> Poly:
    p = Poly.real([1])
    for r in roots:
        p = p * Poly.real([-r, 1])
    return p


def rand_matrix(rng: random.Random, n: int, m: int | None = None, rank: int | None = None) -> CMat:
    """Random Gaussian-integer matrix of the given rank as a product F G."""
    m = m or n
    r = rng.randint(0, min(n, m)) if rank is None else rank
    if not r:
        return CMat.zeros(n, m)
    F = CMat([[GaussRat(rng.randint(-3, 3), rng.randint(-2, 2)) for _ in range(r)] for _ in range(n)])
    G = CMat([[GaussRat(rng.randint(-3, 3), rng.randint(-2, 2)) for _ in range(m)] for _ in range(r)])
    return F @ G


def random_constant_kernel(rng: random.Random) -> MatRatFn:
    """V F(z) V* with V of full column rank k and F(z) invertible for nonreal z."""
    n = rng.randint(1, 4)
    k = rng.randint(1, n)
    while True:
        V = rand_matrix(rng, n, k, rank=k)
        if V.rank() == k:
            break
    # F = zI - S with S Hermitian is invertible off the real axis
    S = rand_hermitian(rng, k, complex_=True)
    F = MatRatFn.scalar(RatFn.z(), k) - MatRatFn.from_const(S)
    Vm = MatRatFn.from_const(V)
    return Vm @ F @ MatRatFn.from_const(V.adjoint())
