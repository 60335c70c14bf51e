"""Exact complex linear algebra over Q(i) and over rational functions."""

from __future__ import annotations

from itertools import combinations
from typing import Any, Iterable, Iterator, Sequence

import numpy as np

from .arith import ONE, ZERO, GaussRat, dump_number, parse_number
from .errors import (
    ConstantKernelViolated,
    IndexOutOfRange,
    KernelAdjointMismatch,
    MalformedInput,
    NotHermitian,
    RankDeficient,
)
from .poly import Poly
from .ratfn import RatFn
from .roots import RealRoot, sign_at, vanishes_at

_G0 = GaussRat(0)
_G1 = GaussRat(1)

IndexSet = tuple  # strictly increasing 1-based indices


def index_sets(n: int, m: int | None = None) -> Iterator[tuple[int, ...]]:
    """Index sets of size m (or of every size 1..n), by size then lexicographically."""
    sizes = [m] if m is not None else range(1, n + 1)
    for k in sizes:
        yield from combinations(range(1, n + 1), k)


def _check_index_set(n: int, idx: Sequence[int]) -> tuple[int, ...]:
    idx = tuple(int(i) for i in idx)
    if not idx:
        raise IndexOutOfRange("empty index set")
    if any(i < 1 or i > n for i in idx):
        raise IndexOutOfRange(f"index set {list(idx)} out of range 1..{n}")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise IndexOutOfRange(f"index set {list(idx)} is not strictly increasing")
    return idx


# ---------------------------------------------------------------------------
# Constant matrices
# ---------------------------------------------------------------------------


def _g(x: Any) -> GaussRat:
    return x if isinstance(x, GaussRat) else GaussRat.coerce(x)


class CMat:
    """Rectangular matrix over Q(i), stored as a tuple of row tuples."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[Any]]):
        self.rows: tuple[tuple[GaussRat, ...], ...] = tuple(tuple(_g(x) for x in r) for r in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise MalformedInput("ragged matrix")

    @classmethod
    def _raw(cls, rows: Sequence[Sequence[GaussRat]]) -> CMat:
        m = cls.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        return m

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> CMat:
        m = n if m is None else m
        return cls._raw([[_G0] * m for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> CMat:
        return cls._raw([[_G1 if i == j else _G0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence[Any]) -> CMat:
        n = len(values)
        return cls._raw([[_g(values[i]) if i == j else _G0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Any]]) -> CMat:
        if not cols:
            raise ValueError("need at least one column")
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, key: tuple[int, int]) -> GaussRat:
        i, j = key
        return self.rows[i][j]

    def column(self, j: int) -> list[GaussRat]:
        return [r[j] for r in self.rows]

    def columns(self, js: Sequence[int]) -> CMat:
        return CMat._raw([[r[j] for j in js] for r in self.rows])

    def __add__(self, other: CMat) -> CMat:
        return CMat._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: CMat) -> CMat:
        return CMat._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> CMat:
        return CMat._raw([[-a for a in r] for r in self.rows])

    def scale(self, c: Any) -> CMat:
        c = _g(c)
        return CMat._raw([[a * c for a in r] for r in self.rows])

    def __matmul__(self, other: CMat) -> CMat:
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc_re = ZERO
                acc_im = ZERO
                for a, b in zip(r, c):
                    acc_re += a.re * b.re - a.im * b.im
                    acc_im += a.re * b.im + a.im * b.re
                row.append(GaussRat(acc_re, acc_im))
            out.append(row)
        return CMat._raw(out)

    __mul__ = __matmul__

    def adjoint(self) -> CMat:
        return CMat._raw([[a.conjugate() for a in col] for col in zip(*self.rows)])

    H = property(adjoint)

    def transpose(self) -> CMat:
        return CMat._raw([list(col) for col in zip(*self.rows)])

    def conj(self) -> CMat:
        return CMat._raw([[a.conjugate() for a in r] for r in self.rows])

    def real_part(self) -> CMat:
        """(M + M*)/2."""
        return (self + self.adjoint()).scale(GaussRat(ONE / 2))

    def imag_part(self) -> CMat:
        """(M - M*)/(2i)."""
        return (self - self.adjoint()).scale(GaussRat(ZERO, -ONE / 2))

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def is_hermitian(self) -> bool:
        n, m = self.shape
        if n != m:
            return False
        return all(self.rows[i][j] == self.rows[j][i].conjugate() for i in range(n) for j in range(i, n))

    def is_real(self) -> bool:
        return all(a.is_real() for r in self.rows for a in r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CMat):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(a) for a in r) for r in self.rows)
        return f"CMat([{body}])"

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(a) for a in r] for r in self.rows], dtype=complex).reshape(self.shape)

    def to_json(self) -> list[list[Any]]:
        return [[dump_number(a) for a in r] for r in self.rows]

    @classmethod
    def from_json(cls, data: Any) -> CMat:
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise MalformedInput("matrix must be a list of rows")
        return cls([[parse_number(x) for x in r] for r in data])

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple[CMat, list[int]]:
        """Reduced row echelon form and pivot columns."""
        rows = [list(r) for r in self.rows]
        n, m = self.shape
        pivots: list[int] = []
        r = 0
        for c in range(m):
            if r >= n:
                break
            p = next((k for k in range(r, n) if rows[k][c]), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            inv = rows[r][c].inverse()
            rows[r] = [a * inv for a in rows[r]]
            for k in range(n):
                if k != r and rows[k][c]:
                    f = rows[k][c]
                    rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
            pivots.append(c)
            r += 1
        return CMat._raw(rows), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[GaussRat]]:
        """Basis of the kernel in canonical form (free variable = 1, others 0)."""
        R, pivots = self.rref()
        m = self.shape[1]
        free = [c for c in range(m) if c not in pivots]
        basis = []
        for f in free:
            v = [_G0] * m
            v[f] = _G1
            for row, pc in enumerate(pivots):
                v[pc] = -R.rows[row][f]
            basis.append(v)
        return basis

    def kernel_rref(self) -> CMat:
        """Canonical description of ker M: the RREF of its basis vectors as rows."""
        basis = self.nullspace()
        if not basis:
            return CMat._raw([])
        R, pivots = CMat._raw(basis).rref()
        return CMat._raw(R.rows[: len(pivots)])

    def det(self) -> GaussRat:
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        rows = [list(r) for r in self.rows]
        d = _G1
        for c in range(n):
            p = next((k for k in range(c, n) if rows[k][c]), None)
            if p is None:
                return _G0
            if p != c:
                rows[c], rows[p] = rows[p], rows[c]
                d = -d
            piv = rows[c][c]
            d = d * piv
            inv = piv.inverse()
            for k in range(c + 1, n):
                if rows[k][c]:
                    f = rows[k][c] * inv
                    rows[k] = [a - f * b for a, b in zip(rows[k], rows[c])]
        return d

    def inverse(self) -> CMat:
        n, m = self.shape
        if n != m:
            raise ValueError("inverse of a non-square matrix")
        aug = CMat._raw([list(r) + [(_G1 if i == j else _G0) for j in range(n)] for i, r in enumerate(self.rows)])
        R, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise RankDeficient("matrix is singular")
        return CMat._raw([r[n:] for r in R.rows])


def as_cmat(M: Any) -> CMat:
    return M if isinstance(M, CMat) else CMat(M)


def principal_submatrix(M: Any, idx: Sequence[int]) -> Any:
    """Rows and columns idx (1-based) of a CMat or MatRatFn."""
    n = M.n
    idx = _check_index_set(n, idx)
    sel = [i - 1 for i in idx]
    rows = [[M.rows[i][j] for j in sel] for i in sel]
    return type(M)._raw(rows)


def principal_minors(M: CMat) -> Iterator[tuple[tuple[int, ...], GaussRat]]:
    for idx in index_sets(M.n):
        yield idx, principal_submatrix(M, idx).det()


def psd_witness(M: CMat) -> tuple[tuple[int, ...], GaussRat] | None:
    """First principal minor that is negative, or None if M is PSD."""
    if not M.is_hermitian():
        raise NotHermitian("matrix is not Hermitian")
    for idx, d in principal_minors(M):
        if d.re < 0:
            return idx, d
    return None


def is_psd(M: CMat) -> bool:
    """Sylvester's criterion: every principal minor of the Hermitian M is >= 0."""
    if getattr(M, "is_algebraic", False):
        return M.is_psd()
    return psd_witness(as_cmat(M)) is None


def moore_penrose_const(M: CMat) -> CMat:
    """Moore-Penrose inverse via a full-rank factorization M = F G."""
    M = as_cmat(M)
    n, m = M.shape
    R, pivots = M.rref()
    r = len(pivots)
    if r == 0:
        return CMat.zeros(m, n)
    F = M.columns(pivots)
    G = CMat._raw(R.rows[:r])
    Gh, Fh = G.adjoint(), F.adjoint()
    return Gh @ (G @ Gh).inverse() @ (Fh @ F).inverse() @ Fh


def projection_onto_colspace(V: CMat) -> CMat:
    """Orthogonal projection V(V*V)^{-1}V* onto the columns of V."""
    V = as_cmat(V)
    Vh = V.adjoint()
    gram = Vh @ V
    if gram.rank() != V.shape[1]:
        raise RankDeficient("columns are linearly dependent")
    return V @ gram.inverse() @ Vh


def mp_axioms_hold(T: CMat, Tp: CMat) -> bool:
    return (
        T @ Tp @ T == T
        and Tp @ T @ Tp == Tp
        and (T @ Tp).is_hermitian()
        and (Tp @ T).is_hermitian()
    )


# ---------------------------------------------------------------------------
# Polynomial determinants (fraction-free)
# ---------------------------------------------------------------------------


def poly_det(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Bareiss elimination on a square polynomial matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return Poly.constant(1)
    sign = 1
    prev = Poly.constant(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if p is None:
                return Poly()
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = a[i][j] * piv - a[i][k] * a[k][j]
                a[i][j] = v if k == 0 else v.exact_div(prev)
            a[i][k] = Poly()
        prev = piv
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


# ---------------------------------------------------------------------------
# Rational matrix functions
# ---------------------------------------------------------------------------


def _r(x: Any) -> RatFn:
    if isinstance(x, RatFn):
        return x
    if isinstance(x, Poly):
        return RatFn.from_poly(x)
    return RatFn.const(x)


_R0 = RatFn()
_R1 = RatFn.const(1)


class MatRatFn:
    """Square (or rectangular) matrix of rational functions."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[Any]]):
        self.rows: tuple[tuple[RatFn, ...], ...] = tuple(tuple(_r(x) for x in r) for r in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise MalformedInput("ragged matrix")

    @classmethod
    def _raw(cls, rows: Sequence[Sequence[RatFn]]) -> MatRatFn:
        m = cls.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        return m

    @classmethod
    def identity(cls, n: int) -> MatRatFn:
        return cls._raw([[_R1 if i == j else _R0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> MatRatFn:
        m = n if m is None else m
        return cls._raw([[_R0] * m for _ in range(n)])

    @classmethod
    def diag(cls, values: Sequence[Any]) -> MatRatFn:
        n = len(values)
        return cls._raw([[_r(values[i]) if i == j else _R0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, f: Any, n: int) -> MatRatFn:
        return cls.diag([f] * n)

    @classmethod
    def from_const(cls, M: CMat) -> MatRatFn:
        return cls._raw([[RatFn.const(a) for a in r] for r in M.rows])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, key: tuple[int, int]) -> RatFn:
        i, j = key
        return self.rows[i][j]

    def entries(self) -> Iterator[tuple[int, int, RatFn]]:
        for i, r in enumerate(self.rows):
            for j, f in enumerate(r):
                yield i, j, f

    def __add__(self, other: Any) -> MatRatFn:
        other = as_matratfn(other)
        return MatRatFn._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: Any) -> MatRatFn:
        other = as_matratfn(other)
        return MatRatFn._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> MatRatFn:
        return MatRatFn._raw([[-a for a in r] for r in self.rows])

    def scale(self, c: Any) -> MatRatFn:
        return MatRatFn._raw([[a * c for a in r] for r in self.rows])

    def __matmul__(self, other: Any) -> MatRatFn:
        other = as_matratfn(other)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = _R0
                for a, b in zip(r, c):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return MatRatFn._raw(out)

    def sharp(self) -> MatRatFn:
        """Q^#(z) = Q(conj z)*: transpose and conjugate coefficients."""
        return MatRatFn._raw([[a.sharp() for a in col] for col in zip(*self.rows)])

    def transpose(self) -> MatRatFn:
        return MatRatFn._raw([list(col) for col in zip(*self.rows)])

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def is_constant(self) -> bool:
        return all(a.is_constant() for r in self.rows for a in r)

    def constant_value(self) -> CMat:
        return CMat._raw([[a.constant_value() if not a.is_zero() else _G0 for a in r] for r in self.rows])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CMat):
            other = MatRatFn.from_const(other)
        if not isinstance(other, MatRatFn):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(a) for a in r) for r in self.rows)
        return f"MatRatFn([{body}])"

    def __call__(self, z: Any) -> CMat:
        return CMat._raw([[a(z) for a in r] for r in self.rows])

    def has_pole_at(self, z: Any) -> bool:
        return any(a.is_pole(z) for r in self.rows for a in r)

    def eval_float(self, z: complex) -> np.ndarray:
        return np.array([[a.eval_float(z) for a in r] for r in self.rows], dtype=complex)

    def common_denominator_rows(self) -> tuple[list[list[Poly]], list[Poly]]:
        """Polynomial rows P and row denominators L with Q_k = P_k / L_k."""
        from .poly import lcm

        prows, dens = [], []
        for r in self.rows:
            L = Poly.constant(1)
            for a in r:
                if a.den.degree > 0:
                    L = lcm(L, a.den)
            prows.append([a.num * L.exact_div(a.den) for a in r])
            dens.append(L)
        return prows, dens

    def det(self) -> RatFn:
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        prows, dens = self.common_denominator_rows()
        den = Poly.constant(1)
        for L in dens:
            den = den * L
        return RatFn(poly_det(prows), den)

    def _gauss(self, augment: MatRatFn | None = None) -> tuple[list[list[RatFn]], list[int]]:
        rows = [list(r) + (list(augment.rows[i]) if augment is not None else []) for i, r in enumerate(self.rows)]
        n, m = self.shape
        pivots: list[int] = []
        r = 0
        for c in range(m):
            if r >= n:
                break
            p = next((k for k in range(r, n) if not rows[k][c].is_zero()), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            inv = rows[r][c].inverse()
            rows[r] = [a * inv for a in rows[r]]
            for k in range(n):
                if k != r and not rows[k][c].is_zero():
                    f = rows[k][c]
                    rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
            pivots.append(c)
            r += 1
        return rows, pivots

    def rank(self) -> int:
        """Rank over the field of rational functions."""
        return len(self._gauss()[1])

    def inverse(self) -> MatRatFn:
        n, m = self.shape
        if n != m:
            raise ValueError("inverse of a non-square matrix")
        rows, pivots = self._gauss(MatRatFn.identity(n))
        if pivots != list(range(n)):
            raise RankDeficient("matrix function is singular")
        return MatRatFn._raw([r[n:] for r in rows])

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "entries": [[ratfn_to_json(a) for a in r] for r in self.rows]}


def as_matratfn(M: Any) -> MatRatFn:
    if isinstance(M, MatRatFn):
        return M
    if isinstance(M, CMat):
        return MatRatFn.from_const(M)
    return MatRatFn(M)


def ratfn_to_json(f: RatFn) -> dict[str, Any]:
    return {"num": [dump_number(c) for c in f.num.coeffs], "den": [dump_number(c) for c in f.den.coeffs]}


# ---------------------------------------------------------------------------
# Moore-Penrose inverse of rational matrix functions
# ---------------------------------------------------------------------------

SAMPLE_POINTS = (GaussRat(0, 1), GaussRat(0, 2), GaussRat(1, 1))
_FALLBACK_POINTS = tuple(GaussRat(a, b) for a, b in ((0, 3), (-1, 1), (2, 3), (-2, 5), (3, 7), (1, 4)))


def candidate_points() -> Iterator[GaussRat]:
    """i, 2i, 1+i, then a fixed sequence of further upper half-plane points."""
    yield from SAMPLE_POINTS
    yield from _FALLBACK_POINTS
    k = 5
    while True:
        yield GaussRat(k, 2 * k + 1)
        k += 1


def sample_points(*mats: MatRatFn, count: int = 3) -> list[GaussRat]:
    """The first ``count`` candidate points at which no matrix has a pole."""
    out = []
    for z in candidate_points():
        if not any(m.has_pole_at(z) for m in mats):
            out.append(z)
            if len(out) == count:
                return out
    raise AssertionError("unreachable")


def moore_penrose_ratfn(R: MatRatFn) -> MatRatFn:
    """Pseudoinverse of a rational matrix function with constant kernel and range.

    With V spanning the constant range, R⁺ = V (V*RV)^{-1} V*; the four
    axioms are then checked as exact rational identities.
    """
    n, m = R.shape
    if n != m:
        raise ValueError("square matrix function expected")
    points = sample_points(R)
    values = [R(z) for z in points]
    kernels = [v.kernel_rref() for v in values]
    for z, k in zip(points[1:], kernels[1:]):
        if k != kernels[0]:
            raise ConstantKernelViolated(f"kernel of R(z) differs between z = {points[0]} and z = {z}")
    for z, v, k in zip(points, values, kernels):
        if v.adjoint().kernel_rref() != k:
            raise KernelAdjointMismatch(f"ker R(z) != ker R(z)* at z = {z}")
    pointwise = n - len(kernels[0].rows)
    if R.rank() != pointwise:
        raise ConstantKernelViolated("generic rank differs from the rank at the sample points")
    if pointwise == 0:
        return MatRatFn.zeros(n)
    _, pivots = values[0].rref()
    V = values[0].columns(pivots)
    Vh = V.adjoint()
    Vm, Vhm = MatRatFn.from_const(V), MatRatFn.from_const(Vh)
    core = (Vhm @ R @ Vm).inverse()
    Rp = Vm @ core @ Vhm
    left, right = R @ Rp, Rp @ R
    if not (left.is_constant() and right.is_constant()):
        raise ConstantKernelViolated("R R⁺ or R⁺ R is not constant")
    if not (left.constant_value().is_hermitian() and right.constant_value().is_hermitian()):
        raise KernelAdjointMismatch("R R⁺ or R⁺ R is not Hermitian")
    if left @ R != R or Rp @ left != Rp:
        raise ConstantKernelViolated("Moore-Penrose identities fail")
    return Rp


# ---------------------------------------------------------------------------
# Matrices evaluated at a real algebraic point
# ---------------------------------------------------------------------------


class AlgebraicMatrix:
    """M(α)/h(α) for a polynomial matrix M, real polynomial h and RealRoot α."""

    is_algebraic = True

    def __init__(self, rows: Sequence[Sequence[Poly]], den: Poly, at: RealRoot):
        self.rows = [list(r) for r in rows]
        self.den = den
        self.at = at

    @property
    def n(self) -> int:
        return len(self.rows)

    def _vanishes(self, p: Poly) -> bool:
        return p.is_zero() or vanishes_at(p, self.at)

    def is_zero(self) -> bool:
        return all(self._vanishes(p) for r in self.rows for p in r)

    def is_hermitian(self) -> bool:
        n = self.n
        return all(
            self._vanishes(self.rows[i][j] - self.rows[j][i].conj()) for i in range(n) for j in range(i, n)
        )

    def minor_sign(self, idx: Sequence[int]) -> int:
        sel = [i - 1 for i in idx]
        d = poly_det([[self.rows[i][j] for j in sel] for i in sel])
        if not d.is_zero() and not vanishes_at(d.imag_part(), self.at):
            raise NotHermitian("principal minor is not real")
        s = sign_at(d.real_part(), self.at)
        if len(sel) % 2:
            s *= sign_at(self.den, self.at)
        return s

    def psd_witness(self) -> tuple[tuple[int, ...], int] | None:
        if not self.is_hermitian():
            raise NotHermitian("matrix is not Hermitian")
        for idx in index_sets(self.n):
            s = self.minor_sign(idx)
            if s < 0:
                return idx, s
        return None

    def is_psd(self) -> bool:
        return self.psd_witness() is None

    def approx(self) -> np.ndarray:
        x = float(self.at)
        h = self.den.eval_float(x)
        return np.array([[p.eval_float(x) / h for p in r] for r in self.rows], dtype=complex)

    def entry_json(self, i: int, j: int) -> dict[str, Any]:
        from .roots import point_to_json

        p = self.rows[i][j]
        return {
            "num": [dump_number(c) for c in p.coeffs],
            "den": [str(c) for c in self.den.re],
            "at": point_to_json(self.at),
        }

    def to_json(self) -> list[list[Any]]:
        return [[self.entry_json(i, j) for j in range(self.n)] for i in range(self.n)]
