"""Dense univariate polynomials over Q(i).

Coefficients are stored ascending, split into a real tuple and an imaginary
tuple of ``mpq``; the imaginary tuple is empty for real polynomials so the
common real case never touches complex arithmetic.
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence

import numpy as np
from gmpy2 import mpq

from .arith import ONE, ZERO, GaussRat, to_rat
from .errors import ZeroPolynomial

_MPQ = type(ZERO)


def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _radd(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, v in enumerate(b):
        out[k] += v
    return out


def _rsub(a: Sequence, b: Sequence) -> list:
    out = list(a) + [ZERO] * (len(b) - len(a))
    for k, v in enumerate(b):
        out[k] -= v
    return out


def _rconv(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


def _rdivmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _trim(a)
    inv = ONE / b[-1]
    q = [ZERO] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            c = c * inv
            q[k - db] = c
            off = k - db
            for j in range(db):
                if b[j]:
                    a[off + j] -= c * b[j]
    return q, _trim(a[:db])


def _cdivmod(ar: Sequence, ai: Sequence, br: Sequence, bi: Sequence):
    ar, ai = list(ar), list(ai)
    db = len(br) - 1
    if len(ar) - 1 < db:
        return [], [], ar, ai
    lr, li = br[-1], bi[-1]
    n = lr * lr + li * li
    ir, ii = lr / n, -li / n
    qr = [ZERO] * (len(ar) - db)
    qi = [ZERO] * (len(ar) - db)
    for k in range(len(ar) - 1, db - 1, -1):
        xr, xi = ar[k], ai[k]
        if not xr and not xi:
            continue
        cr = xr * ir - xi * ii
        ci = xr * ii + xi * ir
        qr[k - db], qi[k - db] = cr, ci
        off = k - db
        for j in range(db):
            yr, yi = br[j], bi[j]
            if yr or yi:
                ar[off + j] -= cr * yr - ci * yi
                ai[off + j] -= cr * yi + ci * yr
    return qr, qi, ar[:db], ai[:db]


class Poly:
    """Immutable polynomial with Gaussian-rational coefficients."""

    __slots__ = ("re", "im")

    def __init__(self, coeffs: Iterable[Any] = ()):
        re, im = [], []
        for c in coeffs:
            g = c if isinstance(c, GaussRat) else GaussRat.coerce(c)
            re.append(g.re)
            im.append(g.im)
        self._set(re, im)

    @classmethod
    def _raw(cls, re: Sequence, im: Sequence = ()) -> Poly:
        obj = object.__new__(cls)
        obj._set(re, im)
        return obj

    def _set(self, re: Sequence, im: Sequence) -> None:
        n = max(len(re), len(im))
        re = list(re) + [ZERO] * (n - len(re))
        im = list(im) + [ZERO] * (n - len(im))
        while n and not re[n - 1] and not im[n - 1]:
            n -= 1
        del re[n:], im[n:]
        self.re = tuple(re)
        self.im = tuple(im) if any(im) else ()

    @classmethod
    def real(cls, coeffs: Iterable[Any]) -> Poly:
        return cls._raw([to_rat(c) for c in coeffs])

    @classmethod
    def constant(cls, c: Any) -> Poly:
        return cls([c])

    @classmethod
    def x(cls) -> Poly:
        return cls._raw([ZERO, ONE])

    @classmethod
    def from_roots(cls, roots: Iterable[Any]) -> Poly:
        """Monic polynomial prod (x - r)."""
        p = cls._raw([ONE])
        for r in roots:
            p = p * cls([-GaussRat.coerce(r), 1])
        return p

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.re) - 1

    @property
    def coeffs(self) -> tuple[GaussRat, ...]:
        im = self.im or (ZERO,) * len(self.re)
        return tuple(GaussRat(a, b) for a, b in zip(self.re, im))

    def coeff(self, k: int) -> GaussRat:
        if k < 0 or k >= len(self.re):
            return GaussRat(0)
        return GaussRat(self.re[k], self.im[k] if self.im else ZERO)

    @property
    def lc(self) -> GaussRat:
        if not self.re:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeff(len(self.re) - 1)

    def is_zero(self) -> bool:
        return not self.re

    def is_real(self) -> bool:
        return not self.im

    def is_constant(self) -> bool:
        return len(self.re) <= 1

    def _iml(self) -> list:
        return list(self.im) if self.im else [ZERO] * len(self.re)

    def real_part(self) -> Poly:
        """Polynomial with the real parts of the coefficients."""
        return Poly._raw(self.re)

    def imag_part(self) -> Poly:
        return Poly._raw(self.im)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Any) -> Poly:
        other = _as_poly(other)
        if not self.im and not other.im:
            return Poly._raw(_radd(self.re, other.re))
        return Poly._raw(_radd(self.re, other.re), _radd(self._iml(), other._iml()))

    __radd__ = __add__

    def __sub__(self, other: Any) -> Poly:
        other = _as_poly(other)
        if not self.im and not other.im:
            return Poly._raw(_rsub(self.re, other.re))
        return Poly._raw(_rsub(self.re, other.re), _rsub(self._iml(), other._iml()))

    def __rsub__(self, other: Any) -> Poly:
        return _as_poly(other) - self

    def __neg__(self) -> Poly:
        return Poly._raw([-c for c in self.re], [-c for c in self.im])

    def __mul__(self, other: Any) -> Poly:
        if not isinstance(other, Poly):
            return self.scale(other)
        if not self.im and not other.im:
            return Poly._raw(_rconv(self.re, other.re))
        if not other.im:
            return Poly._raw(_rconv(self.re, other.re), _rconv(self.im, other.re))
        if not self.im:
            return Poly._raw(_rconv(self.re, other.re), _rconv(self.re, other.im))
        re = _rsub(_rconv(self.re, other.re), _rconv(self.im, other.im))
        im = _radd(_rconv(self.re, other.im), _rconv(self.im, other.re))
        return Poly._raw(re, im)

    def __rmul__(self, other: Any) -> Poly:
        return self.scale(other)

    def scale(self, c: Any) -> Poly:
        if isinstance(c, GaussRat):
            if not c.im:
                c = c.re
            else:
                a, b = c.re, c.im
                im = self._iml()
                return Poly._raw([x * a - y * b for x, y in zip(self.re, im)],
                                 [x * b + y * a for x, y in zip(self.re, im)])
        c = c if type(c) is _MPQ else to_rat(c)
        return Poly._raw([x * c for x in self.re], [y * c for y in self.im])

    def __pow__(self, k: int) -> Poly:
        out = Poly._raw([ONE])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if not self.im and not other.im:
            q, r = _rdivmod(self.re, other.re)
            return Poly._raw(q), Poly._raw(r)
        qr, qi, rr, ri = _cdivmod(self.re, self._iml(), other.re, other._iml())
        return Poly._raw(qr, qi), Poly._raw(rr, ri)

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: Poly) -> bool:
        return (other % self).is_zero()

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lc = self.lc
        if lc == 1:
            return self
        return self.scale(lc.inverse())

    def derivative(self) -> Poly:
        re = [c * k for k, c in enumerate(self.re)][1:]
        im = [c * k for k, c in enumerate(self.im)][1:]
        return Poly._raw(re, im)

    def conj(self) -> Poly:
        """Coefficient-wise complex conjugate."""
        return Poly._raw(self.re, [-c for c in self.im])

    def compose_neg(self) -> Poly:
        """p(-x)."""
        return Poly._raw([c if k % 2 == 0 else -c for k, c in enumerate(self.re)],
                         [c if k % 2 == 0 else -c for k, c in enumerate(self.im)])

    # -- evaluation --------------------------------------------------------

    def __call__(self, z: Any) -> Any:
        """Evaluate; a real polynomial at a rational point returns ``mpq``."""
        if isinstance(z, GaussRat):
            if not z.im:
                v = self(z.re)
                return v if isinstance(v, GaussRat) else GaussRat(v)
            zr, zi = z.re, z.im
            ar, ai = ZERO, ZERO
            im = self._iml()
            for k in range(len(self.re) - 1, -1, -1):
                ar, ai = ar * zr - ai * zi + self.re[k], ar * zi + ai * zr + im[k]
            return GaussRat(ar, ai)
        z = z if type(z) is _MPQ else to_rat(z)
        acc = ZERO
        for c in reversed(self.re):
            acc = acc * z + c
        if not self.im:
            return acc
        acc_i = ZERO
        for c in reversed(self.im):
            acc_i = acc_i * z + c
        return GaussRat(acc, acc_i)

    def eval_float(self, z: complex | np.ndarray) -> Any:
        return np.polyval(self.to_numpy()[::-1], z)

    def to_numpy(self) -> np.ndarray:
        """Ascending complex128 coefficients."""
        im = self._iml()
        return np.array([complex(float(a), float(b)) for a, b in zip(self.re, im)], dtype=complex)

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, _MPQ, GaussRat)):
            return self == _as_poly(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = f"({c})" if c.im and c.re else str(c)
            if k == 0:
                terms.append(cs)
            else:
                mon = "z" if k == 1 else f"z^{k}"
                terms.append(mon if c == 1 else f"{cs}*{mon}")
        return " + ".join(reversed(terms))


def _as_poly(x: Any) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([x])


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero only if both inputs are zero)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if not a.im and not b.im:
        x, y = list(a.re), list(b.re)
        if len(x) < len(y):
            x, y = y, x
        while y:
            _, r = _rdivmod(x, y)
            inv = ONE / y[-1]
            x, y = [c * inv for c in y], ([c / r[-1] for c in r] if r else r)
        inv = ONE / x[-1]
        return Poly._raw([c * inv for c in x])
    x, y = a.monic(), b.monic()
    if x.degree < y.degree:
        x, y = y, x
    while not y.is_zero():
        x, y = y, (x % y).monic()
    return x.monic()


def lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly()
    return (a * b.exact_div(gcd(a, b))).monic()


def ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Poly._raw([ONE]), Poly()
    t0, t1 = Poly(), Poly._raw([ONE])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = r0.lc.inverse()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def invmod(a: Poly, m: Poly) -> Poly:
    """Inverse of ``a`` modulo ``m``; requires gcd(a, m) = 1."""
    g, u, _ = ext_gcd(a % m, m)
    if g.degree != 0:
        raise ZeroDivisionError("polynomial not invertible modulo m")
    return u % m


def is_squarefree(p: Poly) -> bool:
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    return gcd(p, p.derivative()).degree == 0


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if p.degree <= 0:
        return Poly._raw([ONE])
    return p.exact_div(gcd(p, p.derivative())).monic()


def squarefree_decompose(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic, pairwise coprime squarefree factors with multiplicities.

    ``p == lc(p) * prod(f**k)``; constant factors are omitted.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    if p.degree <= 0:
        return []
    dp = p.derivative()
    a0 = gcd(p, dp)
    b = p.exact_div(a0)
    c = dp.exact_div(a0)
    d = c - b.derivative()
    out: list[tuple[Poly, int]] = []
    k = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a.monic(), k))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        k += 1
    return out


def cauchy_bound(p: Poly) -> mpq:
    """Rational R with every complex root of p strictly inside |z| < R.

    Uses 1 + max |c_k| / |lc| with |re| + |im| as an upper bound for |c|.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    lc = p.lc
    lead = abs(lc.re) + abs(lc.im) if lc.im else abs(lc.re)
    if lc.im:
        # |lc| >= max(|re|, |im|) >= (|re|+|im|)/2
        lead = lead / 2
    im = p._iml()
    m = ZERO
    for k in range(p.degree):
        v = abs(p.re[k]) + abs(im[k])
        if v > m:
            m = v
    return ONE + m / lead


def primitive_real(p: Poly) -> list[int]:
    """Integer coefficients of a positive multiple of a real polynomial."""
    from gmpy2 import gcd as igcd, lcm as ilcm

    den = 1
    for c in p.re:
        den = ilcm(den, c.denominator)
    ints = [int(c * den) for c in p.re]
    g = 0
    for v in ints:
        g = igcd(g, v)
    g = int(g) or 1
    return [v // g for v in ints]
