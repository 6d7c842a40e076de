"""Double-double arithmetic: ~32 significant digits from pairs of doubles.

The correction hierarchy itself is benign in double precision, but the Pade
resummation of a near-factorially divergent series amplifies relative
perturbations of the input coefficients by up to ~1e10.  States whose
staircase is unstable in double precision are therefore re-solved with this
backend, which keeps every quantity as an unevaluated sum hi + lo of two
doubles (Dekker/Knuth error-free transforms).

Vector routines operate on (hi, lo) pairs of equal-length numpy arrays and
are used for the polynomial algebra; the scalar DD class covers the root
polishing and shift geometry.
"""

from __future__ import annotations

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1, Veltkamp splitting constant


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def two_prod(a, b):
    p = a * b
    ta = _SPLIT * a
    ahi = ta - (ta - a)
    alo = a - ahi
    tb = _SPLIT * b
    bhi = tb - (tb - b)
    blo = b - bhi
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def dd_add(ah, al, bh, bl):
    sh, sl = two_sum(ah, bh)
    return two_sum(sh, sl + (al + bl))


def dd_mul(ah, al, bh, bl):
    ph, pl = two_prod(ah, bh)
    return two_sum(ph, pl + (ah * bl + al * bh))


def dd_div(ah, al, bh, bl):
    q1 = ah / bh
    th, tl = dd_mul(q1, np.zeros_like(q1), bh, bl)
    rh, rl = dd_add(ah, al, -th, -tl)
    q2 = rh / bh
    th, tl = dd_mul(q2, np.zeros_like(q2), bh, bl)
    rh, rl = dd_add(rh, rl, -th, -tl)
    q3 = rh / bh
    h, l = two_sum(q1, q2)
    return two_sum(h, l + q3)


class DD:
    """Scalar double-double number with operator overloading."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi: float, lo: float = 0.0):
        self.hi = float(hi)
        self.lo = float(lo)

    @staticmethod
    def _coerce(x) -> "DD":
        return x if isinstance(x, DD) else DD(x)

    def __add__(self, other):
        o = self._coerce(other)
        return DD(*dd_add(self.hi, self.lo, o.hi, o.lo))

    __radd__ = __add__

    def __neg__(self):
        return DD(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._coerce(other)
        return DD(*dd_add(self.hi, self.lo, -o.hi, -o.lo))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return DD(*dd_mul(self.hi, self.lo, o.hi, o.lo))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return DD(*dd_div(self.hi, self.lo, o.hi, o.lo))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __abs__(self):
        return DD(-self.hi, -self.lo) if self.hi < 0 else DD(self.hi, self.lo)

    def __float__(self):
        return self.hi + self.lo

    def __repr__(self):
        return f"DD({self.hi!r}, {self.lo!r})"

    def sqrt(self) -> "DD":
        if self.hi < 0.0:
            raise ValueError("dd sqrt of negative value")
        if self.hi == 0.0:
            return DD(0.0)
        x = DD(np.sqrt(self.hi))
        # one dd Newton step reaches full dd accuracy from a double seed
        for _ in range(2):
            x = x + (self - x * x) / (2.0 * x)
        return x


class DDPoly:
    """Dense polynomial with double-double coefficients, constant term first."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi: np.ndarray, lo: np.ndarray):
        self.hi = hi
        self.lo = lo

    @classmethod
    def zeros(cls, n: int) -> "DDPoly":
        return cls(np.zeros(n), np.zeros(n))

    @classmethod
    def from_float(cls, coeffs: np.ndarray) -> "DDPoly":
        c = np.asarray(coeffs, dtype=float)
        return cls(c.copy(), np.zeros_like(c))

    def __len__(self) -> int:
        return len(self.hi)

    def copy(self) -> "DDPoly":
        return DDPoly(self.hi.copy(), self.lo.copy())

    def get(self, j: int) -> DD:
        return DD(self.hi[j], self.lo[j]) if j < len(self.hi) else DD(0.0)

    def set(self, j: int, value: DD) -> None:
        self.hi[j] = value.hi
        self.lo[j] = value.lo

    def to_float(self) -> np.ndarray:
        return self.hi + self.lo

    def add(self, other: "DDPoly", sign: float = 1.0) -> "DDPoly":
        n = max(len(self), len(other))
        ah = np.zeros(n)
        al = np.zeros(n)
        ah[: len(self)] = self.hi
        al[: len(self)] = self.lo
        bh = np.zeros(n)
        bl = np.zeros(n)
        bh[: len(other)] = sign * other.hi
        bl[: len(other)] = sign * other.lo
        return DDPoly(*dd_add(ah, al, bh, bl))

    def mul(self, other: "DDPoly", cap: int) -> "DDPoly":
        # loop over the shorter operand; each row is one vectorized dd FMA
        a, b = (self, other) if len(self) <= len(other) else (other, self)
        n = min(cap + 1, len(a) + len(b) - 1)
        ch = np.zeros(n)
        cl = np.zeros(n)
        for i in range(min(len(a), n)):
            if a.hi[i] == 0.0 and a.lo[i] == 0.0:
                continue
            jmax = min(len(b), n - i)
            if jmax <= 0:
                break
            ph, pl = dd_mul(a.hi[i], a.lo[i], b.hi[:jmax], b.lo[:jmax])
            ch[i : i + jmax], cl[i : i + jmax] = dd_add(ch[i : i + jmax], cl[i : i + jmax], ph, pl)
        return DDPoly(ch, cl)

    def scale(self, z: DD) -> "DDPoly":
        return DDPoly(*dd_mul(self.hi, self.lo, z.hi, z.lo))

    def derivative(self) -> "DDPoly":
        if len(self) == 1:
            return DDPoly.zeros(1)
        k = np.arange(1, len(self), dtype=float)
        return DDPoly(*dd_mul(self.hi[1:], self.lo[1:], k, np.zeros_like(k)))


def dd_pade_fit(c: list[DD], M: int, N: int) -> tuple[list[DD], list[DD]]:
    """(M, N) Pade fit in dd arithmetic; Gaussian elimination, partial pivoting."""
    from .errors import SingularPadeSystem

    if len(c) != M + N + 1:
        raise ValueError(f"need exactly M+N+1 = {M + N + 1} coefficients, got {len(c)}")
    if N == 0:
        return list(c[: M + 1]), [DD(1.0)]
    A = [[c[M + 1 + i - s] if M + 1 + i - s >= 0 else DD(0.0) for s in range(1, N + 1)] for i in range(N)]
    rhs = [-c[M + 1 + i] for i in range(N)]
    for col in range(N):
        piv = max(range(col, N), key=lambda r: abs(A[r][col].hi))
        if A[piv][col].hi == 0.0 and A[piv][col].lo == 0.0:
            raise SingularPadeSystem(f"[{M}/{N}] dd denominator system is singular")
        A[col], A[piv] = A[piv], A[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        for r in range(col + 1, N):
            f = A[r][col] / A[col][col]
            for cc in range(col, N):
                A[r][cc] = A[r][cc] - f * A[col][cc]
            rhs[r] = rhs[r] - f * rhs[col]
    q = [DD(0.0)] * N
    for r in range(N - 1, -1, -1):
        s = rhs[r]
        for cc in range(r + 1, N):
            s = s - A[r][cc] * q[cc]
        q[r] = s / A[r][r]
    den = [DD(1.0)] + q
    num = []
    for i in range(M + 1):
        s = DD(0.0)
        for j in range(0, min(i, N) + 1):
            s = s + den[j] * c[i - j]
        num.append(s)
    return num, den


def dd_pade_eval(num: list[DD], den: list[DD], t: DD) -> DD:
    """Horner evaluation of num(t)/den(t) in dd, with the same pole guard."""
    from .errors import PoleProximity
    from .series import POLE_TOLERANCE

    dv = DD(0.0)
    for cc in reversed(den):
        dv = dv * t + cc
    scale = 0.0
    tp = 1.0
    for cc in den:
        scale += abs(float(cc)) * abs(tp)
        tp *= float(t)
    if abs(float(dv)) < POLE_TOLERANCE * scale:
        raise PoleProximity(f"dd denominator {float(dv):.3e} at t={float(t):.6g} sits on a pole")
    nv = DD(0.0)
    for cc in reversed(num):
        nv = nv * t + cc
    return nv / dv
