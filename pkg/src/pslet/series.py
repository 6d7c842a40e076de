"""Truncated polynomial arithmetic and Pade resummation.

Everything here works on plain double precision.  Polynomials are stored
densely, constant term first, and every operation truncates exactly at the
requested cap: coefficient j of a product depends only on input coefficients
of degree <= j, so truncation commutes with arithmetic.

The Pade fitter solves the usual Toeplitz system for the denominator by
dense LU with partial pivoting.  Physical correction series can grow close
to factorially, which makes the raw system look astronomically
ill-conditioned for scaling reasons alone, so the condition estimate (and
the solve itself) is performed in a power-of-two rescaled variable that
removes the geometric growth without changing a single bit of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PoleProximity, SingularPadeSystem

# A fit whose growth-equilibrated denominator system is worse conditioned
# than this loses essentially all double-precision digits.
CONDITION_LIMIT = 1e12

# |den(t)| below this fraction of sum_i |den_i t^i| counts as sitting on a pole.
POLE_TOLERANCE = 1e-8


@dataclass(frozen=True)
class Polynomial:
    """Dense real polynomial truncated at a fixed maximum degree.

    coeffs[j] is the coefficient of x**j; len(coeffs) <= cap + 1 always.
    """

    coeffs: np.ndarray
    cap: int

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        if arr.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        if len(arr) > self.cap + 1:
            arr = arr[: self.cap + 1]
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def zero(cls, cap: int) -> "Polynomial":
        return cls(np.zeros(1), cap)

    @classmethod
    def monomial(cls, degree: int, coefficient: float, cap: int) -> "Polynomial":
        if degree > cap:
            return cls.zero(cap)
        c = np.zeros(degree + 1)
        c[degree] = coefficient
        return cls(c, cap)

    @property
    def degree(self) -> int:
        nz = np.nonzero(self.coeffs)[0]
        return int(nz[-1]) if len(nz) else 0

    def coefficient(self, j: int) -> float:
        return float(self.coeffs[j]) if j < len(self.coeffs) else 0.0

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return poly_combine(self, other, "add", min(self.cap, other.cap))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return poly_combine(self, other, "mul", min(self.cap, other.cap))

    def scaled(self, factor: float) -> "Polynomial":
        return Polynomial(self.coeffs * factor, self.cap)

    def derivative(self) -> "Polynomial":
        if len(self.coeffs) == 1:
            return Polynomial.zero(self.cap)
        return Polynomial(self.coeffs[1:] * np.arange(1, len(self.coeffs)), self.cap)

    def antiderivative(self) -> "Polynomial":
        """Termwise antiderivative with zero constant term (cap grows by one)."""
        out = np.concatenate(([0.0], self.coeffs / np.arange(1, len(self.coeffs) + 1)))
        return Polynomial(out, self.cap + 1)

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coeffs)


def poly_combine(a: Polynomial, b: Polynomial, op: str, cap: int) -> Polynomial:
    """Exact truncated sum or product of two polynomials."""
    if op == "add":
        n = max(len(a.coeffs), len(b.coeffs))
        out = np.zeros(n)
        out[: len(a.coeffs)] += a.coeffs
        out[: len(b.coeffs)] += b.coeffs
        return Polynomial(out[: cap + 1], cap)
    if op == "mul":
        out = np.convolve(a.coeffs, b.coeffs)
        return Polynomial(out[: cap + 1], cap)
    raise ValueError(f"unknown op {op!r}; expected 'add' or 'mul'")


@dataclass(frozen=True)
class PadeApproximant:
    """Rational function num/den of degrees (M, N) in one variable.

    den[0] is fixed to exactly 1; the approximant re-expands to the fitted
    power-series coefficients through order M + N.
    """

    num: np.ndarray
    den: np.ndarray
    M: int = field(init=False)
    N: int = field(init=False)

    def __post_init__(self):
        num = np.asarray(self.num, dtype=float)
        den = np.asarray(self.den, dtype=float)
        if den[0] != 1.0:
            raise ValueError("denominator leading coefficient must be 1")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "M", len(num) - 1)
        object.__setattr__(self, "N", len(den) - 1)


def _growth_rate(c: np.ndarray) -> float:
    """Power-of-two estimate of the geometric growth of |c_n|.

    Rescaling by an exact power of two is lossless in binary floating point,
    so the equilibrated solve is bit-deterministic.  The exponent is clamped
    so that rho**(len(c)-1) can never overflow.
    """
    nz = np.abs(c[c != 0.0])
    if len(nz) < 2:
        return 1.0
    # per-step growth exponent in log space; immune to over/underflow
    log_ratio = (math.log2(nz[-1]) - math.log2(nz[0])) / (len(c) - 1)
    e_max = 1000 // max(1, len(c) - 1)
    e = min(e_max, max(-e_max, round(log_ratio)))
    return float(2.0**e)


def pade_fit(c, M: int, N: int) -> PadeApproximant:
    """Fit the (M, N) Pade approximant to the series coefficients c0..c_{M+N}.

    Raises SingularPadeSystem when the denominator system is singular or so
    ill-conditioned (after removing geometric coefficient growth) that the
    result would carry no double-precision accuracy.
    """
    c = np.asarray(c, dtype=float)
    if len(c) != M + N + 1:
        raise ValueError(f"need exactly M+N+1 = {M + N + 1} coefficients, got {len(c)}")
    if N == 0:
        return PadeApproximant(c.copy(), np.array([1.0]))

    rho = _growth_rate(c)
    cs = c / rho ** np.arange(len(c))
    rows = np.arange(M + 1, M + N + 1)
    cols = np.arange(1, N + 1)
    idx = rows[:, None] - cols[None, :]
    A = np.where(idx >= 0, cs[np.clip(idx, 0, None)], 0.0)
    rhs = -cs[rows]
    try:
        cond = np.linalg.cond(A)
    except np.linalg.LinAlgError:
        cond = np.inf
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularPadeSystem(
            f"[{M}/{N}] denominator system condition {cond:.2e} exceeds {CONDITION_LIMIT:.0e}"
        )
    try:
        q = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as err:
        raise SingularPadeSystem(f"[{M}/{N}] denominator system is singular") from err
    # q solves the system in the rescaled variable rho*t; undo the scaling
    den = np.concatenate(([1.0], q * rho ** np.arange(1, N + 1)))
    num = np.array(
        [math.fsum(den[s] * c[i - s] for s in range(0, min(i, N) + 1)) for i in range(M + 1)]
    )
    if not (np.all(np.isfinite(num)) and np.all(np.isfinite(den))):
        raise SingularPadeSystem(f"[{M}/{N}] fit produced non-finite coefficients")
    return PadeApproximant(num, den)


def pade_eval(p: PadeApproximant, t: float) -> float:
    """Evaluate num(t)/den(t) by Horner's rule.

    Raises PoleProximity when den(t) is negligible against the natural scale
    sum_i |den_i t^i|, which signals a spurious pole at the evaluation point.
    """
    tpow = np.abs(p.den) * np.abs(t) ** np.arange(len(p.den))
    scale = float(np.sum(tpow))
    den_val = float(np.polynomial.polynomial.polyval(t, p.den))
    if abs(den_val) < POLE_TOLERANCE * scale:
        raise PoleProximity(
            f"denominator {den_val:.3e} at t={t:.6g} is below {POLE_TOLERANCE:.0e} of scale {scale:.3e}"
        )
    num_val = float(np.polynomial.polynomial.polyval(t, p.num))
    return num_val / den_val


def staircase_orders(M_stop: int = 9, N_stop: int = 10) -> list[tuple[int, int]]:
    """The Pade order ladder (1,2), (2,2), (2,3), ... up to (M_stop, N_stop).

    The stop point must itself lie on the ladder, i.e. N_stop must equal
    M_stop or M_stop + 1.
    """
    if N_stop not in (M_stop, M_stop + 1) or M_stop < 1:
        raise ValueError(f"({M_stop}, {N_stop}) is not on the order ladder")
    orders = [(1, 2)]
    M, N = 1, 2
    while (M, N) != (M_stop, N_stop):
        if M < N:
            M += 1
        else:
            N += 1
        orders.append((M, N))
    return orders
