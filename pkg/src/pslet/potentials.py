"""Radial potential models with closed-form derivatives.

Lengths are measured in effective Bohr radii a*, energies in effective
Rydberg Ry*.  Only the oscillator-plus-Coulomb hybrid family is shipped;
the PotentialModel protocol leaves room for other confining potentials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

from ._dd import DD
from .errors import NonPositiveRadius


@runtime_checkable
class PotentialModel(Protocol):
    """Contract for a radial potential V(q) with exact n-th derivatives."""

    def value(self, q: float) -> float:
        """V(q) in Ry* at radius q > 0 (in a*)."""
        ...

    def derivative(self, q: float, n: int) -> float:
        """Exact n-th derivative of V at q; derivative(q, 0) == value(q)."""
        ...


@dataclass(frozen=True)
class HybridPotential:
    """V(q) = a_osc * q**2 + c_coul / q.

    a_osc must be positive for bound states; c_coul >= 0 gives a repulsive
    Coulomb core.  All derivatives are closed-form: the oscillator part dies
    after n = 2 and the Coulomb part contributes (-1)^n n! c / q^(n+1).
    """

    a_osc: float
    c_coul: float = 0.0

    def __post_init__(self):
        if self.a_osc < 0.0:
            raise ValueError("a_osc must be non-negative")
        if self.c_coul < 0.0:
            raise ValueError("c_coul must be non-negative")

    def value(self, q: float) -> float:
        return self.derivative(q, 0)

    def derivative(self, q: float, n: int) -> float:
        if q <= 0.0:
            raise NonPositiveRadius(f"radius must be positive, got {q}")
        if n < 0:
            raise ValueError("derivative order must be non-negative")
        if n == 0:
            return self.a_osc * q * q + self.c_coul / q
        if n == 1:
            return 2.0 * self.a_osc * q - self.c_coul / q**2
        if n == 2:
            return 2.0 * self.a_osc + 2.0 * self.c_coul / q**3
        if self.c_coul == 0.0:
            return 0.0
        return self.c_coul * (-1.0) ** n * math.factorial(n) / q ** (n + 1)

    def derivative_dd(self, q: DD, n: int) -> DD:
        """Double-double derivative used by the extended-precision solver."""
        if n == 0:
            return DD(self.a_osc) * q * q + DD(self.c_coul) / q
        if n == 1:
            return DD(2.0 * self.a_osc) * q - DD(self.c_coul) / (q * q)
        if n == 2:
            return DD(2.0 * self.a_osc) + DD(2.0 * self.c_coul) / (q * q * q)
        raise ValueError("dd derivatives above order 2 are handled analytically")


def hybrid_derivative(p: HybridPotential, q: float, n: int) -> float:
    """Functional form of HybridPotential.derivative."""
    return p.derivative(q, n)


def effective_potential(m: int, potential: PotentialModel, q: float) -> float:
    """(m^2 - 1/4)/q^2 + V(q): the core felt by the reduced radial function.

    The first term is attractive for m = 0 and repulsive for |m| >= 1, which
    is what splits the field dependence of s states from the rest.
    """
    if q <= 0.0:
        raise NonPositiveRadius(f"radius must be positive, got {q}")
    return (m * m - 0.25) / (q * q) + potential.value(q)
