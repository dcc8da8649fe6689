"""Fundamental units of real quadratic fields via continued fractions.

The expansion is run on the surd ``ω = (P₀ + √d) / Q₀`` generating the ring
of integers (``√d``, or ``(1+√d)/2`` when ``d ≡ 1 mod 4``), using only
integer arithmetic on the classical ``(P, Q)`` state.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .quadint import FieldCtx, QuadInt


@dataclass(frozen=True)
class SurdState:
    P: int
    Q: int
    a: int


@dataclass(frozen=True)
class UnitElem:
    value: QuadInt
    norm_sign: int

    def __post_init__(self):
        n = self.value.norm()
        if abs(n) != 1:
            raise ValueError(f"{self.value} has norm {n}, not a unit")
        if n != self.norm_sign:
            raise ValueError(f"norm_sign {self.norm_sign} disagrees with N = {n}")

    @classmethod
    def of(cls, value: QuadInt) -> UnitElem:
        return cls(value, value.norm())

    @property
    def field(self) -> FieldCtx:
        return self.value.field

    def inverse(self) -> UnitElem:
        # u * conj(u) = N(u) = ±1
        return UnitElem(self.value.conj() * self.norm_sign, self.norm_sign)

    def __neg__(self) -> UnitElem:
        return UnitElem(-self.value, self.norm_sign)

    def __str__(self) -> str:
        return str(self.value)


def _start(field: FieldCtx) -> tuple[int, int]:
    return (1, 2) if field.half_basis else (0, 1)


def surd_states(field: FieldCtx):
    """Yield the states of the continued-fraction expansion of ω, forever."""
    d = field.d
    r = isqrt(d)
    P, Q = _start(field)
    while True:
        a = (P + r) // Q
        yield SurdState(P, Q, a)
        P = a * Q - P
        Q = (d - P * P) // Q


def continued_fraction(field: FieldCtx) -> tuple[list[int], list[int]]:
    """Return ``(preperiod, period)`` partial quotients of ω."""
    seen: dict[tuple[int, int], int] = {}
    quotients: list[int] = []
    for k, st in enumerate(surd_states(field)):
        assert (field.d - st.P * st.P) % st.Q == 0
        key = (st.P, st.Q)
        if key in seen:
            j = seen[key]
            return quotients[:j], quotients[j:]
        seen[key] = k
        quotients.append(st.a)


def fundamental_unit(field: FieldCtx) -> UnitElem:
    """The least unit greater than 1 in the ring of integers of ``field``."""
    P0, Q0 = _start(field)
    # ω̄ = (P0 - √d)/Q0; the unit is p_k - q_k ω̄ at the first k with Q_{k+1} = Q0
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    states = surd_states(field)
    st = next(states)
    while True:
        p_prev, p = p, st.a * p + p_prev
        q_prev, q = q, st.a * q + q_prev
        st = next(states)
        if st.Q == Q0:
            break
    # p - q(P0 - √d)/Q0 = (Q0 p - q P0 + q√d)/Q0
    value = QuadInt(Q0 * p - q * P0, q, Q0, field)
    return UnitElem.of(value)


def unit_power(u: UnitElem, n: int) -> UnitElem:
    if n < 0:
        return unit_power(u.inverse(), -n)
    return UnitElem(u.value ** n, u.norm_sign ** n)
