"""Representing primes by the form x² + 7y²."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .primality import jacobi

# Primes p != 7 with (-7/p) = 1 lie in exactly these classes mod 28.
EULER_CLASSES_28 = frozenset({1, 9, 11, 15, 23, 25})


class RepresentationError(RuntimeError):
    """Cornacchia descent disagreed with the residue prediction."""


@dataclass(frozen=True)
class Representation:
    x: int
    y: int
    N: int

    def __post_init__(self):
        if self.x < 0 or self.y < 0:
            raise ValueError("x and y are stored nonnegative")
        if self.x * self.x + 7 * self.y * self.y != self.N:
            raise ValueError(f"{self.x}^2 + 7*{self.y}^2 != {self.N}")

    def as_dict(self) -> dict:
        return {"N": str(self.N), "x": str(self.x), "y": str(self.y)}


def isqrt(n: int) -> int:
    if n < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(n)


def sqrt_mod(a: int, p: int) -> int | None:
    """Tonelli-Shanks square root of ``a`` modulo the odd prime ``p``."""
    if p % 2 == 0:
        raise ValueError(f"modulus must be odd, got {p}")
    a %= p
    if a == 0:
        return 0
    if jacobi(a, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        return pow(a, (p + 1) // 4, p)
    z = 2
    while jacobi(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
            if i == m:
                raise ValueError(f"{p} is not prime")
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def mod28_predicts(N: int) -> bool:
    return N % 28 in EULER_CLASSES_28


def representable(N: int) -> bool:
    """Whether the (probable) prime ``N`` is x² + 7y².

    Both the Jacobi symbol (-7/N) and Euler's mod-28 classes are evaluated;
    any disagreement is raised as an error.
    """
    if N == 7:
        return True
    if N == 2:
        return False
    by_jacobi = jacobi(-7, N) == 1
    by_classes = mod28_predicts(N)
    if by_jacobi != by_classes:
        raise RepresentationError(
            f"(-7/{N}) = {jacobi(-7, N)} but {N} mod 28 = {N % 28}"
        )
    return by_jacobi


def cornacchia7(N: int) -> Representation | None:
    if N == 7:
        return Representation(0, 1, 7)
    if not representable(N):
        return None
    r0 = sqrt_mod(-7, N)
    if r0 is None:
        raise RepresentationError(f"-7 is predicted to be a square mod {N}, no root found")
    if 2 * r0 < N:
        r0 = N - r0
    a, b = N, r0
    while b * b >= N:
        a, b = b, a % b
    rest = N - b * b
    if rest % 7:
        raise RepresentationError(f"descent for {N} ended at x = {b}, (N - x^2) not divisible by 7")
    y = isqrt(rest // 7)
    if 7 * y * y != rest:
        raise RepresentationError(f"descent for {N} ended at x = {b}, (N - x^2)/7 not a square")
    return Representation(b, y, N)


def brute_force_representations(N: int) -> list[tuple[int, int]]:
    """All (x, y) with x, y >= 0 and x² + 7y² = N, by scanning y."""
    found = []
    for y in range(isqrt(N // 7) + 1):
        rest = N - 7 * y * y
        x = isqrt(rest)
        if x * x == rest:
            found.append((x, y))
    return found


@dataclass(frozen=True)
class StructureReport:
    x_mod4_zero: bool
    x_mod8_zero: bool
    y_pm3_mod8: bool
    n_mod8_is_7: bool
    n_mod16_is_15: bool

    @property
    def all_pass(self) -> bool:
        return all(vars(self).values())

    def as_dict(self) -> dict:
        return dict(vars(self), all_pass=self.all_pass)


def structure_check(rep: Representation) -> StructureReport:
    return StructureReport(
        x_mod4_zero=rep.x % 4 == 0,
        x_mod8_zero=rep.x % 8 == 0,
        y_pm3_mod8=rep.y % 8 in (3, 5),
        n_mod8_is_7=rep.N % 8 == 7,
        n_mod16_is_15=rep.N % 16 == 15,
    )
