"""Exact arithmetic in the ring of integers of a real quadratic field Q(√d).

Elements are stored as ``(a + b√d) / den`` with ``den`` in ``{1, 2}``; the
half denominator only occurs when ``d ≡ 1 (mod 4)``, where the ring of
integers is ``Z[(1+√d)/2]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import sqrt

# Square-free 1 < d < 500 with h(Q(√d)) = 1.
CLASS_NUMBER_ONE = frozenset((
    2, 3, 5, 6, 7, 11, 13, 14, 17, 19, 21, 22, 23, 29, 31, 33, 37, 38, 41,
    43, 46, 47, 53, 57, 59, 61, 62, 67, 69, 71, 73, 77, 83, 86, 89, 93, 94,
    97, 101, 103, 107, 109, 113, 118, 127, 129, 131, 133, 134, 137, 139, 141,
    149, 151, 157, 158, 161, 163, 166, 167, 173, 177, 179, 181, 191, 193, 197,
    199, 201, 206, 209, 211, 213, 214, 217, 227, 233, 237, 239, 241, 249, 251,
    253, 262, 263, 269, 271, 277, 278, 281, 283, 293, 301, 302, 307, 309, 311,
    313, 317, 329, 331, 334, 337, 341, 347, 349, 353, 358, 367, 373, 379, 381,
    382, 383, 389, 393, 397, 398, 409, 413, 417, 419, 421, 422, 431, 433, 437,
    446, 449, 453, 454, 457, 461, 463, 467, 478, 479, 487, 489, 491, 497,
))
CLASS_NUMBER_TABLE_BOUND = 500


class FieldMismatch(ValueError):
    pass


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldCtx:
    """The real quadratic field Q(√d), d square-free and > 1."""

    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d <= 1:
            raise ValueError(f"d must be an integer > 1, got {self.d!r}")
        if not is_squarefree(self.d):
            raise ValueError(f"d = {self.d} is not square-free")

    @property
    def half_basis(self) -> bool:
        return self.d % 4 == 1

    @property
    def class_number_one(self) -> bool:
        return self.d in CLASS_NUMBER_ONE

    @property
    def ring_name(self) -> str:
        if self.half_basis:
            return f"Z[(1+√{self.d})/2]"
        return f"Z[√{self.d}]"

    def __call__(self, a: int, b: int = 0, den: int = 1) -> QuadInt:
        return QuadInt(a, b, den, self)

    @property
    def one(self) -> QuadInt:
        return QuadInt(1, 0, 1, self)

    @property
    def zero(self) -> QuadInt:
        return QuadInt(0, 0, 1, self)

    @property
    def sqrt_d(self) -> QuadInt:
        return QuadInt(0, 1, 1, self)

    def __str__(self) -> str:
        return f"Q(√{self.d})"


def _normalize(a: int, b: int, den: int, field: FieldCtx) -> tuple[int, int, int]:
    while den > 1 and a % 2 == 0 and b % 2 == 0:
        a, b, den = a // 2, b // 2, den // 2
    if den not in (1, 2):
        raise ValueError(f"({a}+{b}√{field.d})/{den} is not an algebraic integer")
    return a, b, den


@dataclass(frozen=True)
class QuadInt:
    """An element ``(a + b√d) / den`` of the ring of integers.

    Instances are canonical: ``den == 2`` only when the field has a half
    basis and ``a``, ``b`` are both odd.
    """

    a: int
    b: int
    den: int
    field: FieldCtx

    def __post_init__(self):
        a, b, den = int(self.a), int(self.b), int(self.den)
        if den not in (1, 2):
            raise ValueError(f"denominator must be 1 or 2, got {den}")
        if den == 2:
            if not self.field.half_basis:
                raise ValueError(f"half-integers are not integral in {self.field}")
            if (a - b) % 2:
                raise ValueError(f"({a}+{b}√{self.field.d})/2 is not integral")
        a, b, den = _normalize(a, b, den, self.field)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "den", den)

    @classmethod
    def _raw(cls, a: int, b: int, den: int, field: FieldCtx) -> QuadInt:
        # den may be 4 here (products of halves); reduce before validating
        a, b, den = _normalize(a, b, den, field)
        return cls(a, b, den, field)

    def _coerce(self, other) -> QuadInt:
        if isinstance(other, QuadInt):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, 1, self.field)
        return NotImplemented

    def __add__(self, other) -> QuadInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        den = max(self.den, other.den)
        sa, oa = den // self.den, den // other.den
        return QuadInt._raw(self.a * sa + other.a * oa, self.b * sa + other.b * oa, den, self.field)

    __radd__ = __add__

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.a, -self.b, self.den, self.field)

    def __sub__(self, other) -> QuadInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> QuadInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> QuadInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.field.d
        a = self.a * other.a + d * self.b * other.b
        b = self.a * other.b + self.b * other.a
        return QuadInt._raw(a, b, self.den * other.den, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QuadInt:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self) -> QuadInt:
        return QuadInt(self.a, -self.b, self.den, self.field)

    def norm(self) -> int:
        return (self.a * self.a - self.field.d * self.b * self.b) // (self.den * self.den)

    def trace(self) -> int:
        return 2 * self.a // self.den

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def exact_div(self, other) -> QuadInt | None:
        """Return ``q`` with ``q * other == self`` if it lies in the ring, else None."""
        divisor = self._coerce(other)
        if divisor is NotImplemented:
            raise TypeError(f"cannot divide by {other!r}")
        other = divisor
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in the ring of integers")
        num = self * other.conj()
        # self/other = (num.a + num.b√d) / (num.den * n)
        scale = num.den * n
        for den in (1, 2):
            if den == 2 and not self.field.half_basis:
                break
            if (num.a * den) % scale == 0 and (num.b * den) % scale == 0:
                a, b = num.a * den // scale, num.b * den // scale
                if den == 2 and (a - b) % 2:
                    continue
                return QuadInt(a, b, den, self.field)
        return None

    def __float__(self) -> float:
        return (self.a + self.b * sqrt(self.field.d)) / self.den

    def __str__(self) -> str:
        return format_quadint(self)

    def __repr__(self) -> str:
        return f"QuadInt({format_quadint(self)!r}, d={self.field.d})"


# module-level aliases matching the operation names
def add(x: QuadInt, y: QuadInt) -> QuadInt:
    return x + y


def sub(x: QuadInt, y: QuadInt) -> QuadInt:
    return x - y


def neg(x: QuadInt) -> QuadInt:
    return -x


def mul(x: QuadInt, y: QuadInt) -> QuadInt:
    return x * y


def conj(x: QuadInt) -> QuadInt:
    return x.conj()


def norm(x: QuadInt) -> int:
    return x.norm()


def trace(x: QuadInt) -> int:
    return x.trace()


def qpow(x: QuadInt, n: int) -> QuadInt:
    return x ** n


def exact_div(x: QuadInt, y: QuadInt) -> QuadInt | None:
    return x.exact_div(y)


def is_unit(x: QuadInt) -> bool:
    return x.is_unit()


def format_quadint(x: QuadInt) -> str:
    """Render as ``a+b√d`` or ``(a+b√d)/2``."""
    d = x.field.d
    if x.b == 0:
        body = str(x.a)
    else:
        mag = abs(x.b)
        root = f"√{d}" if mag == 1 else f"{mag}√{d}"
        if x.a == 0:
            body = ("-" if x.b < 0 else "") + root
        else:
            body = f"{x.a}{'-' if x.b < 0 else '+'}{root}"
    if x.den == 2:
        return f"({body})/2"
    return body


_ELEMENT_RE = re.compile(
    r"^(?:(?P<a>[+-]?\d+)(?=[+-]))?(?P<sign>[+-]?)(?P<b>\d*)\*?(?:√|sqrt)\(?(?P<d>\d+)\)?$"
)


def parse_quadint(text: str, field: FieldCtx | None = None) -> QuadInt:
    """Parse the grammar produced by :func:`format_quadint`.

    ``sqrt(d)`` is accepted in place of ``√d``. A bare integer needs ``field``.
    """
    s = "".join(text.split()).replace("−", "-")
    den = 1
    m = re.fullmatch(r"\((.*)\)/(\d+)", s)
    if m:
        s, den = m.group(1), int(m.group(2))
    if re.fullmatch(r"[+-]?\d+", s):
        if field is None:
            raise ValueError(f"cannot infer the field of {text!r}")
        return QuadInt(int(s), 0, den, field)
    m = _ELEMENT_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse {text!r} as a quadratic integer")
    d = int(m.group("d"))
    if field is None:
        field = FieldCtx(d)
    elif field.d != d:
        raise FieldMismatch(f"{text!r} is not in {field}")
    a = int(m.group("a") or 0)
    b = int(m.group("b") or 1)
    if m.group("sign") == "-":
        b = -b
    return QuadInt(a, b, den, field)
