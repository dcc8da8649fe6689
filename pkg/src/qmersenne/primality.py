"""Probable-prime testing for arbitrary-precision integers.

The pipeline is trial division, base-2 Miller-Rabin, a strong Lucas test
with Selfridge parameters (together: BPSW), then extra Miller-Rabin rounds.
A COMPOSITE verdict is final; PROBABLE_PRIME is not a proof.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

# First twelve primes: a complete Miller-Rabin witness set below 3.3e24.
DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class Primality(str, enum.Enum):
    COMPOSITE = "composite"
    PROBABLE_PRIME = "probable_prime"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class PrimalityConfig:
    trial_bound: int = 10000
    mr_rounds: int = 24
    seed: int = 0

    def __post_init__(self):
        if self.trial_bound < 2:
            raise ValueError("trial_bound must be >= 2")
        if self.mr_rounds < 1:
            raise ValueError("mr_rounds must be >= 1")


DEFAULT_CONFIG = PrimalityConfig()


@lru_cache(maxsize=8)
def small_primes(bound: int) -> tuple[int, ...]:
    """Primes <= bound by the sieve of Eratosthenes."""
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def miller_rabin(n: int, base: int) -> bool:
    """Strong probable-prime test to ``base``; False means n is composite."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"Miller-Rabin needs odd n >= 3, got {n}")
    if not 2 <= base <= n - 2:
        if n > 4:
            raise ValueError(f"base must lie in [2, n-2], got {base}")
        return True
    t, s = n - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    x = pow(base, t, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _selfridge(n: int) -> int | None:
    # D in 5, -7, 9, -11, ... with (D/n) = -1; None if a factor shows up
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            return D
        if j == 0 and abs(D) != n:
            return None
        D = -D - 2 if D > 0 else -D + 2


def strong_lucas(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge's parameters."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"strong Lucas test needs odd n >= 3, got {n}")
    r = isqrt(n)
    if r * r == n:
        return False
    D = _selfridge(n)
    if D is None:
        return False
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    inv2 = (n + 1) // 2
    U, V, Qk = 0, 2, 1
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_probable_prime(
    n: int, cfg: PrimalityConfig | None = None, trace: list | None = None
) -> Primality:
    """Run the full pipeline on ``n`` (n >= 2).

    If ``trace`` is a list, one ``(stage, detail, passed)`` tuple is appended
    per step executed.
    """
    cfg = cfg or DEFAULT_CONFIG
    if n < 2:
        raise ValueError(f"primality undefined for n = {n}")

    def note(stage, detail, ok):
        if trace is not None:
            trace.append((stage, detail, ok))

    for q in small_primes(cfg.trial_bound):
        if q * q > n:
            note("trial", q, True)
            return Primality.PROBABLE_PRIME
        if n % q == 0:
            ok = n == q
            note("trial", q, ok)
            return Primality.PROBABLE_PRIME if ok else Primality.COMPOSITE
    note("trial", cfg.trial_bound, True)

    if not miller_rabin(n, 2):
        note("mr", 2, False)
        return Primality.COMPOSITE
    note("mr", 2, True)
    if not strong_lucas(n):
        note("lucas", "selfridge", False)
        return Primality.COMPOSITE
    note("lucas", "selfridge", True)

    extra = cfg.mr_rounds - 1
    if n < 1 << 64:
        bases = [b for b in DETERMINISTIC_BASES[1:] if b <= n - 2][:max(extra, 0)]
    else:
        rng = random.Random(cfg.seed)
        bases = [rng.randrange(3, n - 1) for _ in range(extra)]
    for b in bases:
        ok = miller_rabin(n, b)
        note("mr", b, ok)
        if not ok:
            return Primality.COMPOSITE
    return Primality.PROBABLE_PRIME


def is_4m_minus_1(h: int) -> bool:
    k = h + 1
    return k >= 4 and k & (k - 1) == 0 and (k.bit_length() - 1) % 2 == 0


@dataclass(frozen=True)
class RieselGate:
    applicable: bool
    reasons: tuple[str, ...] = ()


def riesel_gate(h: int, n: int) -> RieselGate:
    """Check the hypotheses for a Riesel-type test of ``h*2^n - 1``.

    Two conditions: ``h`` is not of the form ``4^m - 1``, and the classical
    Lucas-Lehmer-Riesel bound ``h < 2^n``.
    """
    reasons = []
    if is_4m_minus_1(h):
        m = (h + 1).bit_length() // 2
        reasons.append(f"h = 4^{m}-1")
    if h >= 1 << n:
        reasons.append(f"h >= 2^n ({h} >= 2^{n})")
    return RieselGate(not reasons, tuple(reasons))
