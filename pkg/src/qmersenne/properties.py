"""Numerical checks of the structural properties of Q(√2) Mersenne norms.

Each check returns a :class:`Check`; ``run_all`` drives the ``properties``
CLI command.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .mersenne import (
    ALPHA_Q2,
    congruence_report,
    divisibility_check,
    jump_coefficients,
    mersenne_norm,
    norm_closed_form,
    riesel_form,
    vw,
)
from .primality import Primality, PrimalityConfig, is_probable_prime, jacobi, small_primes
from .quadform import (
    EULER_CLASSES_28,
    brute_force_representations,
    cornacchia7,
    representable,
    structure_check,
)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _first_failure(name: str, items) -> Check:
    for label, ok in items:
        if not ok:
            return Check(name, False, f"fails at {label}")
    return Check(name, True)


def pell_invariant(n_max: int = 1000) -> Check:
    def gen():
        v, w = 1, 1
        for n in range(1, n_max + 1):
            yield n, v * v - 2 * w * w == (-1) ** n and (w % 2 == 1) == (n % 2 == 1)
            v, w = v + 2 * w, v + w
    return _first_failure("pell invariant v^2 - 2w^2 = (-1)^n", gen())


# Jump coefficients as printed, except k = 3 where w_{n+3} = 5v + 7w
# (the printed 10w contradicts u^3 = 7 + 5√2).
PUBLISHED_JUMPS = {
    2: ((3, 4), (2, 3)),
    3: ((7, 10), (5, 7)),
    4: ((17, 24), (12, 17)),
    5: ((41, 58), (29, 41)),
    6: ((99, 140), (70, 99)),
}


def jump_formulas(n_max: int = 100) -> Check:
    def gen():
        for k, coeffs in PUBLISHED_JUMPS.items():
            yield f"k={k} coefficients", jump_coefficients(k) == coeffs
            (a, b), (c, e) = coeffs
            for n in range(1, n_max + 1):
                x, y = vw(n), vw(n + k)
                yield f"k={k}, n={n}", (y.v, y.w) == (a * x.v + b * x.w, c * x.v + e * x.w)
    return _first_failure("jump formulas v_{n+k}, w_{n+k}", gen())


def mod7_orbit(k_max: int = 50) -> Check:
    def gen():
        for k in range(k_max + 1):
            a, b = vw(6 * k + 1), vw(6 * k + 5)
            yield f"k={k}", (a.v % 7, a.w % 7) == (1, 1) and (b.v % 7, b.w % 7) == (6, 1)
    return _first_failure("mod-7 orbit of (v, w)", gen())


def ab_linkage(n_max: int = 64) -> Check:
    def gen():
        power = ALPHA_Q2.field.one
        for n in range(1, n_max + 1):
            power = power * ALPHA_Q2
            pair = vw(n)
            if n % 2:
                ok = power.a == pair.w << ((n + 1) // 2) and power.b == pair.v << ((n - 1) // 2)
            else:
                ok = power.a == pair.v << (n // 2) and power.b == pair.w << (n // 2)
            yield f"n={n}", ok and power.norm() == 1 << n
    return _first_failure("a_n/b_n linkage and N(α^n) = 2^n", gen())


def closed_form(p_max: int = 201) -> Check:
    def gen():
        for n in range(5, p_max + 1, 2):
            direct = mersenne_norm(ALPHA_Q2, n)
            conj_norm = (ALPHA_Q2 ** n - 1).norm()
            yield f"n={n}", direct == norm_closed_form(n) and conj_norm == -norm_closed_form(n)
    return _first_failure("closed-form norm = direct norm (odd n)", gen())


def congruences(p_max: int = 201) -> Check:
    return _first_failure(
        "N ≡ -1 (mod 8), mod-p and mod-7 classes",
        ((f"p={p}", congruence_report(p).all_pass) for p in small_primes(p_max) if p > 2),
    )


def divisibility(n_max: int = 60) -> Check:
    def gen():
        for n in range(1, n_max + 1):
            for m in range(1, n + 1):
                if n % m == 0 or gcd(m, n) == 1:
                    yield f"m={m}, n={n}", divisibility_check(ALPHA_Q2, m, n)
    return _first_failure("M_m | M_n for m | n; coprime norms for gcd = 1", gen())


def monotonicity(n_max: int = 60) -> Check:
    norms = [mersenne_norm(ALPHA_Q2, n) for n in range(1, n_max + 1)]
    ok = norms[0] == 1 and all(a < b for a, b in zip(norms, norms[1:]))
    return Check("N(M_n) strictly increasing from 1", ok)


def riesel_identity(p_max: int = 201) -> Check:
    def gen():
        for p in small_primes(p_max):
            if p <= 3:
                continue
            rf = riesel_form(p)
            yield f"p={p}", (
                rf.value == mersenne_norm(ALPHA_Q2, p) and rf.h % 2 == 1 and not rf.h_is_4m_minus_1
            )
    return _first_failure("h·2^n - 1 = N, h odd, h != 4^m - 1", gen())


def found_primes_structure(p_max: int = 233, cfg: PrimalityConfig | None = None) -> Check:
    def gen():
        for p in small_primes(p_max):
            N = mersenne_norm(ALPHA_Q2, p)
            if is_probable_prime(N, cfg) is not Primality.PROBABLE_PRIME:
                continue
            if p > 2:
                yield f"p={p} (2/N)", jacobi(2, N) == 1
            if p > 3:
                rep = cornacchia7(N)
                yield f"p={p} structure", rep is not None and structure_check(rep).all_pass
    return _first_failure("x ≡ 0 (mod 8), y ≡ ±3 (mod 8) for found primes", gen())


def representation_census(bound: int = 10**5, cfg: PrimalityConfig | None = None) -> Check:
    def gen():
        for q in range(3, bound):
            if q == 7 or is_probable_prime(q, cfg) is not Primality.PROBABLE_PRIME:
                continue
            by_jacobi = jacobi(-7, q) == 1
            by_class = q % 28 in EULER_CLASSES_28
            by_search = bool(brute_force_representations(q))
            yield f"q={q}", by_jacobi == by_class == by_search == representable(q)
    return _first_failure("Jacobi / mod-28 / brute-force agreement", gen())


def run_all(p_max: int = 201, cfg: PrimalityConfig | None = None) -> list[Check]:
    return [
        pell_invariant(),
        jump_formulas(),
        mod7_orbit(),
        ab_linkage(),
        closed_form(p_max),
        congruences(p_max),
        divisibility(),
        monotonicity(),
        riesel_identity(p_max),
        found_primes_structure(max(p_max, 233), cfg),
        representation_census(cfg=cfg),
    ]
