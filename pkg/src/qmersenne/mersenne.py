"""Generalized Mersenne numbers M = (α^n - 1)/(α - 1) in real quadratic fields.

``α = 1 + u`` for a unit ``u``; the interesting case is α irreducible, which
for these shapes happens exactly when |N(α)| is a rational prime.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from math import gcd

from .primality import (
    PrimalityConfig,
    Primality,
    is_4m_minus_1,
    is_probable_prime,
    small_primes,
)
from .quadint import FieldCtx, QuadInt, format_quadint
from .units import UnitElem, fundamental_unit, unit_power

Q2 = FieldCtx(2)
ALPHA_Q2 = QuadInt(2, 1, 1, Q2)  # 2+√2
SQRT2 = QuadInt(0, 1, 1, Q2)


class Verdict(str, enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    IS_UNIT = "unit"


class Case(str, enum.Enum):
    T1 = "T1"  # d = 2,3 mod 4, N(u) = -1
    T2 = "T2"  # d = 1 mod 4, N(u) = -1
    T3 = "T3"  # d = 2,3 mod 4, N(u) = +1
    T4 = "T4"  # d = 1 mod 4, N(u) = +1


CASE_EXPLANATION = {
    Case.T1: "d ≡ 2,3 (mod 4), N(u) = -1: α = 1+u is irreducible only for d = 2, u = ±1±√2",
    Case.T2: "d ≡ 1 (mod 4), N(u) = -1: u = (a+b√d)/2 gives N(α) = a, irreducible iff a is prime",
    Case.T3: "d ≡ 2,3 (mod 4), N(u) = +1: N(α) = 2(1+a), α is always reducible",
    Case.T4: "d ≡ 1 (mod 4), N(u) = +1: u = (a+b√d)/2 gives N(α) = a+2, irreducible iff a+2 is prime",
}


def _is_rational_prime(n: int) -> bool:
    return n >= 2 and is_probable_prime(n) is Primality.PROBABLE_PRIME


@dataclass(frozen=True)
class AlphaChoice:
    field: FieldCtx
    u: UnitElem
    alpha: QuadInt
    alpha_norm: int
    verdict: Verdict
    case: Case

    @property
    def irreducible(self) -> bool:
        return self.verdict is Verdict.IRREDUCIBLE

    def explain(self) -> str:
        return f"{self.case.value}: {CASE_EXPLANATION[self.case]}"


def classify_alpha(field: FieldCtx, u: UnitElem) -> AlphaChoice:
    if u.field != field:
        raise ValueError(f"unit {u} is not in {field}")
    if u.value == field.one or u.value == -field.one:
        raise ValueError("u = ±1 gives a degenerate α")
    alpha = u.value + 1
    alpha_norm = 1 + u.value.trace() + u.value.norm()
    assert alpha_norm == alpha.norm()
    if abs(alpha_norm) == 1:
        verdict = Verdict.IS_UNIT
    elif _is_rational_prime(abs(alpha_norm)):
        verdict = Verdict.IRREDUCIBLE
    else:
        verdict = Verdict.REDUCIBLE
    if field.half_basis:
        case = Case.T2 if u.norm_sign < 0 else Case.T4
    else:
        case = Case.T1 if u.norm_sign < 0 else Case.T3
    return AlphaChoice(field, u, alpha, alpha_norm, verdict, case)


def _conj_representative(x: QuadInt) -> QuadInt:
    return x if x.b >= 0 else x.conj()


def alpha_menu(field: FieldCtx, max_unit_power: int) -> list[AlphaChoice]:
    """Irreducible α = 1 ± u^{±k}, k <= max_unit_power, one per conjugate pair."""
    if max_unit_power < 1:
        raise ValueError("max_unit_power must be >= 1")
    eps = fundamental_unit(field)
    found: list[AlphaChoice] = []
    seen: set[QuadInt] = set()
    for k in range(1, max_unit_power + 1):
        uk = unit_power(eps, k)
        for u in (uk, -uk, uk.inverse(), -uk.inverse()):
            choice = classify_alpha(field, u)
            if not choice.irreducible:
                continue
            rep = _conj_representative(choice.alpha)
            if rep in seen:
                continue
            seen.add(rep)
            if rep != choice.alpha:
                # conjugate unit gives the conjugate α
                choice = classify_alpha(field, UnitElem(u.value.conj(), u.norm_sign))
            found.append(choice)
    return found


def default_alpha(field: FieldCtx, alpha_power: int = 1) -> AlphaChoice:
    """α = 1 + ε^k for the fundamental unit ε (2+√2 when d = 2, k = 1)."""
    return classify_alpha(field, unit_power(fundamental_unit(field), alpha_power))


def _check_alpha(alpha: QuadInt) -> None:
    if not (alpha - 1).is_unit():
        raise ValueError(f"α - 1 = {alpha - 1} is not a unit")


def geometric_sum(alpha: QuadInt, n: int) -> QuadInt:
    """1 + α + ... + α^(n-1) by Horner's rule."""
    total = alpha.field.zero
    for _ in range(n):
        total = total * alpha + 1
    return total


def mersenne_element(alpha: QuadInt, n: int) -> QuadInt:
    if n < 1:
        raise ValueError("n must be positive")
    _check_alpha(alpha)
    m = (alpha ** n - 1).exact_div(alpha - 1)
    assert m is not None
    return m


def mersenne_norm(alpha: QuadInt, n: int) -> int:
    """|N(M_n)|, computed as |N(α^n - 1)| since N(α - 1) = ±1."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_alpha(alpha)
    return abs((alpha ** n - 1).norm())


@dataclass(frozen=True)
class VWPair:
    n: int
    v: int
    w: int


def vw(n: int) -> VWPair:
    """Coefficients of (1+√2)^n = v + w√2 from v' = v + 2w, w' = v + w."""
    if n < 1:
        raise ValueError("n must be >= 1")
    v, w = 1, 1
    for _ in range(n - 1):
        v, w = v + 2 * w, v + w
    return VWPair(n, v, w)


def vw_fast(n: int) -> VWPair:
    u = QuadInt(1, 1, 1, Q2) ** n
    return VWPair(n, u.a, u.b)


def jump_coefficients(k: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Matrix with v_{n+k} = c00 v_n + c01 w_n and w_{n+k} = c10 v_n + c11 w_n."""
    c, e = (QuadInt(1, 1, 1, Q2) ** k).a, (QuadInt(1, 1, 1, Q2) ** k).b
    return (c, 2 * e), (e, c)


def norm_closed_form(p: int) -> int:
    """N(M_p) for α = 2+√2 as 2^((p+3)/2) w_p - 2^p - 1 (odd p > 3)."""
    if p % 2 == 0 or p <= 3:
        raise ValueError(f"closed form needs odd p > 3, got {p}")
    return (vw_fast(p).w << ((p + 3) // 2)) - (1 << p) - 1


@dataclass(frozen=True)
class RieselForm:
    h: int
    n: int
    h_is_4m_minus_1: bool

    @property
    def value(self) -> int:
        return (self.h << self.n) - 1


def riesel_form(p: int) -> RieselForm:
    """Write N(M_p) (α = 2+√2) as h·2^n - 1 with h = w_p - 2^((p-3)/2)."""
    if p % 2 == 0 or p <= 3:
        raise ValueError(f"Riesel form needs odd p > 3, got {p}")
    h = vw_fast(p).w - (1 << ((p - 3) // 2))
    return RieselForm(h, (p + 3) // 2, is_4m_minus_1(h))


@dataclass(frozen=True)
class CongruenceReport:
    p: int
    norm: int
    mod8: bool
    mod_p: bool
    mod7: bool | None
    vw_mod7: bool | None

    @property
    def all_pass(self) -> bool:
        return all(x is not False for x in (self.mod8, self.mod_p, self.mod7, self.vw_mod7))


def congruence_report(p: int) -> CongruenceReport:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"need an odd prime, got {p}")
    N = mersenne_norm(ALPHA_Q2, p)
    w_p = vw_fast(p).w
    mod8 = N % 8 == 7
    if p % 8 in (1, 7):
        mod_p = (N - (4 * w_p - 3)) % p == 0
    else:
        mod_p = (N - (-4 * w_p - 3)) % p == 0
    mod7 = vw_mod7 = None
    if p > 3:
        mod7 = N % 7 == (1 if p % 3 == 1 else 4)
        v, w = vw_fast(p).v % 7, w_p % 7
        vw_mod7 = (v, w) == ((1, 1) if p % 6 == 1 else (6, 1))
    return CongruenceReport(p, N, mod8, mod_p, mod7, vw_mod7)


def divisibility_check(alpha: QuadInt, m: int, n: int) -> bool:
    """M_m | M_n and N(M_m) | N(M_n) when m | n; coprime norms when gcd(m, n) = 1."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    ok = True
    if n % m == 0:
        q = mersenne_element(alpha, n).exact_div(mersenne_element(alpha, m))
        ok = q is not None and mersenne_norm(alpha, n) % mersenne_norm(alpha, m) == 0
    if gcd(m, n) == 1:
        ok = ok and gcd(mersenne_norm(alpha, m), mersenne_norm(alpha, n)) == 1
    return ok


@dataclass(frozen=True)
class MersenneCandidate:
    p: int
    alpha: QuadInt
    m_element: QuadInt | None
    norm_abs: int
    primality: Primality
    riesel: RieselForm | None = None
    elapsed_ms: float = dc_field(default=0.0, compare=False)

    def as_record(self) -> dict:
        return {
            "d": self.alpha.field.d,
            "alpha": format_quadint(self.alpha),
            "p": self.p,
            "norm": str(self.norm_abs),
            "primality": self.primality.value,
            "h": None if self.riesel is None else str(self.riesel.h),
            "n": None if self.riesel is None else self.riesel.n,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def evaluate_candidate(
    alpha: QuadInt, p: int, cfg: PrimalityConfig | None = None, with_element: bool = False
) -> MersenneCandidate:
    start = time.perf_counter()
    riesel = None
    if alpha == ALPHA_Q2 and p > 3:
        riesel = riesel_form(p)
        norm_abs = riesel.value
    else:
        norm_abs = mersenne_norm(alpha, p)
    element = mersenne_element(alpha, p) if with_element else None
    primality = is_probable_prime(norm_abs, cfg) if norm_abs >= 2 else Primality.UNKNOWN
    elapsed = (time.perf_counter() - start) * 1000
    return MersenneCandidate(p, alpha, element, norm_abs, primality, riesel, elapsed)


def _evaluate_args(args):
    return evaluate_candidate(*args)


def search(
    alpha: QuadInt,
    p_max: int,
    cfg: PrimalityConfig | None = None,
    workers: int = 1,
    with_element: bool = False,
) -> list[MersenneCandidate]:
    """Evaluate every prime exponent p <= p_max; results are sorted by p.

    Only prime exponents are tried: a prime norm forces a prime exponent.
    """
    _check_alpha(alpha)
    jobs = [(alpha, p, cfg, with_element) for p in small_primes(p_max)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate_args, jobs))
    else:
        results = [_evaluate_args(job) for job in jobs]
    return sorted(results, key=lambda c: c.p)


def probable_prime_exponents(candidates: list[MersenneCandidate]) -> list[int]:
    return [c.p for c in candidates if c.primality is Primality.PROBABLE_PRIME]


def irreducible_table(norm_sign: int, bound: int = 500) -> list[AlphaChoice]:
    """Class-number-one fields d ≡ 1 (mod 4), d < bound, whose fundamental
    unit has the given norm sign and gives an irreducible α = 1 + ε."""
    from .quadint import CLASS_NUMBER_ONE

    rows = []
    for d in sorted(CLASS_NUMBER_ONE):
        if d >= bound or d % 4 != 1:
            continue
        field = FieldCtx(d)
        eps = fundamental_unit(field)
        if eps.norm_sign != norm_sign:
            continue
        choice = classify_alpha(field, eps)
        if choice.irreducible:
            rows.append(choice)
    return rows
