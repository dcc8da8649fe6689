"""Exit criteria. Run with ``pytest tests/test_acceptance.py`` for the summary."""

import time
from math import gcd

import pytest

from qmersenne.mersenne import (
    ALPHA_Q2,
    congruence_report,
    geometric_sum,
    mersenne_element,
    mersenne_norm,
    norm_closed_form,
    probable_prime_exponents,
    riesel_form,
    search,
)
from qmersenne.primality import Primality, PrimalityConfig, is_probable_prime, jacobi, small_primes
from qmersenne.quadform import EULER_CLASSES_28, brute_force_representations, cornacchia7, representable
from qmersenne.quadint import FieldCtx, parse_quadint
from qmersenne.units import fundamental_unit

Q2 = ALPHA_Q2.field
CFG = PrimalityConfig(mr_rounds=24)

N73 = "851569055172258793218602741480913108991"
N89 = "290315886781191681464330388772329064268797313023"
N233 = ("18060475427282023033368001231166441784737806891537"
        "806547065314167911959518498581747712829157156517940837234519177963497324543")


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, limit {self.limit}s"


@pytest.mark.acceptance(1)
def test_table1_exact():
    """Table 1 exact for α = 2+√2 (elements and norms), < 1 s"""
    rows = [(2, "3+√2", 7), (3, "9+5√2", 31), (5, "97+67√2", 431),
            (7, "1121+791√2", 5279), (11, "152193+107615√2", 732799)]
    with Timer(1.0):
        for p, element, norm in rows:
            m = mersenne_element(ALPHA_Q2, p)
            assert m == parse_quadint(element) == geometric_sum(ALPHA_Q2, p)
            assert abs(m.norm()) == norm == mersenne_norm(ALPHA_Q2, p)
            assert is_probable_prime(norm, CFG) is Primality.PROBABLE_PRIME


@pytest.mark.acceptance(2)
def test_giant_norms():
    """Norms at p = 73, 89, 233 match character-for-character and are BPSW+24MR probable primes, < 10 s"""
    with Timer(10.0):
        for p, expected in ((73, N73), (89, N89), (233, N233)):
            norm = mersenne_norm(ALPHA_Q2, p)
            assert str(norm) == expected
            assert str(norm_closed_form(p)) == expected
            trace = []
            assert is_probable_prime(norm, CFG, trace) is Primality.PROBABLE_PRIME
            stages = [s for s, _, _ in trace]
            assert stages.count("lucas") == 1 and stages.count("mr") == 24


@pytest.mark.acceptance(3)
def test_exponent_set_through_233():
    """Probable-prime exponents p <= 233 for α = 2+√2 are exactly {2,3,5,7,11,73,89,233}, < 2 min"""
    with Timer(120.0):
        cands = search(ALPHA_Q2, 233, CFG)
        assert [c.p for c in cands] == list(small_primes(233))
        assert probable_prime_exponents(cands) == [2, 3, 5, 7, 11, 73, 89, 233]


@pytest.mark.acceptance(4)
def test_fundamental_units():
    """All twelve units of Tables 2 and 4 with the stated N(α), < 1 s"""
    table2 = [(13, "(3+√13)/2", 3), (29, "(5+√29)/2", 5), (53, "(7+√53)/2", 7),
              (149, "(61+5√149)/2", 61), (173, "(13+√173)/2", 13), (293, "(17+√293)/2", 17)]
    table4 = [(21, "(5+√21)/2", 7), (77, "(9+√77)/2", 11), (93, "(29+3√93)/2", 31),
              (237, "(77+5√237)/2", 79), (437, "(21+√437)/2", 23), (453, "(149+7√453)/2", 151)]
    with Timer(1.0):
        for rows, sign in ((table2, -1), (table4, 1)):
            for d, unit, alpha_norm in rows:
                F = FieldCtx(d)
                u = fundamental_unit(F)
                assert u.value == parse_quadint(unit, F)
                assert u.norm_sign == sign
                assert (u.value + 1).norm() == alpha_norm


@pytest.mark.acceptance(5)
def test_field_searches():
    """Q(√13) {5,7,11,19,41}, Q(√21) {17,47}, Q(√77) {2,7,71} with exact norms, < 1 min"""
    cases = [
        ("(5+√13)/2", 41, [5, 7, 11, 19, 41],
         {5: 1231, 7: 25117, 11: 9181987, 19: 1098413907397}),
        ("(7+√21)/2", 47, [17, 47], {17: 223358425353211}),
        ("(11+√77)/2", 71, [2, 7, 71], {2: 23, 7: 10248701}),
    ]
    with Timer(60.0):
        for alpha_text, p_max, expected, norms in cases:
            alpha = parse_quadint(alpha_text)
            cands = search(alpha, p_max, CFG)
            assert probable_prime_exponents(cands) == expected
            by_p = {c.p: c.norm_abs for c in cands}
            for p, n in norms.items():
                assert by_p[p] == n


@pytest.mark.acceptance(6)
def test_representations():
    """Table 7 and the p = 73/89/233 representations by Cornacchia; x ≡ 0 mod 8, y ≡ ±3 mod 8"""
    expected = [
        (431, 16, 5), (5279, 64, 13), (732799, 856, 3),
        (int(N73), 28615996544447548272, 2161143775888286749),
        (int(N89), 363706809248848497658560, 150253711001099458172317),
        (int(N233), 86527345603258677818378326573842407929031070590321223524182584,
         38865140256563104639356290982349294477380709218952585423373629),
    ]
    for N, x, y in expected:
        rep = cornacchia7(N)
        assert (rep.x, rep.y) == (x, y)
        assert x * x + 7 * y * y == N
        assert x % 8 == 0 and y % 8 in (3, 5)


@pytest.mark.acceptance(7)
def test_property_suite():
    """Pell, jumps, mod-7 orbit, a/b linkage, N(α^n)=2^n, closed form, congruences, divisibility, Riesel, < 30 s"""
    with Timer(30.0):
        # Pell invariant and parity of w
        v, w = 1, 1
        seq = {}
        for n in range(1, 1001):
            seq[n] = (v, w)
            assert v * v - 2 * w * w == (-1) ** n
            assert (w % 2 == 1) == (n % 2 == 1)
            v, w = v + 2 * w, v + w
        # jump formulas (w_{n+3} = 5v + 7w; see u^3 = 7 + 5√2)
        jumps = {2: (3, 4, 2, 3), 3: (7, 10, 5, 7), 4: (17, 24, 12, 17),
                 5: (41, 58, 29, 41), 6: (99, 140, 70, 99)}
        for k, (a, b, c, e) in jumps.items():
            for n in range(1, 101):
                vn, wn = seq[n]
                assert seq[n + k] == (a * vn + b * wn, c * vn + e * wn)
        # mod-7 orbit
        for k in range(51):
            assert (seq[6 * k + 1][0] % 7, seq[6 * k + 1][1] % 7) == (1, 1)
            assert (seq[6 * k + 5][0] % 7, seq[6 * k + 5][1] % 7) == (6, 1)
        # a/b linkage and N(α^n) = 2^n
        power = Q2.one
        for n in range(1, 65):
            power = power * ALPHA_Q2
            vn, wn = seq[n]
            if n % 2:
                assert (power.a, power.b) == (2 ** ((n + 1) // 2) * wn, 2 ** ((n - 1) // 2) * vn)
            else:
                assert (power.a, power.b) == (2 ** (n // 2) * vn, 2 ** (n // 2) * wn)
            assert power.norm() == 2 ** n
        odd_primes = [p for p in small_primes(201) if p > 2]
        for p in odd_primes:
            N = mersenne_norm(ALPHA_Q2, p)
            wp = seq[p][1]
            if p > 3:
                assert N == norm_closed_form(p) == 2 ** ((p + 3) // 2) * wp - 2 ** p - 1
                assert (ALPHA_Q2 ** p - 1).norm() == -N
                assert N % 7 == (1 if p % 3 == 1 else 4)
                rf = riesel_form(p)
                assert rf.h * 2 ** rf.n - 1 == N and rf.h % 2 == 1
                assert all(rf.h != 4 ** m - 1 for m in range(1, rf.h.bit_length() // 2 + 2))
            assert N % 8 == 7
            assert congruence_report(p).all_pass
        # divisibility and coprimality up to 60
        elems = {n: mersenne_element(ALPHA_Q2, n) for n in range(1, 61)}
        norms = {n: abs(elems[n].norm()) for n in elems}
        for n in range(1, 61):
            for m in range(1, n + 1):
                if n % m == 0:
                    assert elems[n].exact_div(elems[m]) is not None
                    assert norms[n] % norms[m] == 0
                if gcd(m, n) == 1:
                    assert gcd(norms[m], norms[n]) == 1
        assert norms[1] == 1 and all(norms[n] < norms[n + 1] for n in range(1, 60))


@pytest.mark.acceptance(8)
def test_representation_census():
    """Jacobi / mod-28 / brute-force agree for every probable prime q < 10^5, < 30 s"""
    with Timer(30.0):
        count = 0
        for q in range(3, 10**5):
            if q == 7 or is_probable_prime(q, CFG) is not Primality.PROBABLE_PRIME:
                continue
            count += 1
            by_jacobi = jacobi(-7, q) == 1
            by_class = q % 28 in EULER_CLASSES_28
            by_search = bool(brute_force_representations(q))
            assert by_jacobi == by_class == by_search == representable(q), q
        assert count == 9592 - 2   # π(10^5) minus 2 and 7
