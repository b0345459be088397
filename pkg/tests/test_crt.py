"""Congruence-solver tests, cross-checked against exhaustive scans."""

import random
from math import gcd, prod

import pytest

from crthss import Congruence, crt_basis, crt_solve, ext_gcd, mod_inverse
from crthss.errors import EmptySystem, ModuliNotPairwiseCoprime, NotCoprime


def scan_solutions(system):
    """Oracle: every x in [0, prod moduli) satisfying all congruences."""
    combined = prod(c.modulus for c in system)
    return [
        x for x in range(combined)
        if all(x % c.modulus == c.residue for c in system)
    ]


def test_ext_gcd_identity_cases():
    g, u, v = ext_gcd(12, 18)
    assert g == 6 and 12 * u + 18 * v == 6
    assert ext_gcd(1, 0) == (1, 1, 0)
    g, u, v = ext_gcd(3, 7)
    assert g == 1 and (u * 3) % 7 == 1
    # exhaustive check: 3*5 = 15 = 1 mod 7, so u = 5 mod 7
    assert [x for x in range(7) if (3 * x) % 7 == 1] == [5]
    assert u % 7 == 5


def test_ext_gcd_signs_and_zero():
    for a, b in [(-12, 18), (12, -18), (-12, -18), (0, 5), (5, 0), (-7, 0)]:
        g, u, v = ext_gcd(a, b)
        assert g == gcd(a, b) >= 0
        assert u * a + v * b == g
    with pytest.raises(ValueError):
        ext_gcd(0, 0)


def test_ext_gcd_random():
    rng = random.Random(1)
    for _ in range(500):
        a = rng.randrange(-10**12, 10**12)
        b = rng.randrange(-10**12, 10**12)
        if a == 0 and b == 0:
            continue
        g, u, v = ext_gcd(a, b)
        assert g == gcd(a, b)
        assert u * a + v * b == g


def test_mod_inverse_examples():
    assert mod_inverse(3, 7) == 5
    for m in (2, 3, 17, 1009):
        assert mod_inverse(1, m) == 1
    with pytest.raises(NotCoprime):
        mod_inverse(4, 8)
    with pytest.raises(ValueError):
        mod_inverse(3, 1)


def test_mod_inverse_random():
    rng = random.Random(2)
    for _ in range(500):
        m = rng.randrange(2, 10**9)
        a = rng.randrange(1, m)
        if gcd(a, m) != 1:
            continue
        inv = mod_inverse(a, m)
        assert 0 <= inv < m
        assert (inv * a) % m == 1
    # negative and oversized inputs are normalized first
    assert (mod_inverse(-4, 7) * -4) % 7 == 1
    assert (mod_inverse(10, 7) * 10) % 7 == 1


def test_crt_solve_worked_examples():
    sol = crt_solve([Congruence(2, 3), Congruence(3, 5)])
    assert scan_solutions([Congruence(2, 3), Congruence(3, 5)]) == [8]
    assert (sol.value, sol.combined_modulus) == (8, 15)

    sol = crt_solve([Congruence(0, 3), Congruence(0, 5), Congruence(0, 7)])
    assert (sol.value, sol.combined_modulus) == (0, 105)

    system = [Congruence(5, 11), Congruence(12, 13)]
    assert scan_solutions(system) == [38]
    sol = crt_solve(system)
    assert (sol.value, sol.combined_modulus) == (38, 143)


def test_crt_solve_errors():
    with pytest.raises(ModuliNotPairwiseCoprime) as excinfo:
        crt_solve([Congruence(1, 4), Congruence(3, 6)])
    assert "4" in str(excinfo.value) and "6" in str(excinfo.value)
    with pytest.raises(EmptySystem):
        crt_solve([])


def test_congruence_rejects_unnormalized():
    with pytest.raises(ValueError):
        Congruence(-1, 5)
    with pytest.raises(ValueError):
        Congruence(5, 5)
    with pytest.raises(ValueError):
        Congruence(0, 1)


def test_crt_basis_terms():
    combined, terms = crt_basis([3, 5, 7])
    assert combined == 105
    moduli = [3, 5, 7]
    for i, (partial, lam) in enumerate(terms):
        assert partial == combined // moduli[i]
        assert (lam * partial) % moduli[i] == 1
        for j, m in enumerate(moduli):
            assert (lam * partial) % m == (1 if i == j else 0)


def _random_coprime_system(rng, max_product=10**6, max_count=5):
    moduli = []
    product = 1
    for _ in range(rng.randrange(2, max_count + 1)):
        for _ in range(50):
            m = rng.randrange(2, 100)
            if product * m <= max_product and all(gcd(m, o) == 1 for o in moduli):
                moduli.append(m)
                product *= m
                break
    if len(moduli) < 2:
        moduli = [3, 5]
    return [Congruence(rng.randrange(m), m) for m in moduli]


def test_crt_random_systems_match_scan():
    rng = random.Random(3)
    for _ in range(200):
        system = _random_coprime_system(rng, max_product=10**4)
        sol = crt_solve(system)
        assert scan_solutions(system) == [sol.value]
        for c in system:
            assert sol.value % c.modulus == c.residue


def test_crt_permutation_invariant():
    rng = random.Random(4)
    for _ in range(100):
        system = _random_coprime_system(rng, max_product=10**5)
        sol = crt_solve(system)
        shuffled = system[:]
        rng.shuffle(shuffled)
        assert crt_solve(shuffled) == sol


def test_crt_redundant_congruence():
    rng = random.Random(5)
    for _ in range(100):
        system = _random_coprime_system(rng, max_product=10**4)
        sol = crt_solve(system)
        for extra in range(2, 200):
            if all(gcd(extra, c.modulus) == 1 for c in system):
                break
        augmented = system + [Congruence(sol.value % extra, extra)]
        sol2 = crt_solve(augmented)
        assert sol2.value == sol.value
        assert sol2.combined_modulus == sol.combined_modulus * extra
