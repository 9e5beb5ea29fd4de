"""Tests for modular arithmetic primitives."""

import math
import time

import pytest
from sympy import primerange
from sympy.ntheory import discrete_log as sympy_discrete_log
from sympy.ntheory import is_primitive_root as sympy_is_primitive_root
from sympy.ntheory import n_order

from gcyclo.errors import NoSolutionError, NotInvertibleError, ParameterError
from gcyclo.services.number_theory import (
    delta,
    delta_half_period,
    discrete_log,
    euler_phi_prime_power,
    find_primitive_root,
    half_power_parity,
    is_odd_prime,
    is_primitive_root,
    is_wieferich,
    mod_two_profile,
    multiplicative_order,
    validate_odd_prime,
    wieferich_primes,
)

SMALL_PRIMES = [int(p) for p in primerange(3, 38)]


class TestPrimality:
    """Test odd-prime checks."""

    def test_is_odd_prime(self):
        """Odd primes pass, everything else fails."""
        for p in (3, 5, 7, 13, 37, 1093):
            assert is_odd_prime(p)
        for p in (-3, 0, 1, 2, 4, 9, 15, 25):
            assert not is_odd_prime(p)

    def test_validate_odd_prime_message(self):
        """The diagnostic names the constraint."""
        with pytest.raises(ParameterError, match="p must be an odd prime"):
            validate_odd_prime(4)

    def test_euler_phi_prime_power(self):
        """phi(p^j) = p^(j-1)(p-1)."""
        assert euler_phi_prime_power(5, 1) == 4
        assert euler_phi_prime_power(5, 2) == 20
        assert euler_phi_prime_power(3, 4) == 54
        with pytest.raises(ParameterError):
            euler_phi_prime_power(5, 0)


class TestMultiplicativeOrder:
    """Test ord_m(a)."""

    def test_known_orders(self):
        """Orders of 2 modulo small prime powers."""
        assert multiplicative_order(2, 5) == 4
        assert multiplicative_order(2, 9) == 6
        assert multiplicative_order(2, 25) == 20
        assert multiplicative_order(2, 7) == 3
        assert multiplicative_order(2, 49) == 21

    def test_matches_sympy(self):
        """Agrees with sympy's n_order on every unit of a few moduli."""
        for m in (9, 25, 49, 121, 169):
            for a in range(1, m):
                if math.gcd(a, m) == 1:
                    assert multiplicative_order(a, m) == n_order(a, m)

    def test_not_invertible(self):
        """a sharing a factor with m has no order."""
        with pytest.raises(NotInvertibleError):
            multiplicative_order(5, 25)

    def test_bad_modulus(self):
        """Modulus below 2 is rejected."""
        with pytest.raises(ParameterError):
            multiplicative_order(1, 1)


class TestPrimitiveRoots:
    """Test primitive roots modulo p^2."""

    def test_smallest_roots(self):
        """Smallest primitive roots modulo p^2."""
        assert find_primitive_root(3) == 2
        assert find_primitive_root(5) == 2
        assert find_primitive_root(7) == 3

    def test_roots_generate_mod_p_squared(self):
        """Every returned root generates Z*_{p^2}."""
        for p in SMALL_PRIMES:
            g = find_primitive_root(p)
            assert sympy_is_primitive_root(g, p * p)
            assert is_primitive_root(g, p)

    def test_non_roots(self):
        """Elements of smaller order are rejected."""
        assert not is_primitive_root(4, 5)
        assert not is_primitive_root(2, 7)
        assert not is_primitive_root(5, 5)


class TestDiscreteLog:
    """Test indices with respect to a primitive root."""

    def test_known_index(self):
        """ind_3(2) modulo 49."""
        assert discrete_log(3, 2, 49) == 26

    def test_baby_step_giant_step_path(self):
        """Forcing the BSGS path gives the same answers as the sweep."""
        for a in range(1, 49):
            if a % 7:
                assert discrete_log(3, a, 49, sweep_limit=1) == discrete_log(3, a, 49)

    def test_matches_sympy(self):
        """Agrees with sympy's discrete_log."""
        for p in (5, 7, 11, 13):
            g = find_primitive_root(p)
            m = p * p
            for a in (2, 3, m - 1):
                assert discrete_log(g, a, m) == sympy_discrete_log(m, a, g)

    def test_no_solution(self):
        """2 is not a power of 4 modulo 5."""
        with pytest.raises(NoSolutionError):
            discrete_log(4, 2, 5)
        with pytest.raises(NoSolutionError):
            discrete_log(4, 2, 5, sweep_limit=1)

    def test_not_invertible(self):
        """Non-units have no index."""
        with pytest.raises(NotInvertibleError):
            discrete_log(2, 5, 25)


class TestWieferich:
    """Test the Wieferich condition 2^(p-1) = 1 (mod p^2)."""

    def test_scan_below_5000(self):
        """Exactly 1093 and 3511 below 5000, within 5 seconds."""
        start = time.perf_counter()
        assert wieferich_primes(5000) == [1093, 3511]
        assert time.perf_counter() - start < 5.0

    def test_scan_empty_ranges(self):
        """No Wieferich primes below 1000."""
        assert wieferich_primes(1000) == []
        assert wieferich_primes(3) == []

    def test_is_wieferich(self):
        """Single-prime check."""
        assert is_wieferich(1093)
        assert is_wieferich(3511)
        assert not is_wieferich(5)
        assert not is_wieferich(7)


class TestParity:
    """Test the delta helper and its closed forms."""

    def test_delta(self):
        """1 on even, 0 on odd."""
        assert delta(4) == 1
        assert delta(3) == 0
        with pytest.raises(ParameterError):
            delta(0)

    def test_delta_half_period(self):
        """delta((p^n + 1)/2) from p^n mod 4."""
        assert delta_half_period(7, 1) == 1
        assert delta_half_period(5, 1) == 0
        assert delta_half_period(7, 2) == 0
        assert delta_half_period(3, 1) == 1
        assert delta_half_period(3, 2) == 0
        for p in SMALL_PRIMES:
            for n in range(1, 5):
                assert delta_half_period(p, n) == delta((p**n + 1) // 2)

    def test_half_power_parity(self):
        """((p^l - 1)/2) mod 2."""
        assert half_power_parity(7, 1) == 1
        assert half_power_parity(5, 1) == 0
        assert half_power_parity(3, 2) == 0
        for p in SMALL_PRIMES:
            for l in range(0, 5):
                assert half_power_parity(p, l) == ((p**l - 1) // 2) % 2


class TestModTwoProfile:
    """Test the behaviour of 2 modulo powers of p."""

    def test_profile_p7(self):
        """p = 7, g = 3."""
        profile = mod_two_profile(7, 2)
        assert profile.c == 3
        assert not profile.wieferich
        assert profile.u == 26
        assert profile.orders == [3, 21]
        assert profile.order_at(2) == 21
        with pytest.raises(ParameterError):
            profile.order_at(3)

    def test_order_tower(self):
        """ord_{p^(j+1)}(2) = p ord_{p^j}(2) for non-Wieferich p and j in {1, 2}."""
        for p in SMALL_PRIMES:
            orders = mod_two_profile(p, 3).orders
            assert orders[1] == p * orders[0]
            assert orders[2] == p * orders[1]

    def test_index_of_two_not_divisible_by_p(self):
        """ind_g(2) mod p^2 is prime to p when p is not Wieferich."""
        for p in SMALL_PRIMES:
            assert mod_two_profile(p, 2).u % p != 0
