import numpy as np
import pytest

from qcryptolab.errors import ParameterError, RangeError
from qcryptolab.pubkey import (
    DhGroup,
    RsaKeyPair,
    dh_keygen,
    dh_public,
    dh_shared,
    is_prime,
    mod_exp,
    primes_below,
    rsa_dec,
    rsa_enc,
    rsa_gen,
    rsa_keypair_from_primes,
)


def naive_mod_exp(base, exp, modulus):
    out = 1 % modulus
    for _ in range(exp):
        out = (out * base) % modulus
    return out


def ext_gcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


class TestModExp:
    def test_zero_exponent(self):
        assert mod_exp(12345, 0, 97) == 1

    def test_hand_example(self):
        # 5^4 = 625 = 27*23 + 4.
        assert mod_exp(5, 4, 23) == 4

    def test_against_naive_small_cube(self):
        for base in range(0, 32):
            for exp in range(0, 32):
                for modulus in (2, 3, 7, 16, 23, 31, 40):
                    assert mod_exp(base, exp, modulus) == naive_mod_exp(
                        base, exp, modulus
                    )

    def test_against_naive_random_bytes(self):
        rng = np.random.default_rng(44)
        for _ in range(2000):
            base = int(rng.integers(0, 256))
            exp = int(rng.integers(0, 256))
            modulus = int(rng.integers(2, 256))
            assert mod_exp(base, exp, modulus) == naive_mod_exp(base, exp, modulus)

    def test_against_builtin_pow_large(self):
        rng = np.random.default_rng(45)
        for _ in range(20_000):
            base = int(rng.integers(0, 1 << 32))
            exp = int(rng.integers(0, 1 << 20))
            modulus = int(rng.integers(2, 1 << 32))
            assert mod_exp(base, exp, modulus) == pow(base, exp, modulus)

    def test_validation(self):
        with pytest.raises(RangeError):
            mod_exp(2, 3, 1)
        with pytest.raises(RangeError):
            mod_exp(2, -1, 7)


class TestPrimes:
    def test_primes_below_matches_trial_division(self):
        sieved = primes_below(1000)
        assert sieved == [n for n in range(1000) if is_prime(n)]
        assert sieved[:8] == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_small_limits(self):
        assert primes_below(0) == []
        assert primes_below(2) == []
        assert primes_below(3) == [2]

    def test_is_prime_spot_checks(self):
        assert not is_prime(0) and not is_prime(1)
        assert is_prime(2) and is_prime(3) and is_prime(7919)
        assert not is_prime(561)  # 3 * 11 * 17
        assert not is_prime(25)


class TestRsaKeyPairs:
    def test_textbook_pair(self):
        kp = rsa_keypair_from_primes(61, 53, 17)
        assert kp.n == 3233
        assert kp.d == 2753

    def test_d_matches_extended_euclid(self):
        kp = rsa_keypair_from_primes(61, 53, 17)
        phi = 60 * 52
        g, x, _ = ext_gcd(17, phi)
        assert g == 1
        assert kp.d == x % phi

    def test_invalid_primes_rejected(self):
        with pytest.raises(ParameterError):
            rsa_keypair_from_primes(61, 61, 17)
        with pytest.raises(ParameterError):
            rsa_keypair_from_primes(60, 53, 17)
        with pytest.raises(ParameterError):
            rsa_keypair_from_primes(61, 53, 15)  # gcd(15, 3120) = 15

    def test_keypair_invariants_enforced(self):
        with pytest.raises(ParameterError):
            RsaKeyPair(pk=(3233, 17), sk=(3233, 2752), p=61, q=53)
        with pytest.raises(ParameterError):
            RsaKeyPair(pk=(3233, 17), sk=(3234, 2753), p=61, q=53)

    def test_generated_pairs_invert(self):
        rng = np.random.default_rng(46)
        for _ in range(100):
            bit_len = int(rng.integers(8, 25))
            kp = rsa_gen(bit_len, 17, rng)
            phi = (kp.p - 1) * (kp.q - 1)
            assert (kp.e * kp.d) % phi == 1
            assert kp.n.bit_length() == bit_len
            assert kp.p != kp.q

    def test_gen_deterministic(self):
        a = rsa_gen(16, 17, np.random.default_rng(47))
        b = rsa_gen(16, 17, np.random.default_rng(47))
        assert a == b

    def test_gen_validation(self):
        rng = np.random.default_rng(48)
        with pytest.raises(ParameterError):
            rsa_gen(7, 17, rng)
        with pytest.raises(ParameterError):
            rsa_gen(33, 17, rng)
        with pytest.raises(ParameterError):
            rsa_gen(16, 16, rng)
        with pytest.raises(ParameterError):
            rsa_gen(16, 1, rng)

    def test_gen_unsatisfiable_constraints(self):
        # The only 8-bit modulus from two 4-bit primes is 11*13 with
        # (p-1)(q-1) = 120; e = 15 shares a factor with it.
        with pytest.raises(ParameterError):
            rsa_gen(8, 15, np.random.default_rng(49))


class TestRsaEncDec:
    KP = rsa_keypair_from_primes(61, 53, 17)

    def test_fixed_points(self):
        assert rsa_enc(self.KP.pk, 0) == 0
        assert rsa_enc(self.KP.pk, 1) == 1

    def test_textbook_ciphertext(self):
        assert rsa_enc(self.KP.pk, 65) == 2790
        assert rsa_dec(self.KP.sk, 2790) == 65

    def test_roundtrip_entire_message_space(self):
        n = self.KP.n
        for x in range(n):
            assert rsa_dec(self.KP.sk, rsa_enc(self.KP.pk, x)) == x

    def test_permutation(self):
        n = self.KP.n
        image = {rsa_enc(self.KP.pk, x) for x in range(n)}
        assert len(image) == n

    def test_range_checks(self):
        with pytest.raises(RangeError):
            rsa_enc(self.KP.pk, 3233)
        with pytest.raises(RangeError):
            rsa_dec(self.KP.sk, -1)


class TestDiffieHellman:
    def test_worked_example(self):
        group = DhGroup(23, 5)
        assert dh_public(group, 4) == 4
        assert dh_public(group, 3) == 10
        assert dh_shared(group, 4, 10) == 18
        assert dh_shared(group, 3, 4) == 18

    def test_group_validation(self):
        with pytest.raises(ParameterError):
            DhGroup(22, 5)
        with pytest.raises(ParameterError):
            DhGroup(23, 1)
        # 2 has order 11 mod 23, not 22.
        with pytest.raises(ParameterError):
            DhGroup(23, 2)

    def test_generator_covers_group(self):
        group = DhGroup(23, 5)
        powers = {mod_exp(5, i, 23) for i in range(group.order)}
        assert powers == set(range(1, 23))

    def test_secret_range_enforced(self):
        group = DhGroup(23, 5)
        with pytest.raises(RangeError):
            dh_public(group, 0)
        with pytest.raises(RangeError):
            dh_public(group, 22)
        with pytest.raises(RangeError):
            dh_shared(group, 0, 4)
        with pytest.raises(RangeError):
            dh_shared(group, 4, 0)
        with pytest.raises(RangeError):
            dh_shared(group, 4, 23)

    def test_keygen_in_range(self):
        group = DhGroup(23, 5)
        rng = np.random.default_rng(50)
        for _ in range(200):
            secret, public = dh_keygen(group, rng)
            assert 1 <= secret <= 21
            assert public == mod_exp(5, secret, 23)

    def test_agreement_at_scale(self):
        # 7 generates the full group mod the Mersenne prime 2^31 - 1;
        # agreement is an identity, not a statistic.
        group = DhGroup((1 << 31) - 1, 7)
        rng = np.random.default_rng(51)
        for _ in range(1000):
            alpha, u = dh_keygen(group, rng)
            beta, v = dh_keygen(group, rng)
            shared_a = dh_shared(group, alpha, v)
            shared_b = dh_shared(group, beta, u)
            assert shared_a == shared_b
            assert shared_a == mod_exp(group.generator, alpha * beta, group.prime)
