"""Desk-scale public-key primitives: modular arithmetic, RSA, Diffie-Hellman.

Moduli fit in machine words (RSA keys of 8 to 32 bits) so every claim about
these schemes -- trapdoor correctness, shared-secret agreement, the ease of
factoring small n -- can be checked exhaustively or near-exhaustively.  The
attack experiments in ``games`` break these parameters on purpose; nothing
here is sized for actual secrecy.

All randomness comes from explicit ``numpy.random.Generator`` arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ParameterError, RangeError

# Give up on rejection-sampling an RSA prime pair after this many draws;
# at desk scale a valid pair is either found quickly or does not exist.
_RSA_SAMPLE_CAP = 10_000


def mod_exp(base: int, exp: int, modulus: int) -> int:
    """base^exp mod modulus by square-and-multiply.

    O(log exp) multiplications instead of exp - 1; the difference is what
    makes RSA and Diffie-Hellman usable at all.
    """
    if modulus < 2:
        raise RangeError(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise RangeError(f"exponent must be >= 0, got {exp}")
    result = 1
    square = base % modulus
    while exp:
        if exp & 1:
            result = (result * square) % modulus
        square = (square * square) % modulus
        exp >>= 1
    return result


def is_prime(n: int) -> bool:
    """Trial-division primality test; plenty fast below ~2^40."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_below(limit: int) -> list[int]:
    """All primes < limit, by sieve."""
    if limit <= 2:
        return []
    mask = np.ones(limit, dtype=bool)
    mask[:2] = False
    for i in range(2, math.isqrt(limit - 1) + 1):
        if mask[i]:
            mask[i * i :: i] = False
    return [int(i) for i in np.nonzero(mask)[0]]


def _distinct_prime_factors(n: int) -> list[int]:
    factors = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            factors.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


# -- RSA ----------------------------------------------------------------


@dataclass(frozen=True)
class RsaKeyPair:
    """An RSA key pair with its private primes kept alongside.

    pk = (n, e), sk = (n, d) with n = p*q and e*d = 1 mod (p-1)(q-1).
    The primes stay visible because at this scale they are not secrets,
    they are test fixtures.
    """

    pk: tuple[int, int]
    sk: tuple[int, int]
    p: int
    q: int

    def __post_init__(self) -> None:
        n, e = self.pk
        n_sk, d = self.sk
        if n != n_sk:
            raise ParameterError("pk and sk disagree on the modulus")
        if self.p == self.q or not (is_prime(self.p) and is_prime(self.q)):
            raise ParameterError("p and q must be distinct primes")
        if n != self.p * self.q:
            raise ParameterError("n != p*q")
        phi = (self.p - 1) * (self.q - 1)
        if math.gcd(e, phi) != 1:
            raise ParameterError("e shares a factor with (p-1)(q-1)")
        if (e * d) % phi != 1:
            raise ParameterError("e*d != 1 mod (p-1)(q-1)")

    @property
    def n(self) -> int:
        return self.pk[0]

    @property
    def e(self) -> int:
        return self.pk[1]

    @property
    def d(self) -> int:
        return self.sk[1]


def rsa_keypair_from_primes(p: int, q: int, e: int) -> RsaKeyPair:
    """Build a key pair from chosen primes (the deterministic test hook)."""
    if p == q or not (is_prime(p) and is_prime(q)):
        raise ParameterError("p and q must be distinct primes")
    phi = (p - 1) * (q - 1)
    if math.gcd(e, phi) != 1:
        raise ParameterError(f"e={e} shares a factor with (p-1)(q-1)={phi}")
    d = pow(e, -1, phi)
    return RsaKeyPair(pk=(p * q, e), sk=(p * q, d), p=p, q=q)


@lru_cache(maxsize=None)
def _primes_with_bit_length(bits: int) -> tuple[int, ...]:
    return tuple(p for p in primes_below(1 << bits) if p.bit_length() == bits)


def rsa_gen(bit_len: int, e: int, rng: np.random.Generator) -> RsaKeyPair:
    """Generate a key pair whose modulus has exactly ``bit_len`` bits.

    Primes come from sieved pools of bit_len/2-bit primes; pairs are
    rejection-sampled until n has the right width and e is invertible
    mod (p-1)(q-1).  Raises ParameterError when the constraints are
    unsatisfiable (tiny pools can rule out some e entirely).
    """
    if not 8 <= bit_len <= 32:
        raise ParameterError(f"bit_len must be in [8, 32], got {bit_len}")
    if e <= 2 or e % 2 == 0:
        raise ParameterError(f"e must be an odd integer > 2, got {e}")
    lo_pool = _primes_with_bit_length(bit_len // 2)
    hi_pool = _primes_with_bit_length(bit_len - bit_len // 2)
    for _ in range(_RSA_SAMPLE_CAP):
        p = hi_pool[int(rng.integers(len(hi_pool)))]
        q = lo_pool[int(rng.integers(len(lo_pool)))]
        if p == q:
            continue
        if (p * q).bit_length() != bit_len:
            continue
        if math.gcd(e, (p - 1) * (q - 1)) != 1:
            continue
        return rsa_keypair_from_primes(p, q, e)
    raise ParameterError(
        f"no prime pair with a {bit_len}-bit product admits e={e}"
    )


def rsa_enc(pk: tuple[int, int], x: int) -> int:
    """Enc((n, e), x) = x^e mod n."""
    n, e = pk
    if not 0 <= x < n:
        raise RangeError(f"operand {x} outside Z_{n}")
    return mod_exp(x, e, n)


def rsa_dec(sk: tuple[int, int], c: int) -> int:
    """Dec((n, d), c) = c^d mod n; inverts rsa_enc exactly."""
    n, d = sk
    if not 0 <= c < n:
        raise RangeError(f"operand {c} outside Z_{n}")
    return mod_exp(c, d, n)


# -- Diffie-Hellman -----------------------------------------------------


@dataclass(frozen=True)
class DhGroup:
    """The multiplicative group mod a prime, with a verified generator.

    Construction checks that ``generator`` really has order prime - 1
    (via the prime factorization of the order), so group membership and
    the exponent arithmetic downstream need no further care.
    """

    prime: int
    generator: int

    def __post_init__(self) -> None:
        if not is_prime(self.prime) or self.prime < 3:
            raise ParameterError(f"{self.prime} is not an odd prime")
        if not 2 <= self.generator < self.prime:
            raise ParameterError(
                f"generator {self.generator} outside [2, {self.prime})"
            )
        order = self.prime - 1
        for f in _distinct_prime_factors(order):
            if mod_exp(self.generator, order // f, self.prime) == 1:
                raise ParameterError(
                    f"{self.generator} does not generate the full group mod {self.prime}"
                )

    @property
    def order(self) -> int:
        return self.prime - 1


def dh_public(group: DhGroup, secret: int) -> int:
    """g^secret mod p for a secret exponent in [1, p-2]."""
    if not 1 <= secret <= group.prime - 2:
        raise RangeError(f"secret must lie in [1, {group.prime - 2}]")
    return mod_exp(group.generator, secret, group.prime)


def dh_keygen(group: DhGroup, rng: np.random.Generator) -> tuple[int, int]:
    """Draw a uniform secret exponent; returns (secret, public)."""
    secret = int(rng.integers(1, group.prime - 1))
    return secret, dh_public(group, secret)


def dh_shared(group: DhGroup, secret: int, peer_public: int) -> int:
    """peer_public^secret mod p -- the same value on both ends."""
    if not 1 <= secret <= group.prime - 2:
        raise RangeError(f"secret must lie in [1, {group.prime - 2}]")
    if not 1 <= peer_public <= group.prime - 1:
        raise RangeError(f"peer value {peer_public} outside the group")
    return mod_exp(peer_public, secret, group.prime)
