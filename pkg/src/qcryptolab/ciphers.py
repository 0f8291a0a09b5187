"""Toy symmetric ciphers and hashes sized for exhaustive analysis.

Everything here is deliberately undersized: 16-bit blocks, enumerable key
spaces, polynomial hashes over a one-byte prime field.  At this scale the
classical security notions stop being asymptotic claims and become finite
statements a test suite can settle by brute force -- perfect secrecy by
exact counting, Feistel bijectivity over every block, collision bounds
over every key.  The experiments in ``games`` drive these same objects as
challengers.

None of these schemes is secure, and none is meant to be.

Bit strings are plain tuples of 0/1 ints (most significant bit first);
block-cipher blocks and keys are 16-bit integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import (
    LengthError,
    ParameterError,
    RangeError,
    SpaceTooLargeError,
)
from .pubkey import is_prime

Bits = tuple[int, ...]

# Largest |keys| x |messages| product check_perfect_secrecy will enumerate.
MAX_SECRECY_SPACE = 1 << 12


# -- bit strings --------------------------------------------------------


def bits_from_int(value: int, width: int) -> Bits:
    """The ``width``-bit big-endian expansion of ``value``."""
    if width < 0:
        raise LengthError(f"width must be >= 0, got {width}")
    if value < 0 or value >> width:
        raise RangeError(f"{value} does not fit in {width} bits")
    return tuple((value >> i) & 1 for i in range(width - 1, -1, -1))


def bits_to_int(bits: Bits) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def parse_bits(text: str) -> Bits:
    """Turn a string like '1011' into a bit tuple."""
    if any(ch not in "01" for ch in text):
        raise RangeError(f"not a bit string: {text!r}")
    return tuple(int(ch) for ch in text)


def format_bits(bits: Bits) -> str:
    return "".join("01"[b] for b in bits)


def random_bits(length: int, rng: np.random.Generator) -> Bits:
    if length < 0:
        raise LengthError(f"length must be >= 0, got {length}")
    return tuple(int(b) for b in rng.integers(0, 2, size=length))


def xor_bits(a: Bits, b: Bits) -> Bits:
    if len(a) != len(b):
        raise LengthError(f"length mismatch: {len(a)} vs {len(b)}")
    return tuple(x ^ y for x, y in zip(a, b))


def parity(bits: Bits) -> int:
    """1 if the number of 1s is odd, else 0."""
    return sum(bits) & 1


# -- one-time pad -------------------------------------------------------


def otp_enc(key: Bits, message: Bits) -> Bits:
    """c = k XOR m; key and message must have equal length."""
    return xor_bits(key, message)


def otp_dec(key: Bits, ciphertext: Bits) -> Bits:
    """m = k XOR c; the pad is its own inverse."""
    return xor_bits(key, ciphertext)


# -- Shannon ciphers and perfect secrecy --------------------------------


@dataclass(frozen=True)
class ShannonCipher:
    """A symmetric scheme with a finite, enumerable key space.

    ``keys`` spells out the whole key space and ``gen`` draws from it
    uniformly.  ``messages`` enumerates the message space where that is
    small enough to be useful (the secrecy checker and the guessing games
    sample from it); pass None when it is too large to spell out.
    """

    name: str
    keys: tuple
    enc: Callable
    dec: Callable
    messages: tuple | None = None

    def __post_init__(self) -> None:
        if not self.keys:
            raise ParameterError(f"{self.name}: key space is empty")
        if self.messages is not None and not self.messages:
            raise ParameterError(f"{self.name}: message space is empty")

    @property
    def key_space_size(self) -> int:
        return len(self.keys)

    @property
    def message_space_size(self) -> int:
        if self.messages is None:
            raise SpaceTooLargeError(f"{self.name}: message space not enumerated")
        return len(self.messages)

    def gen(self, rng: np.random.Generator):
        """Draw a key uniformly from the key space."""
        return self.keys[int(rng.integers(len(self.keys)))]


def otp_cipher(length: int) -> ShannonCipher:
    """The one-time pad on ``length``-bit strings, fully enumerated."""
    if not 1 <= length <= 16:
        raise RangeError(f"need 1 <= length <= 16 to enumerate, got {length}")
    space = tuple(bits_from_int(v, length) for v in range(1 << length))
    return ShannonCipher(
        name=f"otp-{length}", keys=space, enc=otp_enc, dec=otp_dec, messages=space
    )


class ShannonConditions(NamedTuple):
    uniform_prob: bool
    unique_key: bool


@dataclass(frozen=True)
class SecrecyReport:
    """What exhaustive counting says about one cipher's secrecy."""

    cipher: str
    is_perfect: bool
    shannon_conditions: ShannonConditions
    key_space_size: int
    message_space_size: int
    ciphertext_space_size: int


def check_perfect_secrecy(cipher: ShannonCipher) -> SecrecyReport:
    """Brute-force the perfect-secrecy definition by exact counting.

    For every (message, ciphertext) pair, count how many keys map the
    message to that ciphertext.  ``is_perfect`` is the textbook equality
    P(Enc(k, m0) = c) = P(Enc(k, m1) = c) under a uniform key; the two
    classical conditions characterizing it when |K| = |M| = |C| -- every
    pair hit with probability exactly 1/|M|, and by exactly one key --
    are reported alongside.  Integer arithmetic throughout; nothing is
    floated.
    """
    if cipher.messages is None:
        raise SpaceTooLargeError(f"{cipher.name}: message space not enumerated")
    n_keys = len(cipher.keys)
    n_msgs = len(cipher.messages)
    if n_keys * n_msgs > MAX_SECRECY_SPACE:
        raise SpaceTooLargeError(
            f"{cipher.name}: {n_keys} keys x {n_msgs} messages exceeds "
            f"{MAX_SECRECY_SPACE}"
        )
    counts: dict = {}
    for mi, m in enumerate(cipher.messages):
        for k in cipher.keys:
            row = counts.setdefault(cipher.enc(k, m), {})
            row[mi] = row.get(mi, 0) + 1
    rows = counts.values()
    is_perfect = all(
        len(row) == n_msgs and len(set(row.values())) == 1 for row in rows
    )
    uniform_prob = all(
        len(row) == n_msgs and all(v * n_msgs == n_keys for v in row.values())
        for row in rows
    )
    unique_key = all(
        len(row) == n_msgs and set(row.values()) == {1} for row in rows
    )
    return SecrecyReport(
        cipher=cipher.name,
        is_perfect=is_perfect,
        shannon_conditions=ShannonConditions(uniform_prob, unique_key),
        key_space_size=n_keys,
        message_space_size=n_msgs,
        ciphertext_space_size=len(counts),
    )


# -- pseudo-random generators and the stream cipher ---------------------


@dataclass(frozen=True)
class PrgSpec:
    """A deterministic seed expander {0,1}^seed_len -> {0,1}^out_len."""

    name: str
    seed_len: int
    out_len: int
    expand: Callable[[Bits], Bits]

    def __post_init__(self) -> None:
        if self.seed_len < 1:
            raise ParameterError(f"{self.name}: seed_len must be >= 1")
        if self.out_len <= self.seed_len:
            raise ParameterError(
                f"{self.name}: a generator must stretch (out_len > seed_len)"
            )


def prg_expand(spec: PrgSpec, seed: Bits) -> Bits:
    """Run the generator, enforcing both length contracts."""
    if len(seed) != spec.seed_len:
        raise LengthError(
            f"{spec.name}: seed length {len(seed)} != {spec.seed_len}"
        )
    out = tuple(spec.expand(seed))
    if len(out) != spec.out_len:
        raise LengthError(
            f"{spec.name}: expand produced {len(out)} bits, not {spec.out_len}"
        )
    return out


def counter_prg(out_len: int) -> PrgSpec:
    """Counter-mode keystream from the toy block cipher.

    The 16-bit seed keys the cipher; block i of the stream is Enc(seed, i)
    and the concatenation is truncated to ``out_len`` bits.
    """
    if out_len > 16 * (1 << 16):
        raise ParameterError("counter space exhausted before out_len bits")

    def expand(seed: Bits) -> Bits:
        key = bits_to_int(seed)
        out: list[int] = []
        counter = 0
        while len(out) < out_len:
            out.extend(bits_from_int(toy_block_enc(key, counter), 16))
            counter += 1
        return tuple(out[:out_len])

    return PrgSpec(name=f"counter-prg-{out_len}", seed_len=16, out_len=out_len, expand=expand)


def zero_pad_prg(seed_len: int, out_len: int) -> PrgSpec:
    """The degenerate stretcher s -> s || 00...0.

    Its output ends in out_len - seed_len zeros with certainty, which a
    uniform string does with probability 2^-(out_len - seed_len): the
    canonical example of a PRG any distinguisher beats.
    """

    def expand(seed: Bits) -> Bits:
        return tuple(seed) + (0,) * (out_len - seed_len)

    return PrgSpec(
        name=f"zero-pad-prg-{seed_len}-{out_len}",
        seed_len=seed_len,
        out_len=out_len,
        expand=expand,
    )


def stream_enc(spec: PrgSpec, seed: Bits, message: Bits) -> Bits:
    """XOR the message with the length-|m| prefix of the keystream."""
    if len(message) > spec.out_len:
        raise LengthError(
            f"message length {len(message)} exceeds stream length {spec.out_len}"
        )
    stream = prg_expand(spec, seed)
    return xor_bits(stream[: len(message)], message)


def stream_dec(spec: PrgSpec, seed: Bits, ciphertext: Bits) -> Bits:
    """Identical to stream_enc: XOR against the same keystream prefix."""
    return stream_enc(spec, seed, ciphertext)


# -- toy block cipher (balanced Feistel) and ECB mode -------------------


@dataclass(frozen=True)
class BlockCipherSpec:
    """A keyed permutation family on fixed-width integer blocks."""

    name: str
    block_bits: int
    key_bits: int
    rounds: int
    enc: Callable
    dec: Callable

    @property
    def block_space_size(self) -> int:
        return 1 << self.block_bits

    @property
    def key_space_size(self) -> int:
        return 1 << self.key_bits


# Fixed 16-bit round constants for the key schedule: arbitrary but frozen,
# so round keys -- and every recorded test vector -- stay stable.
_ROUND_CONST = (0x9E37, 0x79B9, 0x7F4A, 0x1CE5, 0x2B4C, 0x6A09, 0xB7E1, 0x5851)


def _rol16(x: int, r: int) -> int:
    r %= 16
    return ((x << r) | (x >> (16 - r))) & 0xFFFF


def _round_keys(key: int, rounds: int) -> tuple[int, ...]:
    # Affine schedule: k_i = rol16(k, i) ^ const_i.
    return tuple(_rol16(key, i + 1) ^ _ROUND_CONST[i] for i in range(rounds))


def _mix(half, round_key: int):
    # Nonlinear byte-level round function; works on ints and integer
    # arrays alike (the Feistel structure absorbs its non-invertibility).
    x = half ^ (round_key & 0xFF)
    x = (x * 197 + (round_key >> 8)) & 0xFF
    return ((x << 3) | (x >> 5)) & 0xFF


def _feistel_apply(block, round_keys: Sequence[int]):
    left, right = block >> 8, block & 0xFF
    for rk in round_keys:
        left, right = right, left ^ _mix(right, rk)
    return (left << 8) | right


def _feistel_invert(block, round_keys: Sequence[int]):
    left, right = block >> 8, block & 0xFF
    for rk in reversed(round_keys):
        left, right = right ^ _mix(left, rk), left
    return (left << 8) | right


def _check_word(value, what: str) -> None:
    arr = np.asarray(value)
    if not np.issubdtype(arr.dtype, np.integer):
        raise LengthError(f"{what} must be a 16-bit integer")
    if arr.size and (int(arr.min()) < 0 or int(arr.max()) >> 16):
        raise LengthError(f"{what} must lie in [0, 65536)")


def feistel_cipher(rounds: int = 4) -> BlockCipherSpec:
    """A 16-bit balanced Feistel network with ``rounds`` rounds.

    One round copies half its input to the output verbatim -- the classic
    broken variant the distinguishing games catch.  Four rounds pass the
    bijection and avalanche sanity checks.  Blocks may be integers or
    integer arrays; the permutation applies elementwise, which is what
    makes exhaustive checks over all 2^16 blocks cheap.
    """
    if not 1 <= rounds <= len(_ROUND_CONST):
        raise ParameterError(f"rounds must be in [1, {len(_ROUND_CONST)}]")

    def enc(key: int, block):
        _check_word(key, "key")
        _check_word(block, "block")
        return _feistel_apply(block, _round_keys(int(key), rounds))

    def dec(key: int, block):
        _check_word(key, "key")
        _check_word(block, "block")
        return _feistel_invert(block, _round_keys(int(key), rounds))

    return BlockCipherSpec(
        name=f"feistel-{rounds}",
        block_bits=16,
        key_bits=16,
        rounds=rounds,
        enc=enc,
        dec=dec,
    )


TOY_BLOCK_CIPHER = feistel_cipher(4)


def toy_block_enc(key: int, block):
    """Encrypt one 16-bit block under a 16-bit key (4-round Feistel)."""
    return TOY_BLOCK_CIPHER.enc(key, block)


def toy_block_dec(key: int, block):
    """Invert toy_block_enc: round keys applied in reverse order."""
    return TOY_BLOCK_CIPHER.dec(key, block)


ECB_MAX_BLOCKS = 64


def ecb_enc(
    key: int,
    blocks: Sequence[int],
    cipher: BlockCipherSpec = TOY_BLOCK_CIPHER,
    max_blocks: int = ECB_MAX_BLOCKS,
) -> tuple[int, ...]:
    """Encrypt a short block sequence blockwise (codebook mode).

    Determinism is the point: equal plaintext blocks yield equal
    ciphertext blocks, the leak the distinguishing games exploit.
    """
    if not 1 <= len(blocks) <= max_blocks:
        raise LengthError(f"block count must be in [1, {max_blocks}]")
    return tuple(cipher.enc(key, b) for b in blocks)


def ecb_dec(
    key: int,
    blocks: Sequence[int],
    cipher: BlockCipherSpec = TOY_BLOCK_CIPHER,
    max_blocks: int = ECB_MAX_BLOCKS,
) -> tuple[int, ...]:
    """Decrypt blockwise with the same cipher."""
    if not 1 <= len(blocks) <= max_blocks:
        raise LengthError(f"block count must be in [1, {max_blocks}]")
    return tuple(cipher.dec(key, b) for b in blocks)


# -- polynomial-evaluation universal hash -------------------------------


@dataclass(frozen=True)
class UhfSpec:
    """Polynomial-evaluation hash over Z_p for short messages.

    H(k, m) = sum_i m[i] * k^(i+1) mod p.  Two distinct messages of at
    most ``max_blocks`` blocks collide exactly when k is a root of their
    nonzero difference polynomial k * D(k) with deg D <= max_blocks - 1,
    so at most max_blocks - 1 *nonzero* keys collide: drawing keys from
    the nonzero residues makes the collision probability at most
    epsilon = (max_blocks - 1) / (p - 1), with equality achievable.
    k = 0 hashes everything to 0 and is therefore not part of the
    drawing space, though uhf_eval still evaluates it.
    """

    prime: int
    max_blocks: int

    def __post_init__(self) -> None:
        if not is_prime(self.prime):
            raise ParameterError(f"{self.prime} is not prime")
        if self.max_blocks < 1:
            raise ParameterError("max_blocks must be >= 1")

    @property
    def epsilon(self) -> float:
        return (self.max_blocks - 1) / (self.prime - 1)

    @property
    def key_space(self) -> range:
        return range(1, self.prime)

    @property
    def digest_space(self) -> range:
        return range(self.prime)


def uhf_eval(spec: UhfSpec, key: int, message: Sequence[int]) -> int:
    """Digest sum_i message[i] * key^(i+1) mod p, in Horner form."""
    if not 0 <= key < spec.prime:
        raise RangeError(f"key {key} outside [0, {spec.prime})")
    if not 1 <= len(message) <= spec.max_blocks:
        raise LengthError(
            f"message length must be in [1, {spec.max_blocks}], got {len(message)}"
        )
    acc = 0
    for symbol in reversed(message):
        if not 0 <= symbol < spec.prime:
            raise RangeError(f"symbol {symbol} outside Z_{spec.prime}")
        acc = (acc * key + symbol) % spec.prime
    return (acc * key) % spec.prime
