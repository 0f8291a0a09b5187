"""Challenger/adversary security games with Monte-Carlo advantage estimates.

Each game pits a named adversary strategy against a challenger that wraps
one of the toy schemes.  Advantages are estimated by repeated independent
trials; every estimate carries a 95% confidence half-width so callers can
tell a real separation from sampling noise.

Game keys and the strategy signature each expects:

    "ss"     semantic security       strategy(rng) -> (m0, m1, decide)
    "mr"     message recovery        strategy(ciphertext, rng) -> message
    "parity" parity prediction       strategy(ciphertext, rng) -> bit
    "prg"    PRG distinguishing      strategy(output_bits, rng) -> bit
    "bc"     block-cipher vs perm    strategy(oracle, rng) -> bit
    "uhf"    hash collision finding  strategy(rng) -> (m1, m2)
    "rsa"    ciphertext inversion    strategy(n, e, c, rng) -> message
    "ddh"    DH-tuple detection      strategy(u, v, w, group, rng) -> bit

For the two-world games (ss, prg, bc, ddh) the trial budget is split
evenly across both worlds and the advantage is the absolute difference of
the output-1 frequencies.  For mr and parity the advantage is the win
frequency minus the blind-guess baseline; for uhf and rsa it is the win
frequency itself.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Callable, Mapping, Sequence

import numpy as np

from .ciphers import (
    Bits,
    BlockCipherSpec,
    PrgSpec,
    ShannonCipher,
    UhfSpec,
    bits_from_int,
    counter_prg,
    ecb_dec,
    ecb_enc,
    feistel_cipher,
    otp_cipher,
    parity,
    prg_expand,
    random_bits,
    stream_enc,
    uhf_eval,
    xor_bits,
    zero_pad_prg,
)
from .errors import (
    InvalidPairError,
    ParameterError,
    QueryBudgetError,
    RangeError,
    SpaceTooLargeError,
    UnknownNameError,
)
from .pubkey import DhGroup, dh_keygen, mod_exp, rsa_enc, rsa_gen

__all__ = [
    "Adversary",
    "AdvantageEstimate",
    "SuiteRow",
    "estimate_ss_advantage",
    "estimate_mr_advantage",
    "estimate_parity_advantage",
    "estimate_prg_advantage",
    "estimate_bc_advantage",
    "uhf_collision_game",
    "estimate_rsa_advantage",
    "estimate_ddh_advantage",
    "ss_adversary_from_mr",
    "ss_adversary_from_parity",
    "scheme_names",
    "adversary_names",
    "suite_names",
    "build_scheme",
    "build_adversary",
    "run_game_suite",
    "report_json",
    "MAX_ORACLE_CALLS",
    "MIN_TRIALS",
]

MIN_TRIALS = 100
MAX_ORACLE_CALLS = 1_000_000

# Fixed plaintext header reused by the keystream-reuse demo cipher.
_REUSE_HEADER: Bits = (1, 0, 1, 1, 0, 0, 1, 0)


@dataclass(frozen=True)
class Adversary:
    """A named attack strategy.

    The strategy signature depends on the game; see the module docstring.
    Strategies must draw all randomness from the rng they are handed and
    must not keep state across trials.
    """

    name: str
    strategy: Callable


@dataclass(frozen=True)
class AdvantageEstimate:
    """Result of one game run: advantage plus sampling uncertainty.

    wins holds raw per-world success counts ({"w0", "w1"} for two-world
    games, {"wins"} otherwise) so reports can be audited and replayed.
    ci_half_width is the 95% normal-approximation half-width obtained by
    summing the binomial variance of each world's frequency.
    """

    game: str
    scheme: str
    adversary: str
    trials: int
    wins: Mapping[str, int]
    advantage: float
    ci_half_width: float


def _check_trials(trials: int) -> None:
    if trials < MIN_TRIALS:
        raise RangeError(f"need at least {MIN_TRIALS} trials, got {trials}")


def _enumerated_messages(cipher: ShannonCipher) -> tuple:
    if cipher.messages is None:
        raise SpaceTooLargeError(f"{cipher.name}: game must sample an enumerated message space")
    return cipher.messages


def _ci_half_width(branches: Sequence[tuple[int, int]]) -> float:
    """95% half-width for a sum/difference of independent frequencies."""
    var = 0.0
    for wins, n in branches:
        p = wins / n
        var += p * (1.0 - p) / n
    return 1.96 * math.sqrt(var)


def _two_world_estimate(
    game: str,
    scheme: str,
    adversary: str,
    wins: Sequence[int],
    per_world: int,
) -> AdvantageEstimate:
    p0 = wins[0] / per_world
    p1 = wins[1] / per_world
    return AdvantageEstimate(
        game=game,
        scheme=scheme,
        adversary=adversary,
        trials=2 * per_world,
        wins={"w0": wins[0], "w1": wins[1]},
        advantage=abs(p0 - p1),
        ci_half_width=_ci_half_width([(wins[0], per_world), (wins[1], per_world)]),
    )


def _one_world_estimate(
    game: str,
    scheme: str,
    adversary: str,
    wins: int,
    trials: int,
    baseline: float,
) -> AdvantageEstimate:
    return AdvantageEstimate(
        game=game,
        scheme=scheme,
        adversary=adversary,
        trials=trials,
        wins={"wins": wins},
        advantage=abs(wins / trials - baseline),
        ci_half_width=_ci_half_width([(wins, trials)]),
    )


def estimate_ss_advantage(
    cipher: ShannonCipher,
    adversary: Adversary,
    trials: int,
    rng: np.random.Generator,
) -> AdvantageEstimate:
    """Semantic-security game: distinguish encryptions of two chosen messages.

    Per trial the adversary names (m0, m1) and a decision rule; the
    challenger encrypts m_b under a fresh key.  The advantage is
    |P(output 1 | b=0) - P(output 1 | b=1)|.
    """
    _check_trials(trials)
    per_world = trials // 2
    wins = [0, 0]
    for world in (0, 1):
        for _ in range(per_world):
            m0, m1, decide = adversary.strategy(rng)
            key = cipher.gen(rng)
            challenge = cipher.enc(key, (m0, m1)[world])
            if decide(challenge) == 1:
                wins[world] += 1
    return _two_world_estimate("ss", cipher.name, adversary.name, wins, per_world)


def estimate_mr_advantage(
    cipher: ShannonCipher,
    adversary: Adversary,
    trials: int,
    rng: np.random.Generator,
) -> AdvantageEstimate:
    """Message-recovery game: recover a uniform message from its ciphertext.

    The advantage is the win frequency minus the blind-guess baseline
    1/|M|, so a guessing adversary lands near zero.
    """
    _check_trials(trials)
    messages = _enumerated_messages(cipher)
    wins = 0
    for _ in range(trials):
        message = messages[int(rng.integers(len(messages)))]
        key = cipher.gen(rng)
        recovered = adversary.strategy(cipher.enc(key, message), rng)
        if recovered == message:
            wins += 1
    baseline = 1.0 / len(messages)
    return _one_world_estimate("mr", cipher.name, adversary.name, wins, trials, baseline)


def estimate_parity_advantage(
    cipher: ShannonCipher,
    adversary: Adversary,
    trials: int,
    rng: np.random.Generator,
) -> AdvantageEstimate:
    """Parity-prediction game: predict the XOR of the plaintext bits.

    Advantage is the win frequency minus the coin-flip baseline 1/2.
    """
    _check_trials(trials)
    messages = _enumerated_messages(cipher)
    wins = 0
    for _ in range(trials):
        message = messages[int(rng.integers(len(messages)))]
        key = cipher.gen(rng)
        guess = adversary.strategy(cipher.enc(key, message), rng)
        if guess == parity(message):
            wins += 1
    return _one_world_estimate("parity", cipher.name, adversary.name, wins, trials, 0.5)


def estimate_prg_advantage(
    spec: PrgSpec,
    adversary: Adversary,
    trials: int,
    rng: np.random.Generator,
) -> AdvantageEstimate:
    """PRG distinguishing game: expander output vs a truly uniform string."""
    _check_trials(trials)
    per_world = trials // 2
    wins = [0, 0]
    for world in (0, 1):
        for _ in range(per_world):
            if world == 0:
                sample = prg_expand(spec, random_bits(spec.seed_len, rng))
            else:
                sample = random_bits(spec.out_len, rng)
            if adversary.strategy(sample, rng) == 1:
                wins[world] += 1
    return _two_world_estimate("prg", spec.name, adversary.name, wins, per_world)


def _lazy_permutation(size: int, rng: np.random.Generator) -> Callable[[int], int]:
    """A uniform random permutation of range(size), sampled point by point.

    Images are drawn lazily and rejection-sampled to stay distinct, so a
    q-query adversary costs O(q) memory instead of O(size!).
    """
    table: dict[int, int] = {}
    used: set[int] = set()

    def probe(block: int) -> int:
        if not 0 <= block < size:
            raise RangeError(f"query {block} outside [0, {size})")
        if block in table:
            return table[block]
        while True:
            image = int(rng.integers(size))
            if image not in used:
                break
        used.add(image)
        table[block] = image
        return image

    return probe


def estimate_bc_advantage(
    spec: BlockCipherSpec,
    adversary: Adversary,
    trials: int,
    rng: np.random.Generator,
    max_queries: int = 16,
) -> AdvantageEstimate:
    """Block-cipher distinguishing game: keyed cipher vs random permutation.

    The adversary gets a q-query oracle; exceeding max_queries in a trial
    raises QueryBudgetError, as does an overall budget above
    MAX_ORACLE_CALLS.
    """
    _check_trials(trials)
    if max_queries < 1:
        raise RangeError(f"max_queries must be positive, got {max_queries}")
    if max_queries * trials > MAX_ORACLE_CALLS:
        raise QueryBudgetError(
            f"{trials} trials x {max_queries} queries exceeds {MAX_ORACLE_CALLS} oracle calls"
        )
    per_world = trials // 2
    wins = [0, 0]
    for world in (0, 1):
        for _ in range(per_world):
            if world == 0:
                key = int(rng.integers(spec.key_space_size))
                raw = partial(spec.enc, key)
            else:
                raw = _lazy_permutation(spec.block_space_size, rng)
            calls = 0

            def oracle(block: int) -> int:
                nonlocal calls
                if calls >= max_queries:
                    raise QueryBudgetError(f"more than {max_queries} oracle queries in one trial")
                calls += 1
                return raw(block)

            if adversary.strategy(oracle, rng) == 1:
                wins[world] += 1
    return _two_world_estimate("bc", spec.name, adversary.name, wins, per_world)


def uhf_collision_game(
    spec: UhfSpec,
    adversary: Adversary,
    trials: int,
    rng: np.random.Generator,
) -> AdvantageEstimate:
    """Collision game: the pair is chosen first, then the key is drawn.

    The adversary must output two distinct messages (InvalidPairError
    otherwise); it wins when they hash equal under a fresh nonzero key.
    The advantage is the raw win frequency, to be compared against the
    collision bound spec.epsilon.
    """
    _check_trials(trials)
    wins = 0
    for _ in range(trials):
        first, second = adversary.strategy(rng)
        if tuple(first) == tuple(second):
            raise InvalidPairError("collision pair must be two distinct messages")
        key = int(rng.integers(1, spec.prime))
        if uhf_eval(spec, key, first) == uhf_eval(spec, key, second):
            wins += 1
    scheme = f"uhf-{spec.prime}-{spec.max_blocks}"
    return _one_world_estimate("uhf", scheme, adversary.name, wins, trials, 0.0)


def estimate_rsa_advantage(
    params: tuple[int, int],
    adversary: Adversary,
    trials: int,
    rng: np.random.Generator,
) -> AdvantageEstimate:
    """Inversion game: recover a uniform element from its RSA encryption.

    params is (modulus_bits, public_exponent); a fresh key pair is drawn
    every trial and the adversary sees (n, e, c).  The advantage is the
    win frequency.
    """
    _check_trials(trials)
    bits, exponent = params
    wins = 0
    for _ in range(trials):
        pair = rsa_gen(bits, exponent, rng)
        message = int(rng.integers(pair.n))
        cipher = rsa_enc(pair.pk, message)
        if adversary.strategy(pair.n, exponent, cipher, rng) == message:
            wins += 1
    return _one_world_estimate("rsa", f"rsa-{bits}", adversary.name, wins, trials, 0.0)


def estimate_ddh_advantage(
    group: DhGroup,
    adversary: Adversary,
    trials: int,
    rng: np.random.Generator,
) -> AdvantageEstimate:
    """DDH game: (g^a, g^b, g^ab) vs (g^a, g^b, g^c) for independent c."""
    _check_trials(trials)
    per_world = trials // 2
    wins = [0, 0]
    for world in (0, 1):
        for _ in range(per_world):
            alpha, u = dh_keygen(group, rng)
            beta, v = dh_keygen(group, rng)
            if world == 0:
                w = mod_exp(group.generator, alpha * beta, group.prime)
            else:
                gamma = int(rng.integers(1, group.prime - 1))
                w = mod_exp(group.generator, gamma, group.prime)
            if adversary.strategy(u, v, w, group, rng) == 1:
                wins[world] += 1
    scheme = f"dh-{group.prime}"
    return _two_world_estimate("ddh", scheme, adversary.name, wins, per_world)


# --- reduction wrappers ---------------------------------------------------


def ss_adversary_from_mr(mr_adversary: Adversary, messages: Sequence[Bits]) -> Adversary:
    """Turn a message-recovery adversary into a distinguishing adversary.

    The wrapper submits two uniform messages and outputs 1 when the
    recovery adversary returns m1.  Its SS advantage tracks the MR
    advantage: in world 1 it wins with the recovery rate, in world 0 the
    ciphertext is independent of m1, so matching it is a 1/|M| fluke.
    """
    if len(messages) < 2:
        raise ParameterError("need at least two messages to pose a distinguishing pair")

    def strategy(rng: np.random.Generator):
        m0 = messages[int(rng.integers(len(messages)))]
        m1 = messages[int(rng.integers(len(messages)))]

        def decide(challenge) -> int:
            return 1 if mr_adversary.strategy(challenge, rng) == m1 else 0

        return m0, m1, decide

    return Adversary(name=f"ss-from-mr[{mr_adversary.name}]", strategy=strategy)


def ss_adversary_from_parity(parity_adversary: Adversary, messages: Sequence[Bits]) -> Adversary:
    """Turn a parity predictor into a distinguishing adversary.

    m0 is drawn from the even-parity messages and m1 from the odd ones,
    so the predictor's output bit directly votes for a world.  Over a
    parity-balanced message space the SS advantage is twice the parity
    advantage.
    """
    even = [m for m in messages if parity(m) == 0]
    odd = [m for m in messages if parity(m) == 1]
    if not even or not odd:
        raise ParameterError("message space must contain both parities")

    def strategy(rng: np.random.Generator):
        m0 = even[int(rng.integers(len(even)))]
        m1 = odd[int(rng.integers(len(odd)))]

        def decide(challenge) -> int:
            return parity_adversary.strategy(challenge, rng)

        return m0, m1, decide

    return Adversary(name=f"ss-from-parity[{parity_adversary.name}]", strategy=strategy)


# --- stock schemes --------------------------------------------------------


def _identity_cipher() -> ShannonCipher:
    messages = tuple(bits_from_int(value, 3) for value in range(8))
    return ShannonCipher(
        name="identity-3",
        keys=((0,),),
        enc=lambda key, message: message,
        dec=lambda key, ciphertext: ciphertext,
        messages=messages,
    )


def _stream_reuse_cipher() -> ShannonCipher:
    # Every ciphertext carries a known 8-bit header encrypted under the
    # same keystream prefix as the payload: textbook keystream reuse.
    spec = counter_prg(24)

    def enc(key: int, message: Bits):
        seed = bits_from_int(key, spec.seed_len)
        return (stream_enc(spec, seed, _REUSE_HEADER), stream_enc(spec, seed, message))

    def dec(key: int, ciphertext):
        seed = bits_from_int(key, spec.seed_len)
        return stream_enc(spec, seed, ciphertext[1])

    messages = tuple(bits_from_int(value, 8) for value in range(256))
    return ShannonCipher(
        name="stream-reuse-8",
        keys=tuple(range(1 << 16)),
        enc=enc,
        dec=dec,
        messages=messages,
    )


def _ecb_pair_cipher() -> ShannonCipher:
    # Two-block ECB under the 4-round toy cipher.  The message space
    # (2^32 pairs) is deliberately left unenumerated: the SS game never
    # samples from it.
    return ShannonCipher(
        name="ecb-2",
        keys=tuple(range(1 << 16)),
        enc=lambda key, blocks: ecb_enc(key, blocks),
        dec=lambda key, blocks: ecb_dec(key, blocks),
    )


_SCHEME_BUILDERS: dict[str, Callable[[], object]] = {
    "otp-3": lambda: otp_cipher(3),
    "identity-3": _identity_cipher,
    "stream-reuse-8": _stream_reuse_cipher,
    "ecb-2": _ecb_pair_cipher,
    "counter-prg-64": lambda: counter_prg(64),
    "zero-pad-prg-16-64": lambda: zero_pad_prg(16, 64),
    "feistel-1": lambda: feistel_cipher(1),
    "feistel-4": lambda: feistel_cipher(4),
    "uhf-251-3": lambda: UhfSpec(prime=251, max_blocks=3),
    "rsa-16": lambda: (16, 17),
    "dh-23": lambda: DhGroup(prime=23, generator=5),
    "dh-65537": lambda: DhGroup(prime=65537, generator=3),
}


@lru_cache(maxsize=None)
def build_scheme(name: str):
    """Instantiate a registered scheme by name."""
    try:
        builder = _SCHEME_BUILDERS[name]
    except KeyError:
        raise UnknownNameError(f"unknown scheme {name!r}") from None
    return builder()


def scheme_names() -> tuple[str, ...]:
    return tuple(sorted(_SCHEME_BUILDERS))


# --- stock adversaries ----------------------------------------------------


def _ss_parity_of_ciphertext(cipher: ShannonCipher) -> Adversary:
    messages = _enumerated_messages(cipher)
    lo, hi = messages[0], messages[-1]

    def strategy(rng):
        return lo, hi, lambda challenge: parity(challenge)

    return Adversary(name="parity-of-ciphertext", strategy=strategy)


def _ss_equal_blocks(scheme: ShannonCipher) -> Adversary:
    # m0 repeats a block, m1 does not; under ECB the ciphertext pattern
    # mirrors the plaintext pattern exactly.
    m0 = (0x1234, 0x1234)
    m1 = (0x1234, 0x5678)

    def strategy(rng):
        return m0, m1, lambda challenge: 1 if challenge[0] != challenge[1] else 0

    return Adversary(name="equal-blocks", strategy=strategy)


def _mr_read_off(scheme: ShannonCipher) -> Adversary:
    return Adversary(name="read-off", strategy=lambda challenge, rng: challenge)


def _mr_random_guess(scheme: ShannonCipher) -> Adversary:
    messages = _enumerated_messages(scheme)

    def strategy(challenge, rng):
        return messages[int(rng.integers(len(messages)))]

    return Adversary(name="random-guess", strategy=strategy)


def _mr_xor_header(scheme: ShannonCipher) -> Adversary:
    def strategy(challenge, rng):
        header_ct, payload_ct = challenge
        return xor_bits(xor_bits(header_ct, payload_ct), _REUSE_HEADER)

    return Adversary(name="xor-header", strategy=strategy)


def _parity_of_ciphertext(scheme: ShannonCipher) -> Adversary:
    return Adversary(name="parity-of-ciphertext", strategy=lambda challenge, rng: parity(challenge))


def _parity_coin_flip(scheme: ShannonCipher) -> Adversary:
    return Adversary(name="coin-flip", strategy=lambda challenge, rng: int(rng.integers(2)))


def _prg_suffix_zero(spec: PrgSpec) -> Adversary:
    # Detects the degenerate zero-padding expander: its output suffix is
    # always zero, a uniform string's almost never is.
    tail = spec.out_len - spec.seed_len

    def strategy(sample, rng):
        return 1 if all(bit == 0 for bit in sample[-tail:]) else 0

    return Adversary(name="suffix-zero", strategy=strategy)


def _prg_constant_zero(spec: PrgSpec) -> Adversary:
    return Adversary(name="constant-zero", strategy=lambda sample, rng: 0)


def _bc_copied_half(spec: BlockCipherSpec) -> Adversary:
    # One round of the balanced network copies the right input half into
    # the left output half; a random permutation does so with chance 2^-8.
    def strategy(oracle, rng):
        block = int(rng.integers(spec.block_space_size))
        image = oracle(block)
        return 1 if (image >> 8) == (block & 0xFF) else 0

    return Adversary(name="copied-half", strategy=strategy)


def _bc_repeat_query(spec: BlockCipherSpec) -> Adversary:
    # Sanity probe: both worlds are functions, so this never separates.
    def strategy(oracle, rng):
        block = int(rng.integers(spec.block_space_size))
        return 1 if oracle(block) == oracle(block) else 0

    return Adversary(name="repeat-query", strategy=strategy)


def _uhf_fixed_pair(spec: UhfSpec) -> Adversary:
    # Difference (6, p-5, 1) makes the collision polynomial k(k-2)(k-3):
    # two nonzero roots, the most a 3-block difference allows.
    base = (10, 3, 7)
    delta = (6, spec.prime - 5, 1)
    other = tuple((b + d) % spec.prime for b, d in zip(base, delta))

    def strategy(rng):
        return base, other

    return Adversary(name="fixed-pair", strategy=strategy)


def _uhf_random_pair(spec: UhfSpec) -> Adversary:
    def strategy(rng):
        length = int(rng.integers(1, spec.max_blocks + 1))
        first = tuple(int(v) for v in rng.integers(spec.prime, size=length))
        second = tuple(int(v) for v in rng.integers(spec.prime, size=length))
        if first == second:
            second = first[:-1] + ((first[-1] + 1) % spec.prime,)
        return first, second

    return Adversary(name="random-pair", strategy=strategy)


def _rsa_factor(params: tuple[int, int]) -> Adversary:
    # Desk-scale moduli fall to trial division; from the factors the
    # decryption exponent is immediate.
    def strategy(n, e, c, rng):
        p = 2
        while n % p != 0:
            p += 1
        q = n // p
        d = pow(e, -1, (p - 1) * (q - 1))
        return pow(c, d, n)

    return Adversary(name="factor", strategy=strategy)


def _rsa_root_search(params: tuple[int, int]) -> Adversary:
    # Brute-forces the e-th root by exponentiating every residue at once.
    def strategy(n, e, c, rng):
        base = np.arange(n, dtype=np.uint64)
        acc = np.ones(n, dtype=np.uint64)
        exponent = e
        while exponent:
            if exponent & 1:
                acc = (acc * base) % n
            base = (base * base) % n
            exponent >>= 1
        return int(np.nonzero(acc == c)[0][0])

    return Adversary(name="root-search", strategy=strategy)


def _rsa_random_guess(params: tuple[int, int]) -> Adversary:
    def strategy(n, e, c, rng):
        return int(rng.integers(n))

    return Adversary(name="random-guess", strategy=strategy)


def _ddh_legendre(group: DhGroup) -> Adversary:
    # Euler's criterion: g^(ab) is a square iff ab is even, which happens
    # more often than the fair coin a uniform exponent gives.
    half = (group.prime - 1) // 2

    def strategy(u, v, w, grp, rng):
        return 1 if mod_exp(w, half, grp.prime) == 1 else 0

    return Adversary(name="legendre", strategy=strategy)


def _ddh_baby_giant(group: DhGroup) -> Adversary:
    # Full discrete log via baby-step/giant-step, then a direct check of
    # w == v^alpha.  Only viable because the group is desk-scale.
    def strategy(u, v, w, grp, rng):
        p = grp.prime
        m = math.isqrt(grp.order) + 1
        baby: dict[int, int] = {}
        value = 1
        for j in range(m):
            baby.setdefault(value, j)
            value = (value * grp.generator) % p
        stride = mod_exp(grp.generator, grp.order - m, p)
        current = u
        alpha = 0
        for i in range(m + 1):
            if current in baby:
                alpha = i * m + baby[current]
                break
            current = (current * stride) % p
        return 1 if mod_exp(v, alpha, p) == w else 0

    return Adversary(name="baby-giant", strategy=strategy)


def _ddh_constant_one(group: DhGroup) -> Adversary:
    return Adversary(name="constant-one", strategy=lambda u, v, w, grp, rng: 1)


_ADVERSARY_BUILDERS: dict[str, dict[str, Callable]] = {
    "ss": {
        "parity-of-ciphertext": _ss_parity_of_ciphertext,
        "equal-blocks": _ss_equal_blocks,
    },
    "mr": {
        "read-off": _mr_read_off,
        "random-guess": _mr_random_guess,
        "xor-header": _mr_xor_header,
    },
    "parity": {
        "parity-of-ciphertext": _parity_of_ciphertext,
        "coin-flip": _parity_coin_flip,
    },
    "prg": {
        "suffix-zero": _prg_suffix_zero,
        "constant-zero": _prg_constant_zero,
    },
    "bc": {
        "copied-half": _bc_copied_half,
        "repeat-query": _bc_repeat_query,
    },
    "uhf": {
        "fixed-pair": _uhf_fixed_pair,
        "random-pair": _uhf_random_pair,
    },
    "rsa": {
        "factor": _rsa_factor,
        "root-search": _rsa_root_search,
        "random-guess": _rsa_random_guess,
    },
    "ddh": {
        "legendre": _ddh_legendre,
        "baby-giant": _ddh_baby_giant,
        "constant-one": _ddh_constant_one,
    },
}

_GAME_RUNNERS: dict[str, Callable] = {
    "ss": estimate_ss_advantage,
    "mr": estimate_mr_advantage,
    "parity": estimate_parity_advantage,
    "prg": estimate_prg_advantage,
    "bc": estimate_bc_advantage,
    "uhf": uhf_collision_game,
    "rsa": estimate_rsa_advantage,
    "ddh": estimate_ddh_advantage,
}


def build_adversary(game: str, name: str, scheme) -> Adversary:
    """Instantiate a registered adversary, bound to its target scheme."""
    try:
        builders = _ADVERSARY_BUILDERS[game]
    except KeyError:
        raise UnknownNameError(f"unknown game {game!r}") from None
    try:
        builder = builders[name]
    except KeyError:
        raise UnknownNameError(f"unknown adversary {name!r} for game {game!r}") from None
    return builder(scheme)


def adversary_names(game: str) -> tuple[str, ...]:
    if game not in _ADVERSARY_BUILDERS:
        raise UnknownNameError(f"unknown game {game!r}")
    return tuple(sorted(_ADVERSARY_BUILDERS[game]))


# --- suites ---------------------------------------------------------------


@dataclass(frozen=True)
class SuiteRow:
    """One scheduled game run: which game, against what, by whom."""

    game: str
    scheme: str
    adversary: str
    trials: int


_SUITES: dict[str, tuple[SuiteRow, ...]] = {
    "separations": (
        SuiteRow("ss", "otp-3", "parity-of-ciphertext", 10_000),
        SuiteRow("ss", "ecb-2", "equal-blocks", 10_000),
        SuiteRow("mr", "identity-3", "read-off", 10_000),
        SuiteRow("mr", "stream-reuse-8", "xor-header", 10_000),
        SuiteRow("parity", "otp-3", "parity-of-ciphertext", 10_000),
        SuiteRow("parity", "identity-3", "parity-of-ciphertext", 10_000),
        SuiteRow("prg", "zero-pad-prg-16-64", "suffix-zero", 10_000),
        SuiteRow("prg", "counter-prg-64", "suffix-zero", 10_000),
        SuiteRow("bc", "feistel-1", "copied-half", 10_000),
        SuiteRow("bc", "feistel-4", "copied-half", 10_000),
    ),
    "number-theory": (
        SuiteRow("uhf", "uhf-251-3", "fixed-pair", 10_000),
        SuiteRow("rsa", "rsa-16", "factor", 500),
        SuiteRow("rsa", "rsa-16", "root-search", 500),
        SuiteRow("rsa", "rsa-16", "random-guess", 500),
        SuiteRow("ddh", "dh-23", "legendre", 10_000),
        SuiteRow("ddh", "dh-65537", "baby-giant", 500),
        SuiteRow("ddh", "dh-65537", "constant-one", 500),
    ),
}
_SUITES["default"] = _SUITES["separations"] + _SUITES["number-theory"]


def suite_names() -> tuple[str, ...]:
    return tuple(sorted(_SUITES))


def run_game_suite(
    suite: str,
    seed: int,
    trials: int | None = None,
) -> list[AdvantageEstimate]:
    """Run every row of a named suite with independent per-row streams.

    trials, when given, overrides the per-row trial counts.  Rows get
    their generators from spawned children of one seed sequence, so the
    report depends only on (suite, seed, trials) and not on run order.
    """
    try:
        rows = _SUITES[suite]
    except KeyError:
        raise UnknownNameError(f"unknown suite {suite!r}") from None
    streams = np.random.SeedSequence(seed).spawn(len(rows))
    estimates = []
    for row, stream in zip(rows, streams):
        scheme = build_scheme(row.scheme)
        adversary = build_adversary(row.game, row.adversary, scheme)
        runner = _GAME_RUNNERS[row.game]
        rng = np.random.default_rng(stream)
        estimates.append(runner(scheme, adversary, trials or row.trials, rng))
    return estimates


def report_json(estimates: Sequence[AdvantageEstimate]) -> str:
    """Serialize estimates to a stable, replayable JSON document."""
    rows = [
        {
            "game": est.game,
            "scheme": est.scheme,
            "adversary": est.adversary,
            "trials": est.trials,
            "advantage": est.advantage,
            "ci_half_width": est.ci_half_width,
            "wins": dict(est.wins),
        }
        for est in estimates
    ]
    return json.dumps({"rows": rows}, indent=2, sort_keys=True)
