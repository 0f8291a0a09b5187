"""BB84 quantum key distribution over a lossless channel.

One protocol round: Alice draws a uniform bit and basis and encodes the bit
as a qubit; an optional intercept-resend eavesdropper measures it in her own
uniform basis and forwards a re-encoded qubit; Bob measures in his own
uniform basis.  Rounds where Alice's and Bob's bases match are sifted into
the raw key; comparing a prefix of the sifted key detects the eavesdropper
with probability 1 - (3/4)^k.

The classical side channel is modeled as authenticated and error-free, and
revealed bits are the first k sifted bits (rounds are i.i.d., so the prefix
is as good as a random subset).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import LengthError, ParameterError, RangeError
from .quantum import KET_0, KET_1, KET_MINUS, KET_PLUS, StateVector, fidelity, measure

BASES = ("Z", "X")

_ENCODING: dict[tuple[int, str], StateVector] = {
    (0, "Z"): KET_0,
    (1, "Z"): KET_1,
    (0, "X"): KET_PLUS,
    (1, "X"): KET_MINUS,
}
_SYMBOLS: dict[tuple[int, str], str] = {
    (0, "Z"): "0",
    (1, "Z"): "1",
    (0, "X"): "+",
    (1, "X"): "-",
}


def encode(bit: int, basis: str) -> StateVector:
    """Map (bit, basis) to its carrier qubit: (0,Z)|0>, (1,Z)|1>, (0,X)|+>, (1,X)|->."""
    try:
        return _ENCODING[(bit, basis)]
    except KeyError:
        raise ParameterError(f"no encoding for bit={bit!r}, basis={basis!r}") from None


def intercept_resend(
    q: StateVector, rng: np.random.Generator
) -> tuple[StateVector, str, int]:
    """Eavesdropper step: measure ``q`` in a uniform basis and re-encode.

    Returns (forwarded qubit, eve_basis, eve_bit).
    """
    basis = BASES[rng.integers(2)]
    bit, _ = measure(q, basis, 0, rng)
    return encode(bit, basis), basis, bit


# Born probability of outcome 0 when a state prepared as (bit, basis b_p) is
# measured in basis b_m, derived from the simulator's own projection norms.
# Indexed [bit, prep_basis, meas_basis] with basis order matching BASES.
_P_ZERO = np.array(
    [
        [
            [fidelity(_ENCODING[(bit, bp)], _ENCODING[(0, bm)]) for bm in BASES]
            for bp in BASES
        ]
        for bit in (0, 1)
    ]
)


@dataclass(frozen=True)
class Bb84Config:
    """Protocol parameters; ``eve`` is "none" or "intercept_resend"."""

    n_rounds: int
    eve: str = "none"
    reveal_k: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_rounds < 0:
            raise RangeError(f"n_rounds must be >= 0, got {self.n_rounds}")
        if self.eve not in ("none", "intercept_resend"):
            raise ParameterError(f"unknown eavesdropper model {self.eve!r}")
        if self.reveal_k < 0:
            raise RangeError(f"reveal_k must be >= 0, got {self.reveal_k}")


@dataclass(frozen=True)
class RoundRecord:
    """One protocol round; ``index`` is 1-based like a lab notebook row."""

    index: int
    alice_bit: int
    alice_basis: str
    sent_qubit: StateVector
    eve_basis: str | None
    eve_bit: int | None
    bob_basis: str
    bob_bit: int
    kept: bool


@dataclass(frozen=True)
class ProtocolTranscript:
    rounds: tuple[RoundRecord, ...]
    config: Bb84Config

    def __post_init__(self) -> None:
        if len(self.rounds) != self.config.n_rounds:
            raise LengthError(
                f"{len(self.rounds)} rounds recorded for n_rounds={self.config.n_rounds}"
            )


@dataclass(frozen=True)
class SiftedResult:
    alice_key: tuple[int, ...]
    bob_key: tuple[int, ...]
    sift_fraction: float
    qber: float


@dataclass(frozen=True)
class DetectionResult:
    detected: bool
    revealed: int
    final_key_alice: tuple[int, ...]
    final_key_bob: tuple[int, ...]


def run_bb84(config: Bb84Config) -> ProtocolTranscript:
    """Run the protocol; deterministic for a fixed config (including seed).

    Measurement outcomes are drawn from the Born probabilities of the four
    carrier states (the ``_P_ZERO`` table above, computed from the
    statevector core).  Each carrier state is its own post-measurement
    collapse, so that table is the entire quantum channel; this keeps
    100k-round transcripts cheap without leaving the simulator's physics.
    """
    rng = np.random.default_rng(config.seed)
    n = config.n_rounds
    alice_bits = rng.integers(0, 2, size=n)
    alice_bases = rng.integers(0, 2, size=n)
    bob_bases = rng.integers(0, 2, size=n)
    with_eve = config.eve == "intercept_resend"
    if with_eve:
        eve_bases = rng.integers(0, 2, size=n)
        eve_draws = rng.random(n)
    bob_draws = rng.random(n)
    rounds = []
    for i in range(n):
        a_bit, a_idx, b_idx = int(alice_bits[i]), int(alice_bases[i]), int(bob_bases[i])
        e_basis: str | None = None
        e_bit: int | None = None
        channel_bit, channel_idx = a_bit, a_idx
        if with_eve:
            e_idx = int(eve_bases[i])
            e_bit = int(eve_draws[i] >= _P_ZERO[a_bit, a_idx, e_idx])
            e_basis = BASES[e_idx]
            channel_bit, channel_idx = e_bit, e_idx
        b_bit = int(bob_draws[i] >= _P_ZERO[channel_bit, channel_idx, b_idx])
        rounds.append(
            RoundRecord(
                index=i + 1,
                alice_bit=a_bit,
                alice_basis=BASES[a_idx],
                sent_qubit=encode(a_bit, BASES[a_idx]),
                eve_basis=e_basis,
                eve_bit=e_bit,
                bob_basis=BASES[b_idx],
                bob_bit=b_bit,
                kept=a_idx == b_idx,
            )
        )
    return ProtocolTranscript(tuple(rounds), config)


def sift(t: ProtocolTranscript) -> SiftedResult:
    """Keep rounds with matching bases; report the keys, sift fraction and QBER."""
    kept = [r for r in t.rounds if r.kept]
    alice_key = tuple(r.alice_bit for r in kept)
    bob_key = tuple(r.bob_bit for r in kept)
    total = len(t.rounds)
    fraction = len(kept) / total if total else 0.0
    errors = sum(a != b for a, b in zip(alice_key, bob_key))
    qber = errors / len(kept) if kept else 0.0
    return SiftedResult(alice_key, bob_key, fraction, qber)


def detect(s: SiftedResult, k: int) -> DetectionResult:
    """Compare the first k sifted bits; the rest become the final keys."""
    if k < 0:
        raise RangeError(f"k must be >= 0, got {k}")
    if k > len(s.alice_key):
        raise LengthError(f"k={k} exceeds sifted length {len(s.alice_key)}")
    detected = s.alice_key[:k] != s.bob_key[:k]
    return DetectionResult(
        detected=detected,
        revealed=k,
        final_key_alice=s.alice_key[k:],
        final_key_bob=s.bob_key[k:],
    )


def detection_probability(k: int) -> float:
    """Closed-form chance that revealing k sifted bits exposes the eavesdropper."""
    if k < 0:
        raise RangeError(f"k must be >= 0, got {k}")
    return 1.0 - 0.75**k


def detection_sweep(
    max_k: int, runs: int, seed: int = 0
) -> list[dict[str, float]]:
    """Empirical detection frequency vs the closed form for k = 1..max_k.

    Each run replays the protocol with an intercept-resend eavesdropper until
    k sifted bits exist, then checks the revealed prefix.  The per-round
    sampling uses the Born probabilities of the four carrier states as
    derived from the statevector core (the four states are their own
    post-measurement collapses, so one probability table is the whole
    channel); this keeps 20k+ runs per k affordable.
    """
    if max_k < 1:
        raise RangeError(f"max_k must be >= 1, got {max_k}")
    if runs < 1:
        raise RangeError(f"runs must be >= 1, got {runs}")
    rng = np.random.default_rng(seed)
    rows = []
    for k in range(1, max_k + 1):
        detections = 0
        for _ in range(runs):
            if _run_detects(k, rng):
                detections += 1
        rows.append(
            {
                "k": k,
                "runs": runs,
                "empirical": detections / runs,
                "closed_form": detection_probability(k),
            }
        )
    return rows


def _run_detects(k: int, rng: np.random.Generator) -> bool:
    """One eavesdropped protocol run; True iff the first k sifted bits disagree."""
    a_bits = np.empty(0, dtype=np.int64)
    b_bits = np.empty(0, dtype=np.int64)
    while a_bits.size < k:
        m = 4 * k + 64
        a_bit = rng.integers(0, 2, size=m)
        a_basis = rng.integers(0, 2, size=m)
        e_basis = rng.integers(0, 2, size=m)
        b_basis = rng.integers(0, 2, size=m)
        e_bit = (rng.random(m) >= _P_ZERO[a_bit, a_basis, e_basis]).astype(np.int64)
        b_bit = (rng.random(m) >= _P_ZERO[e_bit, e_basis, b_basis]).astype(np.int64)
        keep = a_basis == b_basis
        a_bits = np.concatenate([a_bits, a_bit[keep]])
        b_bits = np.concatenate([b_bits, b_bit[keep]])
    return bool(np.any(a_bits[:k] != b_bits[:k]))


def transcript_rows(t: ProtocolTranscript) -> list[dict]:
    """Transcript as JSON-ready rows mirroring the lab-notebook columns."""
    rows = []
    for r in t.rounds:
        rows.append(
            {
                "n": r.index,
                "a_bit": r.alice_bit,
                "a_basis": r.alice_basis,
                "a_qubit": _SYMBOLS[(r.alice_bit, r.alice_basis)],
                "e_basis": r.eve_basis,
                "e_bit": r.eve_bit,
                "b_basis": r.bob_basis,
                "b_bit": r.bob_bit,
                "kept": r.kept,
            }
        )
    return rows


def transcript_to_json(t: ProtocolTranscript) -> str:
    """Serialize to a JSON array (one object per round)."""
    return json.dumps(transcript_rows(t), indent=2)
