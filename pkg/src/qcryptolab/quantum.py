"""Exact statevector simulation of small qubit registers.

Complex-vector quantum mechanics at desk scale (up to ~8 qubits): state
construction, the standard single-qubit gates plus CNOT, projective
measurement in the Z, X and Bell bases, and a global-phase-insensitive
fidelity.  All operations are pure functions; measurement takes an explicit
``numpy.random.Generator`` so the caller owns the random stream.

Index convention: for an n-qubit register, basis index ``i`` spells the bit
string ``b0 b1 ... b_{n-1}`` with qubit 0 as the *most significant* bit, so
``state.amps[i]`` is the amplitude of ``|b0 b1 ... b_{n-1}>``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, NormalizationError, ParameterError

# Structural tolerance for unitarity / normalization checks.
ATOL = 1e-9


# eq=False on the array-bearing types: state equality is a physics question
# (use fidelity), not an array-identity question.
@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state of one or more qubits.

    ``amps`` is coerced to a fresh complex128 vector; treat it as read-only.
    """

    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        size = amps.size
        if size < 2 or size & (size - 1):
            raise DimensionError(
                f"amplitude count must be a power of two >= 2, got {size}"
            )
        if not np.all(np.isfinite(amps)):
            raise NormalizationError("amplitudes must be finite")
        norm = float(np.sqrt(np.sum(amps.real**2 + amps.imag**2)))
        if abs(norm - 1.0) > ATOL:
            raise NormalizationError(f"state norm is {norm!r}, expected 1")
        object.__setattr__(self, "amps", amps)

    @property
    def n_qubits(self) -> int:
        return self.amps.size.bit_length() - 1

    @property
    def dim(self) -> int:
        return self.amps.size

    def probabilities(self) -> np.ndarray:
        """Born-rule probability of each computational basis string."""
        return self.amps.real**2 + self.amps.imag**2


@dataclass(frozen=True, eq=False)
class Gate:
    """Unitary on one or two qubits."""

    name: str
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=np.complex128)
        if mat.shape not in ((2, 2), (4, 4)):
            raise DimensionError(f"gate matrix must be 2x2 or 4x4, got {mat.shape}")
        defect = np.abs(mat @ mat.conj().T - np.eye(mat.shape[0])).max()
        if defect > ATOL:
            raise ParameterError(
                f"gate {self.name!r} is not unitary (defect {defect:.3e})"
            )
        object.__setattr__(self, "matrix", mat)

    @property
    def arity(self) -> int:
        return 1 if self.matrix.shape[0] == 2 else 2


def make_qubit(alpha: complex, beta: complex) -> StateVector:
    """Single-qubit state alpha|0> + beta|1>.

    Raises NormalizationError unless |alpha|^2 + |beta|^2 = 1 within 1e-9.
    """
    return StateVector(np.array([alpha, beta]))


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product; a's qubits come first (most significant)."""
    return StateVector(np.kron(a.amps, b.amps))


I = Gate("I", [[1, 0], [0, 1]])
X = Gate("X", [[0, 1], [1, 0]])
Y = Gate("Y", [[0, -1j], [1j, 0]])
Z = Gate("Z", [[1, 0], [0, -1]])
H = Gate("H", np.array([[1, 1], [1, -1]]) / np.sqrt(2))
CNOT = Gate(
    "CNOT",
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
)


def phase_shift(phi: float) -> Gate:
    """Phase gate diag(1, e^{i phi})."""
    return Gate(f"R({phi:g})", [[1, 0], [0, cmath.exp(1j * phi)]])


T = Gate("T", phase_shift(np.pi / 4).matrix)

KET_0 = make_qubit(1, 0)
KET_1 = make_qubit(0, 1)
KET_PLUS = make_qubit(1 / np.sqrt(2), 1 / np.sqrt(2))
KET_MINUS = make_qubit(1 / np.sqrt(2), -1 / np.sqrt(2))

_S = 1 / np.sqrt(2)
# Bell pairs keyed by their two-bit measurement encoding.
PHI_PLUS = StateVector([_S, 0, 0, _S])  # (|00> + |11>)/sqrt(2) -> 00
PHI_MINUS = StateVector([_S, 0, 0, -_S])  # (|00> - |11>)/sqrt(2) -> 01
PSI_PLUS = StateVector([0, _S, _S, 0])  # (|01> + |10>)/sqrt(2) -> 10
PSI_MINUS = StateVector([0, _S, -_S, 0])  # (|01> - |10>)/sqrt(2) -> 11

BELL_STATES: dict[tuple[int, int], StateVector] = {
    (0, 0): PHI_PLUS,
    (0, 1): PHI_MINUS,
    (1, 0): PSI_PLUS,
    (1, 1): PSI_MINUS,
}


def _check_targets(n_qubits: int, targets: Sequence[int], arity: int) -> None:
    if len(targets) != arity:
        raise IndexError(f"expected {arity} target(s), got {len(targets)}")
    if len(set(targets)) != len(targets):
        raise IndexError(f"duplicate targets {tuple(targets)}")
    for t in targets:
        if not 0 <= t < n_qubits:
            raise IndexError(f"target {t} out of range for {n_qubits} qubit(s)")


def apply_gate(s: StateVector, g: Gate, targets: Sequence[int]) -> StateVector:
    """Apply ``g`` to the listed qubits of ``s``; returns a new state."""
    n = s.n_qubits
    _check_targets(n, targets, g.arity)
    psi = s.amps.reshape((2,) * n)
    op = g.matrix.reshape((2,) * (2 * g.arity))
    out = np.tensordot(op, psi, axes=(list(range(g.arity, 2 * g.arity)), list(targets)))
    out = np.moveaxis(out, range(g.arity), targets)
    return StateVector(out.reshape(-1))


def measure(
    s: StateVector, basis: str, target: int, rng: np.random.Generator
) -> tuple[int, StateVector]:
    """Projective measurement of one qubit; returns (bit, collapsed state).

    ``basis`` is "Z" ({|0>,|1>}) or "X" ({|+>,|->}); outcome bit b means the
    state collapsed onto the b-th basis vector of that basis.
    """
    if basis not in ("Z", "X"):
        raise ParameterError(f"unknown measurement basis {basis!r}")
    n = s.n_qubits
    _check_targets(n, [target], 1)
    work = s if basis == "Z" else apply_gate(s, H, [target])
    shift = n - 1 - target
    bit_of_index = (np.arange(s.dim) >> shift) & 1
    probs = work.probabilities()
    p0 = float(probs[bit_of_index == 0].sum())
    bit = 0 if rng.random() < p0 else 1
    kept = np.where(bit_of_index == bit, work.amps, 0.0)
    kept = kept / np.sqrt(np.sum(kept.real**2 + kept.imag**2))
    collapsed = StateVector(kept)
    if basis == "X":
        collapsed = apply_gate(collapsed, H, [target])
    return bit, collapsed


# Bell-state coefficient tensors, indexed like BELL_STATES.
_BELL_TENSORS = {bits: st.amps.reshape(2, 2) for bits, st in BELL_STATES.items()}


def bell_branches(
    s: StateVector, pair: tuple[int, int]
) -> list[tuple[tuple[int, int], float, StateVector | None]]:
    """All four Bell-measurement branches of ``s`` on the qubit ``pair``.

    Returns (bits, probability, residual) per branch, where ``residual`` is
    the normalized state of the remaining qubits (None when the register has
    only the measured pair, or when the branch has probability ~0).
    """
    n = s.n_qubits
    _check_targets(n, pair, 2)
    psi = s.amps.reshape((2,) * n)
    out = []
    for bits, bell in _BELL_TENSORS.items():
        r = np.tensordot(bell.conj(), psi, axes=([0, 1], list(pair)))
        prob = float(np.sum(r.real**2 + r.imag**2))
        residual = None
        if n > 2 and prob > 1e-12:
            residual = StateVector(r.reshape(-1) / np.sqrt(prob))
        out.append((bits, prob, residual))
    return out


def bell_measure(
    s: StateVector, pair: tuple[int, int], rng: np.random.Generator
) -> tuple[tuple[int, int], StateVector]:
    """Project the qubit ``pair`` onto a Bell state; returns (bits, state).

    The two returned bits encode the observed Bell state:
    00 (|00>+|11>)/sqrt2, 01 (|00>-|11>)/sqrt2,
    10 (|01>+|10>)/sqrt2, 11 (|01>-|10>)/sqrt2.
    """
    branches = bell_branches(s, pair)
    u = rng.random()
    acc = 0.0
    chosen = None
    for branch in branches:
        if branch[1] <= 1e-12:  # below bell_branches' residual cutoff
            continue
        chosen = branch
        acc += branch[1]
        if u < acc:
            break
    bits, prob, residual = chosen
    n = s.n_qubits
    bell = _BELL_TENSORS[bits]
    if n == 2:
        overlap = np.vdot(BELL_STATES[bits].amps, s.amps)
        return bits, StateVector(BELL_STATES[bits].amps * (overlap / abs(overlap)))
    post = np.tensordot(bell, residual.amps.reshape((2,) * (n - 2)), axes=0)
    post = np.moveaxis(post, [0, 1], list(pair))
    return bits, StateVector(post.reshape(-1))


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2 — equality test insensitive to global phase."""
    if a.dim != b.dim:
        raise DimensionError(f"qubit counts differ: {a.n_qubits} vs {b.n_qubits}")
    return float(abs(np.vdot(a.amps, b.amps)) ** 2)
