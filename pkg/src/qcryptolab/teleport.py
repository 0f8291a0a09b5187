"""One-qubit teleportation over a shared Bell pair.

Alice holds an unknown qubit and half of a Bell pair; Bob holds the other
half.  Alice Bell-measures her two qubits and sends Bob the two classical
outcome bits; Bob applies one of four correction gates and ends up holding
the original state exactly.  The input qubit never travels, and Alice's
side collapses to a bare Bell state that carries no trace of it.

Every run is a Born-rule sample over four branches of probability 1/4
each.  `teleport_branches` enumerates those branches exhaustively so the
protocol's correctness can be checked as an exact statement rather than a
statistical one; `teleport` draws a single branch with a caller-supplied
generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .quantum import (
    I,
    PHI_PLUS,
    X,
    Y,
    Z,
    Gate,
    StateVector,
    apply_gate,
    bell_branches,
    tensor,
)

# Bob's response to Alice's two classical bits.  The Y correction restores
# the input only up to a global phase of -i, which no measurement can see.
_CORRECTIONS: dict[tuple[int, int], Gate] = {
    (0, 0): I,
    (0, 1): Z,
    (1, 0): X,
    (1, 1): Y,
}


def correction_gate(bits: tuple[int, int]) -> Gate:
    """Gate Bob applies on receiving the classical ``bits``: I, Z, X or Y."""
    return _CORRECTIONS[(bits[0], bits[1])]


@dataclass(frozen=True)
class TeleportOutcome:
    """One completed run: what Alice announced and what Bob ended up with."""

    classical_bits: tuple[int, int]
    corrected_state: StateVector
    pre_correction_state: StateVector


def teleport_branches(psi: StateVector) -> list[tuple[float, TeleportOutcome]]:
    """All four measurement branches of teleporting ``psi``, exactly.

    Returns (probability, outcome) pairs in classical-bit order.  The
    probabilities are Born weights and equal 1/4 regardless of the input;
    every branch's corrected state matches ``psi`` up to global phase.
    """
    if psi.n_qubits != 1:
        raise DimensionError(f"teleport moves one qubit, got {psi.n_qubits}")
    joint = tensor(psi, PHI_PLUS)
    branches = []
    for bits, prob, residual in bell_branches(joint, (0, 1)):
        corrected = apply_gate(residual, correction_gate(bits), (0,))
        outcome = TeleportOutcome(
            classical_bits=bits,
            corrected_state=corrected,
            pre_correction_state=residual,
        )
        branches.append((prob, outcome))
    return branches


def teleport(psi: StateVector, rng: np.random.Generator) -> TeleportOutcome:
    """Run the protocol once, sampling Alice's Bell measurement with ``rng``."""
    branches = teleport_branches(psi)
    u = rng.random()
    acc = 0.0
    for prob, outcome in branches:
        acc += prob
        if u < acc:
            return outcome
    return branches[-1][1]
