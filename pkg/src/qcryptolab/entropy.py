"""Density operators and entropy functionals.

Density matrices, von Neumann entropy, relative entropy, Holevo information
and the exact mutual information of a projective measurement.  All entropies
are in nats (natural logarithm).

Eigenvalues come from a self-contained cyclic Jacobi rotation solver: the
dimensions here are tiny, and owning the decomposition keeps the entropy
results reproducible bit-for-bit across library versions.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionError,
    NormalizationError,
    NumericalError,
    ParameterError,
    RangeError,
    SupportError,
)
from .quantum import (
    BELL_STATES,
    KET_0,
    KET_1,
    KET_MINUS,
    KET_PLUS,
    StateVector,
    tensor,
)

ATOL = 1e-9
# Eigenvalues below this magnitude are treated as exact zeros (0 ln 0 := 0).
EIG_ZERO_CUTOFF = 1e-12
# Eigenvalues may dip this far below zero before we call the matrix invalid.
EIG_NEGATIVE_LIMIT = -1e-6


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, trace-one operator; entries coerced to complex128."""

    mat: np.ndarray

    def __post_init__(self) -> None:
        mat = np.array(self.mat, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
            raise DimensionError(f"density matrix must be square, got {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise NumericalError("density matrix entries must be finite")
        if np.abs(mat - mat.conj().T).max() > ATOL:
            raise ParameterError("density matrix must be Hermitian")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > ATOL:
            raise NormalizationError(f"trace is {tr!r}, expected 1")
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def density_of(s: StateVector) -> DensityMatrix:
    """Outer product |s><s|; always a pure density matrix."""
    return DensityMatrix(np.outer(s.amps, s.amps.conj()))


def is_pure(rho: DensityMatrix, tol: float = ATOL) -> bool:
    """True iff max|rho^2 - rho| <= tol."""
    return bool(np.abs(rho.mat @ rho.mat - rho.mat).max() <= tol)


def hermitian_eigensystem(
    mat: np.ndarray, *, tol: float = 1e-13, max_sweeps: int = 60
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix.

    Cyclic Jacobi: repeatedly zero each off-diagonal entry with a plane
    rotation until all are below tol * (Frobenius norm).  Quadratically
    convergent; max_sweeps is a safety net, not a tuning knob.
    """
    a = np.array(mat, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"matrix must be square, got {a.shape}")
    a = (a + a.conj().T) / 2.0
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = math.sqrt(float(np.sum(a.real**2 + a.imag**2)))
    if n == 1 or scale == 0.0:
        return np.diag(a).real.copy(), v
    thresh = tol * scale
    for _ in range(max_sweeps):
        converged = True
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                r = abs(apq)
                if r <= thresh:
                    continue
                converged = False
                phase = apq / r
                theta = 0.5 * math.atan2(2.0 * r, float(a[p, p].real - a[q, q].real))
                c = math.cos(theta)
                s = math.sin(theta)
                # Plane rotation J: J[p,p]=c, J[p,q]=-s*phase,
                # J[q,p]=s*conj(phase), J[q,q]=c; apply A <- J^dag A J, V <- V J.
                col_p = a[:, p] * c + a[:, q] * (s * phase.conjugate())
                col_q = a[:, p] * (-s * phase) + a[:, q] * c
                a[:, p] = col_p
                a[:, q] = col_q
                row_p = a[p, :] * c + a[q, :] * (s * phase)
                row_q = a[p, :] * (-s * phase.conjugate()) + a[q, :] * c
                a[p, :] = row_p
                a[q, :] = row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vcol_p = v[:, p] * c + v[:, q] * (s * phase.conjugate())
                vcol_q = v[:, p] * (-s * phase) + v[:, q] * c
                v[:, p] = vcol_p
                v[:, q] = vcol_q
        if converged:
            break
    else:
        raise NumericalError("Jacobi eigensolver did not converge")
    eigenvalues = np.diag(a).real.copy()
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


def _checked_eigenvalues(rho: DensityMatrix) -> np.ndarray:
    vals, _ = hermitian_eigensystem(rho.mat)
    if vals.min() < EIG_NEGATIVE_LIMIT:
        raise NumericalError(f"eigenvalue {vals.min():.3e} below {EIG_NEGATIVE_LIMIT}")
    return np.clip(vals, 0.0, None)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -sum lambda_i ln lambda_i in nats, with 0 ln 0 := 0."""
    vals = _checked_eigenvalues(rho)
    vals = vals[vals > EIG_ZERO_CUTOFF]
    return float(-np.sum(vals * np.log(vals)))


def relative_entropy(r1: DensityMatrix, r2: DensityMatrix) -> float:
    """S(r1 || r2) = tr(r1 ln r1) - tr(r1 ln r2) in nats.

    Raises SupportError when r1 has weight outside the support of r2
    (the divergence is +infinity there).
    """
    if r1.dim != r2.dim:
        raise DimensionError(f"dimensions differ: {r1.dim} vs {r2.dim}")
    vals1 = _checked_eigenvalues(r1)
    vals2, vecs2 = hermitian_eigensystem(r2.mat)
    if vals2.min() < EIG_NEGATIVE_LIMIT:
        raise NumericalError(f"eigenvalue {vals2.min():.3e} below {EIG_NEGATIVE_LIMIT}")
    on_support = vals2 > ATOL
    if not on_support.all():
        null_vecs = vecs2[:, ~on_support]
        leak = float(np.real(np.trace(null_vecs.conj().T @ r1.mat @ null_vecs)))
        if leak > ATOL:
            raise SupportError(
                f"weight {leak:.3e} of the first operator lies outside the "
                "support of the second"
            )
    pos1 = vals1[vals1 > EIG_ZERO_CUTOFF]
    term1 = float(np.sum(pos1 * np.log(pos1)))
    log_vals2 = np.where(on_support, np.log(np.where(on_support, vals2, 1.0)), 0.0)
    log_r2 = (vecs2 * log_vals2) @ vecs2.conj().T
    term2 = float(np.real(np.trace(r1.mat @ log_r2)))
    return term1 - term2


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Trace out all qubits except ``keep`` (result qubits follow keep's order)."""
    dim = rho.dim
    n = dim.bit_length() - 1
    if dim < 2 or dim & (dim - 1):
        raise DimensionError(f"dimension {dim} is not a power of two")
    keep = list(keep)
    if not keep or len(set(keep)) != len(keep):
        raise IndexError(f"keep list {keep} must be non-empty and distinct")
    for q in keep:
        if not 0 <= q < n:
            raise IndexError(f"qubit {q} out of range for {n} qubit(s)")
    letters = iter(string.ascii_letters)
    row = [""] * n
    col = [""] * n
    for q in range(n):
        if q in keep:
            row[q] = next(letters)
            col[q] = next(letters)
        else:
            row[q] = col[q] = next(letters)
    out = "".join(row[q] for q in keep) + "".join(col[q] for q in keep)
    subscript = "".join(row) + "".join(col) + "->" + out
    k = len(keep)
    reduced = np.einsum(subscript, rho.mat.reshape((2,) * (2 * n)))
    return DensityMatrix(reduced.reshape(2**k, 2**k))


@dataclass(frozen=True)
class Ensemble:
    """Finite ensemble {(p_i, rho_i)} of equal-dimension density matrices."""

    items: tuple[tuple[float, DensityMatrix], ...]

    def __post_init__(self) -> None:
        items = tuple((float(p), rho) for p, rho in self.items)
        if not items:
            raise ParameterError("ensemble must have at least one member")
        dims = {rho.dim for _, rho in items}
        if len(dims) != 1:
            raise DimensionError(f"mixed member dimensions {sorted(dims)}")
        probs = np.array([p for p, _ in items])
        if probs.min() < 0:
            raise RangeError(f"negative probability {probs.min()!r}")
        if abs(probs.sum() - 1.0) > ATOL:
            raise NormalizationError(f"probabilities sum to {probs.sum()!r}")
        object.__setattr__(self, "items", items)

    @property
    def dim(self) -> int:
        return self.items[0][1].dim


def pure_ensemble(probs: Sequence[float], states: Sequence[StateVector]) -> Ensemble:
    """Ensemble of pure states given as state vectors."""
    if len(probs) != len(states):
        raise DimensionError("probs and states must have equal length")
    return Ensemble(tuple((p, density_of(s)) for p, s in zip(probs, states)))


def average_state(e: Ensemble) -> DensityMatrix:
    """The mixture sum_i p_i rho_i."""
    acc = np.zeros((e.dim, e.dim), dtype=np.complex128)
    for p, rho in e.items:
        acc += p * rho.mat
    return DensityMatrix(acc)


def holevo_chi(e: Ensemble) -> float:
    """Holevo information chi = S(sum p_i rho_i) - sum p_i S(rho_i), in nats."""
    mixed = von_neumann_entropy(average_state(e))
    members = sum(p * von_neumann_entropy(rho) for p, rho in e.items if p > 0)
    return mixed - members


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """Complete set of orthogonal projectors."""

    name: str
    projectors: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        projs = tuple(np.array(p, dtype=np.complex128) for p in self.projectors)
        if not projs:
            raise ParameterError("measurement needs at least one projector")
        d = projs[0].shape[0]
        total = np.zeros((d, d), dtype=np.complex128)
        for p in projs:
            if p.shape != (d, d):
                raise DimensionError("projectors must be square and equal-sized")
            if np.abs(p - p.conj().T).max() > ATOL or np.abs(p @ p - p).max() > ATOL:
                raise ParameterError("projectors must be Hermitian idempotents")
            total += p
        if np.abs(total - np.eye(d)).max() > ATOL:
            raise ParameterError("projectors must sum to the identity")
        object.__setattr__(self, "projectors", projs)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]


def _product_basis(vectors: tuple[StateVector, ...], n_qubits: int) -> list[StateVector]:
    states = list(vectors)
    for _ in range(n_qubits - 1):
        states = [tensor(s, v) for s in states for v in vectors]
    return states


def basis_measurement(tag: str, n_qubits: int = 1) -> ProjectiveMeasurement:
    """Product Z- or X-basis measurement on ``n_qubits`` qubits."""
    if tag == "Z":
        single: tuple[StateVector, ...] = (KET_0, KET_1)
    elif tag == "X":
        single = (KET_PLUS, KET_MINUS)
    else:
        raise ParameterError(f"unknown basis tag {tag!r}")
    if n_qubits < 1:
        raise ParameterError("n_qubits must be >= 1")
    vecs = _product_basis(single, n_qubits)
    return ProjectiveMeasurement(
        f"{tag}^{n_qubits}", tuple(density_of(v).mat for v in vecs)
    )


def bell_measurement() -> ProjectiveMeasurement:
    """Two-qubit measurement in the Bell basis."""
    projs = tuple(density_of(BELL_STATES[b]).mat for b in sorted(BELL_STATES))
    return ProjectiveMeasurement("bell", projs)


def measurement_mutual_information(
    e: Ensemble, measurement: ProjectiveMeasurement | str
) -> float:
    """Exact I(X;Y) in nats between ensemble label and measurement outcome.

    The joint distribution P(i, o) = p_i tr(Pi_o rho_i) is computed in closed
    form; no sampling is involved.  ``measurement`` may be a
    ProjectiveMeasurement or a basis tag ("Z"/"X") sized to the ensemble.
    """
    if isinstance(measurement, str):
        n_qubits = e.dim.bit_length() - 1
        if e.dim < 2 or e.dim & (e.dim - 1):
            raise DimensionError(f"ensemble dimension {e.dim} is not a qubit register")
        measurement = basis_measurement(measurement, n_qubits)
    if measurement.dim != e.dim:
        raise DimensionError(
            f"measurement dim {measurement.dim} != ensemble dim {e.dim}"
        )
    joint = np.zeros((len(e.items), len(measurement.projectors)))
    for i, (p, rho) in enumerate(e.items):
        for o, proj in enumerate(measurement.projectors):
            joint[i, o] = p * max(float(np.real(np.trace(proj @ rho.mat))), 0.0)
    joint /= joint.sum()
    p_label = joint.sum(axis=1)
    p_outcome = joint.sum(axis=0)
    info = 0.0
    for i in range(joint.shape[0]):
        for o in range(joint.shape[1]):
            pio = joint[i, o]
            if pio > 1e-15:
                info += pio * math.log(pio / (p_label[i] * p_outcome[o]))
    return info
