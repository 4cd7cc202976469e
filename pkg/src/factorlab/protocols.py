"""Teleportation and entanglement swapping in arbitrary dimension d.

Both protocols rest on the identification of maximally entangled vectors with
isometries between equal-dimension factors:

    |psi>_12 = (1/sqrt(d)) sum_i |i>_1 (x) |I_12 i>_2.

One subtlety is load-bearing: a *measurement outcome* enters through a bra, so
the transfer map it realizes is the entrywise conjugate of its ket-convention
isometry.  With that convention the composition laws hold on the nose:
teleportation realizes I_13 = I_23 . conj(I_12) and swapping realizes
I_14 = I_34 . conj(I_23) . I_12 (matrix products, rightmost factor first).
Every simulated outcome is checked against the algebraic composition and a
ProtocolCheckError is raised on disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import is_unitary
from .states import weyl_basis_state, weyl_operator

ISOMETRY_TOL = 1e-10


class ProtocolCheckError(AssertionError):
    """A protocol invariant (recovery fidelity or composition law) failed."""


@dataclass(frozen=True)
class Isometry:
    """Unitary identification between two d-dimensional factors."""

    map: np.ndarray
    d: int
    label: str = field(default="", compare=False)

    def __post_init__(self):
        m = np.asarray(self.map, dtype=complex)
        if m.shape != (self.d, self.d):
            raise ValueError(f"isometry matrix shape {m.shape} does not match d = {self.d}")
        if not is_unitary(m, ISOMETRY_TOL):
            raise ValueError("isometry matrix must be unitary")
        m.setflags(write=False)
        object.__setattr__(self, "map", m)

    @classmethod
    def identity(cls, d: int) -> "Isometry":
        return cls(np.eye(d, dtype=complex), d, "identity")

    @classmethod
    def weyl(cls, k: int, l: int, d: int) -> "Isometry":
        return cls(weyl_operator(k, l, d), d, f"W[{k},{l}]")

    def compose(self, inner: "Isometry") -> "Isometry":
        """Composition self . inner (apply ``inner`` first)."""
        if self.d != inner.d:
            raise ValueError(f"dimension mismatch: {self.d} vs {inner.d}")
        return Isometry(self.map @ inner.map, self.d, f"{self.label}.{inner.label}")


@dataclass(frozen=True)
class BellMeasurementOutcome:
    """One branch of a generalized Bell measurement in the Weyl basis."""

    index: tuple[int, int]
    probability: float
    post_state: np.ndarray
    correction: Isometry
    fidelity: float


def maxent_from_isometry(iso: Isometry) -> np.ndarray:
    """Maximally entangled vector (1/sqrt(d)) sum_i |i> (x) |iso i>."""
    return iso.map.T.reshape(-1) / np.sqrt(iso.d)


def isometry_of_maxent(v: np.ndarray, d: int, tol: float = 1e-8) -> Isometry:
    """Inverse of maxent_from_isometry (exact, no phase freedom).

    Raises ValueError when the input is not maximally entangled, i.e. when its
    Schmidt coefficients deviate from the flat value 1/sqrt(d) beyond tol.
    """
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != d * d:
        raise ValueError(f"vector of length {v.size} does not match d = {d}")
    coeff = v.reshape(d, d)
    singular = np.linalg.svd(coeff, compute_uv=False)
    if np.max(np.abs(singular - 1.0 / np.sqrt(d))) > tol:
        raise ValueError("input vector is not maximally entangled")
    return Isometry(np.sqrt(d) * coeff.T, d)


def _phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Max-norm distance between u and v after removing one global phase.

    The phase is extracted at the largest-magnitude entry of the reference v
    and applied to v; a single shared pivot keeps the comparison stable when
    several entries tie in magnitude.
    """
    u = np.asarray(u).reshape(-1)
    v = np.asarray(v).reshape(-1)
    idx = int(np.argmax(np.abs(v)))
    if abs(v[idx]) == 0.0 or abs(u[idx]) == 0.0:
        return float(np.max(np.abs(u - v)))
    phase = u[idx] / v[idx]
    phase /= abs(phase)
    return float(np.max(np.abs(u - phase * v)))


def teleport(
    phi: np.ndarray, alice_outcome: tuple[int, int]
) -> tuple[np.ndarray, Isometry, float]:
    """Teleport ``phi`` through the identity-isometry resource, one outcome.

    Alice holds phi on factor 1 and shares (1/sqrt(d)) sum_i |ii> on (2, 3)
    with Bob; she measures (1, 2) in the Weyl basis.  For outcome (k, l) the
    branch has probability exactly 1/d^2 and Bob's factor ends in
    correction . phi where the correction is the Weyl-class unitary
    conj(W_kl) = W_(k, -l mod d); undoing it recovers phi.  The simulated
    branch is checked against this algebraic prediction on every call.
    """
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    d = phi.size
    norm = np.linalg.norm(phi)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"input state must be normalized, |phi| = {norm}")
    k, l = alice_outcome

    resource = maxent_from_isometry(Isometry.identity(d))
    joint = np.kron(phi, resource).reshape(d, d, d)
    chi = weyl_basis_state(k, l, d).reshape(d, d)
    branch = np.einsum("ab,abc->c", chi.conj(), joint)
    probability = float(np.vdot(branch, branch).real)
    bob_state = branch / np.sqrt(probability)

    correction = Isometry(
        weyl_operator(k, l, d).conj(), d, label=f"W[{k},{(d - l) % d}]"
    )
    residual = _phase_distance(bob_state, correction.map @ phi)
    if residual > 1e-9:
        raise ProtocolCheckError(
            f"outcome ({k},{l}): composition law violated by {residual:.3e}"
        )
    return bob_state, correction, probability


def teleport_outcomes(phi: np.ndarray) -> list[BellMeasurementOutcome]:
    """Exhaustive teleportation trace over all d^2 measurement outcomes."""
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    d = phi.size
    outcomes = []
    for k in range(d):
        for l in range(d):
            bob_state, correction, probability = teleport(phi, (k, l))
            recovered = correction.map.conj().T @ bob_state
            fidelity = float(abs(np.vdot(phi, recovered)))
            outcomes.append(
                BellMeasurementOutcome((k, l), probability, bob_state, correction, fidelity)
            )
    return outcomes


def _swap_branch(
    alice_outcome: tuple[int, int], i12: Isometry, i34: Isometry
) -> tuple[np.ndarray, Isometry, float, float]:
    if i12.d != i34.d:
        raise ValueError(f"resource dimension mismatch: {i12.d} vs {i34.d}")
    d = i12.d
    k, l = alice_outcome

    joint = np.kron(maxent_from_isometry(i12), maxent_from_isometry(i34)).reshape(d, d, d, d)
    chi = weyl_basis_state(k, l, d).reshape(d, d)
    branch = np.einsum("bc,abce->ae", chi.conj(), joint).reshape(-1)
    probability = float(np.vdot(branch, branch).real)
    pair14 = branch / np.sqrt(probability)

    extracted = isometry_of_maxent(pair14, d)
    predicted = i34.map @ weyl_operator(k, l, d).conj() @ i12.map
    residual = _phase_distance(extracted.map.reshape(-1), predicted.reshape(-1))
    if residual > 1e-9:
        raise ProtocolCheckError(
            f"outcome ({k},{l}): isometry composition violated by {residual:.3e}"
        )
    fidelity = float(abs(np.vdot(maxent_from_isometry(Isometry(predicted, d)), pair14)))
    return pair14, extracted, probability, fidelity


def swap(
    alice_outcome: tuple[int, int], i12: Isometry, i34: Isometry
) -> tuple[np.ndarray, Isometry]:
    """Entanglement swapping: Bell measurement on (2, 3) of maxent(I12)(x)maxent(I34).

    For outcome (k, l) (probability 1/d^2) the untouched pair (1, 4) collapses
    to the maximally entangled state whose isometry is the composition
    I_14 = I_34 . conj(W_kl) . I_12.  The isometry extracted from the simulated
    pair state is compared entrywise (up to global phase) against that product
    and returned.
    """
    pair14, extracted, _, _ = _swap_branch(alice_outcome, i12, i34)
    return pair14, extracted


def swap_outcomes(i12: Isometry, i34: Isometry) -> list[BellMeasurementOutcome]:
    """Exhaustive swapping trace over all d^2 Bell outcomes on the (2, 3) pair."""
    d = i12.d
    outcomes = []
    for k in range(d):
        for l in range(d):
            pair14, extracted, probability, fidelity = _swap_branch((k, l), i12, i34)
            outcomes.append(
                BellMeasurementOutcome((k, l), probability, pair14, extracted, fidelity)
            )
    return outcomes
