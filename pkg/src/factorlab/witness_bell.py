"""Entanglement witnesses and CHSH Bell-inequality analysis.

Witness side: the projector witness 1 - d P, the tangent-plane construction
from a nearest separable state, and expectation evaluation.  Bell side: the
CHSH operator for arbitrary measurement directions, the closed-form maximal
violation sqrt(t1^2 + t2^2) from the correlation matrix, a constructive
maximizer with a hill-climbing cross-check, concurrence-based violation
bounds, and the Gisin-family violation thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import DEFAULT_TOL, DimensionMismatchError, hs_inner, hs_norm, is_hermitian
from .states import PAULI, DensityMatrix, to_bloch


@dataclass(frozen=True)
class Witness:
    """Hermitian operator with Tr(rho A) >= 0 for every separable rho and
    Tr(rho A) < 0 for at least one entangled state."""

    operator: np.ndarray
    split: tuple[int, int]

    def __post_init__(self):
        op = np.asarray(self.operator, dtype=complex)
        if not is_hermitian(op, DEFAULT_TOL):
            raise ValueError("witness operator must be Hermitian")
        op.setflags(write=False)
        object.__setattr__(self, "operator", op)


def witness_projector(projector: np.ndarray, d: int, tol: float = DEFAULT_TOL) -> Witness:
    """Optimal witness 1 - d P for a maximally entangled rank-1 projector P.

    On product states phi (x) psi the expectation is 1 - |<phi*|psi>|^2 >= 0,
    vanishing exactly at psi = phi*; on beta P + (1 - beta) sigma with sigma
    orthogonal to P it gives 1 - beta d.
    """
    p = np.asarray(projector, dtype=complex)
    if p.shape != (d * d, d * d):
        raise DimensionMismatchError(f"projector shape {p.shape} does not match d = {d}")
    if np.max(np.abs(p @ p - p)) > max(tol, 1e-8):
        raise ValueError("P is not a projector (P^2 != P)")
    if abs(np.trace(p).real - 1.0) > max(tol, 1e-8):
        raise ValueError("P must be rank-1 (Tr P = 1)")
    return Witness(np.eye(d * d) - d * p, (d, d))


def optimal_witness(rho0: DensityMatrix, rho_ent: DensityMatrix) -> Witness:
    """Tangent-plane witness built from a separable state rho0 nearest to rho_ent.

    A = (rho0 - rho_ent - <rho0, rho0 - rho_ent> 1) / ||rho0 - rho_ent||, which
    satisfies <rho0, A> = 0; its (negative) expectation on rho_ent equals minus
    the Hilbert-Schmidt distance when rho0 is the true nearest separable state.
    """
    if rho0.dim != rho_ent.dim:
        raise DimensionMismatchError(f"dimension mismatch: {rho0.dim} vs {rho_ent.dim}")
    diff = rho0.matrix - rho_ent.matrix
    dist = hs_norm(diff)
    if dist <= 1e-14:
        raise ValueError("optimal_witness requires rho0 != rho_ent")
    shift = hs_inner(rho0.matrix, diff).real
    op = (diff - shift * np.eye(rho0.dim)) / dist
    return Witness(op, rho0.split)


def ewi_eval(rho: DensityMatrix, witness: Witness) -> float:
    """Witness expectation Tr(rho A); the caller interprets the sign."""
    if rho.dim != witness.operator.shape[0]:
        raise DimensionMismatchError(
            f"dimension mismatch: state {rho.dim} vs witness {witness.operator.shape[0]}"
        )
    return hs_inner(rho.matrix, witness.operator).real


@dataclass(frozen=True)
class ChshSetting:
    """CHSH measurement directions: unit 3-vectors a, a' for one side and
    b, b' for the other."""

    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            v = np.asarray(getattr(self, name), dtype=float).reshape(3)
            if abs(np.linalg.norm(v) - 1.0) > 1e-9:
                raise ValueError(f"{name} must be a unit vector, |{name}| = {np.linalg.norm(v)}")
            object.__setattr__(self, name, v)


def _dot_sigma(v: np.ndarray) -> np.ndarray:
    return sum(v[i] * PAULI[i] for i in range(3))


def chsh_operator(setting: ChshSetting) -> np.ndarray:
    """CHSH operator (1/2)(a.s (x) (b+b').s + a'.s (x) (b-b').s).

    Normalized so the classical bound is 1 and the quantum maximum sqrt(2).
    """
    return 0.5 * (
        np.kron(_dot_sigma(setting.a), _dot_sigma(setting.b + setting.b_prime))
        + np.kron(_dot_sigma(setting.a_prime), _dot_sigma(setting.b - setting.b_prime))
    )


def chsh_value(rho: DensityMatrix, setting: ChshSetting) -> float:
    if rho.split != (2, 2):
        raise DimensionMismatchError(f"CHSH requires split (2, 2), got {rho.split}")
    return float(np.trace(rho.matrix @ chsh_operator(setting)).real)


def horodecki_bmax(rho: DensityMatrix) -> float:
    """Maximal CHSH value sqrt(t1^2 + t2^2) with t1^2 >= t2^2 the two largest
    eigenvalues of t^T t, t the Bloch correlation matrix.  Violation iff > 1."""
    t = to_bloch(rho).t
    w = np.linalg.eigvalsh(t.T @ t)
    return float(np.sqrt(max(w[-1], 0.0) + max(w[-2], 0.0)))


def _unit(v: np.ndarray, fallback: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    return v / n if n > 1e-14 else fallback


def _constructive_setting(t: np.ndarray) -> ChshSetting:
    # Top-2 eigenvector plane of t^T t carries the optimum; place b, b' in it
    # and take a, a' as the images under t.
    w, vecs = np.linalg.eigh(t.T @ t)
    c1, c2 = vecs[:, -1], vecs[:, -2]
    s1, s2 = max(w[-1], 0.0), max(w[-2], 0.0)
    phi = np.arctan2(np.sqrt(s2), np.sqrt(s1)) if s1 + s2 > 0 else np.pi / 4
    b = np.cos(phi) * c1 + np.sin(phi) * c2
    b_prime = np.cos(phi) * c1 - np.sin(phi) * c2
    a = _unit(t @ c1, fallback=c1)
    a_prime = _unit(t @ c2, fallback=c2)
    return ChshSetting(a=a, a_prime=a_prime, b=b, b_prime=b_prime)


def chsh_maximize(
    rho: DensityMatrix, seed: int = 0, restarts: int = 12, iters: int = 60
) -> tuple[float, ChshSetting]:
    """Measurement directions maximizing the CHSH value.

    Uses the constructive optimum from the correlation-matrix eigenplane and
    cross-checks it with a deterministic seeded random-restart alternating
    ascent; the best of the two is returned and matches horodecki_bmax.
    """
    t = to_bloch(rho).t
    best_setting = _constructive_setting(t)
    best_value = chsh_value(rho, best_setting)

    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        b = _unit(rng.normal(size=3), np.array([0.0, 0.0, 1.0]))
        b_prime = _unit(rng.normal(size=3), np.array([1.0, 0.0, 0.0]))
        a = a_prime = None
        for _ in range(iters):
            a = _unit(t @ (b + b_prime), fallback=np.array([1.0, 0.0, 0.0]))
            a_prime = _unit(t @ (b - b_prime), fallback=np.array([0.0, 1.0, 0.0]))
            b_new = _unit(t.T @ (a + a_prime), fallback=b)
            b_prime_new = _unit(t.T @ (a - a_prime), fallback=b_prime)
            if np.max(np.abs(b_new - b)) + np.max(np.abs(b_prime_new - b_prime)) < 1e-13:
                b, b_prime = b_new, b_prime_new
                break
            b, b_prime = b_new, b_prime_new
        candidate = ChshSetting(a=a, a_prime=a_prime, b=b, b_prime=b_prime)
        value = chsh_value(rho, candidate)
        if value > best_value:
            best_value, best_setting = value, candidate
    return best_value, best_setting


def verstraete_wolf_bounds(concurrence_value: float) -> tuple[float, float]:
    """Violation bounds for a given concurrence C: (max(1, sqrt(2) C), sqrt(1 + C^2)).

    The upper bound holds for every two-qubit state and is saturated by pure
    states; the lower branch max(1, .) is the classical line clipped against
    sqrt(2) C and describes the bound curve for states at fixed C.
    """
    c = float(concurrence_value)
    if not -1e-12 <= c <= 1.0 + 1e-12:
        raise ValueError(f"concurrence must lie in [0, 1], got {c}")
    c = min(max(c, 0.0), 1.0)
    return (max(1.0, np.sqrt(2.0) * c), float(np.sqrt(1.0 + c * c)))


class GisinThresholds(NamedTuple):
    """Critical lambda values for CHSH violation of the Gisin family at fixed theta.

    ``unfiltered_attainable`` is False when no lambda in [0, 1] violates (the
    threshold is then reported clamped to 1).
    """

    unfiltered: float
    filtered: float
    unfiltered_attainable: bool


def gisin_thresholds(theta: float) -> GisinThresholds:
    """Violation thresholds for gisin(lam, theta) before and after filtering.

    The unfiltered condition max{(2 lam - 1)^2 + lam^2 sin^2(2 theta),
    2 lam^2 sin^2(2 theta)} > 1 has the two branch roots 4/(4 + sin^2(2 theta))
    and 1/(sqrt(2) sin(2 theta)); the threshold is their minimum, clamped to 1.
    Both branches are evaluated exactly rather than restricting to either one.
    The filtered family violates for lam > 1/(1 + sin(2 theta)(sqrt(2) - 1)).
    """
    s = np.sin(2.0 * theta)
    if abs(s) < 1e-12:
        raise ValueError(f"degenerate theta = {theta}: sin(2 theta) = 0")
    s = abs(s)
    branch_mixed = 4.0 / (4.0 + s * s)
    branch_corr = 1.0 / (np.sqrt(2.0) * s)
    unfiltered = min(branch_mixed, branch_corr)
    attainable = unfiltered <= 1.0
    filtered = 1.0 / (1.0 + s * (np.sqrt(2.0) - 1.0))
    return GisinThresholds(min(unfiltered, 1.0), float(filtered), bool(attainable))
