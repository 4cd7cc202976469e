"""Validated density matrices, two-qubit Bloch form, and named state families.

Basis convention: computational product ordering |00>, |01>, |10>, |11> with
up = 0 and down = 1.  All two-qubit fixtures (Bell projectors, the spin
mixtures, the Werner/Gisin families) are written in this ordering.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    DimensionMismatchError,
    is_hermitian,
    partial_trace,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)
I2 = np.eye(2, dtype=complex)


class StateValidationError(ValueError):
    """A candidate density matrix violates one of its defining invariants."""

    def __init__(self, invariant: str, message: str, value: float | None = None):
        self.invariant = invariant
        self.value = value
        super().__init__(f"{invariant}: {message}")


@dataclass(frozen=True)
class DensityMatrix:
    """Quantum state over a declared bipartite dimension split (d1, d2).

    Validation enforces Hermiticity, unit trace, and positive semidefiniteness
    (eigenvalues >= -tol) at construction time.
    """

    matrix: np.ndarray
    split: tuple[int, int]
    tol: InitVar[float] = DEFAULT_TOL

    def __post_init__(self, tol: float):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise StateValidationError("shape", f"not a square matrix: {m.shape}")
        d1, d2 = int(self.split[0]), int(self.split[1])
        if d1 < 1 or d2 < 1 or d1 * d2 != m.shape[0]:
            raise StateValidationError(
                "split", f"split {self.split} does not factor dimension {m.shape[0]}"
            )
        if not is_hermitian(m, tol):
            dev = float(np.max(np.abs(m - m.conj().T)))
            raise StateValidationError("hermitian", f"deviation {dev:.3e} exceeds {tol:.1e}", dev)
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > tol:
            raise StateValidationError("trace", f"trace {tr} differs from 1", abs(tr - 1.0))
        lo = float(np.linalg.eigvalsh(m).min())
        if lo < -tol:
            raise StateValidationError("positive", f"eigenvalue {lo:.3e} below -{tol:.1e}", lo)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "split", (d1, d2))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class BlochForm:
    """Two-qubit coefficients (r, u, t) of the Pauli product expansion.

    The state is (1/4)(1(x)1 + r_i s_i(x)1 + u_i 1(x)s_i + t_ij s_i(x)s_j)
    with s_i the Pauli matrices; r, u are real 3-vectors, t a real 3x3 matrix.
    """

    r: np.ndarray
    u: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "r", np.asarray(self.r, dtype=float).reshape(3))
        object.__setattr__(self, "u", np.asarray(self.u, dtype=float).reshape(3))
        object.__setattr__(self, "t", np.asarray(self.t, dtype=float).reshape(3, 3))


def from_bloch(b: BlochForm, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Build the two-qubit state with the given Bloch coefficients.

    Raises StateValidationError (carrying the offending eigenvalue) when the
    coefficients do not describe a positive-semidefinite matrix.
    """
    m = np.eye(4, dtype=complex)
    for i in range(3):
        m += b.r[i] * np.kron(PAULI[i], I2)
        m += b.u[i] * np.kron(I2, PAULI[i])
        for j in range(3):
            m += b.t[i, j] * np.kron(PAULI[i], PAULI[j])
    return DensityMatrix(m / 4.0, (2, 2), tol=tol)


def to_bloch(rho: DensityMatrix) -> BlochForm:
    """Recover (r, u, t) via r_i = Tr(rho s_i(x)1) and friends; split must be (2,2)."""
    if rho.split != (2, 2):
        raise DimensionMismatchError(f"Bloch form requires split (2, 2), got {rho.split}")
    m = rho.matrix
    r = np.array([np.trace(m @ np.kron(PAULI[i], I2)).real for i in range(3)])
    u = np.array([np.trace(m @ np.kron(I2, PAULI[i])).real for i in range(3)])
    t = np.array(
        [[np.trace(m @ np.kron(PAULI[i], PAULI[j])).real for j in range(3)] for i in range(3)]
    )
    return BlochForm(r=r, u=u, t=t)


_BELL_SIGNS = {"psi+": +1, "psi-": -1, "phi+": +1, "phi-": -1}


def bell_vector(kind: str) -> np.ndarray:
    """One of the four Bell vectors psi+/-, phi+/- in the computational basis."""
    if kind not in _BELL_SIGNS:
        raise ValueError(f"unknown Bell state {kind!r}; expected one of {sorted(_BELL_SIGNS)}")
    sign = _BELL_SIGNS[kind]
    v = np.zeros(4, dtype=complex)
    if kind.startswith("psi"):
        v[1], v[2] = 1.0, sign
    else:
        v[0], v[3] = 1.0, sign
    return v / np.sqrt(2.0)


def bell_state(kind: str, tol: float = DEFAULT_TOL) -> DensityMatrix:
    v = bell_vector(kind)
    return DensityMatrix(np.outer(v, v.conj()), (2, 2), tol=tol)


def product_state(a: int, b: int, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Computational product projector |ab><ab| with a, b in {0, 1}."""
    if a not in (0, 1) or b not in (0, 1):
        raise ValueError("product_state expects qubit labels 0 (up) or 1 (down)")
    m = np.zeros((4, 4), dtype=complex)
    m[2 * a + b, 2 * a + b] = 1.0
    return DensityMatrix(m, (2, 2), tol=tol)


def psi_theta(theta: float) -> np.ndarray:
    """Partially entangled vector sin(theta)|01> - cos(theta)|10>."""
    v = np.zeros(4, dtype=complex)
    v[1] = np.sin(theta)
    v[2] = -np.cos(theta)
    return v


def rho_theta(theta: float, tol: float = DEFAULT_TOL) -> DensityMatrix:
    v = psi_theta(theta)
    return DensityMatrix(np.outer(v, v.conj()), (2, 2), tol=tol)


def weyl_basis_state(k: int, l: int, d: int) -> np.ndarray:
    """Maximally entangled basis vector built from shift k and phase l.

    chi_kl = (1/sqrt(d)) sum_j exp(2 pi i j l / d) |j> (x) |(j+k) mod d>.
    The d*d vectors for 0 <= k, l < d form an orthonormal basis.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if not (0 <= k < d and 0 <= l < d):
        raise ValueError(f"indices (k, l) = ({k}, {l}) out of range for d = {d}")
    v = np.zeros(d * d, dtype=complex)
    for j in range(d):
        v[j * d + (j + k) % d] = np.exp(2j * np.pi * j * l / d)
    return v / np.sqrt(d)


def weyl_operator(k: int, l: int, d: int) -> np.ndarray:
    """Shift-and-phase unitary W_kl = sum_j exp(2 pi i j l / d) |(j+k) mod d><j|.

    Satisfies chi_kl = (1 (x) W_kl) chi_00, so the Weyl basis vectors and
    these operators are two faces of the same family.
    """
    if not (0 <= k < d and 0 <= l < d):
        raise ValueError(f"indices (k, l) = ({k}, {l}) out of range for d = {d}")
    w = np.zeros((d, d), dtype=complex)
    for j in range(d):
        w[(j + k) % d, j] = np.exp(2j * np.pi * j * l / d)
    return w


def werner(alpha: float, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Isotropic mixture alpha * psi- projector + (1 - alpha)/4 * identity."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    m = alpha * bell_state("psi-").matrix + (1.0 - alpha) / 4.0 * np.eye(4)
    return DensityMatrix(m, (2, 2), tol=tol)


def werner_generalized(
    alpha: float, d: int, projector: np.ndarray | None = None, tol: float = DEFAULT_TOL
) -> DensityMatrix:
    """d x d analogue alpha * P + (1 - alpha)/d^2 * identity.

    ``projector`` must be a rank-1 projector onto a maximally entangled vector;
    it defaults to the (0, 0) Weyl basis projector.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if projector is None:
        chi = weyl_basis_state(0, 0, d)
        projector = np.outer(chi, chi.conj())
    p = np.asarray(projector, dtype=complex)
    if p.shape != (d * d, d * d):
        raise DimensionMismatchError(f"projector shape {p.shape} does not match d = {d}")
    if np.max(np.abs(p @ p - p)) > 1e-8 or abs(np.trace(p) - 1.0) > 1e-8:
        raise ValueError("projector must be rank-1 (P^2 = P, Tr P = 1)")
    red = partial_trace(p, (d, d), keep="first")
    if np.max(np.abs(red - np.eye(d) / d)) > 1e-8:
        raise ValueError("projector must target a maximally entangled vector")
    m = alpha * p + (1.0 - alpha) / (d * d) * np.eye(d * d)
    return DensityMatrix(m, (d, d), tol=tol)


def gisin(lam: float, theta: float, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Mixture lam * rho_theta + (1 - lam)/2 * (|00><00| + |11><11|)."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    m = lam * rho_theta(theta).matrix
    m[0, 0] += (1.0 - lam) / 2.0
    m[3, 3] += (1.0 - lam) / 2.0
    return DensityMatrix(m, (2, 2), tol=tol)


def ghz_vector(theta: float) -> np.ndarray:
    """Three-qubit vector sin(theta)|000> + cos(theta)|111>."""
    v = np.zeros(8, dtype=complex)
    v[0] = np.sin(theta)
    v[7] = np.cos(theta)
    return v


def ghz_traced(theta: float, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Two-qubit marginal of the GHZ-type vector, tracing out the third qubit.

    Which qubit is traced is irrelevant by symmetry; the result is the diagonal
    matrix diag(sin^2 theta, 0, 0, cos^2 theta), separable for every theta.
    """
    v = ghz_vector(theta)
    full = np.outer(v, v.conj())
    return DensityMatrix(partial_trace(full, (4, 2), keep="first"), (2, 2), tol=tol)


def narnhofer(tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Equal mixture of the psi+ and phi+ projectors.

    The matrix is (1/4) [[1,0,0,1],[0,1,1,0],[0,1,1,0],[1,0,0,1]]: a rank-2
    separable state of purity 1/2, sitting at a corner of the separable double
    pyramid (outside the absolutely separable ball).
    """
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[0, 3] = m[3, 0] = m[3, 3] = 0.25
    m[1, 1] = m[1, 2] = m[2, 1] = m[2, 2] = 0.25
    return DensityMatrix(m, (2, 2), tol=tol)


def tracial(dim: int, split: tuple[int, int] | None = None, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Maximally mixed state 1/dim on a ``dim``-dimensional space.

    When no split is given, dim must be a perfect square and the balanced
    split (d, d) is used.
    """
    if split is None:
        d = int(round(np.sqrt(dim)))
        if d * d != dim:
            raise ValueError(f"dim {dim} is not a perfect square; pass an explicit split")
        split = (d, d)
    return DensityMatrix(np.eye(dim, dtype=complex) / dim, split, tol=tol)


def state_to_dict(rho: DensityMatrix) -> dict:
    """JSON-ready form {split: [d1, d2], re: [[...]], im: [[...]]}."""
    return {
        "split": [rho.split[0], rho.split[1]],
        "re": rho.matrix.real.tolist(),
        "im": rho.matrix.imag.tolist(),
    }


def state_from_dict(data: dict, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Parse the JSON state format; raises KeyError/ValueError on malformed input."""
    split = tuple(int(x) for x in data["split"])
    if len(split) != 2:
        raise ValueError(f"split must have two entries, got {data['split']!r}")
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data["im"], dtype=float)
    if re.shape != im.shape:
        raise ValueError(f"re/im shape mismatch: {re.shape} vs {im.shape}")
    return DensityMatrix(re + 1j * im, split, tol=tol)
