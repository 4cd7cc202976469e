"""Dense complex linear algebra sized for small Hilbert spaces (dim <= ~64).

All operators are plain square ``numpy`` arrays of complex dtype; vectors are
1-D arrays.  Every predicate takes an explicit tolerance (default 1e-9) and is
pure: no function here mutates its input or keeps state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9


class DimensionMismatchError(ValueError):
    """Operands act on Hilbert spaces of incompatible dimension."""


def _as_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    return m


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def is_hermitian(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = _as_square(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def is_unitary(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = _as_square(m)
    eye = np.eye(m.shape[0])
    return bool(np.max(np.abs(m @ m.conj().T - eye)) <= tol)


def is_psd(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = _as_square(m)
    if not is_hermitian(m, tol):
        return False
    return bool(np.linalg.eigvalsh(m).min() >= -tol)


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(a^dagger b)."""
    a, b = _as_square(a), _as_square(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return complex(np.trace(a.conj().T @ b))


def hs_norm(a: np.ndarray) -> float:
    """Frobenius norm sqrt(Tr a^dagger a)."""
    return float(np.sqrt(hs_inner(a, a).real))


def _check_split(m: np.ndarray, split: tuple[int, int]) -> tuple[int, int]:
    d1, d2 = int(split[0]), int(split[1])
    if d1 < 1 or d2 < 1 or d1 * d2 != m.shape[0]:
        raise DimensionMismatchError(
            f"split {split} inconsistent with matrix dimension {m.shape[0]}"
        )
    return d1, d2


def partial_transpose(
    m: np.ndarray, split: tuple[int, int], side: str = "second"
) -> np.ndarray:
    """Transpose one tensor factor of a bipartite operator.

    ``side`` selects the factor ("first" or "second").  The map is involutive
    and basis-dependent; indices follow the row-major product ordering.
    """
    m = _as_square(m)
    d1, d2 = _check_split(m, split)
    r = m.reshape(d1, d2, d1, d2)
    if side == "first":
        r = r.transpose(2, 1, 0, 3)
    elif side == "second":
        r = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"side must be 'first' or 'second', got {side!r}")
    return r.reshape(d1 * d2, d1 * d2)


def partial_trace(
    m: np.ndarray, split: tuple[int, int], keep: str = "first"
) -> np.ndarray:
    """Trace out one tensor factor, returning the reduced operator of ``keep``."""
    m = _as_square(m)
    d1, d2 = _check_split(m, split)
    r = m.reshape(d1, d2, d1, d2)
    if keep == "first":
        return np.einsum("ijkj->ik", r)
    if keep == "second":
        return np.einsum("ijil->jl", r)
    raise ValueError(f"keep must be 'first' or 'second', got {keep!r}")


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues sorted descending with matching orthonormal eigenvectors.

    ``vectors[:, k]`` is the eigenvector for ``values[k]``.  Within a degenerate
    cluster the eigenvector ordering is unspecified; callers must not rely on it.
    """

    values: np.ndarray
    vectors: np.ndarray


def herm_eigensystem(m: np.ndarray, tol: float = DEFAULT_TOL) -> Spectrum:
    """Full eigensystem of a Hermitian matrix, eigenvalues descending."""
    m = _as_square(m)
    if not is_hermitian(m, tol):
        raise ValueError("herm_eigensystem requires a Hermitian matrix")
    w, v = np.linalg.eigh(m)
    order = np.argsort(w)[::-1]
    return Spectrum(values=w[order].copy(), vectors=v[:, order].copy())


def psd_sqrt(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Positive-semidefinite square root of a PSD matrix."""
    m = _as_square(m)
    if not is_hermitian(m, tol):
        raise ValueError("psd_sqrt requires a Hermitian matrix")
    w, v = np.linalg.eigh(m)
    if w.min() < -tol:
        raise ValueError(f"psd_sqrt: negative eigenvalue {w.min():.3e} below -{tol:.1e}")
    w = np.sqrt(np.clip(w, 0.0, None))
    return (v * w) @ v.conj().T


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Bipartite decomposition v = sum_k c_k |left_k> (x) |right_k>.

    Coefficients are nonnegative and descending; ``left_basis[:, k]`` and
    ``right_basis[:, k]`` are the paired orthonormal vectors.
    """

    coefficients: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray
    split: tuple[int, int]

    def reconstruct(self) -> np.ndarray:
        d1, d2 = self.split
        out = np.zeros(d1 * d2, dtype=complex)
        for k, c in enumerate(self.coefficients):
            out += c * np.kron(self.left_basis[:, k], self.right_basis[:, k])
        return out


def schmidt_decompose(
    v: np.ndarray, split: tuple[int, int], tol: float = DEFAULT_TOL
) -> SchmidtDecomposition:
    """Schmidt decomposition of a normalized bipartite state vector."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    d1, d2 = int(split[0]), int(split[1])
    if v.size != d1 * d2:
        raise DimensionMismatchError(f"vector of length {v.size} does not match split {split}")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > max(tol, 1e-12):
        raise ValueError(f"schmidt_decompose requires a normalized vector, |v| = {norm}")
    coeff = v.reshape(d1, d2)
    u, s, vh = np.linalg.svd(coeff, full_matrices=False)
    # rows of vh are the right vectors; numpy returns singular values descending
    return SchmidtDecomposition(
        coefficients=s.copy(), left_basis=u.copy(), right_basis=vh.T.copy(), split=(d1, d2)
    )


def extend_to_unitary(columns: np.ndarray) -> np.ndarray:
    """Complete orthonormal columns to a full unitary (the given columns first).

    Accepts a (D, r) array with r <= D orthonormal columns (or a single 1-D
    vector) and returns a D x D unitary whose leading r columns equal them.
    """
    cols = np.asarray(columns, dtype=complex)
    if cols.ndim == 1:
        cols = cols.reshape(-1, 1)
    dim, r = cols.shape
    q, _ = np.linalg.qr(np.hstack([cols, np.eye(dim, dtype=complex)]))
    # Householder QR fixes each leading column only up to phase; realign.
    for k in range(r):
        phase = np.vdot(q[:, k], cols[:, k])
        q[:, k] *= phase / abs(phase)
    return q


def align_global_phase(v: np.ndarray) -> np.ndarray:
    """Rescale by a unit phase so the largest-magnitude entry is real positive.

    The entry is chosen deterministically (first index attaining the maximum),
    which makes comparisons "up to global phase" reproducible.
    """
    v = np.asarray(v, dtype=complex)
    flat = v.reshape(-1)
    idx = int(np.argmax(np.abs(flat)))
    pivot = flat[idx]
    if abs(pivot) == 0.0:
        return v.copy()
    return v * (abs(pivot) / pivot)
