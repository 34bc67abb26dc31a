"""Dense complex Hermitian linear algebra on small matrices.

Everything here works on plain ``numpy`` arrays; all functions are pure and
never mutate their inputs. Dimensions in scope are small (product dimension
up to ~9), so dense storage and LAPACK eigensolvers are used throughout.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NonRealExpectation,
    NotHermitian,
    NotPSD,
)

#: Max-abs entrywise tolerance for Hermiticity checks.
HERM_TOL = 1e-10
#: Eigenvalues in [-PSD_TOL, 0) are treated as roundoff and clamped to 0.
PSD_TOL = 1e-10

__all__ = [
    "HERM_TOL",
    "PSD_TOL",
    "HermEig",
    "as_square_matrix",
    "require_hermitian",
    "herm_eig",
    "psd_sqrt",
    "kron",
    "partial_trace",
    "commutator",
    "anticommutator",
    "expectation",
]


class HermEig(NamedTuple):
    """Spectral decomposition of a Hermitian matrix.

    ``values`` are real and ascending; the columns of ``vectors`` are the
    matching orthonormal eigenvectors, so ``vectors @ diag(values) @
    vectors.conj().T`` reconstructs the input.
    """

    values: np.ndarray
    vectors: np.ndarray


def as_square_matrix(m) -> np.ndarray:
    """Coerce to a square complex ndarray with finite entries."""
    a = np.asarray(getattr(m, "mat", m), dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise DimensionMismatch("matrix contains NaN or Inf entries")
    return a


def require_hermitian(m, tol: float = HERM_TOL) -> np.ndarray:
    """Validate Hermiticity to ``tol`` (max-abs) and return the symmetrized copy.

    Symmetrizing after the check stabilizes downstream spectral calls.
    """
    a = as_square_matrix(m)
    dev = np.abs(a - a.conj().T).max() if a.size else 0.0
    if dev > tol:
        raise NotHermitian(f"max |M - M^dag| = {dev:.3e} exceeds {tol:.1e}")
    return (a + a.conj().T) / 2


def herm_eig(h) -> HermEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    a = require_hermitian(h)
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"Hermitian eigensolver did not converge: {exc}") from exc
    return HermEig(values, vectors)


def psd_sqrt(m) -> np.ndarray:
    """Hermitian PSD square root via the spectral decomposition.

    Eigenvalues in ``[-PSD_TOL, 0)`` are clamped to zero; anything below
    raises ``NotPSD``.
    """
    values, vectors = herm_eig(m)
    if values[0] < -PSD_TOL:
        raise NotPSD(f"eigenvalue {values[0]:.3e} below -{PSD_TOL:.1e}")
    root = (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T
    return (root + root.conj().T) / 2


def kron(a, b) -> np.ndarray:
    """Kronecker product, A acting on the left (slow) index."""
    return np.kron(as_square_matrix(a), as_square_matrix(b))


def partial_trace(m, dim_a: int, dim_b: int, keep: str = "a") -> np.ndarray:
    """Trace out one tensor factor of a ``dim_a * dim_b`` square matrix.

    ``keep='a'`` traces out B and returns a ``dim_a`` x ``dim_a`` matrix;
    ``keep='b'`` the other way around.
    """
    a = as_square_matrix(m)
    if dim_a < 1 or dim_b < 1 or a.shape[0] != dim_a * dim_b:
        raise DimensionMismatch(
            f"matrix of dim {a.shape[0]} does not factor as {dim_a}x{dim_b}"
        )
    t = a.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "a":
        return np.trace(t, axis1=1, axis2=3)
    if keep == "b":
        return np.trace(t, axis1=0, axis2=2)
    raise ValueError(f"keep must be 'a' or 'b', got {keep!r}")


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    x, y = as_square_matrix(a), as_square_matrix(b)
    if x.shape != y.shape:
        raise DimensionMismatch(f"shape mismatch: {x.shape} vs {y.shape}")
    return x, y


def commutator(a, b) -> np.ndarray:
    """[A, B] = AB - BA."""
    x, y = _pair(a, b)
    return x @ y - y @ x


def anticommutator(a, b) -> np.ndarray:
    """{A, B} = AB + BA."""
    x, y = _pair(a, b)
    return x @ y + y @ x


def expectation(rho, h) -> float:
    """Re Tr(rho H) for a state and a Hermitian observable.

    Raises ``NonRealExpectation`` if the imaginary part of the trace exceeds
    1e-10 (a symptom of non-Hermitian inputs).
    """
    r, obs = _pair(rho, h)
    val = np.trace(r @ obs)
    if abs(val.imag) > 1e-10:
        raise NonRealExpectation(f"Im Tr(rho H) = {val.imag:.3e} exceeds 1e-10")
    return float(val.real)
