"""Skew-information uncertainty quantities.

For a state rho with square root sqrt(rho) and an observable H, the module
computes

* ``skew_information``       I(rho, H) = -1/2 Tr [sqrt(rho), H]^2
                                       = Tr(rho H^2) - Tr(sqrt(rho) H sqrt(rho) H),
* ``skew_information_upper`` J(rho, H) = 1/2 Tr {sqrt(rho), H0}^2
                                       = Tr(rho H0^2) + Tr(sqrt(rho) H0 sqrt(rho) H0),
  with H0 = H - Tr(rho H) I,
* ``variance``               V(rho, H) = Tr(rho H^2) - Tr(rho H)^2,
* ``uncertainty``            UN(rho, H) = sqrt(I * J),

which satisfy 0 <= I <= V <= J and I + J = 2V, all three collapsing to V on
pure states.  ``complementarity_term`` quantifies how incompatible two
rank-one projective measurements are on a given state; it enters inequality
bounds alongside the correlation measure from :mod:`skewmem.qcorr`.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterator

import numpy as np

from . import hermlin
from .errors import DimensionMismatch, NotProjector, ValidationError

#: Guard for the 0/0 case of the complementarity term.
DEGENERATE_TOL = 1e-12

__all__ = [
    "DensityMatrix",
    "ProjectiveBasis",
    "variance",
    "skew_information",
    "skew_information_upper",
    "uncertainty",
    "uncertainty_sum",
    "complementarity_term",
    "complementarity_terms",
    "complementarity_sum",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class DensityMatrix:
    """A validated density operator, optionally bipartite.

    Construction checks Hermiticity (1e-10, then symmetrizes), positivity
    (eigenvalues >= -1e-10) and unit trace (1e-9), and raises
    ``ValidationError`` naming the violated invariant otherwise.  The PSD
    square root is computed once here and cached: every I/J/UN evaluation
    reuses it, and the correlation minimizer calls those hundreds of times
    on one state.  Instances are immutable and safe to share across threads.
    """

    def __init__(self, mat, dim_a: int | None = None, dim_b: int | None = None):
        a = np.asarray(getattr(mat, "mat", mat), dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValidationError(f"not square: shape {a.shape}")
        if not np.isfinite(a).all():
            raise ValidationError("entries are not all finite")
        dim = a.shape[0]
        if dim_a is None and dim_b is None:
            dim_a, dim_b = dim, 1
        elif dim_b is None:
            dim_b = dim // int(dim_a)
        elif dim_a is None:
            dim_a = dim // int(dim_b)
        if dim_a * dim_b != dim:
            raise ValidationError(f"dim_a*dim_b = {dim_a}*{dim_b} != matrix dim {dim}")

        dev = np.abs(a - a.conj().T).max()
        if dev > hermlin.HERM_TOL:
            raise ValidationError(f"not hermitian: max |rho - rho^dag| = {dev:.3e}")
        a = (a + a.conj().T) / 2

        values, vectors = np.linalg.eigh(a)
        if values[0] < -hermlin.PSD_TOL:
            raise ValidationError(f"not PSD: eigenvalue {values[0]:.3e}")
        tr = values.sum()
        if abs(tr - 1.0) > 1e-9:
            raise ValidationError(f"trace = {tr!r} not within 1e-9 of 1")

        clamped = np.clip(values, 0.0, None)
        root = (vectors * np.sqrt(clamped)) @ vectors.conj().T
        self.mat = _frozen(a)
        self.dim_a = int(dim_a)
        self.dim_b = int(dim_b)
        #: Eigenvalues ascending, roundoff negatives clamped to 0.
        self.eigenvalues = _frozen(clamped)
        #: Cached PSD square root of ``mat``.
        self.sqrt = _frozen((root + root.conj().T) / 2)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def is_bipartite(self) -> bool:
        return self.dim_b > 1

    @cached_property
    def reduced_a(self) -> "DensityMatrix":
        """Reduced state on the A factor (B traced out)."""
        return DensityMatrix(hermlin.partial_trace(self.mat, self.dim_a, self.dim_b, "a"))

    @cached_property
    def reduced_b(self) -> "DensityMatrix":
        """Reduced state on the B factor (A traced out)."""
        return DensityMatrix(hermlin.partial_trace(self.mat, self.dim_a, self.dim_b, "b"))

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, dim_a={self.dim_a}, dim_b={self.dim_b})"


class ProjectiveBasis:
    """An ordered orthonormal basis inducing rank-one projectors.

    ``matrix`` holds the basis vectors as columns; the induced projectors
    |v_k><v_k| are complete (they sum to the identity).
    """

    def __init__(self, vectors):
        if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
            m = np.array(vectors, dtype=complex)
        else:
            m = np.column_stack([np.asarray(v, dtype=complex) for v in vectors])
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError(f"need dim x dim column vectors, got shape {m.shape}")
        if not np.isfinite(m).all():
            raise ValidationError("entries are not all finite")
        gram = m.conj().T @ m
        dev = np.abs(gram - np.eye(m.shape[0])).max()
        if dev > 1e-10:
            raise ValidationError(f"columns not orthonormal: max |G - I| = {dev:.3e}")
        comp = np.abs(m @ m.conj().T - np.eye(m.shape[0])).max()
        if comp > 1e-9:
            raise ValidationError(f"projectors do not sum to identity: {comp:.3e}")
        self.matrix = _frozen(m)

    @classmethod
    def computational(cls, dim: int) -> "ProjectiveBasis":
        return cls(np.eye(dim, dtype=complex))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def vector(self, k: int) -> np.ndarray:
        return self.matrix[:, k]

    def projector(self, k: int) -> np.ndarray:
        v = self.matrix[:, k]
        return np.outer(v, v.conj())

    def projectors(self) -> Iterator[np.ndarray]:
        return (self.projector(k) for k in range(self.dim))

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"ProjectiveBasis(dim={self.dim})"


def _observable_for(rho: DensityMatrix, obs) -> np.ndarray:
    h = hermlin.require_hermitian(obs)
    if h.shape[0] != rho.dim:
        raise DimensionMismatch(f"observable dim {h.shape[0]} != state dim {rho.dim}")
    return h


def _clamped(value: float, floor: float = -1e-12) -> float:
    # Provably nonnegative quantities may dip below zero by roundoff only.
    if value < floor:
        raise ArithmeticError(f"nonnegative quantity came out {value:.3e}")
    return max(0.0, value)


def variance(rho: DensityMatrix, obs) -> float:
    """V(rho, H) = Tr(rho H^2) - Tr(rho H)^2."""
    h = _observable_for(rho, obs)
    mean = hermlin.expectation(rho.mat, h)
    return _clamped(hermlin.expectation(rho.mat, h @ h) - mean * mean)


def skew_information(rho: DensityMatrix, obs) -> float:
    """I(rho, H): the non-commutativity of sqrt(rho) and H.

    Vanishes iff rho and H commute; equals the variance on pure states.
    """
    h = _observable_for(rho, obs)
    q = rho.sqrt
    raw = np.trace(rho.mat @ h @ h).real - np.trace(q @ h @ q @ h).real
    return _clamped(float(raw))


def skew_information_upper(rho: DensityMatrix, obs) -> float:
    """J(rho, H): the anticommutator companion, bounding the variance above."""
    h = _observable_for(rho, obs)
    h0 = h - hermlin.expectation(rho.mat, h) * np.eye(rho.dim)
    q = rho.sqrt
    raw = np.trace(rho.mat @ h0 @ h0).real + np.trace(q @ h0 @ q @ h0).real
    return _clamped(float(raw))


def uncertainty(rho: DensityMatrix, obs) -> float:
    """UN(rho, H) = sqrt(I(rho, H) * J(rho, H))."""
    return float(np.sqrt(skew_information(rho, obs) * skew_information_upper(rho, obs)))


def uncertainty_sum(rho: DensityMatrix, basis: ProjectiveBasis, embed_on_a: bool = False) -> float:
    """Sum of UN over the rank-one projectors of a measurement basis.

    With ``embed_on_a`` the basis lives on the A factor and each projector is
    embedded as P_k (x) I_B before evaluation; otherwise the basis must span
    the full space.
    """
    if embed_on_a:
        if basis.dim != rho.dim_a:
            raise DimensionMismatch(f"basis dim {basis.dim} != dim_a {rho.dim_a}")
        eye_b = np.eye(rho.dim_b)
        return sum(uncertainty(rho, np.kron(p, eye_b)) for p in basis.projectors())
    if basis.dim != rho.dim:
        raise DimensionMismatch(f"basis dim {basis.dim} != state dim {rho.dim}")
    return sum(uncertainty(rho, p) for p in basis.projectors())


def _require_rank1_projector(m, tol: float = 1e-9) -> np.ndarray:
    p = hermlin.as_square_matrix(m)
    if np.abs(p - p.conj().T).max() > tol:
        raise NotProjector("not hermitian")
    if np.abs(p @ p - p).max() > tol:
        raise NotProjector("not idempotent")
    if abs(np.trace(p).real - 1.0) > tol:
        raise NotProjector(f"trace {np.trace(p).real!r} != 1, not rank one")
    return (p + p.conj().T) / 2


def _complementarity(rho_a: DensityMatrix, phi: np.ndarray, psi: np.ndarray) -> tuple[float, bool]:
    num = 0.25 * abs(np.trace(rho_a.mat @ hermlin.commutator(phi, psi))) ** 2
    den = np.sqrt(
        skew_information_upper(rho_a, phi) * skew_information_upper(rho_a, psi)
    )
    if den < DEGENERATE_TOL:
        # Undefined 0/0; returning 0 keeps any enclosing bound conservative.
        return 0.0, True
    return float(num / den), False


def complementarity_term(rho_a: DensityMatrix, phi, psi) -> float:
    """L(phi, psi) = |Tr(rho [phi, psi])|^2 / (4 sqrt(J(phi) J(psi))).

    Both arguments must be rank-one projectors on a single-party state.
    Returns 0 when the denominator is degenerate (below 1e-12).
    """
    if rho_a.is_bipartite:
        raise DimensionMismatch("complementarity_term expects a single-party state")
    p = _require_rank1_projector(phi)
    q = _require_rank1_projector(psi)
    if p.shape[0] != rho_a.dim or q.shape[0] != rho_a.dim:
        raise DimensionMismatch("projector dim differs from state dim")
    return _complementarity(rho_a, p, q)[0]


def complementarity_terms(
    rho_a: DensityMatrix, basis_phi: ProjectiveBasis, basis_psi: ProjectiveBasis
) -> tuple[list[float], bool]:
    """Per-index complementarity terms plus a degenerate-denominator flag.

    The bases are paired index-by-index in their stored order.
    """
    if rho_a.is_bipartite:
        raise DimensionMismatch("complementarity terms expect a single-party state")
    if basis_phi.dim != rho_a.dim or basis_psi.dim != rho_a.dim:
        raise DimensionMismatch("basis dim differs from state dim")
    terms: list[float] = []
    degenerate = False
    for k in range(rho_a.dim):
        val, deg = _complementarity(rho_a, basis_phi.projector(k), basis_psi.projector(k))
        terms.append(val)
        degenerate = degenerate or deg
    return terms, degenerate


def complementarity_sum(
    rho_a: DensityMatrix, basis_phi: ProjectiveBasis, basis_psi: ProjectiveBasis
) -> float:
    """Sum of index-paired complementarity terms (no prefactor applied)."""
    terms, _ = complementarity_terms(rho_a, basis_phi, basis_psi)
    return float(sum(terms))
