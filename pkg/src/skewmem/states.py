"""State and observable factories, Pauli matrices, and state-file I/O.

Randomness contract
-------------------
All random factories draw from numpy's PCG64 bit generator, seeded through
``SeedSequence`` so that an integer or a tuple of integers (for derived
substreams) selects a platform-independent stream.  Complex Gaussians are
produced by an explicit Box-Muller transform on that uniform stream: for n
entries we draw a block of n uniforms u (mapped to (0, 1] as 1 - u) for the
radii, then a block of n uniforms for the angles, and fill row-major with
sqrt(-2 ln u1) * exp(2 pi i u2).  The call order is part of the contract;
fixtures derived from seeds stay stable bit-for-bit.
"""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from . import hermlin
from .errors import BadProbabilities, OutOfRange, ParseError, ValidationError
from .skewinfo import DensityMatrix, ProjectiveBasis

Seed = int | tuple[int, ...]

__all__ = [
    "pauli",
    "pauli_eigenbasis",
    "singlet",
    "werner",
    "cq_state",
    "random_density",
    "random_pure",
    "random_hermitian",
    "random_basis",
    "save_state",
    "load_state",
    "save_observable",
    "load_observable",
]

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_SQ2 = 1.0 / np.sqrt(2.0)

_PAULI_BASIS = {
    "x": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "y": np.array([[_SQ2, _SQ2], [1j * _SQ2, -1j * _SQ2]], dtype=complex),
    "z": np.eye(2, dtype=complex),
}


def pauli(axis: str) -> np.ndarray:
    """The Pauli matrix for axis 'x', 'y' or 'z'."""
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise OutOfRange(f"axis must be one of x, y, z; got {axis!r}") from None


def pauli_eigenbasis(axis: str) -> ProjectiveBasis:
    """Eigenbasis of a Pauli matrix in the conventional (+, -) order."""
    if axis not in _PAULI_BASIS:
        raise OutOfRange(f"axis must be one of x, y, z; got {axis!r}")
    return ProjectiveBasis(_PAULI_BASIS[axis])


def _swap4() -> np.ndarray:
    s = np.zeros((4, 4), dtype=complex)
    for k in range(2):
        for l in range(2):
            s[k * 2 + l, l * 2 + k] = 1.0
    return s


def singlet() -> DensityMatrix:
    """The two-qubit singlet (|01> - |10>)(<01| - <10|)/2."""
    v = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) * _SQ2
    return DensityMatrix(np.outer(v, v.conj()), 2, 2)


def werner(p: float) -> DensityMatrix:
    """Two-qubit Werner state (2-p)/6 I4 + (2p-1)/6 SWAP for p in [-1, 1].

    Spectrum {(1+p)/6 x3, (1-p)/2}; maximally mixed at p = 1/2, the singlet
    at p = -1; both reduced states are I/2 for every p.
    """
    if not -1.0 <= p <= 1.0:
        raise OutOfRange(f"werner parameter p = {p!r} outside [-1, 1]")
    m = (2.0 - p) / 6.0 * np.eye(4, dtype=complex) + (2.0 * p - 1.0) / 6.0 * _swap4()
    return DensityMatrix(m, 2, 2)


def cq_state(probs: Sequence[float], blocks: Sequence[DensityMatrix]) -> DensityMatrix:
    """Classical-quantum state sum_k p_k |k><k| (x) rho_k.

    These are exactly the bipartite states with zero correlation measure Q.
    """
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or len(p) != len(blocks):
        raise BadProbabilities(f"{len(p)} probabilities for {len(blocks)} blocks")
    if (p < 0).any():
        raise BadProbabilities(f"negative probability {p.min()!r}")
    if abs(p.sum() - 1.0) > 1e-10:
        raise BadProbabilities(f"probabilities sum to {p.sum()!r}, not 1")
    dims = {b.dim for b in blocks}
    if len(dims) != 1:
        raise BadProbabilities(f"blocks have mixed dims {sorted(dims)}")
    dim_a, dim_b = len(p), dims.pop()
    m = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=complex)
    for k, (pk, block) in enumerate(zip(p, blocks)):
        m[k * dim_b : (k + 1) * dim_b, k * dim_b : (k + 1) * dim_b] = pk * block.mat
    return DensityMatrix(m, dim_a, dim_b)


def _rng(seed: Seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def _complex_gaussians(rng: np.random.Generator, n: int) -> np.ndarray:
    # Box-Muller on the uniform stream: radii block first, then angles block.
    u1 = 1.0 - rng.random(n)  # (0, 1], keeps log finite
    u2 = rng.random(n)
    r = np.sqrt(-2.0 * np.log(u1))
    return r * np.cos(2.0 * np.pi * u2) + 1j * r * np.sin(2.0 * np.pi * u2)


def random_density(
    dim: int, seed: Seed, dim_a: int | None = None, dim_b: int | None = None
) -> DensityMatrix:
    """Random density matrix G G^dag / Tr(G G^dag), G complex Gaussian.

    This induces the Hilbert-Schmidt measure; deterministic per (dim, seed).
    Pass ``dim_a``/``dim_b`` to mark the state bipartite.
    """
    if dim < 2:
        raise OutOfRange(f"dim must be >= 2, got {dim}")
    g = _complex_gaussians(_rng(seed), dim * dim).reshape(dim, dim)
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, dim_a, dim_b)


def random_pure(
    dim: int, seed: Seed, dim_a: int | None = None, dim_b: int | None = None
) -> DensityMatrix:
    """Random pure state from a normalized complex Gaussian vector."""
    if dim < 2:
        raise OutOfRange(f"dim must be >= 2, got {dim}")
    v = _complex_gaussians(_rng(seed), dim)
    v /= np.linalg.norm(v)
    return DensityMatrix(np.outer(v, v.conj()), dim_a, dim_b)


def random_hermitian(dim: int, seed: Seed) -> np.ndarray:
    """Random Hermitian observable (G + G^dag)/2, G complex Gaussian."""
    g = _complex_gaussians(_rng(seed), dim * dim).reshape(dim, dim)
    return (g + g.conj().T) / 2


def random_basis(dim: int, seed: Seed) -> ProjectiveBasis:
    """Random orthonormal basis: eigenvectors of a random Hermitian matrix."""
    return ProjectiveBasis(hermlin.herm_eig(random_hermitian(dim, seed)).vectors)


# --- state-file I/O -------------------------------------------------------
#
# A state file is a single JSON document
#   {"dim_a": 2, "dim_b": 2, "re": [[...], ...], "im": [[...], ...]}
# with re/im the real and imaginary parts as row-major nested lists (outer
# index = row).  Floats are serialized with Python's shortest round-trip
# representation, so load(save(rho)) reproduces every entry exactly.
# Observable files use the same layout plus "hermitian_only": true and skip
# the density-matrix validation (no trace or positivity constraint).


def _matrix_to_doc(m: np.ndarray, dim_a: int, dim_b: int) -> dict:
    return {
        "dim_a": dim_a,
        "dim_b": dim_b,
        "re": [[float(x) for x in row] for row in m.real],
        "im": [[float(x) for x in row] for row in m.imag],
    }


def save_state(rho: DensityMatrix, path) -> None:
    """Write a density matrix as a JSON state file."""
    doc = _matrix_to_doc(rho.mat, rho.dim_a, rho.dim_b)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def save_observable(obs: np.ndarray, path, dim_a: int | None = None, dim_b: int = 1) -> None:
    """Write a Hermitian observable using the state-file layout."""
    h = hermlin.require_hermitian(obs)
    doc = _matrix_to_doc(h, dim_a if dim_a is not None else h.shape[0], dim_b)
    doc["hermitian_only"] = True
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def _read_doc(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON at line {exc.lineno} col {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top-level value must be an object")
    return doc


def _doc_to_matrix(doc: dict, path) -> tuple[np.ndarray, int, int]:
    for field in ("dim_a", "dim_b", "re", "im"):
        if field not in doc:
            raise ParseError(f"{path}: missing field {field!r}")
    try:
        dim_a, dim_b = int(doc["dim_a"]), int(doc["dim_b"])
    except (TypeError, ValueError):
        raise ParseError(f"{path}: dim_a/dim_b must be integers") from None
    if dim_a < 1 or dim_b < 1:
        raise ParseError(f"{path}: dims must be positive, got {dim_a}x{dim_b}")
    n = dim_a * dim_b
    parts = []
    for field in ("re", "im"):
        try:
            part = np.asarray(doc[field], dtype=float)
        except (TypeError, ValueError):
            raise ParseError(f"{path}: field {field!r} is not a numeric matrix") from None
        if part.shape != (n, n):
            raise ParseError(f"{path}: field {field!r} has shape {part.shape}, expected ({n}, {n})")
        parts.append(part)
    return parts[0] + 1j * parts[1], dim_a, dim_b


def load_state(path) -> DensityMatrix:
    """Read and validate a density matrix from a JSON state file.

    Raises ``ParseError`` with field diagnostics on malformed documents and
    ``ValidationError`` (naming the invariant) on invalid states.
    """
    doc = _read_doc(path)
    if doc.get("hermitian_only"):
        raise ParseError(f"{path}: file is marked hermitian_only (an observable, not a state)")
    m, dim_a, dim_b = _doc_to_matrix(doc, path)
    try:
        return DensityMatrix(m, dim_a, dim_b)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def load_observable(path) -> np.ndarray:
    """Read a Hermitian observable from a JSON observable file."""
    doc = _read_doc(path)
    m, _, _ = _doc_to_matrix(doc, path)
    try:
        return hermlin.require_hermitian(m)
    except Exception as exc:
        raise ValidationError(f"{path}: {exc}") from exc
