"""Discord-like quantum correlation of a bipartite state.

The correlation measure is

    Q(rho_AB) = min over orthonormal bases {v_k} of H_A of
                sum_k [ I(rho_AB, P_k (x) I_B) - I(rho_A, P_k) ],

with P_k = |v_k><v_k| and I the skew information.  Each bracketed term is
nonnegative (skew information never grows under embedding), so Q >= 0, and
Q vanishes exactly on classical-quantum states.

``minimize`` runs a multi-start Nelder-Mead search over a chart of the basis
manifold: Bloch angles (theta, phi) for a qubit A side, and for dim_a = 3 the
columns of exp(iA) with the Hermitian generator A read off a 9-parameter
vector.  Restart r draws its start from the substream (seed, r), so runs are
reproducible; for qubits a coarse 24x24 angle grid picks the best cells as
restart seeds instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg
import scipy.optimize

from .errors import BadParamLength, DimensionMismatch, OutOfRange
from .skewinfo import DensityMatrix, ProjectiveBasis

#: Restart results within this spread count as mutually converged.
AGREEMENT_TOL = 1e-6

__all__ = [
    "MinimizeOptions",
    "MinimizeResult",
    "bloch_basis",
    "basis_from_params",
    "objective",
    "minimize",
]


@dataclass(frozen=True)
class MinimizeOptions:
    """Knobs for the multi-start search; defaults suit dim_a <= 3."""

    restarts: int = 16
    max_evals: int = 4000  # per restart
    tolerance: float = 1e-8  # simplex-size stopping criterion
    seed: int | tuple[int, ...] = 0
    grid_init: bool = True  # coarse angle grid seeding, qubit A side only

    def restart_rng(self, restart: int) -> np.random.Generator:
        """Substream for one restart, derived from (seed, restart)."""
        base = (self.seed,) if isinstance(self.seed, int) else tuple(self.seed)
        return np.random.default_rng((*base, restart))

    def __post_init__(self):
        if self.restarts < 1:
            raise OutOfRange(f"restarts must be >= 1, got {self.restarts}")
        if not self.tolerance > 0:
            raise OutOfRange(f"tolerance must be > 0, got {self.tolerance}")


@dataclass(frozen=True)
class MinimizeResult:
    """Outcome of ``minimize``.

    ``value`` is the best objective found and equals the objective at
    ``argmin``; ``spread`` is max - min over the restart results and
    ``converged`` says they all agreed to 1e-6.  A large spread is a
    diagnostic, not an error.
    """

    value: float
    argmin: ProjectiveBasis
    evaluations: int
    restarts_used: int
    converged: bool
    spread: float
    restart_values: tuple[float, ...] = field(repr=False, default=())


def bloch_basis(theta: float, phi: float) -> ProjectiveBasis:
    """Qubit basis {cos(t/2)|0> + e^{i p} sin(t/2)|1>, orthogonal partner}."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    e = np.exp(1j * phi)
    m = np.array([[c, -np.conj(e) * s], [e * s, c]], dtype=complex)
    return ProjectiveBasis(m)


def _generator_from_params(params: np.ndarray, dim: int) -> np.ndarray:
    a = np.zeros((dim, dim), dtype=complex)
    a[np.diag_indices(dim)] = params[:dim]
    t = dim
    for i in range(dim):
        for j in range(i + 1, dim):
            a[i, j] = params[t] + 1j * params[t + 1]
            a[j, i] = params[t] - 1j * params[t + 1]
            t += 2
    return a


def _params_from_generator(a: np.ndarray) -> np.ndarray:
    dim = a.shape[0]
    params = np.empty(dim * dim)
    params[:dim] = np.diag(a).real
    t = dim
    for i in range(dim):
        for j in range(i + 1, dim):
            params[t] = a[i, j].real
            params[t + 1] = a[i, j].imag
            t += 2
    return params


def _unitary_from_params(params: np.ndarray, dim: int) -> np.ndarray:
    # exp(iA) computed spectrally, so the columns are orthonormal to
    # machine precision.
    a = _generator_from_params(params, dim)
    w, v = np.linalg.eigh(a)
    return (v * np.exp(1j * w)) @ v.conj().T


def basis_from_params(params: Sequence[float], dim: int) -> ProjectiveBasis:
    """General-d chart: the columns of exp(iA) for a Hermitian generator A.

    ``params`` has length d^2: the first d entries fill the diagonal of A,
    then (real, imag) pairs fill the upper triangle row-major.  The chart is
    redundant (phases), which is harmless since only projectors matter.
    """
    p = np.asarray(params, dtype=float)
    if p.shape != (dim * dim,):
        raise BadParamLength(f"need {dim * dim} parameters for dim {dim}, got shape {p.shape}")
    return ProjectiveBasis(_unitary_from_params(p, dim))


# --- objective -------------------------------------------------------------


class _Objective:
    """Precomputed pieces for fast repeated objective evaluations.

    For a rank-one projector P = vv^dag the two skew informations reduce to

        I(rho_AB, P (x) I) = <v|rho_A|v> - Tr(M^2),  M = (v^dag (x) I) sqrt(rho_AB) (v (x) I)
        I(rho_A,  P)       = <v|rho_A|v> - <v|sqrt(rho_A)|v>^2

    which avoids building any dim_a*dim_b operator per evaluation.
    """

    def __init__(self, rho_ab: DensityMatrix):
        self.dim_a = rho_ab.dim_a
        self.sqrt4 = rho_ab.sqrt.reshape(
            rho_ab.dim_a, rho_ab.dim_b, rho_ab.dim_a, rho_ab.dim_b
        )
        reduced = rho_ab.reduced_a
        self.rho_a = reduced.mat
        self.sqrt_a = reduced.sqrt
        self.evaluations = 0

    def columns(self, cols: np.ndarray) -> float:
        self.evaluations += 1
        m = np.einsum("ak,abcd,ck->kbd", cols.conj(), self.sqrt4, cols, optimize=True)
        tr_m2 = np.einsum("kbd,kdb->k", m, m).real
        mean = np.einsum("ak,ab,bk->k", cols.conj(), self.rho_a, cols).real
        root_mean = np.einsum("ak,ab,bk->k", cols.conj(), self.sqrt_a, cols).real
        i_ab = np.maximum(mean - tr_m2, 0.0)
        i_a = np.maximum(mean - root_mean**2, 0.0)
        total = float(np.sum(i_ab - i_a))
        if total < -1e-9:
            raise ArithmeticError(f"embedding monotonicity violated: {total:.3e}")
        return max(0.0, total)

    def bloch(self, angles: np.ndarray) -> float:
        theta, phi = angles
        c, s = np.cos(theta / 2), np.sin(theta / 2)
        e = np.exp(1j * phi)
        cols = np.array([[c, -np.conj(e) * s], [e * s, c]], dtype=complex)
        return self.columns(cols)

    def params(self, p: np.ndarray) -> float:
        return self.columns(_unitary_from_params(p, self.dim_a))


def objective(rho_ab: DensityMatrix, basis: ProjectiveBasis) -> float:
    """The correlation objective for one measurement basis on A.

    Equals sum_k [I(rho_AB, P_k (x) I_B) - I(rho_A, P_k)]; small negative
    roundoff is clamped to 0.
    """
    if basis.dim != rho_ab.dim_a:
        raise DimensionMismatch(f"basis dim {basis.dim} != dim_a {rho_ab.dim_a}")
    return _Objective(rho_ab).columns(basis.matrix)


# --- minimization ----------------------------------------------------------


def _bloch_params_of(basis: ProjectiveBasis) -> np.ndarray:
    v = basis.vector(0)
    theta = 2.0 * np.arctan2(abs(v[1]), abs(v[0]))
    phi = float(np.angle(v[1]) - np.angle(v[0])) % (2.0 * np.pi)
    return np.array([theta, phi])


def _generator_params_of(basis: ProjectiveBasis) -> np.ndarray:
    gen = -1j * scipy.linalg.logm(np.asarray(basis.matrix))
    return _params_from_generator((gen + gen.conj().T) / 2)


def _grid_starts(obj: _Objective, count: int) -> list[np.ndarray]:
    # Cell centers dodge the theta = 0, pi poles where phi is redundant.
    thetas = (np.arange(24) + 0.5) * np.pi / 24
    phis = (np.arange(24) + 0.5) * 2.0 * np.pi / 24
    scored = []
    for t in thetas:
        for p in phis:
            x = np.array([t, p])
            scored.append((obj.bloch(x), x))
    scored.sort(key=lambda pair: pair[0])
    return [x for _, x in scored[:count]]


def minimize(
    rho_ab: DensityMatrix,
    options: MinimizeOptions | None = None,
    extra_starts: Sequence[ProjectiveBasis] = (),
) -> MinimizeResult:
    """Minimize the correlation objective over all bases of the A side.

    Deterministic for a fixed seed.  ``extra_starts`` adds caller-supplied
    bases as additional restart seeds (the result can only improve on them),
    which pins the reported value at or below any witness the caller cares
    about.  Restarts that stop at ``max_evals`` are kept with their best
    value so far; disagreement shows up in ``spread``/``converged`` rather
    than as an error.
    """
    opts = options or MinimizeOptions()
    if rho_ab.dim_a not in (2, 3):
        raise DimensionMismatch(f"minimize supports dim_a in (2, 3), got {rho_ab.dim_a}")
    obj = _Objective(rho_ab)

    if rho_ab.dim_a == 2:
        fun = obj.bloch
        starts = [_bloch_params_of(b) for b in extra_starts]
        if opts.grid_init:
            starts += _grid_starts(obj, opts.restarts)
        else:
            for r in range(opts.restarts):
                rng = opts.restart_rng(r)
                starts.append(np.array([rng.uniform(0.0, np.pi), rng.uniform(0.0, 2.0 * np.pi)]))
    else:
        fun = obj.params
        starts = [_generator_params_of(b) for b in extra_starts]
        starts.append(np.zeros(9))  # computational basis
        for r in range(1, opts.restarts):
            starts.append(opts.restart_rng(r).uniform(-np.pi, np.pi, size=9))

    results = []
    for x0 in starts:
        res = scipy.optimize.minimize(
            fun,
            x0,
            method="Nelder-Mead",
            options={
                "maxfev": opts.max_evals,
                "xatol": opts.tolerance,
                "fatol": float("inf"),
                "disp": False,
            },
        )
        results.append((float(res.fun), res.x))

    values = [v for v, _ in results]
    best_index = int(np.argmin(values))  # ties resolve to the lowest index
    best_value, best_x = results[best_index]
    spread = float(max(values) - min(values))
    if rho_ab.dim_a == 2:
        argmin = bloch_basis(*best_x)
    else:
        argmin = basis_from_params(best_x, 3)
    return MinimizeResult(
        value=best_value,
        argmin=argmin,
        evaluations=obj.evaluations,
        restarts_used=len(starts),
        converged=spread <= AGREEMENT_TOL,
        spread=spread,
        restart_values=tuple(values),
    )
