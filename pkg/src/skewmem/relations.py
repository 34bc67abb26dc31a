"""Uncertainty-relation checkers, entropies, and the Werner-state curves.

Two inequalities are verified numerically:

* the product bound  UN(rho, R) * UN(rho, S) >= |Tr(rho [R, S])|^2 / 4
  (``check_luo``), and
* the memory-assisted sum bound for a bipartite state rho_AB measured on A
  in two bases {phi_k}, {psi_k} (``check_memory_relation``):

      UN(rho_AB)_{phi (x) I} + UN(rho_AB)_{psi (x) I}
          >= sum_k 2 L(phi_k, psi_k) + 2 Q(rho_AB),

  where L is the complementarity term on the reduced state and Q the
  minimized correlation from :mod:`skewmem.qcorr`.

A violation is a report outcome (negative slack), never an exception: the
checkers measure, the caller judges.  Entropies are in bits throughout.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import hermlin, qcorr
from .errors import DimensionMismatch, OutOfRange
from .skewinfo import (
    DensityMatrix,
    ProjectiveBasis,
    complementarity_terms,
    skew_information,
    skew_information_upper,
    uncertainty,
)
from .states import pauli_eigenbasis, werner

__all__ = [
    "RelationReport",
    "WernerCurves",
    "SweepRow",
    "check_luo",
    "check_memory_relation",
    "von_neumann_entropy",
    "post_measurement",
    "measured_conditional_entropy",
    "overlap_c",
    "berta_bound",
    "werner_closed_forms",
    "werner_sweep",
]


@dataclass(frozen=True)
class RelationReport:
    """LHS/RHS of one inequality check plus a per-term breakdown.

    ``slack`` is stored as exactly ``lhs - rhs``; ``degenerate`` flags a
    guarded 0/0 complementarity denominator somewhere in the breakdown.
    """

    lhs: float
    rhs: float
    slack: float
    terms: dict[str, float]
    degenerate: bool = False


def _report(lhs: float, rhs: float, terms: dict[str, float], degenerate: bool = False) -> RelationReport:
    return RelationReport(lhs=lhs, rhs=rhs, slack=lhs - rhs, terms=terms, degenerate=degenerate)


def check_luo(rho: DensityMatrix, obs_r, obs_s) -> RelationReport:
    """Product bound: UN(R) UN(S) vs |Tr(rho [R, S])|^2 / 4."""
    r = hermlin.require_hermitian(obs_r)
    s = hermlin.require_hermitian(obs_s)
    un_r = uncertainty(rho, r)
    un_s = uncertainty(rho, s)
    comm_abs = abs(np.trace(rho.mat @ hermlin.commutator(r, s)))
    terms = {
        "un_r": un_r,
        "un_s": un_s,
        "i_r": skew_information(rho, r),
        "j_r": skew_information_upper(rho, r),
        "i_s": skew_information(rho, s),
        "j_s": skew_information_upper(rho, s),
        "comm_abs": float(comm_abs),
    }
    return _report(un_r * un_s, 0.25 * float(comm_abs) ** 2, terms)


def check_memory_relation(
    rho_ab: DensityMatrix,
    basis_phi: ProjectiveBasis,
    basis_psi: ProjectiveBasis,
    options: qcorr.MinimizeOptions | None = None,
) -> RelationReport:
    """Memory-assisted sum bound for two measurement bases on A.

    The correlation minimizer is seeded with both measured bases, so its
    value never exceeds either basis objective and the reported bound is
    safe against optimizer misses.
    """
    if basis_phi.dim != rho_ab.dim_a or basis_psi.dim != rho_ab.dim_a:
        raise DimensionMismatch("measurement bases must live on the A side")
    eye_b = np.eye(rho_ab.dim_b)
    terms: dict[str, float] = {}
    lhs = 0.0
    for name, basis in (("phi", basis_phi), ("psi", basis_psi)):
        for k in range(basis.dim):
            un_k = uncertainty(rho_ab, np.kron(basis.projector(k), eye_b))
            terms[f"un_{name}_{k}"] = un_k
            lhs += un_k
    l_vals, degenerate = complementarity_terms(rho_ab.reduced_a, basis_phi, basis_psi)
    l_sum = float(sum(l_vals))
    qres = qcorr.minimize(rho_ab, options, extra_starts=(basis_phi, basis_psi))
    terms["l_sum"] = l_sum
    terms["q"] = qres.value
    terms["q_spread"] = qres.spread
    return _report(lhs, 2.0 * l_sum + 2.0 * qres.value, terms, degenerate)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -sum lambda log2 lambda, eigenvalues below 1e-15 dropped."""
    lams = rho.eigenvalues[rho.eigenvalues > 1e-15]
    return float(-np.sum(lams * np.log2(lams)))


def post_measurement(rho_ab: DensityMatrix, basis: ProjectiveBasis) -> DensityMatrix:
    """Dephase the A side in a measurement basis: sum_k (P_k (x) I) rho (P_k (x) I)."""
    if basis.dim != rho_ab.dim_a:
        raise DimensionMismatch(f"basis dim {basis.dim} != dim_a {rho_ab.dim_a}")
    eye_b = np.eye(rho_ab.dim_b)
    out = np.zeros_like(rho_ab.mat)
    for p in basis.projectors():
        pk = np.kron(p, eye_b)
        out += pk @ rho_ab.mat @ pk
    return DensityMatrix(out, rho_ab.dim_a, rho_ab.dim_b)


def measured_conditional_entropy(rho_ab: DensityMatrix, basis: ProjectiveBasis) -> float:
    """H(outcome | B) in bits: S(dephased rho_AB) - S(rho_B)."""
    return von_neumann_entropy(post_measurement(rho_ab, basis)) - von_neumann_entropy(
        rho_ab.reduced_b
    )


def overlap_c(basis_phi: ProjectiveBasis, basis_psi: ProjectiveBasis) -> float:
    """Largest squared overlap c = max_{j,k} |<phi_j|psi_k>|^2."""
    if basis_phi.dim != basis_psi.dim:
        raise DimensionMismatch("bases have different dims")
    return float(np.max(np.abs(basis_phi.matrix.conj().T @ basis_psi.matrix) ** 2))


def berta_bound(rho_ab: DensityMatrix, basis_phi: ProjectiveBasis, basis_psi: ProjectiveBasis) -> float:
    """Entropic memory bound log2(1/c) + S(rho_AB) - S(rho_B), in bits."""
    c = overlap_c(basis_phi, basis_psi)
    return float(
        np.log2(1.0 / c) + von_neumann_entropy(rho_ab) - von_neumann_entropy(rho_ab.reduced_b)
    )


# --- Werner-state closed forms and sweep ------------------------------------


@dataclass(frozen=True)
class WernerCurves:
    """Closed-form curve values for the Werner state at one p."""

    p: float
    thm_lhs: float
    thm_rhs: float
    luo_lhs: float
    luo_rhs: float
    ent_lhs: float


def werner_closed_forms(p: float) -> WernerCurves:
    """All five Werner comparison curves at a single p in [-1, 1].

    With s = sqrt(3 - 3 p^2):
      thm_lhs = sqrt(5 - 2 s - 2 p (1 - p + s)) / 3
      thm_rhs = (2 - p - s) / 3
      luo_lhs = (2 - p - s)(4 + p + s) / 9,  luo_rhs = 0
      ent_lhs = -2(2-p)/3 log2((2-p)/6) - 2(1+p)/3 log2((1+p)/6) - 2
    Radicands are clamped at zero against roundoff (they vanish at p = 1/2).
    """
    if not -1.0 <= p <= 1.0:
        raise OutOfRange(f"p = {p!r} outside [-1, 1]")
    s = math.sqrt(max(0.0, 3.0 - 3.0 * p * p))
    thm_lhs = math.sqrt(max(0.0, 5.0 - 2.0 * s - 2.0 * p * (1.0 - p + s))) / 3.0
    thm_rhs = (2.0 - p - s) / 3.0
    luo_lhs = (2.0 - p - s) * (4.0 + p + s) / 9.0

    def nlog2(x: float) -> float:
        return x * math.log2(x) if x > 0.0 else 0.0

    ent_lhs = -4.0 * (nlog2((2.0 - p) / 6.0) + nlog2((1.0 + p) / 6.0)) - 2.0
    return WernerCurves(p=p, thm_lhs=thm_lhs, thm_rhs=thm_rhs, luo_lhs=luo_lhs, luo_rhs=0.0, ent_lhs=ent_lhs)


@dataclass(frozen=True)
class SweepRow:
    """Numeric and closed-form curve values at one Werner grid point."""

    p: float
    thm_lhs_num: float
    thm_rhs_num: float
    ent_lhs_num: float
    l_sum_num: float
    q_value: float
    closed: WernerCurves

    @property
    def delta_thm_lhs(self) -> float:
        return self.thm_lhs_num - self.closed.thm_lhs

    @property
    def delta_thm_rhs(self) -> float:
        return self.thm_rhs_num - self.closed.thm_rhs

    @property
    def delta_ent_lhs(self) -> float:
        return self.ent_lhs_num - self.closed.ent_lhs


def _sweep_row(p: float, options: qcorr.MinimizeOptions) -> SweepRow:
    rho = werner(p)
    phi = pauli_eigenbasis("z")
    psi = pauli_eigenbasis("x")
    rep = check_memory_relation(rho, phi, psi, options)
    ent_num = measured_conditional_entropy(rho, phi) + measured_conditional_entropy(rho, psi)
    return SweepRow(
        p=float(p),
        thm_lhs_num=rep.lhs,
        thm_rhs_num=rep.rhs,
        ent_lhs_num=ent_num,
        l_sum_num=rep.terms["l_sum"],
        q_value=rep.terms["q"],
        closed=werner_closed_forms(p),
    )


def werner_sweep(
    p_min: float,
    p_max: float,
    steps: int,
    options: qcorr.MinimizeOptions | None = None,
    jobs: int = 1,
) -> list[SweepRow]:
    """Evaluate all curves on a p grid; rows come back ordered by p ascending.

    Grid points are independent, so ``jobs > 1`` fans them out over a process
    pool; assembly order is by index either way.
    """
    if not (-1.0 <= p_min < p_max <= 1.0):
        raise OutOfRange(f"need -1 <= p_min < p_max <= 1, got [{p_min}, {p_max}]")
    if steps < 2:
        raise OutOfRange(f"steps must be >= 2, got {steps}")
    opts = options or qcorr.MinimizeOptions(restarts=8)
    grid = np.linspace(p_min, p_max, steps)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, steps)) as pool:
            return list(pool.map(_sweep_row, grid, [opts] * steps))
    return [_sweep_row(p, opts) for p in grid]
