"""Command-line front end.

Subcommands: ``werner-sweep`` (CSV/SVG curve reproduction), ``check``
(single-state inequality reports), ``qcorr`` (correlation minimization) and
``random-verify`` (bulk seeded fuzzing of both inequalities).

Exit codes: 0 success/verified, 1 an inequality-violation finding, 2 usage
or input-validation error, 3 I/O error.  Identical invocations with the same
seed produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import hermlin, qcorr, relations, states
from .errors import SkewmemError
from .skewinfo import DensityMatrix, ProjectiveBasis

CSV_HEADER = (
    "p,thm_lhs_num,thm_lhs_closed,thm_rhs_num,thm_rhs_closed,"
    "luo_lhs_closed,luo_rhs_closed,ent_lhs_num,ent_lhs_closed"
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

#: Slacks below this count as violations for exit-code purposes.
SLACK_TOL = 1e-6

__all__ = ["main", "build_parser", "CSV_HEADER"]


def _fmt(x: float) -> str:
    # 12 significant digits, shortest form; stable across runs.
    return format(float(x), ".12g")


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewmem",
        description="Skew-information uncertainty relations with quantum memory.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("werner-sweep", help="curve comparison over the Werner family")
    sweep.add_argument("--p-min", type=float, default=-1.0)
    sweep.add_argument("--p-max", type=float, default=1.0)
    sweep.add_argument("--steps", type=int, default=201)
    sweep.add_argument("--out", required=True, help="CSV output path")
    sweep.add_argument("--svg", default=None, help="optional SVG chart path")
    sweep.add_argument("--q-restarts", type=int, default=8)
    sweep.add_argument("--seed", type=int, default=42)
    sweep.add_argument("--jobs", type=int, default=None)

    check = sub.add_parser("check", help="inequality reports for one state")
    check.add_argument("--state", required=True)
    check.add_argument("--obs-a", default=None, help="observable file on A")
    check.add_argument("--obs-b", default=None, help="second observable file on A")
    check.add_argument("--bases", choices=["zx"], default=None,
                       help="shorthand: sigma_z/sigma_x eigenbases on A")
    check.add_argument("--q-restarts", type=int, default=16)
    check.add_argument("--seed", type=int, default=42)

    qc = sub.add_parser("qcorr", help="minimize the correlation measure")
    qc.add_argument("--state", required=True)
    qc.add_argument("--restarts", type=int, default=16)
    qc.add_argument("--tol", type=float, default=1e-8)
    qc.add_argument("--seed", type=int, default=42)

    verify = sub.add_parser("random-verify", help="seeded fuzzing of both inequalities")
    verify.add_argument("--dim-a", type=int, required=True)
    verify.add_argument("--dim-b", type=int, required=True)
    verify.add_argument("--samples", type=int, required=True)
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--jobs", type=int, default=None)

    return parser


def _default_jobs(value: int | None) -> int:
    if value is None:
        return os.cpu_count() or 1
    return value


# --- werner-sweep -----------------------------------------------------------


def _csv_row(row: relations.SweepRow) -> str:
    c = row.closed
    return ",".join(
        _fmt(v)
        for v in (
            row.p,
            row.thm_lhs_num,
            c.thm_lhs,
            row.thm_rhs_num,
            c.thm_rhs,
            c.luo_lhs,
            c.luo_rhs,
            row.ent_lhs_num,
            c.ent_lhs,
        )
    )


_SVG_SERIES = (
    # (label, value getter, color, dashed)
    ("thm_lhs_closed", lambda r: r.closed.thm_lhs, "#1f77b4", False),
    ("thm_lhs_num", lambda r: r.thm_lhs_num, "#1f77b4", True),
    ("thm_rhs_closed", lambda r: r.closed.thm_rhs, "#d62728", False),
    ("thm_rhs_num", lambda r: r.thm_rhs_num, "#d62728", True),
    ("luo_lhs_closed", lambda r: r.closed.luo_lhs, "#2ca02c", False),
    ("luo_rhs_closed", lambda r: r.closed.luo_rhs, "#9467bd", False),
    ("ent_lhs_closed", lambda r: r.closed.ent_lhs, "#ff7f0e", False),
    ("ent_lhs_num", lambda r: r.ent_lhs_num, "#ff7f0e", True),
)


def _write_svg(path: str, rows: list[relations.SweepRow]) -> None:
    left, right, top, bottom = 70.0, 780.0, 20.0, 560.0
    ps = [r.p for r in rows]
    p_lo, p_hi = min(ps), max(ps)
    all_vals = [g(r) for _, g, _, _ in _SVG_SERIES for r in rows]
    v_lo, v_hi = min(0.0, min(all_vals)), max(all_vals) or 1.0

    def x(p: float) -> float:
        return left + (p - p_lo) / (p_hi - p_lo) * (right - left)

    def y(v: float) -> float:
        return bottom - (v - v_lo) / (v_hi - v_lo) * (bottom - top)

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 600">',
        '<rect width="800" height="600" fill="white"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>',
        f'<text x="{left}" y="{bottom + 18:.1f}" font-size="12">p = {_fmt(p_lo)}</text>',
        f'<text x="{right - 60}" y="{bottom + 18:.1f}" font-size="12">p = {_fmt(p_hi)}</text>',
        f'<text x="4" y="{y(v_hi):.1f}" font-size="12">{_fmt(v_hi)}</text>',
        f'<text x="4" y="{y(max(0.0, v_lo)):.1f}" font-size="12">0</text>',
    ]
    for idx, (label, getter, color, dashed) in enumerate(_SVG_SERIES):
        pts = " ".join(f"{x(r.p):.2f},{y(getter(r)):.2f}" for r in rows)
        dash = ' stroke-dasharray="6 4"' if dashed else ""
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{pts}"/>'
        )
        ly = top + 16 + 16 * idx
        parts.append(
            f'<line x1="600" y1="{ly - 4}" x2="630" y2="{ly - 4}" stroke="{color}"'
            f' stroke-width="1.5"{dash}/>'
        )
        parts.append(f'<text x="636" y="{ly}" font-size="12">{label}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


def _cmd_werner_sweep(args) -> int:
    if args.steps < 2:
        return _fail_usage("--steps must be >= 2")
    if not (-1.0 <= args.p_min < args.p_max <= 1.0):
        return _fail_usage("need -1 <= --p-min < --p-max <= 1")
    if args.q_restarts < 1:
        return _fail_usage("--q-restarts must be >= 1")
    opts = qcorr.MinimizeOptions(restarts=args.q_restarts, seed=args.seed)
    rows = relations.werner_sweep(
        args.p_min, args.p_max, args.steps, opts, jobs=_default_jobs(args.jobs)
    )
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(_csv_row(row) + "\n")
    if args.svg:
        _write_svg(args.svg, rows)
    print(
        "max |num - closed|: "
        f"thm_lhs={_fmt(max(abs(r.delta_thm_lhs) for r in rows))} "
        f"thm_rhs={_fmt(max(abs(r.delta_thm_rhs) for r in rows))} "
        f"ent_lhs={_fmt(max(abs(r.delta_ent_lhs) for r in rows))}",
        file=sys.stderr,
    )
    return EXIT_OK


# --- check ------------------------------------------------------------------


def _check_inputs(args, rho: DensityMatrix):
    if args.bases is not None:
        if args.obs_a or args.obs_b:
            raise SkewmemError("--bases and --obs-a/--obs-b are mutually exclusive")
        if rho.dim_a != 2:
            raise SkewmemError("--bases zx needs a qubit A side")
        obs_a, obs_b = states.pauli("z"), states.pauli("x")
        basis_phi = states.pauli_eigenbasis("z")
        basis_psi = states.pauli_eigenbasis("x")
    else:
        if not (args.obs_a and args.obs_b):
            raise SkewmemError("provide either --bases zx or both --obs-a and --obs-b")
        obs_a = states.load_observable(args.obs_a)
        obs_b = states.load_observable(args.obs_b)
        if obs_a.shape[0] != rho.dim_a or obs_b.shape[0] != rho.dim_a:
            raise SkewmemError(
                f"observables must act on A (dim {rho.dim_a}); "
                f"got dims {obs_a.shape[0]} and {obs_b.shape[0]}"
            )
        basis_phi = ProjectiveBasis(hermlin.herm_eig(obs_a).vectors)
        basis_psi = ProjectiveBasis(hermlin.herm_eig(obs_b).vectors)
    eye_b = np.eye(rho.dim_b)
    return np.kron(obs_a, eye_b), np.kron(obs_b, eye_b), basis_phi, basis_psi


def _cmd_check(args) -> int:
    rho = states.load_state(args.state)
    obs_r, obs_s, basis_phi, basis_psi = _check_inputs(args, rho)
    eq1 = relations.check_luo(rho, obs_r, obs_s)
    opts = qcorr.MinimizeOptions(restarts=args.q_restarts, seed=args.seed)
    eq3 = relations.check_memory_relation(rho, basis_phi, basis_psi, opts)

    print(f"state: dim_a={rho.dim_a} dim_b={rho.dim_b}")
    print(f"product bound: lhs={_fmt(eq1.lhs)} rhs={_fmt(eq1.rhs)} slack={_fmt(eq1.slack)}")
    for key in ("un_r", "un_s", "comm_abs"):
        print(f"  {key}={_fmt(eq1.terms[key])}")
    print(f"memory bound:  lhs={_fmt(eq3.lhs)} rhs={_fmt(eq3.rhs)} slack={_fmt(eq3.slack)}")
    for key, val in eq3.terms.items():
        print(f"  {key}={_fmt(val)}")
    print(f"  degenerate={eq3.degenerate}")
    print(f"SLACK_EQ1={_fmt(eq1.slack)} SLACK_EQ3={_fmt(eq3.slack)}")
    if eq1.slack < -SLACK_TOL or eq3.slack < -SLACK_TOL:
        return EXIT_VIOLATION
    return EXIT_OK


# --- qcorr ------------------------------------------------------------------


def _cmd_qcorr(args) -> int:
    if args.restarts < 1:
        return _fail_usage("--restarts must be >= 1")
    if not args.tol > 0:
        return _fail_usage("--tol must be > 0")
    rho = states.load_state(args.state)
    opts = qcorr.MinimizeOptions(restarts=args.restarts, tolerance=args.tol, seed=args.seed)
    res = qcorr.minimize(rho, opts)
    print(
        f"Q={_fmt(res.value)} converged={res.converged} spread={_fmt(res.spread)} "
        f"evaluations={res.evaluations} restarts={res.restarts_used}"
    )
    print("argmin basis vectors:")
    for k in range(res.argmin.dim):
        entries = ", ".join(
            f"{v.real:+.9f}{v.imag:+.9f}j" for v in res.argmin.vector(k)
        )
        print(f"  v{k} = [{entries}]")
    return EXIT_OK


# --- random-verify ----------------------------------------------------------


def _verify_sample(task: tuple[int, int, int, int]) -> tuple[float, float]:
    index, dim_a, dim_b, seed = task
    dim = dim_a * dim_b
    rho = states.random_density(dim, (seed, index, 0), dim_a, dim_b)
    obs_r = states.random_hermitian(dim, (seed, index, 1))
    obs_s = states.random_hermitian(dim, (seed, index, 2))
    eq1 = relations.check_luo(rho, obs_r, obs_s)
    basis_phi = states.random_basis(dim_a, (seed, index, 3))
    basis_psi = states.random_basis(dim_a, (seed, index, 4))
    opts = qcorr.MinimizeOptions(restarts=8, seed=(seed, index, 5))
    eq3 = relations.check_memory_relation(rho, basis_phi, basis_psi, opts)
    return eq1.slack, eq3.slack


def _cmd_random_verify(args) -> int:
    if args.dim_a not in (2, 3):
        return _fail_usage("--dim-a must be 2 or 3 (correlation minimizer limit)")
    if args.dim_b not in (2, 3):
        return _fail_usage("--dim-b must be 2 or 3")
    if args.samples < 1:
        return _fail_usage("--samples must be >= 1")
    tasks = [(i, args.dim_a, args.dim_b, args.seed) for i in range(args.samples)]
    jobs = _default_jobs(args.jobs)
    if jobs > 1 and args.samples > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, args.samples)) as pool:
            slacks = list(pool.map(_verify_sample, tasks))
    else:
        slacks = [_verify_sample(t) for t in tasks]

    worst1 = min(s for s, _ in slacks)
    worst2 = min(s for _, s in slacks)
    bad1 = sum(1 for s, _ in slacks if s < -SLACK_TOL)
    bad2 = sum(1 for _, s in slacks if s < -SLACK_TOL)
    print(f"samples={args.samples} dim_a={args.dim_a} dim_b={args.dim_b} seed={args.seed}")
    print(f"eq1_worst_slack={_fmt(worst1)} eq1_violations={bad1}")
    print(f"eq3_worst_slack={_fmt(worst2)} eq3_violations={bad2}")
    return EXIT_OK if bad1 == 0 and bad2 == 0 else EXIT_VIOLATION


# --- entry point ------------------------------------------------------------


_HANDLERS = {
    "werner-sweep": _cmd_werner_sweep,
    "check": _cmd_check,
    "qcorr": _cmd_qcorr,
    "random-verify": _cmd_random_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except SkewmemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
