"""Command-line front end.

Subcommands
-----------
``dnlslab run <config.json>``
    Execute the experiment described by a JSON config and print its
    summary as ``key=value`` lines.
``dnlslab verify-constants [--L <real>] [--N <int>]``
    Sample the ground state W on a periodic grid and check the table of
    closed-form constants attached to it (norms, action, constraint,
    norm ratio, inequality deficit, the critical cubic's double root,
    and the concentration-scale normalization).  One line per identity;
    any FAIL line makes the command exit 2.
``dnlslab groundstate [--method shoot|minimize|both]``
    Run the ground-state cross-validation experiment on the default box
    and print the resulting table.
``dnlslab fit <field-file> [--mode phase-shift|full]``
    Fit a stored field against the solitary-wave family and print one
    modulation CSV row.  ``phase-shift`` measures the phase/translation
    distance of the moving-frame field to the fixed profile W;
    ``full`` fits phase, translation, and scale along the
    time-dependent family (u- or v-gauge records only).

Exit codes: 0 success, 2 precondition or verification failure,
3 integrator abort.  The environment variable ``DNLSLAB_OUT`` moves the
output root for artifact-producing subcommands.
"""

from __future__ import annotations

import argparse
import math
import sys
from collections.abc import Sequence

from .experiments import (
    ExperimentConfig,
    PreconditionError,
    load_config,
    run_experiment,
    run_groundstate_verify,
)
from .fieldio import read_field
from .functionals import (
    C_GN_POW_MINUS18,
    F_SQUARED_AT_W,
    W_MASS,
    action_S,
    constraint_K,
    critical_cubic,
    gn_deficit,
    ratio_f,
)
from .gauge import gauge_u_to_v, gauge_v_to_u, v_to_w
from .grid import Grid, lp_norm, make_grid
from .integrator import blowup_scale
from .modulation import CSV_HEADER as FIT_CSV_HEADER
from .modulation import fit_full_orbit, fit_phase_shift
from .solitons import ground_state_W


def _cmd_run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    result = run_experiment(config)
    print(f"out_dir={result.out_dir}")
    for key, value in result.summary.items():
        print(f"{key}={value}")
    if result.terminated != "completed":
        print(f"integrator aborted: {result.terminated}", file=sys.stderr)
        return 3
    return 0


def _constant_rows(grid: Grid) -> list[tuple[str, float, float, float]]:
    """(name, measured, expected, tolerance) rows for the W constant table.

    Expected values are the whole-line constants; tolerances absorb the
    box-truncation tails of the slowly decaying profile (the squared
    profile decays like 1/x^2, so its box mass is short by ~8/L, while
    the quartic/sextic/gradient integrals converge like 1/L^3 or
    faster).
    """
    W = ground_state_W(grid)
    L = grid.L
    mass = lp_norm(grid, W, 2) ** 2
    quartic = lp_norm(grid, W, 4) ** 4
    sextic = lp_norm(grid, W, 6) ** 6
    grad = lp_norm(grid, W, "H1-seminorm") ** 2
    f = ratio_f(grid, W)
    assert f is not None
    return [
        ("mass_W", mass, W_MASS, 16.0 / L),
        ("quartic_W", quartic, 16.0 * math.pi, 30.0 / L**2),
        ("sextic_W", sextic, 96.0 * math.pi, 30.0 / L**2),
        ("gradient_W", grad, 2.0 * math.pi, 30.0 / L**2),
        ("action_W", action_S(grid, W), W_MASS, 60.0 / L**2),
        ("constraint_W", constraint_K(grid, W), 0.0, 60.0 / L**2),
        ("f_squared_W", f**2, F_SQUARED_AT_W, 30.0 / L**2),
        ("gn_deficit_W", gn_deficit(grid, W), 0.0, 1e-6),
        (
            "critical_cubic_root",
            critical_cubic(W_MASS, F_SQUARED_AT_W),
            0.0,
            1e-9,
        ),
        ("blowup_scale_W", blowup_scale(grid, W), 1.0, 30.0 / L**2),
        (
            "inverse_constant_identity",
            C_GN_POW_MINUS18,
            4.0 * math.pi**2 / 27.0,
            1e-12,
        ),
    ]


def _cmd_verify_constants(args: argparse.Namespace) -> int:
    if args.L <= 0 or args.N <= 0:
        raise PreconditionError("grid needs L > 0 and N > 0")
    grid = make_grid(args.L, args.N)
    failures = 0
    for name, measured, expected, tol in _constant_rows(grid):
        err = abs(measured - expected)
        verdict = "PASS" if err <= tol else "FAIL"
        failures += verdict == "FAIL"
        print(
            f"{verdict} {name}: measured={measured!r} expected={expected!r} "
            f"|error|={err:.3e} tol={tol:.3e}"
        )
    if failures:
        print(f"{failures} identity(ies) out of tolerance", file=sys.stderr)
        return 2
    return 0


def _cmd_groundstate(args: argparse.Namespace) -> int:
    config = ExperimentConfig(kind="groundstate-verify")
    result = run_groundstate_verify(config, method=args.method)
    print(f"out_dir={result.out_dir}")
    table = (result.out_dir / "groundstate.csv").read_text().rstrip("\n")
    print(table)
    for key, value in result.summary.items():
        print(f"{key}={value}")
    return 0


def _cmd_fit(args: argparse.Namespace) -> int:
    record = read_field(args.field_file)
    grid, t, state = record.grid, record.t, record.state
    if args.mode == "full":
        if record.gauge == "w":
            raise PreconditionError(
                "full-orbit fit works on u- or v-gauge records; "
                "this file stores a w-frame field"
            )
        u = state if record.gauge == "u" else gauge_v_to_u(grid, state)
        fit = fit_full_orbit(grid, u, t)
    else:
        if record.gauge == "w":
            w = state
        else:
            v = state if record.gauge == "v" else gauge_u_to_v(grid, state)
            w = v_to_w(grid, v, t)
        fit = fit_phase_shift(grid, w, ground_state_W(grid), "H1-seminorm")
    print(FIT_CSV_HEADER)
    print(fit.csv_row(t))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dnlslab",
        description="numerical laboratory for the derivative NLS equation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a JSON config")
    p_run.add_argument("config", help="path to the JSON experiment config")
    p_run.set_defaults(func=_cmd_run)

    p_ver = sub.add_parser(
        "verify-constants",
        help="check the ground-state constant table on a sampled grid",
    )
    p_ver.add_argument("--L", type=float, default=200.0, help="box length")
    p_ver.add_argument("--N", type=int, default=4096, help="grid points")
    p_ver.set_defaults(func=_cmd_verify_constants)

    p_gs = sub.add_parser(
        "groundstate", help="cross-validate ground-state solvers"
    )
    p_gs.add_argument(
        "--method",
        choices=("shoot", "minimize", "both"),
        default="both",
        help="which solver(s) to exercise",
    )
    p_gs.set_defaults(func=_cmd_groundstate)

    p_fit = sub.add_parser(
        "fit", help="fit a stored field against the solitary-wave family"
    )
    p_fit.add_argument("field_file", help="path to a DNLSFIELD v1 file")
    p_fit.add_argument(
        "--mode",
        choices=("phase-shift", "full"),
        default="full",
        help="fixed-profile phase/shift fit or full phase/shift/scale fit",
    )
    p_fit.set_defaults(func=_cmd_fit)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"precondition failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
