"""Command-line driver.

Every command prints one JSON report ``{schema_version, command, inputs,
results, flags}`` (or a CSV table).  Exit codes: 0 on success, 1 on an
internal error, 2 on invalid input, 3 when a numeric singularity is hit.
"""

import argparse
import csv
import io
import itertools
import json
import sys
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import findim, ladder, repmat
from .errors import DomainError, LogUndefined, NonFiniteError, SingularDenominator, ZeroBase, ZeroParameter
from .qnum import validate_params

SCHEMA_VERSION = "1.0"

COMMANDS = ("rep-build", "rep-check", "casimir", "findim-scan", "spin-for-dim", "limits", "sweep", "unitarity")
POINT_COMMANDS = tuple(c for c in COMMANDS if c != "sweep")

DEFAULTS = {
    "tol": 1e-10,
    "N": 32,
    "N_max": 1000,
    "branch_range": 5,
    "epsilon": 1e-6,
    "format": "json",
}

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_SINGULAR = 0, 1, 2, 3

SINGULAR_ERRORS = (SingularDenominator, ZeroParameter, ZeroBase, LogUndefined, NonFiniteError)


class JobError(ValueError):
    """Malformed job or sweep specification."""


@dataclass(frozen=True)
class JobSpec:
    command: str
    p: Optional[complex] = None
    q: Optional[complex] = None
    two_j: Optional[complex] = None
    N: int = DEFAULTS["N"]
    tol: float = DEFAULTS["tol"]
    N_max: int = DEFAULTS["N_max"]
    branch_range: int = DEFAULTS["branch_range"]
    dim: Optional[int] = None
    epsilon: float = DEFAULTS["epsilon"]
    output: Optional[str] = None
    format: str = DEFAULTS["format"]
    per_point: Optional[str] = None
    grid: dict = field(default_factory=dict)

    def inputs(self):
        out = {"p": _cx(self.p), "q": _cx(self.q), "two_j": _cx(self.two_j)}
        out.update(N=self.N, tol=self.tol, N_max=self.N_max, branch_range=self.branch_range,
                   dim=self.dim, epsilon=self.epsilon)
        if self.command == "sweep":
            out["per_point"] = self.per_point
            out["grid"] = self.grid
        return out


def _cx(z):
    if z is None:
        return None
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _finite(x):
    return np.isfinite(x) if not isinstance(x, complex) else np.isfinite(x.real) and np.isfinite(x.imag)


def validate_job(job):
    if job.command not in COMMANDS:
        raise JobError(f"unknown command {job.command!r}")
    if not job.tol > 0:
        raise JobError("tol must be positive")
    if not job.epsilon > 0:
        raise JobError("epsilon must be positive")
    for name in ("p", "q", "two_j", "tol", "epsilon"):
        v = getattr(job, name)
        if v is not None and not _finite(v):
            raise JobError(f"{name} must be finite")
    if job.N < 1:
        raise JobError("N must be >= 1")
    if job.N_max < 0:
        raise JobError("N_max must be >= 0")
    if job.branch_range < 0:
        raise JobError("branch_range must be >= 0")
    if job.format not in ("json", "csv"):
        raise JobError(f"unknown format {job.format!r}")
    if job.command == "sweep":
        if job.per_point not in POINT_COMMANDS:
            raise JobError(f"sweep needs a per-point command, one of {', '.join(POINT_COMMANDS)}")
        if not job.grid:
            raise JobError("sweep needs at least one grid axis")
        for axis, g in job.grid.items():
            _axis_values(axis, g)
        probe = replace(job, command=job.per_point, **{a: 0j for a in job.grid})
        _require_fields(probe)
    else:
        _require_fields(job)
    return job


def _require_fields(job):
    need = {
        "rep-build": ("p", "q", "two_j"),
        "rep-check": ("p", "q", "two_j"),
        "casimir": ("p", "q", "two_j"),
        "findim-scan": ("p", "q", "two_j"),
        "spin-for-dim": ("p", "q", "dim"),
        "limits": ("q", "two_j"),
        "unitarity": ("p", "q", "two_j"),
    }[job.command]
    missing = [n for n in need if getattr(job, n) is None]
    if missing:
        raise JobError(f"{job.command} requires {', '.join(missing)}")
    if job.command == "spin-for-dim" and job.dim < 1:
        raise JobError("dim must be >= 1")


def _axis_values(axis, g):
    if axis not in ("p", "q", "two_j"):
        raise JobError(f"unknown grid axis {axis!r}")
    try:
        re_lo, re_hi = (float(v) for v in g.get("re", (0.0, 0.0)))
        im_lo, im_hi = (float(v) for v in g.get("im", (0.0, 0.0)))
        n_re, n_im = (int(v) for v in g.get("steps", (1, 1)))
    except (TypeError, ValueError) as exc:
        raise JobError(f"malformed grid for {axis}: {exc}") from None
    if n_re < 1 or n_im < 1:
        raise JobError(f"grid counts for {axis} must be >= 1")
    if re_lo > re_hi or im_lo > im_hi:
        raise JobError(f"grid rectangle for {axis} is not well-ordered")
    res = np.linspace(re_lo, re_hi, n_re) if n_re > 1 else np.array([re_lo])
    ims = np.linspace(im_lo, im_hi, n_im) if n_im > 1 else np.array([im_lo])
    return [complex(r, i) for r in res for i in ims]


# -- per-command execution ---------------------------------------------------


def _params(job):
    return validate_params(job.p, job.q)


def _run_rep_build(job):
    params = _params(job)
    spec = ladder.deformed_ladder(job.two_j, params, job.N)
    rep = repmat.build_rep(spec)
    c = spec.coeffs
    summary = {
        "N": job.N,
        "c_first": complex(c[0]),
        "c_last": complex(c[-1]),
        "c_last_sq_abs": float(abs(c[-1]) ** 2),
    }
    rows = [{"n": n, "weight": complex(w), "c": complex(cn)} for n, (w, cn) in enumerate(zip(spec.weights(), c))]
    details = {"coeffs": [_cx(z) for z in c], "matrices": repmat.export_rep(rep)}
    return summary, details, rows, params.flags


def _run_rep_check(job):
    params = _params(job)
    rep = repmat.build_rep(ladder.deformed_ladder(job.two_j, params, job.N))
    r = repmat.check_relations(rep, params, job.tol)
    summary = {
        "max_residual_HEplus": r.max_residual_HEplus,
        "max_residual_HEminus": r.max_residual_HEminus,
        "max_residual_EpEm_interior": r.max_residual_EpEm_interior,
        "boundary_defect": r.boundary_defect,
        "boundary_residual": r.boundary_residual,
        "boundary_prediction_residual": r.boundary_prediction_residual,
        "passed": r.passed,
    }
    flags = list(params.flags)
    if r.boundary_residual > job.tol:
        flags.append("truncation_boundary_defect")
    return summary, {"interior_range": list(r.interior_range), "verdict": r.verdict}, None, flags


def _run_casimir(job):
    params = _params(job)
    rep = repmat.build_rep(ladder.deformed_ladder(job.two_j, params, job.N))
    r = repmat.check_casimir(rep, params, job.tol)
    summary = {
        "eigenvalue": r.eigenvalue,
        "highest_weight_value": complex(repmat.casimir_highest_weight_value(rep.spin, params)),
        "max_offdiag": r.max_offdiag,
        "max_diag_deviation": r.max_diag_deviation,
        "max_commutator_residual": r.max_commutator_residual,
        "passed": r.passed,
    }
    return summary, {}, None, params.flags


def _run_findim_scan(job):
    params = _params(job)
    r = findim.scan_integer_roots(job.two_j, params, job.N_max, job.tol)
    summary = {
        "verdict": r.verdict,
        "smallest_root": r.smallest_root,
        "dimension": r.dimension,
        "n_roots": len(r.roots),
        "min_residual": r.min_residual,
    }
    details = {"roots": [{"n": rt.n, "scaled_residual": rt.scaled_residual} for rt in r.roots]}
    return summary, details, None, params.flags


def _run_spin_for_dim(job):
    params = _params(job)
    sols = findim.spin_for_dimension(job.dim, params, job.branch_range)
    principal = sols.branch(0)
    summary = {
        "dimension": job.dim,
        "n_solutions": len(sols.branch_solutions),
        "two_j_principal": None if principal is None else principal.two_j,
    }
    rows = [{"k": s.k, "two_j": s.two_j, "residual": s.residual} for s in sols.branch_solutions]
    details = {"solutions": [{"k": s.k, "two_j": _cx(s.two_j), "residual": s.residual} for s in sols.branch_solutions]}
    return summary, details, rows, params.flags


def _run_limits(job):
    r = repmat.limit_compare(job.two_j, job.q, job.N, job.epsilon)
    summary = {
        "one_parameter_deviation": r.one_parameter_deviation,
        "classical_deviation": r.classical_deviation,
    }
    return summary, {}, None, []


def _run_unitarity(job):
    params = _params(job)
    ratios = ladder.unitarizability_ratios(job.two_j, params, job.N)
    v = ladder.unitarizability_verdict(ratios, job.tol)
    summary = {"verdict": v.verdict, "depth": v.depth}
    rows = [{"n": n, "ratio": complex(r)} for n, r in enumerate(ratios, start=1)]
    details = {"ratios": [_cx(r) for r in ratios]}
    return summary, details, rows, params.flags


RUNNERS = {
    "rep-build": _run_rep_build,
    "rep-check": _run_rep_check,
    "casimir": _run_casimir,
    "findim-scan": _run_findim_scan,
    "spin-for-dim": _run_spin_for_dim,
    "limits": _run_limits,
    "unitarity": _run_unitarity,
}


def _jsonable(v):
    if isinstance(v, (complex, np.complexfloating)):
        return _cx(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def execute(job):
    """Run a single (non-sweep) job and return ``(report, rows)``."""
    summary, details, rows, flags = RUNNERS[job.command](job)
    results = {"summary": _jsonable(summary)}
    results.update(_jsonable(details))
    if rows is not None:
        results["rows"] = _jsonable(rows)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": job.command,
        "inputs": job.inputs(),
        "results": results,
        "flags": list(flags),
    }
    return report, results.get("rows", [results["summary"]])


def sweep_points(job):
    axes = [a for a in ("p", "q", "two_j") if a in job.grid]
    values = [_axis_values(a, job.grid[a]) for a in axes]
    for combo in itertools.product(*values):
        yield dict(zip(axes, combo))


def run_sweep(job):
    """One row per grid point, row-major over p, q, 2j.  Singular points are flagged."""
    rows = []
    for idx, point in enumerate(sweep_points(job)):
        single = replace(job, command=job.per_point, per_point=None, grid={}, **point)
        row = {"index": idx, "p": _cx(single.p), "q": _cx(single.q), "two_j": _cx(single.two_j)}
        try:
            report, _ = execute(single)
        except SINGULAR_ERRORS as exc:
            row.update(status="singular", diagnostic=str(exc))
        except DomainError as exc:
            row.update(status="invalid", diagnostic=str(exc))
        else:
            row.update(status="ok", diagnostic="")
            row.update(report["results"]["summary"])
        rows.append(row)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "sweep",
        "inputs": job.inputs(),
        "results": {"rows": rows},
        "flags": sorted({"singular_points"} if any(r["status"] == "singular" for r in rows) else set()),
    }
    return report, rows


def run(job):
    validate_job(job)
    if job.command == "sweep":
        return run_sweep(job)
    return execute(job)


# -- serialization -----------------------------------------------------------


def dumps_json(report):
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def _flatten(row):
    out = {}
    for k, v in row.items():
        if isinstance(v, list) and len(v) == 2 and all(isinstance(x, float) for x in v):
            out[f"{k}_re"], out[f"{k}_im"] = v
        elif v is None:
            out[k] = ""
        elif isinstance(v, (dict, list)):
            out[k] = json.dumps(v)
        else:
            out[k] = v
    return out


def dumps_csv(rows):
    flat = [_flatten(r) for r in rows]
    header = []
    for r in flat:
        header.extend(k for k in r if k not in header)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    w.writeheader()
    for r in flat:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


# -- argument handling -------------------------------------------------------


def _pair(v, name):
    if v is None:
        return None
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise JobError(f"{name} must be a number or an [re, im] pair")


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise JobError("config must be a JSON object")
    unknown = set(data) - {"command", "p", "q", "two_j", "N", "tol", "N_max", "branch_range", "dim",
                           "epsilon", "output", "format", "per_point", "grid"}
    if unknown:
        raise JobError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for name in ("p", "q", "two_j"):
        if name in data:
            data[name] = _pair(data[name], name)
    return data


def build_parser():
    ap = argparse.ArgumentParser(prog="upqsl2", description="Representations of U_{p,q}[sl(2)].")
    ap.add_argument("command", nargs="?", choices=COMMANDS)
    ap.add_argument("--config", help="JSON job file; flags override its values")
    for name in ("p", "q", "two-j"):
        ap.add_argument(f"--{name}-re", type=float)
        ap.add_argument(f"--{name}-im", type=float)
    ap.add_argument("--trunc", type=int, dest="N", help="truncation N")
    ap.add_argument("--tol", type=float)
    ap.add_argument("--nmax", type=int, dest="N_max")
    ap.add_argument("--branches", type=int, dest="branch_range")
    ap.add_argument("--dim", type=int, help="target dimension D for spin-for-dim")
    ap.add_argument("--epsilon", type=float, help="offset for the classical limit p=q=1+epsilon")
    ap.add_argument("--format", choices=("json", "csv"))
    ap.add_argument("--out", dest="output")
    ap.add_argument("--per-point", choices=POINT_COMMANDS)
    for name in ("p", "q", "two-j"):
        ap.add_argument(f"--grid-{name}", nargs="+", type=float, metavar="X",
                        help="RE_MIN RE_MAX N_RE [IM_MIN IM_MAX N_IM]")
    return ap


def _grid_from_flags(vals):
    if len(vals) not in (3, 6):
        raise JobError("grid flags take 3 or 6 numbers")
    g = {"re": [vals[0], vals[1]], "steps": [int(vals[2]), 1]}
    if len(vals) == 6:
        g["im"] = [vals[3], vals[4]]
        g["steps"][1] = int(vals[5])
    return g


def job_from_args(args):
    data = load_config(args.config) if args.config else {}
    if args.command:
        data["command"] = args.command
    if "command" not in data:
        raise JobError("no command given")
    for name in ("p", "q", "two_j"):
        re_v = getattr(args, f"{name}_re")
        im_v = getattr(args, f"{name}_im")
        if re_v is not None or im_v is not None:
            base = data.get(name) or 0j
            data[name] = complex(base.real if re_v is None else re_v, base.imag if im_v is None else im_v)
    for name in ("N", "tol", "N_max", "branch_range", "dim", "epsilon", "format", "output", "per_point"):
        v = getattr(args, name)
        if v is not None:
            data[name] = v
    grid = dict(data.get("grid") or {})
    for name in ("p", "q", "two_j"):
        v = getattr(args, f"grid_{name}")
        if v is not None:
            grid[name] = _grid_from_flags(v)
    if grid:
        data["grid"] = grid
    return JobSpec(**data)


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        job = job_from_args(args)
        report, rows = run(job)
        text = dumps_json(report) if job.format == "json" else dumps_csv(rows)
    except (JobError, DomainError, json.JSONDecodeError, OSError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SINGULAR_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except Exception as exc:  # pragma: no cover
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    if job.output:
        with open(job.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
