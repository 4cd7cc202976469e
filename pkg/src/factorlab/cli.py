"""Command-line front end.

Subcommands: classify (diagnostics report for a named family or a state file),
sweep (deterministic parameter-grid tables, CSV or JSON), protocol
(teleportation / swapping traces with per-outcome checks), and transform
(apply a named factorization switch, then re-classify).

Every emitted number is produced by a library call; the CLI does no arithmetic
of its own.  Output is deterministic: identical inputs and seed give
byte-identical output.  Exit codes: 0 success, 1 validation error, 2 parse
error, 3 failed protocol assertion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import measures, states, transforms, witness_bell
from .linalg import DEFAULT_TOL, DimensionMismatchError, herm_eigensystem
from .protocols import Isometry, ProtocolCheckError, swap_outcomes, teleport_outcomes
from .states import DensityMatrix, StateValidationError


class CliParseError(Exception):
    """Malformed input file or unknown registry name."""


# ---------------------------------------------------------------------------
# state sources

_STATE_FAMILIES = {
    "werner": ("alpha",),
    "gisin": ("lambda", "theta"),
    "bell": ("kind",),
    "ghz-traced": ("theta",),
    "narnhofer": (),
    "tracial": ("dim",),
    "weyl": ("k", "l", "d"),
    "rho-theta": ("theta",),
}


def _parse_float(token: str, name: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise CliParseError(f"parameter {name!r} must be a number, got {token!r}") from None


def _parse_int(token: str, name: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise CliParseError(f"parameter {name!r} must be an integer, got {token!r}") from None


def build_state(tokens: list[str], tol: float) -> DensityMatrix:
    """Construct a state from CLI tokens: a family name plus parameters, or
    ``file <path>`` (a bare path to an existing .json file also works)."""
    if not tokens:
        raise CliParseError("no state source given")
    head, params = tokens[0], tokens[1:]
    if head == "file" or (head not in _STATE_FAMILIES and os.path.exists(head)):
        if head == "file" and not params:
            raise CliParseError("'file' requires a path argument")
        path = params[0] if head == "file" else head
        return load_state_file(path, tol)
    if head not in _STATE_FAMILIES:
        raise CliParseError(
            f"unknown state family {head!r}; valid: {', '.join(sorted(_STATE_FAMILIES))}, file"
        )
    expected = _STATE_FAMILIES[head]
    if len(params) != len(expected):
        raise CliParseError(
            f"family {head!r} takes {len(expected)} parameter(s) {expected}, got {len(params)}"
        )
    if head == "werner":
        return states.werner(_parse_float(params[0], "alpha"), tol=tol)
    if head == "gisin":
        return states.gisin(
            _parse_float(params[0], "lambda"), _parse_float(params[1], "theta"), tol=tol
        )
    if head == "bell":
        if params[0] not in ("psi+", "psi-", "phi+", "phi-"):
            raise CliParseError(f"unknown Bell kind {params[0]!r}")
        return states.bell_state(params[0], tol=tol)
    if head == "ghz-traced":
        return states.ghz_traced(_parse_float(params[0], "theta"), tol=tol)
    if head == "narnhofer":
        return states.narnhofer(tol=tol)
    if head == "tracial":
        return states.tracial(_parse_int(params[0], "dim"), tol=tol)
    if head == "weyl":
        k = _parse_int(params[0], "k")
        l = _parse_int(params[1], "l")
        d = _parse_int(params[2], "d")
        v = states.weyl_basis_state(k, l, d)
        return DensityMatrix(np.outer(v, v.conj()), (d, d), tol=tol)
    return states.rho_theta(_parse_float(params[0], "theta"), tol=tol)


def load_state_file(path: str, tol: float) -> DensityMatrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliParseError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None
    try:
        return states.state_from_dict(data, tol=tol)
    except (KeyError, TypeError) as exc:
        raise CliParseError(f"{path}: missing or malformed field {exc}") from None


# ---------------------------------------------------------------------------
# classify

def classification_report(rho: DensityMatrix, tol: float = DEFAULT_TOL) -> dict:
    """Aggregate diagnostics for one state."""
    verdict = measures.ppt_check(rho, tol=tol)
    report: dict = {
        "split": list(rho.split),
        "purity": measures.purity(rho),
        "mixedness": measures.mixedness(rho),
        "entropy": measures.vn_entropy(rho),
        "ppt": {
            "classification": verdict.classification,
            "min_pt_eigenvalue": verdict.min_pt_eigenvalue,
        },
    }
    if rho.split == (2, 2):
        report["concurrence"] = measures.concurrence(rho, tol=tol)
        report["bmax"] = witness_bell.horodecki_bmax(rho)
        spectrum = np.clip(herm_eigensystem(rho.matrix).values, 0.0, None)
        report["abs_separable_spectrum"] = measures.abs_sep_2x2(spectrum / spectrum.sum())
    if rho.split[0] == rho.split[1]:
        report["kz_ball_member"] = measures.kz_ball_member(rho, tol=tol)
    beta = measures.maxent_weight(rho)
    if beta is not None:
        report["split_bound"] = {
            "beta": beta,
            "entangled": measures.split_bound_check(beta, rho.split[0]),
        }
    else:
        report["split_bound"] = None
    return report


# ---------------------------------------------------------------------------
# sweep

@dataclass
class SweepSpec:
    """Grid description for a sweep family."""

    family: str
    start: float
    stop: float
    num: int
    outputs: list[str] = field(default_factory=list)
    theta: float | None = None
    fmt: str = "csv"

    def __post_init__(self):
        if self.num < 1:
            raise CliParseError("grid must contain at least one point")
        if self.stop < self.start:
            raise CliParseError("grid stop must not be below start")


def _sweep_rho_theta(theta: float, _: float | None, tol: float) -> dict:
    rho = states.rho_theta(theta, tol=tol)
    switched = transforms.conjugate(rho, transforms.u_switch(), tol=tol)
    return {
        "C": measures.concurrence(rho, tol=tol),
        "C_after_u_switch": measures.concurrence(switched, tol=tol),
        "bmax": witness_bell.horodecki_bmax(rho),
        "purity": measures.purity(rho),
    }


def _sweep_werner(alpha: float, _: float | None, tol: float) -> dict:
    rho = states.werner(alpha, tol=tol)
    return {
        "ppt": measures.ppt_check(rho, tol=tol).min_pt_eigenvalue,
        "bmax": witness_bell.horodecki_bmax(rho),
        "C": measures.concurrence(rho, tol=tol),
        "purity": measures.purity(rho),
        "kz_member": float(measures.kz_ball_member(rho, tol=tol)),
    }


def _sweep_gisin(lam: float, theta: float | None, tol: float) -> dict:
    rho = states.gisin(lam, theta, tol=tol)
    return {
        "C": measures.concurrence(rho, tol=tol),
        "bmax": witness_bell.horodecki_bmax(rho),
        "purity": measures.purity(rho),
        "ppt": measures.ppt_check(rho, tol=tol).min_pt_eigenvalue,
    }


def _sweep_gisin_compare(lam: float, theta: float | None, tol: float) -> dict:
    plain = states.gisin(lam, theta, tol=tol)
    filtered = transforms.apply_filter(plain, transforms.gisin_filter(theta), tol=tol)
    unitary = transforms.gisin_unitary_family(lam, theta, tol=tol)
    return {
        "C_gisin": measures.concurrence(plain, tol=tol),
        "C_filtered": measures.concurrence(filtered, tol=tol),
        "C_unitary": measures.concurrence(unitary, tol=tol),
        "B_gisin": witness_bell.horodecki_bmax(plain),
        "B_filtered": witness_bell.horodecki_bmax(filtered),
        "B_unitary": witness_bell.horodecki_bmax(unitary),
        "purity_gisin": measures.purity(plain),
        "purity_filtered": measures.purity(filtered),
        "purity_unitary": measures.purity(unitary),
    }


def _sweep_ghz_traced(theta: float, _: float | None, tol: float) -> dict:
    rho = states.ghz_traced(theta, tol=tol)
    c_u1 = measures.concurrence(transforms.conjugate(rho, transforms.u1_ghz(), tol=tol), tol=tol)
    c_u2 = measures.concurrence(transforms.conjugate(rho, transforms.u2_ghz(), tol=tol), tol=tol)
    c_switch = measures.concurrence(
        transforms.conjugate(rho, transforms.u_switch(), tol=tol), tol=tol
    )
    return {
        "C_u1": c_u1,
        "C_u2": c_u2,
        "C_best": max(c_u1, c_u2),
        "C_after_u_switch": c_switch,
        "mixedness": measures.mixedness(rho),
    }


_SWEEP_FAMILIES = {
    "rho_theta": ("theta", False, _sweep_rho_theta, ["C", "C_after_u_switch"]),
    "werner": ("alpha", False, _sweep_werner, ["ppt", "bmax"]),
    "gisin": ("lambda", True, _sweep_gisin, ["C", "bmax"]),
    "gisin_compare": (
        "lambda",
        True,
        _sweep_gisin_compare,
        ["C_gisin", "C_filtered", "C_unitary"],
    ),
    "ghz_traced": ("theta", False, _sweep_ghz_traced, ["C_best", "C_after_u_switch", "mixedness"]),
}


def run_sweep(spec: SweepSpec, tol: float = DEFAULT_TOL) -> tuple[list[str], list[dict]]:
    """Evaluate one sweep family over its grid; returns (column names, rows)."""
    if spec.family not in _SWEEP_FAMILIES:
        raise CliParseError(
            f"unknown sweep family {spec.family!r}; valid: {', '.join(sorted(_SWEEP_FAMILIES))}"
        )
    param, needs_theta, evaluate, default_outputs = _SWEEP_FAMILIES[spec.family]
    if needs_theta and spec.theta is None:
        raise CliParseError(f"sweep family {spec.family!r} requires --theta")
    outputs = spec.outputs or default_outputs
    probe = evaluate(spec.start, spec.theta, tol)
    unknown = [name for name in outputs if name not in probe]
    if unknown:
        raise CliParseError(
            f"unknown measure(s) {unknown} for family {spec.family!r}; "
            f"valid: {', '.join(sorted(probe))}"
        )
    grid = np.linspace(spec.start, spec.stop, spec.num)
    rows = []
    for x in grid:
        values = evaluate(float(x), spec.theta, tol)
        rows.append({param: float(x), **{name: values[name] for name in outputs}})
    return [param] + list(outputs), rows


# ---------------------------------------------------------------------------
# protocol

def _haar_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def _haar_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def run_protocol(kind: str, d: int, seed: int) -> dict:
    """Exhaustive-outcome trace for one protocol; raises ProtocolCheckError on
    any probability/fidelity/composition failure."""
    if d < 2:
        raise CliParseError("protocol dimension must be at least 2")
    rng = np.random.default_rng(seed)
    rows = []
    if kind == "teleport":
        phi = _haar_vector(rng, d)
        for out in teleport_outcomes(phi):
            rows.append(
                {
                    "outcome": list(out.index),
                    "probability": out.probability,
                    "correction": out.correction.label,
                    "fidelity": out.fidelity,
                }
            )
    elif kind == "swap":
        i12 = Isometry(_haar_unitary(rng, d), d, "I12")
        i34 = Isometry(_haar_unitary(rng, d), d, "I34")
        for out in swap_outcomes(i12, i34):
            rows.append(
                {
                    "outcome": list(out.index),
                    "probability": out.probability,
                    "correction": f"composed@{out.index[0]},{out.index[1]}",
                    "fidelity": out.fidelity,
                }
            )
    else:
        raise CliParseError(f"unknown protocol {kind!r}; valid: teleport, swap")
    for row in rows:
        if abs(row["probability"] - 1.0 / (d * d)) > 1e-10:
            raise ProtocolCheckError(
                f"outcome {row['outcome']}: probability {row['probability']} != 1/d^2"
            )
        if abs(row["fidelity"] - 1.0) > 1e-9:
            raise ProtocolCheckError(f"outcome {row['outcome']}: fidelity {row['fidelity']} != 1")
    return {"kind": kind, "d": d, "seed": seed, "outcomes": rows}


# ---------------------------------------------------------------------------
# rendering

def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round12(float(obj))
    return obj


def _fmt_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    return str(v)


def render_table(columns: list[str], rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([_jsonable(r) for r in rows], indent=2) + "\n"
    lines = [",".join(columns)]
    lines += [",".join(_fmt_cell(row[c]) for c in columns) for row in rows]
    return "\n".join(lines) + "\n"


def _flatten(prefix: str, obj, out: list[tuple[str, object]]):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, (list, tuple)):
        out.append((prefix, " ".join(_fmt_cell(v) for v in obj)))
    else:
        out.append((prefix, obj))


def render_report(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(payload), indent=2) + "\n"
    flat: list[tuple[str, object]] = []
    _flatten("", payload, flat)
    lines = ["key,value"] + [f"{k},{_fmt_cell(v)}" for k, v in flat]
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument parsing and dispatch

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factorlab",
        description="Classify, sweep, and transform quantum states; run protocol traces.",
    )
    parser.add_argument("--tol", type=float, default=None, help="validation tolerance")
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="diagnostics report for one state")
    p_classify.add_argument("source", nargs="+", help="family + params, or file <path>")
    p_classify.add_argument("--format", choices=("json", "csv"), default="json")
    p_classify.add_argument("--out", default=None)

    p_transform = sub.add_parser("transform", help="apply a named switch, then re-classify")
    p_transform.add_argument("name", help="transform registry name")
    p_transform.add_argument("source", nargs="+", help="family + params, or file <path>")
    p_transform.add_argument("--theta", type=float, default=None)
    p_transform.add_argument("--format", choices=("json", "csv"), default="json")
    p_transform.add_argument("--out", default=None)

    p_sweep = sub.add_parser("sweep", help="parameter-grid table for a state family")
    p_sweep.add_argument("family")
    p_sweep.add_argument("--start", type=float, required=True)
    p_sweep.add_argument("--stop", type=float, required=True)
    p_sweep.add_argument("--num", type=int, required=True)
    p_sweep.add_argument("--theta", type=float, default=None)
    p_sweep.add_argument("--outputs", default=None, help="comma-separated measure names")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--out", default=None)

    p_protocol = sub.add_parser("protocol", help="teleport/swap exhaustive outcome trace")
    p_protocol.add_argument("kind", choices=("teleport", "swap"))
    p_protocol.add_argument("--d", type=int, default=2)
    p_protocol.add_argument("--seed", type=int, default=0)
    p_protocol.add_argument("--out", default=None)

    return parser


def _resolve_tol(cli_tol: float | None) -> float:
    if cli_tol is not None:
        return cli_tol
    env = os.environ.get("FACTORLAB_TOL")
    if env is not None:
        try:
            return float(env)
        except ValueError:
            raise CliParseError(f"FACTORLAB_TOL is not a number: {env!r}") from None
    return DEFAULT_TOL


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _resolve_tol(args.tol)
        if args.command == "classify":
            rho = build_state(args.source, tol)
            text = render_report(classification_report(rho, tol), args.format)
        elif args.command == "transform":
            rho = build_state(args.source, tol)
            try:
                switch = transforms.named_switch(args.name, theta=args.theta)
            except ValueError as exc:
                raise CliParseError(str(exc)) from None
            switched = transforms.conjugate(rho, switch, tol=tol)
            payload = {
                "transform": switch.description,
                "report": classification_report(switched, tol),
                "state": states.state_to_dict(switched),
            }
            text = render_report(payload, args.format)
        elif args.command == "sweep":
            outputs = [s for s in (args.outputs or "").split(",") if s]
            spec = SweepSpec(
                family=args.family,
                start=args.start,
                stop=args.stop,
                num=args.num,
                outputs=outputs,
                theta=args.theta,
                fmt=args.format,
            )
            columns, rows = run_sweep(spec, tol)
            text = render_table(columns, rows, args.format)
        else:
            trace = run_protocol(args.kind, args.d, args.seed)
            text = json.dumps(_jsonable(trace), indent=2) + "\n"
        _emit(text, args.out)
        return 0
    except CliParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ProtocolCheckError as exc:
        print(f"protocol assertion failed: {exc}", file=sys.stderr)
        return 3
    except (StateValidationError, DimensionMismatchError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
