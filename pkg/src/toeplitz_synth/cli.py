"""Command-line front end.

Exit codes: 0 ok, 1 generic failure (I/O, parse, verification above
threshold), 2 unsupported spec, 3 size guard exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .circuit import Circuit, apply_to_state, circuit_unitary, resource_metrics
from .linalg import expm_oracle
from .qasm import to_qasm
from .synthesis import TrotterParams, UnsupportedSpecError, synth_full_evolution, synth_poisson
from .toeplitz import ToeplitzSpec, materialize
from .verify import operator_distance, trotter_sweep

EXIT_OK, EXIT_FAIL, EXIT_UNSUPPORTED, EXIT_GUARD = 0, 1, 2, 3
MAX_ORACLE_QUBITS = 8
MAX_STATE_QUBITS = 20


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_FAIL):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    command: str
    spec_path: str | None = None
    n: int | None = None
    dx: float = 1.0
    t: float = 0.1
    u: int = 16
    v: int = 16
    out: str | None = None
    format: str | None = None
    strict: bool = False
    threshold: float = 1e-2
    seed: int = 0
    sweep: str = "v"
    values: tuple[int, ...] = (4, 8, 16, 32)
    fixed: int = 1
    basis: int | None = None

    def __post_init__(self):
        if not np.isfinite(self.t):
            raise CliError("--t must be finite")
        if self.u < 1 or self.v < 1:
            raise CliError("--u and --v must be >= 1")

    @property
    def placement(self) -> str:
        return "inside" if self.strict else "auto"


def load_spec(cfg: RunConfig) -> ToeplitzSpec:
    if cfg.spec_path:
        try:
            return ToeplitzSpec.load(cfg.spec_path)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise CliError(f"cannot load spec {cfg.spec_path}: {exc}") from exc
    if cfg.n is None:
        raise CliError("give --spec PATH or the Poisson preset --n N [--dx DX]")
    try:
        return ToeplitzSpec.poisson(cfg.n, cfg.dx)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def synthesize(cfg: RunConfig, spec: ToeplitzSpec) -> Circuit:
    try:
        return synth_full_evolution(spec, cfg.t, TrotterParams(cfg.u, cfg.v), cfg.placement)
    except UnsupportedSpecError as exc:
        raise CliError(f"unsupported bands {exc.bands}", EXIT_UNSUPPORTED) from exc


def _emit(cfg: RunConfig, text: str):
    if cfg.out:
        try:
            Path(cfg.out).write_text(text)
        except OSError as exc:
            raise CliError(f"cannot write {cfg.out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _info(cfg: RunConfig, text: str):
    # keep stdout clean when the artifact itself goes there
    print(text, file=sys.stdout if cfg.out else sys.stderr)


def _write_circuit(cfg: RunConfig, c: Circuit):
    fmt = cfg.format or "json"
    if fmt not in ("json", "qasm"):
        raise CliError(f"circuits are written as json or qasm, not {fmt}")
    _emit(cfg, c.to_json() if fmt == "json" else to_qasm(c))


def cmd_synth(cfg: RunConfig) -> int:
    c = synthesize(cfg, load_spec(cfg))
    _write_circuit(cfg, c)
    _info(cfg, resource_metrics(c).line())
    return EXIT_OK


def _oracle_guard(n: int):
    if n > MAX_ORACLE_QUBITS:
        raise CliError(f"oracle comparison limited to n <= {MAX_ORACLE_QUBITS}, got n={n}", EXIT_GUARD)


def _verify_circuit(cfg: RunConfig, spec: ToeplitzSpec, c: Circuit) -> int:
    _oracle_guard(spec.n_qubits)
    u = circuit_unitary(c)
    rep = operator_distance(u, expm_oracle(materialize(spec), cfg.t))
    metrics = resource_metrics(c)
    rng = np.random.default_rng(cfg.seed)
    psi = rng.normal(size=spec.dim) + 1j * rng.normal(size=spec.dim)
    psi /= np.linalg.norm(psi)
    state_dev = float(np.abs(apply_to_state(c, psi) - u @ psi).max())
    passed = rep.phase_distance <= cfg.threshold
    if cfg.format == "json":
        payload = {
            "raw_distance": rep.raw_distance,
            "phase_distance": rep.phase_distance,
            "frobenius": rep.frobenius,
            "gate_counts": metrics.counts,
            "gate_total": metrics.total,
            "depth": metrics.depth,
            "statevector_deviation": state_dev,
            "threshold": cfg.threshold,
            "passed": passed,
        }
        _emit(cfg, json.dumps(payload, indent=1) + "\n")
    else:
        text = (
            f"{rep.summary()}\n{metrics.line()}\nstatevector_deviation={state_dev:.3e}\n"
            f"threshold={cfg.threshold:.3e} {'PASS' if passed else 'FAIL'}\n"
        )
        _emit(cfg, text)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_verify(cfg: RunConfig) -> int:
    spec = load_spec(cfg)
    _oracle_guard(spec.n_qubits)
    return _verify_circuit(cfg, spec, synthesize(cfg, spec))


def cmd_sweep(cfg: RunConfig) -> int:
    spec = load_spec(cfg)
    _oracle_guard(spec.n_qubits)
    try:
        res = trotter_sweep(spec, cfg.t, cfg.values, cfg.sweep, cfg.fixed, cfg.placement)
    except UnsupportedSpecError as exc:
        raise CliError(f"unsupported bands {exc.bands}", EXIT_UNSUPPORTED) from exc
    fmt = cfg.format or "csv"
    if fmt not in ("csv", "table"):
        raise CliError(f"sweeps are written as csv or table, not {fmt}")
    _emit(cfg, res.to_csv() if fmt == "csv" else res.to_table())
    _info(cfg, f"slope={res.slope:.4f}")
    return EXIT_OK


def cmd_simulate(cfg: RunConfig) -> int:
    spec = load_spec(cfg)
    if spec.n_qubits > MAX_STATE_QUBITS:
        raise CliError(f"statevector simulation limited to n <= {MAX_STATE_QUBITS}", EXIT_GUARD)
    c = synthesize(cfg, spec)
    if cfg.basis is not None:
        if not 0 <= cfg.basis < spec.dim:
            raise CliError(f"--basis must lie in [0, {spec.dim})")
        psi = np.zeros(spec.dim, dtype=complex)
        psi[cfg.basis] = 1.0
    else:
        rng = np.random.default_rng(cfg.seed)
        psi = rng.normal(size=spec.dim) + 1j * rng.normal(size=spec.dim)
        psi /= np.linalg.norm(psi)
    out = apply_to_state(c, psi)
    if cfg.format == "json":
        payload = {"n_qubits": spec.n_qubits, "amplitudes": [[float(z.real), float(z.imag)] for z in out]}
        _emit(cfg, json.dumps(payload) + "\n")
    else:
        probs = np.abs(out) ** 2
        order = np.argsort(-probs, kind="stable")[:16]
        lines = [f"{'basis':>8} {'probability':>14}"]
        lines += [f"{int(i):>8d} {probs[i]:>14.6e}" for i in order]
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_poisson(cfg: RunConfig) -> int:
    if cfg.n is None:
        raise CliError("poisson needs --n")
    if not cfg.dx > 0:
        raise CliError("--dx must be positive")
    c = synth_poisson(cfg.n, cfg.dx, cfg.t, cfg.v)
    _write_circuit(cfg, c)
    _info(cfg, resource_metrics(c).line())
    if cfg.n <= MAX_ORACLE_QUBITS:
        exact = expm_oracle(materialize(ToeplitzSpec.poisson(cfg.n, cfg.dx)), cfg.t)
        _info(cfg, operator_distance(circuit_unitary(c), exact).summary())
    return EXIT_OK


COMMANDS = {
    "synth": cmd_synth,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "simulate": cmd_simulate,
    "poisson": cmd_poisson,
}


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toeplitz-synth", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--spec", dest="spec_path", help="ToeplitzSpec JSON file")
    parser.add_argument("--n", type=int, help="qubits for the Poisson preset")
    parser.add_argument("--dx", type=float, default=1.0, help="grid spacing for the Poisson preset")
    parser.add_argument("--t", type=float, default=0.1, help="evolution time")
    parser.add_argument("--u", type=int, default=16, help="outer Trotter number")
    parser.add_argument("--v", type=int, default=16, help="inner Trotter number")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", choices=["json", "qasm", "csv", "table"])
    parser.add_argument("--strict", action="store_true", help="keep class terms inside the outer repetition")
    parser.add_argument("--threshold", type=float, default=1e-2, help="verify: max phase distance")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--sweep", choices=["u", "v"], default="v", help="sweep: Trotter number to vary")
    parser.add_argument("--values", type=_int_list, default=(4, 8, 16, 32), help="sweep: comma-separated values")
    parser.add_argument("--fixed", type=int, default=1, help="sweep: value of the other Trotter number")
    parser.add_argument("--basis", type=int, help="simulate: start from this basis state")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(**vars(args))
        return COMMANDS[cfg.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
