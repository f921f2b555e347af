"""Operator distances, identity checkers and Trotter convergence sweeps."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .circuit import Circuit, circuit_unitary, resource_metrics
from .linalg import expm_oracle, jacobi_eigh
from .synthesis import TrotterParams, UnsupportedSpecError, classify, synth_full_evolution
from .toeplitz import (
    ToeplitzSpec,
    build_Mk,
    build_sigma_diagonalized,
    build_sigma_factored,
    build_sigma_sum,
    congruence_class,
    materialize,
    theorem1_rhs,
)

PHASE_XTOL = 1e-10
IDENTITY_TOL = 1e-12


@dataclass
class ErrorReport:
    raw_distance: float
    phase_distance: float
    frobenius: float
    optimal_phase: float = 0.0
    gate_counts: dict[str, int] = field(default_factory=dict)
    depth: int = 0

    def summary(self) -> str:
        return (
            f"raw_distance={self.raw_distance:.3e} phase_distance={self.phase_distance:.3e} "
            f"frobenius={self.frobenius:.3e}"
        )


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value, from the eigenvalues of ``a^H a``."""
    return _WarmNorm()(a)


class _WarmNorm:
    """Spectral norm that seeds each eigensolve with the previous eigenbasis.

    Along a phase search the Gram matrices change slowly, so the last
    eigenvectors nearly diagonalize the next one and Jacobi finishes in a
    sweep or two.
    """

    def __init__(self):
        self.basis = None

    def __call__(self, a: np.ndarray) -> float:
        a = np.asarray(a, dtype=complex)
        gram = a.conj().T @ a
        gram = 0.5 * (gram + gram.conj().T)
        w, self.basis = jacobi_eigh(gram, basis=self.basis)
        return math.sqrt(max(float(w.max()), 0.0))


def _min_phase(f, seed: float, width: float) -> tuple[float, float]:
    lo, hi = seed - width, seed + width
    if width > 0.5:
        grid = np.linspace(lo, hi, 17)
        vals = [f(x) for x in grid]
        best = int(np.argmin(vals))
        step = grid[1] - grid[0]
        lo, hi = grid[best] - step, grid[best] + step
    return golden_section(f, lo, hi, PHASE_XTOL)


def golden_section(f, lo: float, hi: float, xtol: float) -> tuple[float, float]:
    """Minimize a unimodal ``f`` on ``[lo, hi]``; tolerates kinks at the minimum."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > xtol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def operator_distance(u: np.ndarray, v: np.ndarray) -> ErrorReport:
    """Spectral distance between ``u`` and ``v``, raw and minimized over a global phase on ``v``.

    The phase search starts at ``arg tr(v^H u)`` (optimal for the Frobenius
    norm) and is confined to the window where a better spectral phase can
    exist.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape or u.ndim != 2:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    raw = spectral_norm(u - v)
    frob = float(np.linalg.norm(u - v))
    overlap = np.trace(v.conj().T @ u)
    seed = float(np.angle(overlap)) if abs(overlap) > 0 else 0.0

    norm = _WarmNorm()

    def f(phi):
        return norm(u - np.exp(1j * phi) * v)

    f_seed = f(seed)
    v_norm = spectral_norm(v)
    if f_seed == 0.0 or v_norm == 0.0:
        return ErrorReport(raw, min(f_seed, raw), frob, seed if f_seed <= raw else 0.0)
    width = 2.0 * math.asin(min(1.0, f_seed / v_norm))
    phi, best = _min_phase(f, seed, max(width, 10 * PHASE_XTOL))
    candidates = [(best, phi), (f_seed, seed), (raw, 0.0)]
    best, phi = min(candidates)
    return ErrorReport(raw, best, frob, phi)


def report_circuit(c: Circuit, target: np.ndarray) -> ErrorReport:
    rep = operator_distance(circuit_unitary(c), target)
    metrics = resource_metrics(c)
    rep.gate_counts = metrics.counts
    rep.depth = metrics.depth
    return rep


class CheckResult(NamedTuple):
    passed: bool
    deviation: float


def check_theorem1(n: int, m: int, a: float, tol: float = IDENTITY_TOL) -> CheckResult:
    """Compare the band ``k = 2**m`` with its X-string plus shifted-interior form."""
    k = 1 << m
    spec = ToeplitzSpec.from_bands(n, {k: a})
    dev = float(np.abs(build_Mk(spec, k) - theorem1_rhs(n, m, a)).max())
    return CheckResult(dev <= tol, dev)


def check_theorem2(n: int, j: int, a: float, tol: float = IDENTITY_TOL) -> CheckResult:
    """Compare the summed class ``C_j`` with its factored and diagonalized forms."""
    spec = ToeplitzSpec.from_bands(n, {k: a for k in congruence_class(n, j).members})
    forms = [build_sigma_sum(spec, j), build_sigma_factored(n, j, a), build_sigma_diagonalized(n, j, a)]
    dev = max(float(np.abs(x - y).max()) for i, x in enumerate(forms) for y in forms[i + 1:])
    return CheckResult(dev <= tol, dev)


@dataclass
class SweepRow:
    parameter: int
    raw_distance: float
    phase_distance: float
    gate_total: int
    depth: int


@dataclass
class SweepResult:
    parameter_name: str
    rows: list[SweepRow]
    slope: float

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["parameter", "raw_distance", "phase_distance", "gate_total", "depth"])
        for r in self.rows:
            w.writerow([r.parameter, repr(r.raw_distance), repr(r.phase_distance), r.gate_total, r.depth])
        return buf.getvalue()

    def to_table(self) -> str:
        head = f"{self.parameter_name:>9} {'raw_distance':>14} {'phase_distance':>14} {'gates':>7} {'depth':>7}"
        lines = [head]
        for r in self.rows:
            lines.append(
                f"{r.parameter:>9d} {r.raw_distance:>14.6e} {r.phase_distance:>14.6e} {r.gate_total:>7d} {r.depth:>7d}"
            )
        lines.append(f"slope(log phase_distance vs log {self.parameter_name}) = {self.slope:.4f}")
        return "\n".join(lines) + "\n"


def loglog_slope(params: Iterable[float], errors: Iterable[float], floor: float = 1e-13) -> float:
    """Least-squares slope of ``log(error)`` against ``log(param)``; NaN when errors sit at round-off."""
    x = np.log(np.asarray(list(params), dtype=float))
    e = np.asarray(list(errors), dtype=float)
    if len(x) < 2 or np.any(e <= floor):
        return float("nan")
    return float(np.polyfit(x, np.log(e), 1)[0])


def trotter_sweep(
    spec: ToeplitzSpec,
    t: float,
    values: Iterable[int],
    parameter: str = "v",
    fixed: int = 1,
    sigma_placement: str = "auto",
) -> SweepResult:
    """Synthesize at each Trotter number in ``values`` and measure the distance to the exact evolution.

    ``parameter`` picks which number is swept; the other is held at ``fixed``.
    """
    if parameter not in ("u", "v"):
        raise ValueError("parameter must be 'u' or 'v'")
    plan = classify(spec)
    if plan.unsupported:
        raise UnsupportedSpecError(plan.unsupported)
    exact = expm_oracle(materialize(spec), t)
    rows = []
    for p in values:
        params = TrotterParams(u=p, v=fixed) if parameter == "u" else TrotterParams(u=fixed, v=p)
        c = synth_full_evolution(spec, t, params, sigma_placement)
        rep = report_circuit(c, exact)
        rows.append(SweepRow(int(p), rep.raw_distance, rep.phase_distance, sum(rep.gate_counts.values()), rep.depth))
    slope = loglog_slope([r.parameter for r in rows], [r.phase_distance for r in rows])
    return SweepResult(parameter, rows, slope)
