"""Gate-level circuit IR with exact unitary semantics.

Qubits are labelled ``1..n``; qubit ``q`` carries bit ``q - 1`` of the basis
index (little-endian).  Gates are listed in the order they act, so the
circuit unitary is ``exp(i * global_phase) * G_L ... G_2 G_1``.

Rotations follow ``RX(theta) = exp(-i theta X / 2)`` and
``RZ(theta) = exp(-i theta Z / 2)``.  ``PERM_SHIFT(s)`` is the cyclic shift
``|i> -> |(i - s) mod 2^n>`` on the whole register.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable

import numpy as np

RX, RZ, H, X = "RX", "RZ", "H", "X"
MCX, MCRZ, MCRX = "MCX", "MCRZ", "MCRX"
PERM_SHIFT, GLOBAL_PHASE = "PERM_SHIFT", "GLOBAL_PHASE"

GATE_KINDS = (RX, RZ, H, X, MCX, MCRZ, MCRX, PERM_SHIFT, GLOBAL_PHASE)
ROTATIONS = {RX, RZ, MCRX, MCRZ}
CONTROLLED = {MCX, MCRZ, MCRX}
OPEN, CLOSED = "open", "closed"

MAX_DENSE_QUBITS = 10

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0)
_PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


def _rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: tuple[int, ...] = ()
    controls: tuple[tuple[int, str], ...] = ()
    angle: float | None = None
    shift: int | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "targets", tuple(int(q) for q in self.targets))
        object.__setattr__(self, "controls", tuple((int(q), str(p)) for q, p in self.controls))
        if self.kind in (PERM_SHIFT, GLOBAL_PHASE):
            if self.targets or self.controls:
                raise ValueError(f"{self.kind} acts on the whole register and takes no wires")
        elif len(self.targets) != 1:
            raise ValueError(f"{self.kind} needs exactly one target")
        if self.controls and self.kind not in CONTROLLED:
            raise ValueError(f"{self.kind} does not accept controls")
        for q, pol in self.controls:
            if pol not in (OPEN, CLOSED):
                raise ValueError(f"control polarity must be 'open' or 'closed', got {pol!r}")
        wires = [q for q, _ in self.controls]
        if len(set(wires)) != len(wires) or set(wires) & set(self.targets):
            raise ValueError(f"{self.kind}: repeated wire among targets/controls")
        if self.kind in ROTATIONS or self.kind == GLOBAL_PHASE:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"{self.kind} needs a finite angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")
        if self.kind == PERM_SHIFT:
            if self.shift is None:
                raise ValueError("PERM_SHIFT needs a shift")
            object.__setattr__(self, "shift", int(self.shift))
        elif self.shift is not None:
            raise ValueError(f"{self.kind} takes no shift")

    @property
    def target(self) -> int:
        return self.targets[0]

    def wires(self, n: int) -> tuple[int, ...]:
        if self.kind == PERM_SHIFT:
            return tuple(range(1, n + 1))
        return self.targets + tuple(q for q, _ in self.controls)

    def inverse(self) -> Gate:
        if self.kind in ROTATIONS or self.kind == GLOBAL_PHASE:
            return replace(self, angle=-self.angle)
        if self.kind == PERM_SHIFT:
            return replace(self, shift=-self.shift)
        return self

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "targets": list(self.targets), "controls": [[q, p] for q, p in self.controls]}
        if self.angle is not None:
            out["angle"] = self.angle
        if self.shift is not None:
            out["shift"] = self.shift
        return out

    @classmethod
    def from_dict(cls, data: dict) -> Gate:
        return cls(
            kind=data["kind"],
            targets=tuple(data.get("targets", ())),
            controls=tuple((q, p) for q, p in data.get("controls", ())),
            angle=data.get("angle"),
            shift=data.get("shift"),
        )


def _ctrl(controls, polarity: str = CLOSED) -> tuple[tuple[int, str], ...]:
    return tuple((q, polarity) if isinstance(q, int) else (q[0], q[1]) for q in controls)


def rx(theta: float, target: int) -> Gate:
    return Gate(RX, (target,), angle=theta)


def rz(theta: float, target: int) -> Gate:
    return Gate(RZ, (target,), angle=theta)


def hadamard(target: int) -> Gate:
    return Gate(H, (target,))


def xgate(target: int) -> Gate:
    return Gate(X, (target,))


def mcx(controls: Iterable, target: int, polarity: str = CLOSED) -> Gate:
    """Multi-controlled X; ``controls`` holds qubit labels or ``(qubit, polarity)`` pairs."""
    return Gate(MCX, (target,), _ctrl(controls, polarity))


def mcrz(theta: float, controls: Iterable, target: int, polarity: str = CLOSED) -> Gate:
    return Gate(MCRZ, (target,), _ctrl(controls, polarity), angle=theta)


def mcrx(theta: float, controls: Iterable, target: int, polarity: str = CLOSED) -> Gate:
    return Gate(MCRX, (target,), _ctrl(controls, polarity), angle=theta)


def perm_shift(s: int) -> Gate:
    return Gate(PERM_SHIFT, shift=s)


def global_phase(phi: float) -> Gate:
    return Gate(GLOBAL_PHASE, angle=phi)


def single_qubit_matrix(g: Gate) -> np.ndarray:
    """2x2 matrix applied to the target when all controls are satisfied."""
    if g.kind in (RX, MCRX):
        return _rx(g.angle)
    if g.kind in (RZ, MCRZ):
        return _rz(g.angle)
    if g.kind == H:
        return _HADAMARD
    if g.kind in (X, MCX):
        return _PAULI_X
    raise ValueError(f"{g.kind} is not a single-target gate")


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...] = ()
    global_phase: float = 0.0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("a circuit needs at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "global_phase", float(self.global_phase))
        for g in self.gates:
            for q in g.wires(self.n_qubits):
                if not 1 <= q <= self.n_qubits:
                    raise ValueError(f"{g.kind} uses qubit {q} outside [1, {self.n_qubits}]")

    def __add__(self, other: Circuit) -> Circuit:
        if other.n_qubits != self.n_qubits:
            raise ValueError("cannot concatenate circuits of different widths")
        return Circuit(self.n_qubits, self.gates + other.gates, self.global_phase + other.global_phase)

    def __mul__(self, reps: int) -> Circuit:
        return Circuit(self.n_qubits, self.gates * reps, self.global_phase * reps)

    def __len__(self) -> int:
        return len(self.gates)

    def inverse(self) -> Circuit:
        return Circuit(self.n_qubits, tuple(g.inverse() for g in reversed(self.gates)), -self.global_phase)

    def to_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "global_phase": self.global_phase,
            "gates": [g.to_dict() for g in self.gates],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> Circuit:
        gates = tuple(Gate.from_dict(g) for g in data["gates"])
        return cls(int(data["n_qubits"]), gates, float(data.get("global_phase", 0.0)))

    @classmethod
    def from_json(cls, text: str) -> Circuit:
        return cls.from_dict(json.loads(text))


def concat(n: int, parts: Iterable[Circuit | Gate]) -> Circuit:
    gates: list[Gate] = []
    phase = 0.0
    for part in parts:
        if isinstance(part, Gate):
            gates.append(part)
        else:
            if part.n_qubits != n:
                raise ValueError("width mismatch")
            gates.extend(part.gates)
            phase += part.global_phase
    return Circuit(n, tuple(gates), phase)


def _control_mask(g: Gate, idx: np.ndarray) -> np.ndarray:
    ok = np.ones(idx.shape, dtype=bool)
    for q, pol in g.controls:
        bit = (idx >> (q - 1)) & 1
        ok &= bit == (1 if pol == CLOSED else 0)
    return ok


def gate_unitary(g: Gate, n: int) -> np.ndarray:
    """Dense ``2**n`` unitary of a single gate, built column by column."""
    dim = 1 << n
    for q in g.wires(n):
        if not 1 <= q <= n:
            raise ValueError(f"qubit {q} outside [1, {n}]")
    if g.kind == GLOBAL_PHASE:
        return np.exp(1j * g.angle) * np.eye(dim, dtype=complex)
    cols = np.arange(dim)
    u = np.zeros((dim, dim), dtype=complex)
    if g.kind == PERM_SHIFT:
        u[(cols - g.shift) % dim, cols] = 1.0
        return u
    m = single_qubit_matrix(g)
    tbit = 1 << (g.target - 1)
    active = _control_mask(g, cols)
    idle = cols[~active]
    u[idle, idle] = 1.0
    c = cols[active]
    b = (c & tbit) != 0
    row0, row1 = c & ~tbit, c | tbit
    u[row0, c] = m[0, b.astype(int)]
    u[row1, c] = m[1, b.astype(int)]
    return u


def circuit_unitary(c: Circuit) -> np.ndarray:
    if c.n_qubits > MAX_DENSE_QUBITS:
        raise ValueError(f"dense evaluation limited to {MAX_DENSE_QUBITS} qubits, circuit has {c.n_qubits}")
    u = np.eye(1 << c.n_qubits, dtype=complex)
    for g in c.gates:
        u = gate_unitary(g, c.n_qubits) @ u
    return np.exp(1j * c.global_phase) * u


def _apply_gate(psi: np.ndarray, g: Gate, n: int) -> np.ndarray:
    """Act with one gate on a ``(2,)*n + batch`` tensor without forming its matrix."""
    if g.kind == GLOBAL_PHASE:
        return psi * np.exp(1j * g.angle)
    if g.kind == PERM_SHIFT:
        flat = psi.reshape((1 << n,) + psi.shape[n:])
        return np.roll(flat, -g.shift, axis=0).reshape(psi.shape)
    # axis 0 holds the most significant qubit q_n
    index: list = [slice(None)] * psi.ndim
    for q, pol in g.controls:
        index[n - q] = 1 if pol == CLOSED else 0
    index = tuple(index)
    sub = psi[index]
    t_axis = n - g.target - sum(1 for q, _ in g.controls if q > g.target)
    m = single_qubit_matrix(g)
    moved = np.tensordot(m, sub, axes=([1], [t_axis]))
    out = psi.copy()
    out[index] = np.moveaxis(moved, 0, t_axis)
    return out


def apply_to_state(c: Circuit, psi: np.ndarray, atol: float = 1e-10) -> np.ndarray:
    """Evolve a statevector (or a batch of column vectors) through the circuit."""
    psi = np.asarray(psi, dtype=complex)
    dim = 1 << c.n_qubits
    if psi.shape[0] != dim:
        raise ValueError(f"state has dimension {psi.shape[0]}, circuit needs {dim}")
    norms = np.linalg.norm(psi, axis=0)
    if np.any(np.abs(norms - 1.0) > atol):
        raise ValueError("input state is not normalized")
    batch = psi.shape[1:]
    t = psi.reshape((2,) * c.n_qubits + batch)
    for g in c.gates:
        t = _apply_gate(t, g, c.n_qubits)
    return np.exp(1j * c.global_phase) * t.reshape(psi.shape)


@dataclass
class ResourceMetrics:
    counts: dict[str, int] = field(default_factory=dict)
    total: int = 0
    depth: int = 0

    def line(self) -> str:
        parts = " ".join(f"{k}={v}" for k, v in sorted(self.counts.items()))
        return f"gates={self.total} depth={self.depth} {parts}".rstrip()


def resource_metrics(c: Circuit) -> ResourceMetrics:
    """Gate counts by kind and greedy layer depth.

    A gate occupies all of its wires for one layer; ``PERM_SHIFT`` occupies
    every wire and ``GLOBAL_PHASE`` none.
    """
    counts = Counter(g.kind for g in c.gates)
    level = [0] * (c.n_qubits + 1)
    for g in c.gates:
        wires = g.wires(c.n_qubits)
        if not wires:
            continue
        layer = max(level[q] for q in wires) + 1
        for q in wires:
            level[q] = layer
    return ResourceMetrics({k: counts[k] for k in GATE_KINDS if counts[k]}, sum(counts.values()), max(level))
