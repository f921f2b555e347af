"""One-way OpenQASM 3 export."""
from __future__ import annotations

from . import circuit as ir
from .circuit import Circuit, Gate
from .synthesis import lower_circuit


def _q(label: int) -> str:
    return f"q[{label - 1}]"


def _gate_lines(g: Gate) -> list[str]:
    if g.kind == ir.GLOBAL_PHASE:
        return [f"gphase({g.angle!r});"]
    if g.kind in (ir.RX, ir.RZ):
        return [f"{g.kind.lower()}({g.angle!r}) {_q(g.target)};"]
    if g.kind in (ir.H, ir.X):
        return [f"{g.kind.lower()} {_q(g.target)};"]
    if g.kind == ir.MCX:
        flips = [f"x {_q(q)};" for q, pol in g.controls if pol == ir.OPEN]
        wires = ", ".join(_q(q) for q, _ in g.controls) + f", {_q(g.target)}"
        k = len(g.controls)
        core = f"cx {wires};" if k == 1 else f"ctrl({k}) @ x {wires};"
        return flips + [core] + flips
    raise ValueError(f"{g.kind} should have been lowered before export")


def to_qasm(c: Circuit) -> str:
    """Serialize ``c`` after lowering shifts and controlled rotations to X/MCX/RZ/H networks."""
    low = lower_circuit(c)
    lines = ["OPENQASM 3.0;", 'include "stdgates.inc";', f"qubit[{c.n_qubits}] q;"]
    if low.global_phase:
        lines.append(f"gphase({low.global_phase!r});")
    for g in low.gates:
        lines.extend(_gate_lines(g))
    return "\n".join(lines) + "\n"
