"""Lowering of Toeplitz Hamiltonian terms to circuits.

Two families of terms have closed-form circuits:

* a lone power-of-two band ``k = 2**m``, evolved by an inner product formula
  over the X-string ``T_k`` and the shifted interior ``E_k``;
* a congruence class with one shared coefficient, whose summed band is a
  Hadamard-conjugated diagonal and is evolved exactly.

:func:`synth_full_evolution` classifies a spec and assembles these with a
first-order outer product formula.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import circuit as ir
from .circuit import Circuit, Gate
from .toeplitz import COEFF_ATOL, ToeplitzSpec, congruence_class

SIGMA_PLACEMENTS = ("auto", "inside", "hoisted")
DEFAULT_TROTTER = 16


class UnsupportedSpecError(ValueError):
    """Raised when a spec has bands neither closed form covers."""

    def __init__(self, bands):
        self.bands = sorted(bands)
        super().__init__(f"unsupported bands: {self.bands}")


@dataclass(frozen=True)
class TrotterParams:
    u: int = DEFAULT_TROTTER
    v: int = DEFAULT_TROTTER

    def __post_init__(self):
        if self.u < 1 or self.v < 1:
            raise ValueError(f"Trotter numbers must be >= 1, got u={self.u}, v={self.v}")


@dataclass
class SynthesisPlan:
    n_qubits: int
    phase_term: float | None = None
    t1_terms: list[tuple[int, float]] = field(default_factory=list)
    t2_terms: list[tuple[int, float]] = field(default_factory=list)
    unsupported: list[int] = field(default_factory=list)

    @property
    def supported(self) -> bool:
        return not self.unsupported


def classify(spec: ToeplitzSpec, atol: float = COEFF_ATOL) -> SynthesisPlan:
    """Sort the nonzero bands of ``spec`` into exact classes, lone power-of-two bands, or leftovers."""
    a = spec.coefficients
    plan = SynthesisPlan(spec.n_qubits, phase_term=a[0] if a[0] != 0.0 else None)
    for j in range(1, spec.n_qubits + 1):
        members = congruence_class(spec.n_qubits, j).members
        nonzero = [k for k in members if a[k] != 0.0]
        if not nonzero:
            continue
        values = [a[k] for k in members]
        leader = members[0]
        if max(values) - min(values) <= atol:
            plan.t2_terms.append((j, a[leader]))
        elif nonzero == [leader]:
            plan.t1_terms.append((j - 1, a[leader]))
        else:
            plan.unsupported.extend(nonzero)
    plan.unsupported.sort()
    return plan


def _check(name, value, lo, hi):
    if not lo <= value <= hi:
        raise ValueError(f"{name}={value} outside [{lo}, {hi}]")


def synth_Tk_evolution(n: int, m: int, theta: float) -> Circuit:
    """``exp(-i theta T_k)`` is one X rotation on qubit ``q_{m+1}``."""
    _check("m", m, 0, n - 1)
    return Circuit(n, (ir.rx(2 * theta, m + 1),))


def synth_Ek_evolution(n: int, m: int, theta: float) -> Circuit:
    """``exp(-i theta E_k)``.

    ``E_k`` is ``T_k`` restricted to basis states whose bits above ``m`` are
    not all ones, so the evolution is a plain rotation undone on the
    all-ones branch.
    """
    _check("m", m, 0, n - 2)
    target = m + 1
    upper = range(m + 2, n + 1)
    return Circuit(n, (ir.rx(2 * theta, target), ir.mcrx(-2 * theta, upper, target)))


def lower_perm_shift(n: int, s: int) -> Circuit:
    """Elementary-gate circuit for ``|i> -> |(i - s) mod 2^n>`` with ``s = +-2^m``.

    Shifting by ``2^m`` is a unit decrement (or increment) of the sub-register
    ``q_{m+1}..q_n``, built as a ladder of multi-controlled X gates, highest
    bit first.  Decrement conditions on open controls (borrow), increment on
    closed ones (carry).
    """
    dim = 1 << n
    r = s % dim
    if r == 0:
        return Circuit(n)
    if r & (r - 1) == 0:
        m, polarity = r.bit_length() - 1, ir.OPEN
    elif (dim - r) & (dim - r - 1) == 0:
        m, polarity = (dim - r).bit_length() - 1, ir.CLOSED
    else:
        raise ValueError(f"only shifts by +-2^m are supported, got {s}")
    gates = [ir.mcx(range(m + 1, q), q, polarity) for q in range(n, m + 1, -1)]
    gates.append(ir.xgate(m + 1))
    return Circuit(n, tuple(gates))


def lower_gate(g: Gate, n: int) -> list[Gate]:
    """Rewrite one gate over ``{RX, RZ, H, X, MCX, GLOBAL_PHASE}``."""
    if g.kind == ir.PERM_SHIFT:
        return list(lower_perm_shift(n, g.shift).gates)
    if g.kind == ir.MCX and not g.controls:
        return [ir.xgate(g.target)]
    if g.kind == ir.MCRX:
        if not g.controls:
            return [ir.rx(g.angle, g.target)]
        core = Gate(ir.MCRZ, g.targets, g.controls, angle=g.angle)
        return [ir.hadamard(g.target), *lower_gate(core, n), ir.hadamard(g.target)]
    if g.kind == ir.MCRZ:
        if not g.controls:
            return [ir.rz(g.angle, g.target)]
        flip = Gate(ir.MCX, g.targets, g.controls)
        return [ir.rz(g.angle / 2, g.target), flip, ir.rz(-g.angle / 2, g.target), flip]
    return [g]


def lower_circuit(c: Circuit) -> Circuit:
    """Same unitary, with shifts and controlled rotations expanded."""
    gates = [h for g in c.gates for h in lower_gate(g, c.n_qubits)]
    return Circuit(c.n_qubits, tuple(gates), c.global_phase)


def synth_Mk_evolution(n: int, m: int, a: float, t: float, v: int = DEFAULT_TROTTER) -> Circuit:
    """Evolution under the band ``k = 2**m`` with coefficient ``a`` for time ``t``.

    On the top qubit the band is ``a T_k`` and one rotation is exact.  Below
    it, each of the ``v`` steps applies ``exp(-i theta T_k)`` followed by
    ``P^{-k} exp(-i theta E_k) P^{k}`` with ``theta = a t / v``.
    """
    _check("m", m, 0, n - 1)
    if v < 1:
        raise ValueError(f"v must be >= 1, got {v}")
    if m == n - 1:
        return Circuit(n, (ir.rx(2 * a * t, n),))
    k = 1 << m
    theta = t * a / v
    step = ir.concat(n, [
        synth_Tk_evolution(n, m, theta),
        ir.perm_shift(k),
        synth_Ek_evolution(n, m, theta),
        ir.perm_shift(-k),
    ])
    return step * v


def sigma_angle(n: int, j: int, a: float, t: float) -> float:
    return 2.0 * t * a * 2.0 ** (n - j)


def synth_sigma_evolution(n: int, j: int, a: float, t: float) -> Circuit:
    """Exact evolution under a constant-coefficient class ``C_j``.

    Hadamards on ``q_j..q_n`` diagonalize the class sum; the diagonal part is
    a Z rotation on ``q_j`` conditioned on ``q_{j+1}..q_n`` all being zero.
    """
    _check("j", j, 1, n)
    phi = sigma_angle(n, j, a, t)
    layer = [ir.hadamard(q) for q in range(j, n + 1)]
    upper = range(j + 1, n + 1)
    core = ir.mcrz(phi, upper, j, ir.OPEN) if j < n else ir.rz(phi, j)
    return Circuit(n, (*layer, core, *layer))


def synth_full_evolution(
    spec: ToeplitzSpec,
    t: float,
    params: TrotterParams | None = None,
    sigma_placement: str = "auto",
) -> Circuit:
    """First-order product-formula circuit for ``exp(-i H t)``.

    ``a_0`` becomes a global phase.  Lone power-of-two bands are repeated
    ``u`` times for ``t/u`` each (inner Trotter number ``v``), in ascending
    order of the band.  Constant classes are exact; where they sit is set by
    ``sigma_placement``:

    ``"auto"``
        outside the repetition only when there are no power-of-two band
        terms (the classes commute with each other, not with those bands);
    ``"inside"``
        always inside the repetition;
    ``"hoisted"``
        always outside, whether or not that is exact.
    """
    params = params or TrotterParams()
    if sigma_placement not in SIGMA_PLACEMENTS:
        raise ValueError(f"sigma_placement must be one of {SIGMA_PLACEMENTS}")
    plan = classify(spec)
    if plan.unsupported:
        raise UnsupportedSpecError(plan.unsupported)
    n = spec.n_qubits
    a0 = spec.coefficients[0]
    head: list = [ir.global_phase(-a0 * t + 0.0)]  # + 0.0 normalizes -0.0

    hoist = sigma_placement == "hoisted" or (sigma_placement == "auto" and not plan.t1_terms)
    if hoist:
        head += [synth_sigma_evolution(n, j, a, t) for j, a in plan.t2_terms]
        if not plan.t1_terms:
            return ir.concat(n, head)
        body = [synth_Mk_evolution(n, m, a, t / params.u, params.v) for m, a in plan.t1_terms]
    else:
        terms = [(m + 1, "t1", a) for m, a in plan.t1_terms] + [(j, "t2", a) for j, a in plan.t2_terms]
        body = []
        for j, kind, a in sorted(terms):
            if kind == "t1":
                body.append(synth_Mk_evolution(n, j - 1, a, t / params.u, params.v))
            else:
                body.append(synth_sigma_evolution(n, j, a, t / params.u))
    return ir.concat(n, head) + ir.concat(n, body) * params.u


def synth_poisson(n: int, dx: float, t: float, v: int = DEFAULT_TROTTER) -> Circuit:
    """Circuit for ``exp(-i L t)`` with ``L`` the ``1/dx^2`` second-difference matrix.

    The diagonal ``2/dx^2`` part is only a global phase; the off-diagonal part
    is the ``k = 1`` band.
    """
    if not dx > 0:
        raise ValueError(f"grid spacing must be positive, got {dx}")
    scale = 1.0 / (dx * dx)
    return ir.concat(n, [ir.global_phase(-2.0 * scale * t), synth_Mk_evolution(n, 0, -scale, t, v)])
