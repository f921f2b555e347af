"""Symmetric Toeplitz Hamiltonians and their band decomposition.

A Hamiltonian on ``n`` qubits is an ``N x N`` matrix (``N = 2**n``) with
``H[i, j] = a[|i - j|]``.  It splits into single-band pieces ``M_k``; the
power-of-two bands and the constant-coefficient congruence classes have
closed forms in terms of Pauli X strings and cyclic shifts, built here as
dense matrices so they can be checked against each other.

Bit ``m`` of a basis index lives on qubit ``q_{m+1}``; in Kronecker products
the most significant qubit ``q_n`` is the leftmost factor.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path

import numpy as np

COEFF_ATOL = 1e-12

I2 = np.eye(2)
X = np.array([[0.0, 1.0], [1.0, 0.0]])
Z = np.array([[1.0, 0.0], [0.0, -1.0]])
H = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
PROJ0 = np.array([[1.0, 0.0], [0.0, 0.0]])


def kron_all(factors) -> np.ndarray:
    """Kronecker product of ``factors`` listed from most to least significant qubit."""
    return reduce(np.kron, factors, np.eye(1))


@dataclass(frozen=True)
class ToeplitzSpec:
    """Real symmetric Toeplitz Hamiltonian on ``n_qubits`` qubits.

    ``coefficients[k]`` is the value on the ``k``-th off-diagonal.  When a
    bandwidth ``b`` is given every coefficient beyond ``b`` must vanish.
    """

    n_qubits: int
    coefficients: tuple[float, ...]
    bandwidth: int | None = None

    def __post_init__(self):
        if not isinstance(self.n_qubits, (int, np.integer)) or self.n_qubits < 1:
            raise ValueError(f"n_qubits must be a positive integer, got {self.n_qubits!r}")
        coeffs = tuple(float(c) for c in self.coefficients)
        object.__setattr__(self, "n_qubits", int(self.n_qubits))
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients for n={self.n_qubits}, got {len(coeffs)}")
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("coefficients must be finite")
        b = self.bandwidth
        if b is not None:
            if not 0 <= b < self.dim - 1:
                raise ValueError(f"bandwidth must satisfy 0 <= b < {self.dim - 1}, got {b}")
            bad = [k for k in range(b + 1, self.dim) if coeffs[k] != 0.0]
            if bad:
                raise ValueError(f"bands {bad} are nonzero beyond bandwidth {b}")

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    @classmethod
    def from_bands(cls, n_qubits: int, bands: dict[int, float], bandwidth: int | None = None) -> ToeplitzSpec:
        coeffs = [0.0] * (1 << n_qubits)
        for k, value in bands.items():
            coeffs[k] = value
        return cls(n_qubits, tuple(coeffs), bandwidth)

    @classmethod
    def poisson(cls, n_qubits: int, dx: float = 1.0) -> ToeplitzSpec:
        """Second-difference Laplacian ``(1/dx^2) tridiag(-1, 2, -1)``."""
        if not dx > 0:
            raise ValueError(f"grid spacing must be positive, got {dx}")
        scale = 1.0 / (dx * dx)
        bandwidth = 1 if n_qubits > 1 else None
        return cls.from_bands(n_qubits, {0: 2.0 * scale, 1: -scale}, bandwidth)

    @classmethod
    def from_dict(cls, data: dict) -> ToeplitzSpec:
        n = int(data["n_qubits"])
        coeffs = [float(c) for c in data.get("coefficients", [])]
        dim = 1 << n
        if len(coeffs) > dim:
            raise ValueError(f"got {len(coeffs)} coefficients, at most {dim} allowed for n={n}")
        coeffs += [0.0] * (dim - len(coeffs))
        return cls(n, tuple(coeffs), data.get("bandwidth"))

    def to_dict(self) -> dict:
        return {"n_qubits": self.n_qubits, "coefficients": list(self.coefficients), "bandwidth": self.bandwidth}

    @classmethod
    def load(cls, path: str | Path) -> ToeplitzSpec:
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class CongruenceClass:
    """Band indices whose lowest set bit sits at position ``j - 1``."""

    n_qubits: int
    j: int
    members: tuple[int, ...] = field(default=())

    @property
    def leader(self) -> int:
        return 1 << (self.j - 1)


def _check_range(name: str, value: int, lo: int, hi: int):
    if not lo <= value <= hi:
        raise ValueError(f"{name}={value} outside [{lo}, {hi}]")


def congruence_class(n: int, j: int) -> CongruenceClass:
    _check_range("j", j, 1, n)
    step = 1 << j
    members = tuple(range(1 << (j - 1), 1 << n, step))
    return CongruenceClass(n, j, members)


def class_of(k: int) -> int:
    """Index ``j`` of the congruence class containing band ``k >= 1``."""
    if k < 1:
        raise ValueError("band 0 belongs to no congruence class")
    return (k & -k).bit_length()


def materialize(spec: ToeplitzSpec) -> np.ndarray:
    idx = np.arange(spec.dim)
    a = np.asarray(spec.coefficients)
    return a[np.abs(idx[:, None] - idx[None, :])]


def build_Mk(spec: ToeplitzSpec, k: int) -> np.ndarray:
    """Single band ``a_k (sum_i |i><i+k| + |i+k><i|)``; ``a_0 I`` for ``k = 0``."""
    n_dim = spec.dim
    _check_range("k", k, 0, n_dim - 1)
    a = spec.coefficients[k]
    if k == 0:
        return a * np.eye(n_dim)
    out = np.zeros((n_dim, n_dim))
    i = np.arange(n_dim - k)
    out[i, i + k] = a
    out[i + k, i] = a
    return out


def build_Tk(n: int, m: int) -> np.ndarray:
    """Pauli X on qubit ``q_{m+1}``: flips bit ``m`` of every basis index."""
    _check_range("m", m, 0, n - 1)
    return kron_all([I2] * (n - m - 1) + [X] + [I2] * m)


def build_Ek(n: int, m: int) -> np.ndarray:
    """``T_k`` (``k = 2**m``) with the trailing ``2k x 2k`` block zeroed."""
    _check_range("m", m, 0, n - 2)
    out = build_Tk(n, m)
    cut = (1 << n) - 2 * (1 << m)
    out[cut:, cut:] = 0.0
    return out


def build_P_power(n: int, s: int) -> np.ndarray:
    """Permutation ``|i> -> |(i - s) mod N>``."""
    n_dim = 1 << n
    i = np.arange(n_dim)
    out = np.zeros((n_dim, n_dim))
    out[(i - s) % n_dim, i] = 1.0
    return out


def theorem1_rhs(n: int, m: int, a: float) -> np.ndarray:
    """Closed form of the band ``k = 2**m``: ``a (T_k + P^{-k} E_k P^{k})``, or ``a T_k`` on the top qubit.

    The shift that moves the retained pairs of ``E_k`` onto the odd pairs is
    the increment ``P^{-k}`` (``P`` decrements).
    """
    _check_range("m", m, 0, n - 1)
    if m == n - 1:
        return a * build_Tk(n, m)
    k = 1 << m
    return a * (build_Tk(n, m) + build_P_power(n, -k) @ build_Ek(n, m) @ build_P_power(n, k))


def class_coefficient(spec: ToeplitzSpec, j: int, atol: float = COEFF_ATOL) -> float:
    """The shared coefficient of class ``C_j``; raises if it is not constant."""
    members = congruence_class(spec.n_qubits, j).members
    values = [spec.coefficients[k] for k in members]
    if max(values) - min(values) > atol:
        raise ValueError(f"coefficients over class C_{j} = {members} are not constant: {values}")
    return values[0]


def build_sigma_sum(spec: ToeplitzSpec, j: int) -> np.ndarray:
    class_coefficient(spec, j)
    members = congruence_class(spec.n_qubits, j).members
    return sum(build_Mk(spec, k) for k in members)


def build_sigma_factored(n: int, j: int, a: float) -> np.ndarray:
    """``a (I+X)^{n-j} (x) X (x) I^{j-1}``."""
    _check_range("j", j, 1, n)
    return a * kron_all([I2 + X] * (n - j) + [X] + [I2] * (j - 1))


def build_sigma_diagonalized(n: int, j: int, a: float) -> np.ndarray:
    """Same operator written as Hadamard conjugate of a diagonal: ``a 2^{n-j} W D W``."""
    _check_range("j", j, 1, n)
    # unnormalized Hadamards keep every product exact; W = w / sqrt(2)^(n-j+1)
    w = kron_all([H * math.sqrt(2.0)] * (n - j + 1) + [I2] * (j - 1))
    w = np.rint(w)
    d = kron_all([PROJ0] * (n - j) + [Z] + [I2] * (j - 1))
    return a * 2.0 ** (n - j) * (w @ d @ w) / 2.0 ** (n - j + 1)
