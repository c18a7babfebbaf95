"""Spin operators and model Hamiltonians.

Spin operators use the spin-1/2 convention S = sigma/2 (eigenvalues +/-1/2).
Two sweep models are provided, identified by the tags ``"zz"`` and ``"zzz"``:

- zz:  H = omega_z sum_i S_i^z + omega_x sum_i S_i^x + 2 J2 sum_{i<j} S_i^z S_j^z,
       swept over J2 in [0, 2] with omega_z = -2, omega_x = 0.1;
- zzz: H = omega_x sum_i S_i^x + 4 J3 S_1^z S_2^z S_3^z,
       swept over J3 in [0, 5] with omega_x = 0.1.

An NMR reference Hamiltonian (chemical shifts plus scalar couplings) is also
constructed here; its parameter values are configuration inputs.
"""

from dataclasses import dataclass
import json
import math

import numpy as np

from .qmat import kron_all

N_QUBITS = 3

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

MODEL_TAGS = ("zz", "zzz")
J_RANGE = {"zz": (0.0, 2.0), "zzz": (0.0, 5.0)}
DEFAULT_STEPS = {"zz": 300, "zzz": 200}
DEFAULT_TAU = {"zz": 0.7, "zzz": 0.4}
TARGET_LABEL = {"zz": "W001", "zzz": "G"}
START_LABEL = {"zz": "000", "zzz": "---"}


def check_model_tag(model_tag):
    if model_tag not in MODEL_TAGS:
        raise ValueError(f"unknown model tag {model_tag!r}, expected one of {MODEL_TAGS}")


@dataclass(frozen=True)
class ModelParams:
    """Sweep-model parameters; defaults are the canonical settings."""

    omega_z: float = -2.0
    omega_x: float = 0.1
    j2: float = 0.0
    j3: float = 0.0

    def __post_init__(self):
        for name in ("omega_z", "omega_x", "j2", "j3"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not 0.0 <= self.j2 <= 2.0:
            raise ValueError(f"j2 must lie in [0, 2], got {self.j2}")
        if not 0.0 <= self.j3 <= 5.0:
            raise ValueError(f"j3 must lie in [0, 5], got {self.j3}")


@dataclass(frozen=True)
class NmrParams:
    """Chemical shifts (Hz) and symmetric scalar couplings (Hz) of three spins."""

    deltas: tuple
    j_couplings: tuple

    def __post_init__(self):
        if len(self.deltas) != N_QUBITS:
            raise ValueError(f"expected {N_QUBITS} chemical shifts, got {len(self.deltas)}")
        j = self.j_couplings
        if len(j) != N_QUBITS or any(len(row) != N_QUBITS for row in j):
            raise ValueError("j_couplings must be a 3x3 table")
        for i in range(N_QUBITS):
            if j[i][i] != 0.0:
                raise ValueError("j_couplings must have a zero diagonal")
            for k in range(i + 1, N_QUBITS):
                if j[i][k] != j[k][i]:
                    raise ValueError(f"j_couplings must be symmetric, J{i+1}{k+1} != J{k+1}{i+1}")

    def coupling(self, i, k):
        """J coupling between 1-based spins i and k, in Hz."""
        return self.j_couplings[i - 1][k - 1]


def spin_op(n_qubits, site, axis):
    """Spin operator sigma_axis/2 acting on the 1-based ``site`` of ``n_qubits``."""
    if axis not in _PAULI:
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    if not 1 <= site <= n_qubits:
        raise ValueError(f"site must lie in 1..{n_qubits}, got {site}")
    mats = [np.eye(2, dtype=complex)] * n_qubits
    mats[site - 1] = _PAULI[axis] / 2
    return kron_all(mats)


def _sum_axis(axis):
    return sum(spin_op(N_QUBITS, i, axis) for i in range(1, N_QUBITS + 1))


def _pair_zz():
    total = np.zeros((8, 8), dtype=complex)
    for i in range(1, N_QUBITS + 1):
        for k in range(i + 1, N_QUBITS + 1):
            total += spin_op(N_QUBITS, i, "z") @ spin_op(N_QUBITS, k, "z")
    return total


_SX_TOTAL = _sum_axis("x")
_SZ_TOTAL = _sum_axis("z")
_SZSZ_PAIRS = _pair_zz()
_SZSZSZ = spin_op(N_QUBITS, 1, "z") @ spin_op(N_QUBITS, 2, "z") @ spin_op(N_QUBITS, 3, "z")


def h_zz_parts(p):
    """Transverse and longitudinal parts of the two-body model."""
    hx = p.omega_x * _SX_TOTAL
    hz = p.omega_z * _SZ_TOTAL + 2.0 * p.j2 * _SZSZ_PAIRS
    return hx, hz


def h_zzz_parts(p):
    """Transverse and longitudinal parts of the three-body model."""
    hx = p.omega_x * _SX_TOTAL
    hz = 4.0 * p.j3 * _SZSZSZ
    return hx, hz


def h_zz(p):
    """Two-body Ising Hamiltonian with transverse field."""
    hx, hz = h_zz_parts(p)
    return hx + hz


def h_zzz(p):
    """Three-body interaction Hamiltonian with transverse field."""
    hx, hz = h_zzz_parts(p)
    return hx + hz


def hamiltonian(model_tag, p):
    """Full Hamiltonian of the tagged model."""
    check_model_tag(model_tag)
    return h_zz(p) if model_tag == "zz" else h_zzz(p)


def hamiltonian_parts(model_tag, p):
    """(transverse, longitudinal) split of the tagged model."""
    check_model_tag(model_tag)
    return h_zz_parts(p) if model_tag == "zz" else h_zzz_parts(p)


def with_coupling(model_tag, p, j_value):
    """Copy of ``p`` with the tagged model's coupling set to ``j_value``."""
    check_model_tag(model_tag)
    if model_tag == "zz":
        return ModelParams(omega_z=p.omega_z, omega_x=p.omega_x, j2=j_value, j3=p.j3)
    return ModelParams(omega_z=p.omega_z, omega_x=p.omega_x, j2=p.j2, j3=j_value)


def coupling_derivative(model_tag):
    """dH/dJ of the tagged model (independent of the parameter values)."""
    check_model_tag(model_tag)
    return 2.0 * _SZSZ_PAIRS if model_tag == "zz" else 4.0 * _SZSZSZ


def h_nmr(nmr):
    """NMR reference Hamiltonian: sum_i 2 pi delta_i S_i^z + sum_{i<j} 2 pi J_ij S_i^z S_j^z."""
    total = np.zeros((8, 8), dtype=complex)
    for i in range(1, N_QUBITS + 1):
        total += 2 * np.pi * nmr.deltas[i - 1] * spin_op(N_QUBITS, i, "z")
    for i in range(1, N_QUBITS + 1):
        for k in range(i + 1, N_QUBITS + 1):
            total += 2 * np.pi * nmr.coupling(i, k) * spin_op(N_QUBITS, i, "z") @ spin_op(N_QUBITS, k, "z")
    return total


def load_model_params(path):
    """Read omega_z/omega_x (and optional j2/j3) from a JSON config file."""
    with open(path, encoding="ascii") as fh:
        raw = json.load(fh)
    kwargs = {k: float(raw[k]) for k in ("omega_z", "omega_x", "j2", "j3") if k in raw}
    return ModelParams(**kwargs)


def load_nmr_params(path):
    """Read deltas and j_couplings from a JSON config file."""
    with open(path, encoding="ascii") as fh:
        raw = json.load(fh)
    try:
        deltas = tuple(float(x) for x in raw["deltas"])
        couplings = tuple(tuple(float(x) for x in row) for row in raw["j_couplings"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{path}: malformed NMR config ({exc})") from exc
    return NmrParams(deltas=deltas, j_couplings=couplings)
