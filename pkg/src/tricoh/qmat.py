"""Dense complex linear algebra for small multi-qubit systems.

All matrices and state vectors are numpy arrays with complex entries.
Conventions used throughout the package:

- Qubit 1 is the most significant tensor factor, so the computational basis
  index k in 0..2^n - 1 spells the bits of qubits (1, ..., n) left to right.
- |0> is the S^z = +1/2 state of a spin-1/2.
- Pure states follow a fixed phase convention: the largest-magnitude
  amplitude is real and nonnegative (first index on ties).

Two fidelity conventions are provided. ``state_fidelity`` is the squared
Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2, which reduces to <psi|b|psi>
for a pure first argument. ``root_fidelity`` is its square root, the
amplitude-overlap convention used for all reported sweep and endpoint
fidelities in this package.
"""

from dataclasses import dataclass
from functools import reduce
import json

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class GroundState:
    """Lowest eigenpair of a Hermitian matrix.

    ``degenerate`` is set when the two lowest eigenvalues are closer than
    ``DEGENERACY_TOL``, in which case the returned state is one arbitrary
    (but deterministic) member of the ground space.
    """

    energy: float
    state: np.ndarray
    degenerate: bool


def _as_square(m, name="matrix"):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def _check_hermitian(m, tol=HERMITICITY_TOL, name="matrix"):
    dev = np.abs(m - m.conj().T).max()
    if dev > tol:
        raise ValueError(f"{name} is not Hermitian: max deviation {dev:.3e} exceeds {tol:.1e}")


def kron(a, b):
    """Kronecker product; the left factor is the most significant subsystem."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(mats):
    """Kronecker product of a sequence of matrices, left to right."""
    return reduce(kron, mats)


def partial_trace(rho, n_qubits, keep):
    """Reduced density matrix over the 1-based qubit indices in ``keep``.

    The kept qubits retain their relative order. The trace is preserved.
    """
    rho = _as_square(rho, "rho")
    dim = 2**n_qubits
    if rho.shape != (dim, dim):
        raise ValueError(f"dimension mismatch: expected {dim}x{dim} for {n_qubits} qubits, got {rho.shape}")
    keep = sorted(set(int(q) for q in keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if keep[0] < 1 or keep[-1] > n_qubits:
        raise ValueError(f"keep indices must lie in 1..{n_qubits}, got {keep}")
    tensor = rho.reshape([2] * (2 * n_qubits))
    drop = [q - 1 for q in range(1, n_qubits + 1) if q not in keep]
    live = n_qubits
    for axis in reversed(drop):
        tensor = np.trace(tensor, axis1=axis, axis2=axis + live)
        live -= 1
    d = 2 ** len(keep)
    return tensor.reshape(d, d)


def dephase(rho):
    """Zero all off-diagonal entries in the computational (S^z) basis."""
    rho = _as_square(rho, "rho")
    return np.diag(np.diag(rho)).astype(complex)


def normalize_phase(vec):
    """Normalize a state vector and fix its global phase.

    The largest-magnitude amplitude (first index on ties within 1e-12) is
    made real and nonnegative.
    """
    v = np.asarray(vec, dtype=complex)
    norm = np.linalg.norm(v)
    if norm < 1e-300:
        raise ValueError("cannot normalize the zero vector")
    v = v / norm
    mags = np.abs(v)
    idx = int(np.argmax(mags > mags.max() - 1e-12))
    pivot = v[idx]
    return v * (pivot.conjugate() / abs(pivot))


def eig_hermitian(h):
    """Eigendecomposition of a Hermitian matrix with deterministic output.

    Eigenvalues are ascending. Within any degenerate cluster (consecutive
    eigenvalue gaps below ``DEGENERACY_TOL``) the eigenvectors are rebuilt by
    projecting standard basis vectors onto the cluster subspace and
    orthonormalizing in index order, so identical inputs always yield
    identical eigenvectors regardless of backend rotation freedom. Every
    eigenvector carries the ``normalize_phase`` convention.
    """
    h = _as_square(h, "h")
    _check_hermitian(h, name="h")
    w, v = np.linalg.eigh(h)
    n = len(w)
    start = 0
    for stop in range(1, n + 1):
        if stop < n and w[stop] - w[stop - 1] < DEGENERACY_TOL:
            continue
        if stop - start > 1:
            v[:, start:stop] = _canonical_cluster_basis(v[:, start:stop])
        for k in range(start, stop):
            v[:, k] = normalize_phase(v[:, k])
        start = stop
    return Spectrum(eigenvalues=w, eigenvectors=v)


def _canonical_cluster_basis(block):
    """Deterministic orthonormal basis of the column span of ``block``."""
    dim, size = block.shape
    projector = block @ block.conj().T
    basis = []
    for i in range(dim):
        u = projector[:, i].copy()
        for b in basis:
            u -= b * np.vdot(b, u)
        norm = np.linalg.norm(u)
        if norm > 1e-8:
            basis.append(u / norm)
            if len(basis) == size:
                break
    if len(basis) < size:
        # fall back to the backend basis if the pivoting rule ran out of columns
        return block
    return np.column_stack(basis)


def ground_state(h):
    """Lowest eigenpair of a Hermitian matrix (see ``GroundState``)."""
    spec = eig_hermitian(h)
    w = spec.eigenvalues
    degenerate = len(w) > 1 and (w[1] - w[0]) < DEGENERACY_TOL
    return GroundState(energy=float(w[0]), state=spec.eigenvectors[:, 0].copy(), degenerate=degenerate)


def expm_hermitian(h, t):
    """Unitary exp(-i h t) of a Hermitian matrix, via eigendecomposition."""
    h = _as_square(h, "h")
    _check_hermitian(h, name="h")
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def _sqrtm_psd(rho):
    w, v = np.linalg.eigh(rho)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def root_fidelity(a, b):
    """Uhlmann root fidelity Tr sqrt(sqrt(a) b sqrt(a)), in [0, 1].

    This amplitude-overlap convention (|<psi|phi>| for pure states) is the
    one used for reported sweep fidelities.
    """
    a = _as_square(a, "a")
    b = _as_square(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    sa = _sqrtm_psd(a)
    w = np.linalg.eigvalsh(sa @ b @ sa)
    f = float(np.sqrt(np.clip(w, 0.0, None)).sum())
    return min(max(f, 0.0), 1.0)


def state_fidelity(a, b):
    """Squared Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2, in [0, 1].

    Reduces to <psi|b|psi> when ``a`` is pure; symmetric; equals 1 iff a = b.
    """
    return root_fidelity(a, b) ** 2


def unitary_fidelity(u1, u2):
    """Entanglement fidelity |Tr(U1 U2^dag)|^2 / d^2 between two unitaries.

    Invariant under a global phase of either argument.
    """
    u1 = _as_square(u1, "u1")
    u2 = _as_square(u2, "u2")
    if u1.shape != u2.shape:
        raise ValueError(f"dimension mismatch: {u1.shape} vs {u2.shape}")
    d = u1.shape[0]
    eye = np.eye(d)
    for name, u in (("u1", u1), ("u2", u2)):
        dev = np.abs(u.conj().T @ u - eye).max()
        if dev > 1e-8:
            raise ValueError(f"{name} is not unitary: max deviation {dev:.3e} exceeds 1e-08")
    f = abs(np.trace(u1 @ u2.conj().T)) ** 2 / d**2
    return min(max(float(f), 0.0), 1.0)


def validate_density(m, tol=HERMITICITY_TOL, repair=False):
    """Check (or repair) the density-matrix invariants of ``m``.

    Checks Hermiticity, unit trace, and positive semidefiniteness within
    ``tol``. With ``repair`` the matrix is symmetrized, negative eigenvalues
    are clipped to zero, and the trace is renormalized to 1; otherwise any
    violation raises a ``ValueError`` naming the failed invariant and the
    amount by which it failed.
    """
    m = _as_square(m, "density matrix")
    herm_dev = float(np.abs(m - m.conj().T).max())
    trace_dev = float(abs(np.trace(m) - 1.0))
    sym = (m + m.conj().T) / 2
    eigs = np.linalg.eigvalsh(sym)
    min_eig = float(eigs[0])
    if repair:
        w, v = np.linalg.eigh(sym)
        w = np.clip(w, 0.0, None)
        total = w.sum()
        if total < 1e-300:
            raise ValueError("density matrix repair failed: all eigenvalues nonpositive")
        return (v * (w / total)) @ v.conj().T
    if herm_dev > tol:
        raise ValueError(f"not Hermitian: max deviation {herm_dev:.3e} exceeds tolerance {tol:.1e}")
    if trace_dev > max(tol, TRACE_TOL):
        raise ValueError(f"trace differs from 1 by {trace_dev:.3e}, exceeds tolerance {max(tol, TRACE_TOL):.1e}")
    if min_eig < -max(tol, PSD_TOL):
        raise ValueError(
            f"negative eigenvalue {min_eig:.3e} below tolerance -{max(tol, PSD_TOL):.1e}"
        )
    return m


def save_density(path, rho):
    """Write a density matrix as JSON {"dim": d, "re": [[...]], "im": [[...]]}."""
    rho = _as_square(rho, "rho")
    payload = {
        "dim": rho.shape[0],
        "re": [[float(x) for x in row] for row in rho.real],
        "im": [[float(x) for x in row] for row in rho.imag],
    }
    with open(path, "w", encoding="ascii") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")


def load_density(path):
    """Read a density matrix written by ``save_density``.

    Only the shape is validated here; run ``validate_density`` on the result
    to enforce the physical invariants.
    """
    with open(path, encoding="ascii") as fh:
        payload = json.load(fh)
    try:
        dim = int(payload["dim"])
        re = np.asarray(payload["re"], dtype=float)
        im = np.asarray(payload["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{path}: malformed density-matrix file ({exc})") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ValueError(f"{path}: arrays do not match dim={dim}")
    return re + 1j * im
