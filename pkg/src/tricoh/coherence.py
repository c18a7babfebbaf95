"""Coherence decompositions built on the quantum Jensen-Shannon divergence.

The divergence J(rho, sigma) = [S_r(rho||m) + S_r(sigma||m)]/2 with
m = (rho + sigma)/2 is computed in base-2 logarithms by default, which bounds
J by 1 and its square root (the distance D) by 1 for any pair of states.
Every call cross-checks the defining form against the entropic form
S(m) - S(rho)/2 - S(sigma)/2 and fails loudly if the two routes disagree.

``coherence_report`` evaluates the full decomposition for a three-qubit
state: total, global, local and absolute coherence, the 1:23 and 2:3
partition terms, the pairwise terms entering the monogamy difference, and
the four trade-off slacks (each slack is the inequality's right-hand sum
minus its left-hand term, so validity means slack >= 0 up to rounding).

``embed_tetrahedron`` places the four states rho, pi(rho), dephased pi(rho)
and rho_1 x rho_23 in Euclidean 3-space so that pairwise point distances
reproduce the six inter-state distances, using the gauge: rho at the origin,
dephased pi(rho) on the +x axis, pi(rho) in the upper xy half-plane. Four
points with pairwise metric distances need not embed exactly; cosines are
clamped and the worst mismatch is reported as the residual.
"""

from dataclasses import dataclass, fields
import math

import numpy as np

from .qmat import partial_trace, dephase, kron, _as_square
from .states import marginals, pi_product, split_1_23

# eigenvalues below this floor are treated as exact zeros inside logarithms
EIG_FLOOR = 1e-12
# weight of rho outside the support of sigma that triggers the +inf signal
SUPPORT_WEIGHT_TOL = 1e-10
# disagreement bound between the two qjsd computation routes
CROSS_CHECK_TOL = 1e-9
# denominators below this collapse a tetrahedron vertex instead of dividing
EMBED_EPS = 1e-9


def _log_scale(base):
    if base <= 1.0:
        raise ValueError(f"log base must exceed 1, got {base}")
    return math.log(base)


def von_neumann_entropy(rho, base=2.0):
    """S(rho) = -sum_k lambda_k log lambda_k, with 0 log 0 = 0."""
    rho = _as_square(rho, "rho")
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    w = w[w > EIG_FLOOR]
    return float(-(w * np.log(w)).sum() / _log_scale(base))


def relative_entropy(rho, sigma, base=2.0):
    """S_r(rho||sigma) = Tr rho (log rho - log sigma), or +inf on support mismatch.

    Support containment is decided with the ``EIG_FLOOR`` eigenvalue cutoff:
    if rho places more than ``SUPPORT_WEIGHT_TOL`` weight on eigenvectors of
    sigma whose eigenvalues fall below the floor, ``math.inf`` is returned.
    """
    rho = _as_square(rho, "rho")
    sigma = _as_square(sigma, "sigma")
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    p, u = np.linalg.eigh((rho + rho.conj().T) / 2)
    q, v = np.linalg.eigh((sigma + sigma.conj().T) / 2)
    p = np.clip(p, 0.0, None)
    q = np.clip(q, 0.0, None)
    # weight_j = sum_i p_i |<u_i|v_j>|^2, the weight of rho on sigma's j-th eigenvector
    overlap = np.abs(u.conj().T @ v) ** 2
    weight = p @ overlap
    if np.any((q <= EIG_FLOOR) & (weight > SUPPORT_WEIGHT_TOL)):
        return math.inf
    plogp = float((p[p > EIG_FLOOR] * np.log(p[p > EIG_FLOOR])).sum())
    mask = q > EIG_FLOOR
    wlogq = float((weight[mask] * np.log(q[mask])).sum())
    return max((plogp - wlogq) / _log_scale(base), 0.0)


def qjsd(rho, sigma, base=2.0):
    """Quantum Jensen-Shannon divergence of two density matrices.

    Returns [S_r(rho||m) + S_r(sigma||m)]/2 with m the equal mixture, after
    verifying it against S(m) - S(rho)/2 - S(sigma)/2 within
    ``CROSS_CHECK_TOL``. Always finite and bounded by log_base(2).
    """
    rho = _as_square(rho, "rho")
    sigma = _as_square(sigma, "sigma")
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    mid = (rho + sigma) / 2
    j_def = 0.5 * (relative_entropy(rho, mid, base) + relative_entropy(sigma, mid, base))
    j_ent = von_neumann_entropy(mid, base) - 0.5 * von_neumann_entropy(rho, base) - 0.5 * von_neumann_entropy(sigma, base)
    if not math.isfinite(j_def) or abs(j_def - j_ent) > CROSS_CHECK_TOL:
        raise ArithmeticError(
            f"qjsd cross-check failed: defining form {j_def!r} vs entropic form {j_ent!r}"
        )
    return max(j_def, 0.0)


def dist(rho, sigma, base=2.0):
    """Metric distance sqrt(qjsd(rho, sigma))."""
    return math.sqrt(qjsd(rho, sigma, base))


@dataclass(frozen=True)
class CoherenceReport:
    """All coherence quantities of one three-qubit state (log-base units)."""

    c_total: float
    c_global: float
    c_local: float
    c_absolute: float
    c_1_23: float
    c_2_3: float
    c_abs_1_23: float
    c_1_2: float
    c_1_3: float
    monogamy_m: float
    slack_eq7: float
    slack_eq10a: float
    slack_eq10b: float
    slack_eq11: float


REPORT_COLUMNS = (
    "C_T",
    "C_G",
    "C_L",
    "C_A",
    "C_1_23",
    "C_2_3",
    "C_A_1_23",
    "C_1_2",
    "C_1_3",
    "M",
    "slack7",
    "slack10a",
    "slack10b",
    "slack11",
)


def report_values(report):
    """Report fields in ``REPORT_COLUMNS`` order."""
    return [getattr(report, f.name) for f in fields(CoherenceReport)]


def coherence_report(rho, base=2.0):
    """Full coherence decomposition of a three-qubit density matrix."""
    rho = _as_square(rho, "rho")
    if rho.shape != (8, 8):
        raise ValueError(f"expected an 8x8 three-qubit density matrix, got {rho.shape}")
    rho_d = dephase(rho)
    margs = marginals(rho, 3)
    pi = pi_product(rho, 3)
    pi_d = dephase(pi)
    rho_23 = partial_trace(rho, 3, {2, 3})
    rho_12 = partial_trace(rho, 3, {1, 2})
    rho_13 = partial_trace(rho, 3, {1, 3})
    prod_1_23 = split_1_23(rho)

    c_total = dist(rho, rho_d, base)
    c_global = dist(rho, pi, base)
    c_local = dist(pi, pi_d, base)
    c_absolute = dist(rho, pi_d, base)
    c_1_23 = dist(rho, prod_1_23, base)
    c_2_3 = dist(rho_23, kron(margs[1], margs[2]), base)
    c_abs_1_23 = dist(prod_1_23, pi_d, base)
    c_1_2 = dist(rho_12, kron(margs[0], margs[1]), base)
    c_1_3 = dist(rho_13, kron(margs[0], margs[2]), base)

    return CoherenceReport(
        c_total=c_total,
        c_global=c_global,
        c_local=c_local,
        c_absolute=c_absolute,
        c_1_23=c_1_23,
        c_2_3=c_2_3,
        c_abs_1_23=c_abs_1_23,
        c_1_2=c_1_2,
        c_1_3=c_1_3,
        monogamy_m=c_1_2 + c_1_3 - c_1_23,
        slack_eq7=c_local + c_global - c_absolute,
        slack_eq10a=c_1_23 + c_abs_1_23 - c_absolute,
        slack_eq10b=c_2_3 + c_local - c_abs_1_23,
        slack_eq11=c_1_23 + c_2_3 - c_global,
    )


@dataclass(frozen=True)
class Tetrahedron:
    """Euclidean embedding of the four coherence-related states.

    Coordinates are 3-vectors; ``residual`` is the worst absolute mismatch
    between a pairwise point distance and its target coherence value.
    """

    rho: np.ndarray
    pi_product_dephased: np.ndarray
    pi_product: np.ndarray
    split_1_23: np.ndarray
    residual: float


def _clamp(x):
    return min(max(x, -1.0), 1.0)


def embed_tetrahedron(report):
    """Embed a ``CoherenceReport`` as four points in 3-space (see module docstring)."""
    ca = report.c_absolute
    cg = report.c_global
    cl = report.c_local
    c123 = report.c_1_23
    ca123 = report.c_abs_1_23
    c23 = report.c_2_3

    p_rho = np.zeros(3)
    p_pid = np.array([ca, 0.0, 0.0])

    if cg < EMBED_EPS:
        cos_t, sin_t = 1.0, 0.0
        p_pi = p_rho.copy()
    elif ca < EMBED_EPS:
        # gauge axis degenerate; place pi(rho) along +x
        cos_t, sin_t = 1.0, 0.0
        p_pi = np.array([cg, 0.0, 0.0])
    else:
        cos_t = _clamp((ca**2 + cg**2 - cl**2) / (2 * ca * cg))
        sin_t = math.sqrt(max(1.0 - cos_t**2, 0.0))
        p_pi = np.array([cg * cos_t, cg * sin_t, 0.0])

    if c123 < EMBED_EPS:
        p_split = p_rho.copy()
    else:
        if ca < EMBED_EPS:
            cos_p = 1.0
        else:
            cos_p = _clamp((ca**2 + c123**2 - ca123**2) / (2 * ca * c123))
        sin_p = math.sqrt(max(1.0 - cos_p**2, 0.0))
        if sin_p * sin_t < EMBED_EPS or cg < EMBED_EPS:
            cos_x, sin_x = 1.0, 0.0
        else:
            cos_x = _clamp(((c123**2 + cg**2 - c23**2) / (2 * c123 * cg) - cos_p * cos_t) / (sin_p * sin_t))
            sin_x = math.sqrt(max(1.0 - cos_x**2, 0.0))
        p_split = np.array([c123 * cos_p, c123 * sin_p * cos_x, c123 * sin_p * sin_x])

    targets = [
        (p_rho, p_pid, ca),
        (p_rho, p_pi, cg),
        (p_pi, p_pid, cl),
        (p_rho, p_split, c123),
        (p_split, p_pid, ca123),
        (p_split, p_pi, c23),
    ]
    residual = max(abs(float(np.linalg.norm(a - b)) - t) for a, b, t in targets)
    return Tetrahedron(
        rho=p_rho,
        pi_product_dephased=p_pid,
        pi_product=p_pi,
        split_1_23=p_split,
        residual=residual,
    )
