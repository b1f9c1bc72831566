"""Concurrence: numeric oracles for two-qubit states and the closed-form catalog.

Every closed form here describes a residual of the shape
``x*alpha|01> + y*beta|10>`` (or ``x|01> + y|10>`` once the input is
consumed), whose concurrence is ``2xy*alpha*beta / (x^2 alpha^2 + y^2 beta^2)``.
The catalog functions evaluate the published expressions verbatim; the
oracles never look at them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadDensity, BadParams, DimensionMismatch
from .states import top_weight
from .statevec import SY, DensityMatrix, PureState

_SYSY = np.kron(SY, SY)

CASE_IDS = ("C4_1", "C4_2", "C4_3", "C4_4", "C3_1", "C3_2", "C3_3", "CN_dep", "CN_indep")


@dataclass(frozen=True)
class ConcurrenceReport:
    case_id: str
    k: float
    alpha_sq: float | None
    analytic: float
    numeric: float

    @property
    def abs_diff(self) -> float:
        return abs(self.analytic - self.numeric)


def concurrence_pure2(s: PureState) -> float:
    if s.num_qubits != 2:
        raise DimensionMismatch(f"pure-state concurrence needs 2 qubits, got {s.num_qubits}")
    a00, a01, a10, a11 = s.amplitudes
    return min(1.0, 2 * abs(a00 * a11 - a01 * a10))


def _validate_density(rho: np.ndarray) -> None:
    if rho.shape != (4, 4):
        raise BadDensity(f"expected a 4x4 density matrix, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise BadDensity("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > 1e-10:
        raise BadDensity(f"trace is {np.trace(rho).real:.12g}, not 1")
    if np.min(np.linalg.eigvalsh(rho)) < -1e-9:
        raise BadDensity("density matrix has a negative eigenvalue")


def concurrence_wootters(rho: DensityMatrix | np.ndarray) -> float:
    """Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit density matrix."""
    rho = np.asarray(rho.entries if isinstance(rho, DensityMatrix) else rho, dtype=complex)
    _validate_density(rho)
    # lambdas are the singular values of X^T (sy x sy) X with rho = X X^dagger;
    # this avoids square-rooting the ~1e-16 eigenvalues of rho * rho_tilde
    w, v = np.linalg.eigh(rho)
    x = v * np.sqrt(np.clip(w, 0, None))
    lam = np.linalg.svd(x.T @ _SYSY @ x, compute_uv=False)
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))


def two_term_concurrence(x: float, y: float) -> float:
    """Concurrence of the (unnormalized) pure state x|01> + y|10> for x, y >= 0."""
    denom = x * x + y * y
    return 0.0 if denom == 0 else 2 * x * y / denom


def _check(k: float, alpha: float | None) -> float | None:
    if not np.isfinite(k) or k < 0:
        raise BadParams(f"k must be a finite nonnegative real, got {k}")
    if alpha is None:
        return None
    if not 0 <= alpha <= 1:
        raise BadParams(f"alpha must lie in [0, 1], got {alpha}")
    return math.sqrt(max(0.0, 1 - alpha * alpha))


def analytic_c4(case: int, k: float, alpha: float) -> float:
    """Four-qubit concurrence for measurement cases 1-4."""
    beta = _check(k, alpha)
    a2 = alpha * alpha
    if case == 1:
        return 2 * alpha * beta * math.sqrt(2 * k + 2) / ((2 * k + 1) * a2 + 1)
    if case == 2:
        denom = (k + 2) * a2 + k
        if denom == 0:
            return 0.0
        return 2 * alpha * beta * math.sqrt(2 * k + 2) * math.sqrt(k) / denom
    if case == 3:
        return 2 * math.sqrt(2) * alpha * beta / (a2 + 1)
    if case == 4:
        return 2 * math.sqrt(2) / 3
    raise BadParams(f"four-qubit case must be 1-4, got {case}")


def analytic_c3(case: int, k: float, alpha: float) -> float:
    """Three-qubit concurrence for measurement cases 1-3 (case 3 ignores alpha)."""
    beta = _check(k, alpha)
    a2 = alpha * alpha
    if case == 1:
        return 2 * alpha * beta * math.sqrt(k + 1) / (k * a2 + 1)
    if case == 2:
        denom = a2 + k
        if denom == 0:
            return 0.0
        return 2 * alpha * math.sqrt(k * (k + 1) * beta * beta) / denom
    if case == 3:
        return 2 * math.sqrt(k + 1) / (k + 2)
    raise BadParams(f"three-qubit case must be 1-3, got {case}")


def _catalog(n: int, k: float, weight: float, alpha: float | None) -> float:
    top = top_weight(n, k)
    beta = _check(k, alpha)
    if alpha is None:
        denom = (n - 1) * k + (n - 2) * (n - 3) / 2 + 1 + (weight - k)
        return 2 * math.sqrt(weight) * math.sqrt(top) / denom
    denom = top * alpha * alpha + weight * beta * beta
    if denom == 0:
        return 0.0
    return 2 * alpha * beta * math.sqrt(weight) * math.sqrt(top) / denom


def analytic_cN(n: int, k: float, r: int, alpha: float | None = None) -> float:
    """General-n catalog: input-dependent when ``alpha`` is given, else input-independent.

    ``r`` (0..n-3) selects the W term of weight k + r that ends up paired with
    the receiver's qubit.
    """
    if int(n) != n or n < 3:
        raise BadParams(f"need n >= 3, got {n}")
    if int(r) != r or not 0 <= r <= n - 3:
        raise BadParams(f"r must be an integer in [0, {n - 3}], got {r}")
    return _catalog(int(n), k, k + int(r), alpha)


def unit_weight_cN(n: int, k: float, alpha: float | None = None) -> float:
    """Catalog value for the unit-weight first term (formally r = 1 - k).

    At n=4 with alpha this is case 1; at n=3 without alpha it is the
    three-qubit input-independent case.
    """
    if int(n) != n or n < 3:
        raise BadParams(f"need n >= 3, got {n}")
    return _catalog(int(n), k, 1.0, alpha)


def limit_cN(n: int, alpha: float | None = None) -> float:
    """k -> infinity limit of ``analytic_cN`` (independent of r)."""
    if int(n) != n or n < 3:
        raise BadParams(f"need n >= 3, got {n}")
    if alpha is None:
        return 2 * math.sqrt(n - 2) / (n - 1)
    beta = _check(0.0, alpha)
    return 2 * alpha * beta * math.sqrt(n - 2) / ((n - 3) * alpha * alpha + 1)
