"""Named states: the weighted W-type family, its measurement bases, Bell states, inputs."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BadParams
from .statevec import PureState


class BasisVariant(enum.Enum):
    CORRECTED = "corrected"
    AS_PRINTED = "as-printed"


class BellLabel(enum.Enum):
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"


BELL_ORDER = (BellLabel.PHI_PLUS, BellLabel.PHI_MINUS, BellLabel.PSI_PLUS, BellLabel.PSI_MINUS)

_R2 = 1 / math.sqrt(2)
BELL_MATRIX = np.array(
    [[_R2, 0, 0, _R2], [_R2, 0, 0, -_R2], [0, _R2, _R2, 0], [0, _R2, -_R2, 0]],
    dtype=complex,
)  # rows follow BELL_ORDER


@dataclass(frozen=True)
class WParams:
    """One member of the W-type family.

    ``phases[j]`` multiplies the amplitude of term ``j + 2``; the first term
    (excitation on qubit 1) is always real.
    """

    n: int
    k: float
    phases: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise BadParams(f"need n >= 3 qubits, got {self.n}")
        if not np.isfinite(self.k) or self.k < 0:
            raise BadParams(f"k must be a finite nonnegative real, got {self.k}")
        phases = tuple(float(p) for p in self.phases) or (0.0,) * (self.n - 1)
        if len(phases) != self.n - 1:
            raise BadParams(f"expected {self.n - 1} phases, got {len(phases)}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "k", float(self.k))
        object.__setattr__(self, "phases", phases)


def top_weight(n: int, k: float) -> float:
    """Squared magnitude of the final term: (n-2)k + (n-2)(n-3)/2 + 1."""
    return (n - 2) * k + (n - 2) * (n - 3) / 2 + 1


def norm_sq(n: int, k: float) -> float:
    """Sum of squared term magnitudes, (n-2)(2k+n-3) + 2."""
    return (n - 2) * (2 * k + n - 3) + 2


def term_weights(n: int, k: float) -> np.ndarray:
    """Unnormalized squared magnitudes of the n terms: 1, k, k+1, ..., k+n-3, top."""
    return np.array([1.0] + [k + r for r in range(n - 2)] + [top_weight(n, k)])


def _coefficients(p: WParams) -> np.ndarray:
    phases = np.concatenate([[0.0], p.phases])
    amps = np.sqrt(term_weights(p.n, p.k)) * np.exp(1j * phases)
    return amps / math.sqrt(norm_sq(p.n, p.k))


def _one_hot(n: int, pos: int) -> int:
    return 1 << (n - 1 - pos)


def w_state(p: WParams, labels: Sequence[str] | None = None) -> PureState:
    """|Psi_k> on qubits 1..n: term j carries the excitation on qubit j."""
    coeffs = _coefficients(p)
    vec = np.zeros(2**p.n, dtype=complex)
    for j, c in enumerate(coeffs):
        vec[_one_hot(p.n, j)] = c
    labels = tuple(labels) if labels else tuple(str(i) for i in range(1, p.n + 1))
    return PureState(p.n, vec, labels)


def _basis_vectors(p: WParams, variant: BasisVariant) -> list[np.ndarray]:
    """eta+, eta-, xi+, xi- on the register (slot 0 = ancilla, then qubits 1..n-1).

    In eta, terms 1..n-1 put the excitation on register slot j (ancilla 0) and
    the final term is the ancilla excitation alone; xi flips the ancilla.
    """
    n = p.n
    coeffs = _coefficients(p)
    body = coeffs[:-1]
    top = coeffs[-1]
    full = 1 << (n - 1)  # ancilla bit
    out = []
    for flip in (False, True):
        for sign in (1, -1):
            vec = np.zeros(2**n, dtype=complex)
            for j, c in enumerate(body):
                idx = _one_hot(n, j + 1)
                coef = c
                # the four-qubit print also puts the sign on the (k+1)-weighted term
                if variant is BasisVariant.AS_PRINTED and n == 4 and sign < 0 and j == n - 2:
                    coef = -c
                vec[idx ^ full if flip else idx] = coef
            vec[0 if flip else full] = sign * top
            out.append(vec)
    eta_p, eta_m, xi_p, xi_m = out
    return [eta_p, eta_m, xi_p, xi_m]


def teleport_basis(
    n: int,
    k: float,
    phases: Sequence[float] = (),
    variant: BasisVariant = BasisVariant.CORRECTED,
    labels: Sequence[str] | None = None,
) -> dict[str, PureState]:
    """Alice's four-state measurement basis {eta+, eta-, xi+, xi-}.

    The register is the ancilla followed by qubits 1..n-1. ``CORRECTED``
    negates only the final term in the minus states. ``AS_PRINTED`` follows
    the published four-qubit basis, which also negates the (k+1)-weighted
    term and so is not orthogonal; for other n the published basis already
    carries a single sign and both variants coincide.
    """
    p = WParams(n, k, tuple(phases))
    labels = tuple(labels) if labels else ("a",) + tuple(str(i) for i in range(1, n))
    names = ("eta+", "eta-", "xi+", "xi-")
    return {
        name: PureState(n, vec, labels)
        for name, vec in zip(names, _basis_vectors(p, BasisVariant(variant)))
    }


def bell(label: BellLabel, labels: Sequence[str] = ()) -> PureState:
    row = BELL_MATRIX[BELL_ORDER.index(BellLabel(label))]
    return PureState(2, row, tuple(labels))


def _check_alpha(alpha: float) -> float:
    if not (0.0 <= alpha <= 1.0):
        raise BadParams(f"alpha must lie in [0, 1], got {alpha}")
    return float(alpha)


def input_single(alpha: float, label: str = "a") -> PureState:
    alpha = _check_alpha(alpha)
    beta = math.sqrt(max(0.0, 1 - alpha * alpha))
    return PureState(1, [alpha, beta], (label,))


def input_pair(alpha: float, labels: Sequence[str] = ("a", "b")) -> PureState:
    alpha = _check_alpha(alpha)
    beta = math.sqrt(max(0.0, 1 - alpha * alpha))
    return PureState(2, [alpha, 0, 0, beta], tuple(labels))
