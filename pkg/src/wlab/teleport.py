"""Deterministic single-qubit teleportation through a W-type channel."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BadParams, NullOutcome
from .states import BasisVariant, WParams, input_single, teleport_basis, w_state
from .statevec import GATES, PureState, apply_single, fidelity, gram, project, tensor

# measurement outcome -> Pauli that Bob's qubit carries (and must undo)
CORRECTIONS = {"eta+": "I", "eta-": "Z", "xi+": "X", "xi-": "iY"}
AUDIT_ALPHA = 0.6


@dataclass(frozen=True)
class Outcome:
    basis_label: str
    probability: float
    correction: str
    fidelity_after: float | None
    bob_state: PureState | None = None


@dataclass(frozen=True)
class TeleportReport:
    n: int
    k: float
    phases: tuple[float, ...]
    alpha: float
    variant: BasisVariant
    outcomes: tuple[Outcome, ...]

    @property
    def completeness_residual(self) -> float:
        return abs(1.0 - sum(o.probability for o in self.outcomes))


def _register(n: int) -> tuple[str, ...]:
    return ("a",) + tuple(str(i) for i in range(1, n))


def joint_state(n: int, k: float, phases: Sequence[float], alpha: float) -> PureState:
    """|phi>_a tensored with the n-qubit channel; qubit n is the receiver's."""
    return tensor(input_single(alpha), w_state(WParams(n, k, tuple(phases))))


def run(
    n: int,
    k: float,
    phases: Sequence[float] = (),
    alpha: float = AUDIT_ALPHA,
    variant: BasisVariant = BasisVariant.CORRECTED,
) -> TeleportReport:
    variant = BasisVariant(variant)
    params = WParams(n, k, tuple(phases))
    phi = input_single(alpha)
    joint = tensor(phi, w_state(params))
    basis = teleport_basis(n, k, params.phases, variant)
    target = phi.relabel((str(n),))
    outcomes = []
    for label, state in basis.items():
        gate = CORRECTIONS[label]
        try:
            prob, bob = project(joint, _register(n), state)
        except NullOutcome:
            outcomes.append(Outcome(label, 0.0, gate, None))
            continue
        fixed = apply_single(bob, str(n), GATES[gate].conj().T)
        outcomes.append(Outcome(label, prob, gate, fidelity(fixed, target), bob))
    return TeleportReport(params.n, params.k, params.phases, float(alpha), variant, tuple(outcomes))


@dataclass(frozen=True)
class BasisAudit:
    gram: np.ndarray
    decomposition_residual: float


def audit_basis(
    n: int,
    k: float,
    phases: Sequence[float] = (),
    variant: BasisVariant = BasisVariant.CORRECTED,
    alpha: float = AUDIT_ALPHA,
) -> BasisAudit:
    """Gram matrix of the basis and the error of the four-term decomposition.

    The residual is ||Phi - 1/2 sum_i basis_i (x) U_i phi|| at the given alpha.
    """
    basis = teleport_basis(n, k, phases, variant)
    joint = joint_state(n, k, phases, alpha)
    phi = input_single(alpha).amplitudes
    rebuilt = np.zeros_like(joint.amplitudes)
    for label, state in basis.items():
        rebuilt = rebuilt + 0.5 * np.kron(state.amplitudes, GATES[CORRECTIONS[label]] @ phi)
    residual = float(np.linalg.norm(joint.amplitudes - rebuilt))
    return BasisAudit(gram(list(basis.values())), residual)


def random_phases(n: int, rng: np.random.Generator) -> tuple[float, ...]:
    if n < 3:
        raise BadParams(f"need n >= 3, got {n}")
    return tuple(rng.uniform(0, 2 * np.pi, size=n - 1))
