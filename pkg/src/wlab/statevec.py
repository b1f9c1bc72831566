"""Dense pure-state linear algebra over labelled qubits.

Basis convention: the ket |q1 q2 ... qn> sits at index sum(q_i * 2**(n - i)),
so the leftmost label is the most significant bit. Every ``PureState`` is
stored normalized.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, LengthMismatch, NullOutcome, UnknownQubit, ZeroVector

TOL = 1e-10
UNITARY_TOL = 1e-12
ZERO_NORM = 1e-12
ZERO_BRANCH = 1e-14

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
ISY = 1j * SY  # |0> -> -|1>, |1> -> |0>

GATES = {"I": I2, "X": SX, "Y": SY, "Z": SZ, "iY": ISY}


@dataclass(frozen=True, eq=False)
class PureState:
    num_qubits: int
    amplitudes: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2**self.num_qubits:
            raise LengthMismatch(
                f"expected {2**self.num_qubits} amplitudes, got {amps.size}"
            )
        labels = tuple(str(l) for l in self.labels) or tuple(
            str(i + 1) for i in range(self.num_qubits)
        )
        if len(labels) != self.num_qubits or len(set(labels)) != len(labels):
            raise UnknownQubit(f"labels {labels} do not name {self.num_qubits} distinct qubits")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "labels", labels)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def tensor_view(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def axis(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise UnknownQubit(f"no qubit {label!r} in {self.labels}") from None

    def relabel(self, labels: Sequence[str]) -> "PureState":
        return PureState(self.num_qubits, self.amplitudes, tuple(labels))

    def permute(self, order: Sequence[str]) -> "PureState":
        """Reorder tensor slots so that they follow ``order``."""
        axes = [self.axis(l) for l in order]
        if sorted(axes) != list(range(self.num_qubits)):
            raise UnknownQubit(f"{order} is not a permutation of {self.labels}")
        amps = np.transpose(self.tensor_view(), axes).reshape(-1)
        return PureState(self.num_qubits, amps, tuple(str(l) for l in order))

    def __repr__(self):
        return f"PureState(labels={self.labels}, amplitudes={np.round(self.amplitudes, 6)})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=complex)
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))


def make_state(n: int, amps: Sequence[complex], labels: Sequence[str] = ()) -> PureState:
    """Normalize ``amps`` into an ``n``-qubit state."""
    vec = np.asarray(amps, dtype=complex).reshape(-1)
    if vec.size != 2**n:
        raise LengthMismatch(f"{n} qubits need {2**n} amplitudes, got {vec.size}")
    norm = np.linalg.norm(vec)
    if norm <= ZERO_NORM:
        raise ZeroVector("cannot normalize a zero vector")
    return PureState(n, vec / norm, tuple(labels))


def basis_state(bits: str, labels: Sequence[str] = ()) -> PureState:
    vec = np.zeros(2 ** len(bits), dtype=complex)
    vec[int(bits, 2)] = 1.0
    return PureState(len(bits), vec, tuple(labels))


def check_unitary(g: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    g = np.asarray(g, dtype=complex)
    if g.shape != (2, 2):
        raise DimensionMismatch(f"single-qubit gate must be 2x2, got {g.shape}")
    if np.max(np.abs(g @ g.conj().T - I2)) > tol:
        raise ValueError("gate is not unitary")
    return g


def tensor(a: PureState, b: PureState) -> PureState:
    labels = a.labels + b.labels
    if len(set(labels)) != len(labels):
        # positional labels from two unlabelled states would collide
        labels = tuple(str(i + 1) for i in range(len(labels)))
    return PureState(a.num_qubits + b.num_qubits, np.kron(a.amplitudes, b.amplitudes), labels)


def apply_single(s: PureState, qubit: str, g: np.ndarray) -> PureState:
    g = check_unitary(g)
    ax = s.axis(qubit)
    psi = np.tensordot(g, s.tensor_view(), axes=([1], [ax]))
    psi = np.moveaxis(psi, 0, ax)
    return PureState(s.num_qubits, psi.reshape(-1), s.labels)


def _split(s: PureState, subset: Sequence[str]) -> tuple[np.ndarray, tuple[str, ...]]:
    """Matrix view of ``s`` with rows indexed by ``subset`` and columns by the rest."""
    subset = [str(l) for l in subset]
    if len(set(subset)) != len(subset):
        raise UnknownQubit(f"repeated qubit in {subset}")
    axes = [s.axis(l) for l in subset]
    rest = [i for i in range(s.num_qubits) if i not in axes]
    psi = np.transpose(s.tensor_view(), axes + rest)
    return psi.reshape(2 ** len(axes), -1), tuple(s.labels[i] for i in rest)


def project(s: PureState, subset: Sequence[str], onto: PureState) -> tuple[float, PureState]:
    """Project the ``subset`` register onto ``onto``.

    Returns the outcome probability and the normalized state left on the
    complement, with the complement qubits kept in their original order.
    Raises ``NullOutcome`` when the outcome cannot occur.
    """
    if onto.num_qubits != len(subset):
        raise DimensionMismatch(
            f"projector acts on {onto.num_qubits} qubits, subset has {len(subset)}"
        )
    mat, rest = _split(s, subset)
    if not rest:
        raise DimensionMismatch("projecting every qubit leaves no residual state")
    branch = onto.amplitudes.conj() @ mat
    prob = float(np.vdot(branch, branch).real)
    if prob < ZERO_BRANCH:
        raise NullOutcome(f"outcome on {tuple(subset)} has probability {prob:.3e}")
    return prob, PureState(len(rest), branch / np.sqrt(prob), rest)


def inner(a: PureState, b: PureState) -> complex:
    if a.num_qubits != b.num_qubits:
        raise DimensionMismatch(f"{a.num_qubits} vs {b.num_qubits} qubits")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: PureState, b: PureState) -> float:
    return min(1.0, abs(inner(a, b)) ** 2)


def gram(states: Sequence[PureState]) -> np.ndarray:
    dims = {s.num_qubits for s in states}
    if len(dims) > 1:
        raise DimensionMismatch(f"mixed qubit counts {sorted(dims)}")
    mat = np.array([s.amplitudes for s in states])
    return mat.conj() @ mat.T


def reduced_density(s: PureState, keep: Sequence[str]) -> DensityMatrix:
    """Partial trace over every qubit not listed in ``keep`` (kept in the given order)."""
    mat, _ = _split(s, keep)
    return DensityMatrix(mat @ mat.conj().T)


def density_of(s: PureState) -> DensityMatrix:
    return DensityMatrix(np.outer(s.amplitudes, s.amplitudes.conj()))
