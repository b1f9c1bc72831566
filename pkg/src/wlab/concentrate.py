"""Entanglement concentration with Bell measurements on a W-type channel.

Alice holds the input pair (a, b) and qubits 1..n-1 of the channel; Bob holds
qubit n. Alice makes Bell measurements on disjoint pairs of her qubits, keeps
one qubit unmeasured and, when her register is larger than the pairs can
cover, reads the leftover qubits in the computational basis. The two-qubit
state left on (kept qubit, Bob) is the concentrated resource.

At n=4 this is exactly two Bell measurements and one kept qubit. At n=3 only
one Bell pair fits, so one qubit is read out in the computational basis.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .entanglement import (
    ConcurrenceReport,
    analytic_c3,
    analytic_c4,
    analytic_cN,
    concurrence_pure2,
    unit_weight_cN,
)
from .errors import BadPairing, BadParams, NullOutcome
from .states import BELL_MATRIX, BELL_ORDER, BellLabel, WParams, bell, input_pair, w_state
from .statevec import ZERO_BRANCH, PureState, basis_state, project, tensor

MAX_N = 8


def register(n: int) -> tuple[str, ...]:
    return ("a", "b") + tuple(str(i) for i in range(1, n))


def bell_pair_count(n: int) -> int:
    return 1 if n == 3 else 2


@dataclass(frozen=True)
class Pairing:
    pairs: tuple[tuple[str, str], ...]
    remaining: str
    z_measured: tuple[str, ...] = ()

    @property
    def pair1(self) -> tuple[str, str]:
        return self.pairs[0]

    @property
    def pair2(self) -> tuple[str, str] | None:
        return self.pairs[1] if len(self.pairs) > 1 else None

    def validate(self, n: int) -> None:
        reg = register(n)
        used = [l for p in self.pairs for l in p] + [self.remaining, *self.z_measured]
        if any(len(p) != 2 for p in self.pairs):
            raise BadPairing(f"Bell measurements act on two qubits: {self.pairs}")
        if len(self.pairs) != bell_pair_count(n):
            raise BadPairing(f"n={n} uses {bell_pair_count(n)} Bell pair(s), got {len(self.pairs)}")
        if str(n) in used:
            raise BadPairing(f"qubit {n} belongs to the receiver and cannot be measured by Alice")
        if len(set(used)) != len(used) or sorted(used) != sorted(reg):
            raise BadPairing(f"{self} does not partition Alice's register {reg}")

    def label(self) -> str:
        body = "+".join(f"({x},{y})" for x, y in self.pairs)
        if self.z_measured:
            body += "+Z(" + ",".join(self.z_measured) + ")"
        return f"{body}|keep {self.remaining}"

    @classmethod
    def parse(cls, text: str) -> "Pairing":
        """Inverse of ``label``."""
        body, _, keep = text.partition("|keep ")
        if not keep:
            raise BadPairing(f"cannot parse pairing {text!r}")
        z: tuple[str, ...] = ()
        if "+Z(" in body:
            body, _, zpart = body.partition("+Z(")
            z = tuple(zpart.rstrip(")").split(","))
        pairs = tuple(tuple(p.strip("()").split(",")) for p in body.split("+"))
        return cls(pairs, keep.strip(), z)  # type: ignore[arg-type]


@dataclass(frozen=True, eq=False)
class BranchResult:
    pairing: Pairing
    outcomes: tuple[BellLabel, ...]
    probability: float
    residual: PureState | None
    concurrence: float | None
    z_bits: tuple[int, ...] = ()


def resource(n: int, k: float, alpha: float) -> PureState:
    return tensor(input_pair(alpha), w_state(WParams(n, k)))


def run(
    n: int,
    k: float,
    alpha: float,
    pairing: Pairing,
    outcomes: Sequence[BellLabel | str],
    z_bits: Sequence[int] | None = None,
) -> BranchResult:
    """Measure the pairs in order, then the computational-basis qubits."""
    pairing.validate(n)
    outcomes = tuple(BellLabel(o) for o in outcomes)
    if len(outcomes) != len(pairing.pairs):
        raise BadPairing(f"{len(pairing.pairs)} Bell outcomes needed, got {len(outcomes)}")
    z_bits = tuple(int(b) for b in (z_bits if z_bits is not None else (0,) * len(pairing.z_measured)))
    if len(z_bits) != len(pairing.z_measured) or any(b not in (0, 1) for b in z_bits):
        raise BadPairing(f"need one bit per computational-basis qubit, got {z_bits}")

    state = resource(n, k, alpha)
    prob = 1.0
    steps = [(p, bell(o, p)) for p, o in zip(pairing.pairs, outcomes)]
    steps += [((q,), basis_state(str(b), (q,))) for q, b in zip(pairing.z_measured, z_bits)]
    try:
        for subset, onto in steps:
            p, state = project(state, subset, onto)
            prob *= p
    except NullOutcome:
        return BranchResult(pairing, outcomes, 0.0, None, None, z_bits)
    if prob < ZERO_BRANCH:
        return BranchResult(pairing, outcomes, 0.0, None, None, z_bits)
    return BranchResult(pairing, outcomes, prob, state, concurrence_pure2(state), z_bits)


def pairings(n: int) -> Iterator[Pairing]:
    """All measurement plans for an n-qubit channel, in a fixed lexicographic order."""
    reg = register(n)
    for remaining in reg:
        others = [l for l in reg if l != remaining]
        if bell_pair_count(n) == 1:
            for pair in itertools.combinations(others, 2):
                z = tuple(l for l in others if l not in pair)
                yield Pairing((pair,), remaining, z)
            continue
        for quad in itertools.combinations(others, 4):
            z = tuple(l for l in others if l not in quad)
            w, x, y, v = quad
            for pairs in (((w, x), (y, v)), ((w, y), (x, v)), ((w, v), (x, y))):
                yield Pairing(pairs, remaining, z)


def enumerate_branches(n: int, k: float, alpha: float) -> list[BranchResult]:
    """Every plan crossed with every outcome, computed by direct tensor contraction."""
    if int(n) != n or not 3 <= n <= MAX_N:
        raise BadParams(f"enumeration supports 3 <= n <= {MAX_N}, got {n}")
    n = int(n)
    state = resource(n, k, alpha)
    labels = list(state.labels)
    psi = state.tensor_view()
    bob = str(n)
    results = []
    for plan in pairings(n):
        flat = [l for p in plan.pairs for l in p]
        order = flat + list(plan.z_measured) + [plan.remaining, bob]
        t = np.transpose(psi, [labels.index(l) for l in order])
        npairs = len(plan.pairs)
        nz = len(plan.z_measured)
        t = t.reshape((4,) * npairs + (2**nz, 4))
        for ax in range(npairs):
            t = np.moveaxis(np.tensordot(BELL_MATRIX.conj(), t, axes=([1], [ax])), 0, ax)
        rows = t.reshape(-1, 4)
        probs = np.einsum("ij,ij->i", rows.conj(), rows).real
        keys = itertools.product(
            itertools.product(BELL_ORDER, repeat=npairs),
            itertools.product((0, 1), repeat=nz),
        )
        for (outs, bits), row, p in zip(keys, rows, probs):
            if p < ZERO_BRANCH:
                results.append(BranchResult(plan, outs, 0.0, None, None, bits))
                continue
            res = PureState(2, row / math.sqrt(p), (plan.remaining, bob))
            results.append(BranchResult(plan, outs, float(p), res, concurrence_pure2(res), bits))
    return results


def best_branch(branches: Sequence[BranchResult]) -> BranchResult:
    """Highest concurrence; the earliest branch wins ties."""
    best = None
    for br in branches:
        if br.concurrence is None:
            continue
        if best is None or br.concurrence > best.concurrence + 1e-12:
            best = br
    if best is None:
        raise NullOutcome("no branch has nonzero probability")
    return best


# Named cases: both Bell outcomes phi+, computational-basis readouts 0.
_PHI = BellLabel.PHI_PLUS
CASES: dict[tuple[int, int], Pairing] = {
    (4, 1): Pairing((("b", "1"), ("2", "3")), "a"),
    (4, 2): Pairing((("b", "2"), ("1", "3")), "a"),
    (4, 3): Pairing((("b", "3"), ("1", "2")), "a"),
    (4, 4): Pairing((("a", "1"), ("b", "2")), "3"),
    (3, 1): Pairing((("b", "1"),), "a", ("2",)),
    (3, 2): Pairing((("b", "2"),), "a", ("1",)),
    (3, 3): Pairing((("a", "2"),), "1", ("b",)),
}


def case_run(case: int, k: float, alpha: float, n: int = 4) -> BranchResult:
    if (n, case) not in CASES:
        raise BadParams(f"no named case {case} for n={n}")
    if not 0 < alpha < 1:
        raise BadParams(f"alpha must lie strictly inside (0, 1), got {alpha}")
    plan = CASES[(n, case)]
    return run(n, k, alpha, plan, (_PHI,) * len(plan.pairs))


def case_report(case_id: str, k: float, alpha: float) -> ConcurrenceReport:
    """Closed form against the simulated protocol for one named case."""
    n, case = {"C4": 4, "C3": 3}[case_id[:2]], int(case_id[3:])
    formula = analytic_c4 if n == 4 else analytic_c3
    br = case_run(case, k, alpha, n)
    independent = (n, case) in ((4, 4), (3, 3))
    return ConcurrenceReport(
        case_id, k, None if independent else alpha * alpha, formula(case, k, alpha), br.concurrence
    )


def optimal_alpha_sq(case: int, k: float) -> float:
    """alpha^2 at which a four-qubit case reaches unit concurrence."""
    if not np.isfinite(k) or k < 0:
        raise BadParams(f"k must be a finite nonnegative real, got {k}")
    if case == 1:
        return 1 / (2 * k + 3)
    if case == 2:
        # k = 0 gives 0: the curve vanishes identically and never reaches 1
        return k / (3 * k + 2)
    if case == 3:
        return 1 / 3
    raise BadParams(f"case {case} has no unit-concurrence input (cases 1-3 only)")


def catalog_values(n: int, k: float, alpha: float) -> dict[str, float]:
    """Closed-form concurrences a branch may realize, keyed by family.

    ``eq19`` families depend on the input, ``eq21`` ones do not; ``unit``
    marks the unit-weight first term, ``mirror`` the alpha<->beta swap that
    non-phi outcomes produce.
    """
    beta = math.sqrt(max(0.0, 1 - alpha * alpha))
    out = {}
    for r in range(n - 2):
        out[f"eq19:r={r}"] = analytic_cN(n, k, r, alpha)
    out["eq19:unit"] = unit_weight_cN(n, k, alpha)
    for r in range(n - 2):
        out[f"eq21:r={r}"] = analytic_cN(n, k, r)
    out["eq21:unit"] = unit_weight_cN(n, k)
    for r in range(n - 2):
        out[f"eq19-mirror:r={r}"] = analytic_cN(n, k, r, beta)
    out["eq19-mirror:unit"] = unit_weight_cN(n, k, beta)
    return out


def classify_branch(br: BranchResult, catalog: dict[str, float], tol: float = 1e-10) -> str:
    if br.concurrence is None:
        return "null"
    if br.concurrence < tol:
        return "product"
    for name, value in catalog.items():
        if abs(br.concurrence - value) < tol:
            return name
    return "other"


# Operation names used elsewhere in the docs; ``optimal_alpha`` returns alpha^2.
optimal_alpha = optimal_alpha_sq
enumerate = enumerate_branches  # noqa: A001  (module attribute only; not used internally)
