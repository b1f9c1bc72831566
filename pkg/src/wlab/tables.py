"""CSV serialization for curve tables and branch tables, with matching readers."""
from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

import numpy as np

from .compare import SERIES_3Q, SERIES_4Q, CurveTable
from .concentrate import BranchResult, Pairing
from .states import BellLabel
from .statevec import PureState

FIG1_COLUMNS = ("alpha_sq", "k") + SERIES_4Q
FIG2_COLUMNS = FIG1_COLUMNS + SERIES_3Q
BRANCH_COLUMNS = (
    "pairing", "outcomes", "z_bits", "probability", "concurrence",
    "r00_re", "r00_im", "r01_re", "r01_im", "r10_re", "r10_im", "r11_re", "r11_im",
)


def fmt(x: float) -> str:
    return format(float(x), ".12g")


def curves_csv(tables: Iterable[CurveTable], columns: Sequence[str] = FIG1_COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    series = columns[2:]
    for t in tables:
        for i, x in enumerate(t.grid):
            w.writerow([fmt(x), fmt(t.k)] + [fmt(t.columns[s][i]) for s in series])
    return buf.getvalue()


def read_curves_csv(text: str) -> list[CurveTable]:
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows:
        return []
    series = [c for c in rows[0] if c not in ("alpha_sq", "k")]
    by_k: dict[float, list[dict]] = {}
    for row in rows:
        by_k.setdefault(float(row["k"]), []).append(row)
    return [
        CurveTable(
            k,
            np.array([float(r["alpha_sq"]) for r in group]),
            {s: np.array([float(r[s]) for r in group]) for s in series},
        )
        for k, group in by_k.items()
    ]


def branches_csv(branches: Iterable[BranchResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BRANCH_COLUMNS)
    for br in branches:
        amps: list[str] = [""] * 8
        if br.residual is not None:
            amps = [fmt(v) for a in br.residual.amplitudes for v in (a.real, a.imag)]
        w.writerow(
            [
                br.pairing.label(),
                " ".join(o.value for o in br.outcomes),
                "".join(str(b) for b in br.z_bits),
                fmt(br.probability),
                "" if br.concurrence is None else fmt(br.concurrence),
                *amps,
            ]
        )
    return buf.getvalue()


def read_branches_csv(text: str, bob: str) -> list[BranchResult]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        pairing = Pairing.parse(row["pairing"])
        residual = None
        if row["r00_re"]:
            vals = [float(row[c]) for c in BRANCH_COLUMNS[5:]]
            amps = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
            residual = PureState(2, amps / np.linalg.norm(amps), (pairing.remaining, bob))
        out.append(
            BranchResult(
                pairing,
                tuple(BellLabel(o) for o in row["outcomes"].split()),
                float(row["probability"]),
                residual,
                float(row["concurrence"]) if row["concurrence"] else None,
                tuple(int(b) for b in row["z_bits"]),
            )
        )
    return out
