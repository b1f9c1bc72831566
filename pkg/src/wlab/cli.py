"""Command-line front end: run the protocols and write JSON/CSV reports."""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Sequence

import numpy as np

from . import compare, concentrate, densecode, teleport
from .errors import WLabError
from .states import BasisVariant, BellLabel
from .tables import FIG1_COLUMNS, FIG2_COLUMNS, branches_csv, curves_csv

DEFAULT_TOL = 1e-10
FIGURE_KS = (0.5, 1.0, 2.0, 10.0)

REFS = {
    "teleport": {
        "probability": "four-outcome decomposition of input (x) W-type channel",
        "correction": "outcome -> {I, sigma_z, sigma_x, i sigma_y}",
        "channel": "n-qubit weighted W-type state",
    },
    "audit": {
        "gram": "eta/xi measurement basis",
        "decomposition_residual": "four-outcome decomposition of input (x) W-type channel",
    },
    "concentrate": {
        "residual": "two-qubit state left after Bell measurements",
        "concurrence": "two-qubit pure-state concurrence",
    },
    "compare": {
        "thresholds": "3- vs 4-qubit resource ranges",
        "series": "four-qubit cases 1-4, three-qubit cases 1-3",
    },
    "densecode": {
        "gram": "encoded states (I, sigma_x, sigma_z, i sigma_y) on eta+",
        "decode_table": "joint measurement in the eta/xi basis",
    },
}


class UsageError(WLabError):
    pass


def report_tol() -> float:
    raw = os.environ.get("WLAB_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"WLAB_TOL must be a number, got {raw!r}") from None
    if not tol > 0:
        raise UsageError(f"WLAB_TOL must be positive, got {raw!r}")
    return tol


def _matrix(m: np.ndarray) -> dict:
    return {"real": np.real(m).tolist(), "imag": np.imag(m).tolist()}


def _state(s) -> dict | None:
    if s is None:
        return None
    return {"labels": list(s.labels), "real": s.amplitudes.real.tolist(), "imag": s.amplitudes.imag.tolist()}


def _phases(args) -> tuple[float, ...]:
    if args.phases in (None, ""):
        return ()
    if args.phases == "random":
        return teleport.random_phases(args.n, np.random.default_rng(args.seed))
    try:
        return tuple(float(p) for p in args.phases.split(","))
    except ValueError:
        raise UsageError(f"--phases must be comma-separated numbers or 'random', got {args.phases!r}") from None


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_teleport(args) -> str:
    tol = report_tol()
    rep = teleport.run(args.n, args.k, _phases(args), args.alpha, args.variant)
    outcomes = [
        {
            "basis_label": o.basis_label,
            "probability": o.probability,
            "correction": o.correction,
            "fidelity_after": o.fidelity_after,
        }
        for o in rep.outcomes
    ]
    deterministic = all(
        abs(o.probability - 0.25) < tol and o.fidelity_after is not None and abs(o.fidelity_after - 1) < tol
        for o in rep.outcomes
    )
    return _dump(
        {
            "command": "teleport",
            "n": rep.n,
            "k": rep.k,
            "phases": list(rep.phases),
            "alpha": rep.alpha,
            "variant": rep.variant.value,
            "outcomes": outcomes,
            "completeness_residual": rep.completeness_residual,
            "deterministic": deterministic,
            "tolerance": tol,
            "paper_refs": REFS["teleport"],
        }
    )


def cmd_audit(args) -> str:
    tol = report_tol()
    aud = teleport.audit_basis(args.n, args.k, _phases(args), args.variant, args.alpha)
    orthonormal = bool(np.max(np.abs(aud.gram - np.eye(4))) < tol)
    return _dump(
        {
            "command": "audit",
            "n": args.n,
            "k": args.k,
            "variant": BasisVariant(args.variant).value,
            "alpha": args.alpha,
            "gram": _matrix(aud.gram),
            "decomposition_residual": aud.decomposition_residual,
            "orthonormal": orthonormal,
            "tolerance": tol,
            "paper_refs": REFS["audit"],
        }
    )


def _branch_json(br: concentrate.BranchResult) -> dict:
    return {
        "pairing": br.pairing.label(),
        "outcomes": [o.value for o in br.outcomes],
        "z_bits": list(br.z_bits),
        "probability": br.probability,
        "concurrence": br.concurrence,
        "residual": _state(br.residual),
    }


def cmd_concentrate(args) -> str:
    if args.case is not None:
        br = concentrate.case_run(args.case, args.k, args.alpha, args.n)
    else:
        if not args.pairing:
            raise UsageError("concentrate needs --case or --pairing")
        pairing = concentrate.Pairing.parse(args.pairing)
        outcomes = args.outcomes.split(",") if args.outcomes else ["phi+"] * len(pairing.pairs)
        try:
            outcomes = [BellLabel(o) for o in outcomes]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        bits = [int(b) for b in args.z_bits] if args.z_bits else None
        br = concentrate.run(args.n, args.k, args.alpha, pairing, outcomes, bits)
    if args.format == "csv":
        return branches_csv([br])
    body = {"command": "concentrate", "n": args.n, "k": args.k, "alpha": args.alpha, "case": args.case}
    body.update(_branch_json(br))
    body["paper_refs"] = REFS["concentrate"]
    return _dump(body)


def cmd_enumerate(args) -> str:
    branches = concentrate.enumerate_branches(args.n, args.k, args.alpha)
    if args.format == "csv":
        return branches_csv(branches)
    catalog = concentrate.catalog_values(args.n, args.k, args.alpha)
    best = concentrate.best_branch(branches)
    return _dump(
        {
            "command": "enumerate",
            "n": args.n,
            "k": args.k,
            "alpha": args.alpha,
            "best": _branch_json(best),
            "catalog": catalog,
            "branches": [
                dict(_branch_json(b), family=concentrate.classify_branch(b, catalog)) for b in branches
            ],
            "paper_refs": REFS["concentrate"],
        }
    )


def cmd_compare(args) -> str:
    if args.format == "csv":
        return curves_csv([compare.curves(args.k, args.grid)], FIG2_COLUMNS)
    rep = compare.region_report(args.k)
    thr = lambda t: {"value": t.value, "source": t.source, "method": t.method, "note": t.note}  # noqa: E731
    return _dump(
        {
            "command": "compare",
            "k": rep.k,
            "thresholds": [thr(t) for t in rep.thresholds],
            "rejected_printed": [thr(t) for t in rep.rejected],
            "intervals": [{"lo": i.lo, "hi": i.hi, "winner": i.winner} for i in rep.intervals],
            "pairwise": rep.pairwise,
            "paper_refs": REFS["compare"],
        }
    )


def cmd_densecode(args) -> str:
    rep = densecode.report(args.n, args.k)
    bits = rep.bits_per_transmitted_qubit
    return _dump(
        {
            "command": "densecode",
            "n": rep.n,
            "k": rep.k,
            "gram": _matrix(rep.gram),
            "decode_table": {str(m): {"message": got, "probability": p} for m, (got, p) in rep.decode_table.items()},
            "bits_per_transmitted_qubit": None if math.isnan(bits) else bits,
            "paper_refs": REFS["densecode"],
        }
    )


def cmd_figures(args) -> str:
    out = Path(args.out or ".")
    tables = [compare.curves(k, args.grid) for k in args.ks]
    _write(curves_csv(tables, FIG1_COLUMNS), str(out / "fig1.csv"))
    _write(curves_csv(tables, FIG2_COLUMNS), str(out / "fig2.csv"))
    return ""


COMMANDS = {
    "teleport": cmd_teleport,
    "audit": cmd_audit,
    "concentrate": cmd_concentrate,
    "enumerate": cmd_enumerate,
    "compare": cmd_compare,
    "densecode": cmd_densecode,
    "figures": cmd_figures,
}


def _ks(text: str) -> tuple[float, ...]:
    try:
        ks = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if any(not (math.isfinite(k) and k >= 0) for k in ks):
        raise argparse.ArgumentTypeError(f"k values must be finite and nonnegative, got {text!r}")
    return ks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, n=4, alpha=0.6, fmt="json"):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--n", type=int, default=n)
        p.add_argument("--k", type=float, default=1.0)
        p.add_argument("--alpha", type=float, default=alpha)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="output path (stdout when omitted)")
        p.add_argument("--format", choices=("json", "csv"), default=fmt)
        return p

    for name in ("teleport", "audit"):
        p = add(name, f"{name} report")
        p.add_argument("--phases", default=None, help="comma-separated radians, or 'random'")
        p.add_argument("--variant", type=BasisVariant, default=BasisVariant.CORRECTED,
                       choices=list(BasisVariant), metavar="{corrected,as-printed}")
    p = add("concentrate", "one Bell-measurement branch", alpha=0.5)
    p.add_argument("--case", type=int, default=None)
    p.add_argument("--pairing", default=None, help="e.g. '(b,1)+(2,3)|keep a'")
    p.add_argument("--outcomes", default=None, help="e.g. 'phi+,psi-'")
    p.add_argument("--z-bits", default=None, help="computational-basis readouts, e.g. '01'")
    add("enumerate", "all Bell-measurement branches", alpha=0.5, fmt="csv")
    p = add("compare", "3- vs 4-qubit region report")
    p.add_argument("--grid", type=int, default=1000)
    add("densecode", "superdense coding report")
    p = add("figures", "write fig1.csv and fig2.csv")
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--ks", type=_ks, default=FIGURE_KS, help="comma-separated k values")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its usage line
        return int(exc.code or 0)
    try:
        text = COMMANDS[args.command](args)
        if text:
            _write(text, args.out)
    except WLabError as exc:
        print(f"wlab: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
