"""Command-line front end for the laboratory.

Four subcommands drive the main experiments and emit machine-readable
results for offline plotting:

    bb84      protocol runs, QBER, and the eavesdropper-detection sweep
    teleport  sampled teleportation trials with fidelity per trial
    games     a registered attack-game suite, reported with confidence
    entropy   closed-form S(rho), chi, and I(X;Y) demo tables

Output goes to standard out (or --out FILE) as a single JSON document or
as CSV with a stable header; all CSV floats carry six decimal places.
Every command is deterministic for a fixed seed; the default seed is
DEFAULT_SEED so published numbers replay verbatim.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .bb84 import Bb84Config, detect, detection_sweep, run_bb84, sift
from .entropy import (
    Ensemble,
    average_state,
    bell_measurement,
    density_of,
    holevo_chi,
    measurement_mutual_information,
    partial_trace,
    pure_ensemble,
    von_neumann_entropy,
)
from .errors import LabError, UsageError
from .games import report_json, run_game_suite, suite_names
from .quantum import (
    BELL_STATES,
    KET_0,
    KET_1,
    KET_MINUS,
    KET_PLUS,
    PHI_PLUS,
    fidelity,
    make_qubit,
)
from .teleport import teleport

__all__ = ["Command", "DEFAULT_SEED", "main", "parse_args", "run"]

# Fixed default so every published table replays bit-for-bit.
DEFAULT_SEED = 20240817


@dataclass(frozen=True)
class Command:
    """A validated invocation: subcommand, its flag map, seed, format."""

    subcommand: str
    options: Mapping
    seed: int
    format: str


class _Parser(argparse.ArgumentParser):
    # argparse wants to sys.exit on bad flags; surface a typed error
    # instead so main() owns the exit status.
    def error(self, message: str):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="qcryptolab",
        description=(
            "Desk-scale quantum and classical cryptography experiments. "
            f"All randomness is seeded (default seed: {DEFAULT_SEED}), so "
            "every table is reproducible."
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser, with_seed: bool = True) -> None:
        if with_seed:
            p.add_argument(
                "--seed",
                type=int,
                default=DEFAULT_SEED,
                help=f"master random seed (default: {DEFAULT_SEED})",
            )
        p.add_argument(
            "--format",
            choices=("json", "csv"),
            default="json",
            help="output format (default: json)",
        )
        p.add_argument("--out", default=None, help="write output to this file instead of stdout")

    p_bb = sub.add_parser(
        "bb84",
        help="run the key-distribution protocol and the detection sweep",
        description=(
            "Run the protocol and report {sift_fraction, qber, detected, key_len}. "
            "With --sweep-k K, also tabulate empirical vs closed-form detection "
            "probability for k = 1..K over --runs repetitions each. "
            "CSV emits the summary row (header: qubits,eve,reveal,seed,"
            "sift_fraction,qber,detected,key_len), or the sweep table (header: "
            "k,runs,empirical,closed_form) when --sweep-k is given."
        ),
    )
    p_bb.add_argument("--qubits", type=int, default=1000, help="protocol rounds (default: 1000)")
    p_bb.add_argument(
        "--eve",
        choices=("none", "intercept-resend"),
        default="none",
        help="eavesdropper model (default: none)",
    )
    p_bb.add_argument(
        "--reveal", type=int, default=0, help="sifted bits compared publicly (default: 0)"
    )
    p_bb.add_argument(
        "--sweep-k", type=int, default=None, help="tabulate detection for k = 1..K"
    )
    p_bb.add_argument(
        "--runs", type=int, default=1000, help="repetitions per sweep point (default: 1000)"
    )
    add_common(p_bb)

    p_tp = sub.add_parser(
        "teleport",
        help="teleport random states and tabulate outcome bits and fidelity",
        description=(
            "Sample a random input state per trial, teleport it, and report "
            "{trial, outcome_bits, fidelity} rows (CSV header: trial,"
            "outcome_bits,fidelity)."
        ),
    )
    p_tp.add_argument("--trials", type=int, default=100, help="trial count (default: 100)")
    add_common(p_tp)

    p_gm = sub.add_parser(
        "games",
        help="run an attack-game suite and report advantages",
        description=(
            "Run a registered suite and report one row per game: {game, scheme, "
            "adversary, trials, advantage, ci_half_width, wins} (CSV header: "
            "game,scheme,adversary,trials,advantage,ci_half_width,wins). "
            f"Known suites: {', '.join(suite_names())}."
        ),
    )
    p_gm.add_argument("--suite", default="default", help="suite name (default: default)")
    p_gm.add_argument(
        "--trials", type=int, default=None, help="override per-row trial counts"
    )
    add_common(p_gm)

    p_en = sub.add_parser(
        "entropy",
        help="closed-form entropy, Holevo, and mutual-information tables",
        description=(
            "Closed-form demo tables.  --demo ensembles: one row per built-in "
            "qubit ensemble (CSV header: ensemble,s_rho,chi,i_z,i_x).  --demo "
            "bell: entangled-pair entropies and the Bell-ensemble extraction "
            "rates (CSV header: quantity,value).  Deterministic; no seed."
        ),
    )
    p_en.add_argument(
        "--demo",
        choices=("bell", "ensembles"),
        default="ensembles",
        help="which table to print (default: ensembles)",
    )
    add_common(p_en, with_seed=False)
    return parser


def parse_args(argv: Sequence[str]) -> Command:
    """Parse and validate argv into a Command, raising UsageError on misuse."""
    parser = _build_parser()
    ns = vars(parser.parse_args(list(argv)))
    sub = ns.pop("subcommand")
    seed = ns.pop("seed", DEFAULT_SEED)
    fmt = ns.pop("format")

    def require(flag: str, minimum: int) -> None:
        value = ns.get(flag)
        if value is not None and value < minimum:
            raise UsageError(f"--{flag.replace('_', '-')} must be >= {minimum}, got {value}")

    require("qubits", 1)
    require("reveal", 0)
    require("sweep_k", 1)
    require("runs", 1)
    require("trials", 1)
    return Command(subcommand=sub, options=ns, seed=seed, format=fmt)


# --- serialization helpers ------------------------------------------------


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _csv_table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(cell) for cell in row])
    return buffer.getvalue()


def _json_doc(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


# --- subcommand bodies ----------------------------------------------------


def _run_bb84(cmd: Command) -> str:
    opts = cmd.options
    config = Bb84Config(
        n_rounds=opts["qubits"],
        eve=opts["eve"].replace("-", "_"),
        reveal_k=opts["reveal"],
        seed=cmd.seed,
    )
    sifted = sift(run_bb84(config))
    detection = detect(sifted, opts["reveal"])
    summary = {
        "qubits": opts["qubits"],
        "eve": opts["eve"],
        "reveal": opts["reveal"],
        "seed": cmd.seed,
        "sift_fraction": sifted.sift_fraction,
        "qber": sifted.qber,
        "detected": detection.detected,
        "key_len": len(detection.final_key_alice),
    }
    sweep = None
    if opts["sweep_k"] is not None:
        sweep = detection_sweep(opts["sweep_k"], opts["runs"], seed=cmd.seed)
    if cmd.format == "csv":
        if sweep is not None:
            header = ("k", "runs", "empirical", "closed_form")
            return _csv_table(header, [[row[h] for h in header] for row in sweep])
        header = tuple(summary)
        return _csv_table(header, [[summary[h] for h in header]])
    doc = {"summary": summary}
    if sweep is not None:
        doc["sweep"] = sweep
    return _json_doc(doc)


def _random_qubit(rng: np.random.Generator):
    amps = rng.normal(size=2) + 1j * rng.normal(size=2)
    norm = np.linalg.norm(amps)
    while norm < 1e-6:  # vanishing draw; resample rather than divide by ~0
        amps = rng.normal(size=2) + 1j * rng.normal(size=2)
        norm = np.linalg.norm(amps)
    return make_qubit(amps[0] / norm, amps[1] / norm)


def _run_teleport(cmd: Command) -> str:
    rng = np.random.default_rng(cmd.seed)
    rows = []
    for trial in range(cmd.options["trials"]):
        state = _random_qubit(rng)
        outcome = teleport(state, rng)
        bits = outcome.classical_bits
        rows.append(
            {
                "trial": trial,
                "outcome_bits": f"{bits[0]}{bits[1]}",
                "fidelity": fidelity(outcome.corrected_state, state),
            }
        )
    if cmd.format == "csv":
        header = ("trial", "outcome_bits", "fidelity")
        return _csv_table(header, [[row[h] for h in header] for row in rows])
    return _json_doc({"trials": len(rows), "seed": cmd.seed, "rows": rows})


def _run_games(cmd: Command) -> str:
    estimates = run_game_suite(cmd.options["suite"], cmd.seed, cmd.options["trials"])
    rows = json.loads(report_json(estimates))["rows"]
    if cmd.format == "csv":
        header = ("game", "scheme", "adversary", "trials", "advantage", "ci_half_width", "wins")
        table = [
            [
                row["game"],
                row["scheme"],
                row["adversary"],
                row["trials"],
                row["advantage"],
                row["ci_half_width"],
                json.dumps(row["wins"], sort_keys=True),
            ]
            for row in rows
        ]
        return _csv_table(header, table)
    return _json_doc({"suite": cmd.options["suite"], "seed": cmd.seed, "rows": rows})


def _builtin_ensembles() -> list[tuple[str, Ensemble]]:
    half = (0.5, 0.5)
    quarter = (0.25, 0.25, 0.25, 0.25)
    return [
        ("z-pair", pure_ensemble(half, (KET_0, KET_1))),
        ("x-pair", pure_ensemble(half, (KET_PLUS, KET_MINUS))),
        ("conjugate-pair", pure_ensemble(half, (KET_0, KET_PLUS))),
        ("bb84-four", pure_ensemble(quarter, (KET_0, KET_1, KET_PLUS, KET_MINUS))),
    ]


def _run_entropy(cmd: Command) -> str:
    if cmd.options["demo"] == "ensembles":
        rows = []
        for name, ensemble in _builtin_ensembles():
            rows.append(
                {
                    "ensemble": name,
                    "s_rho": von_neumann_entropy(average_state(ensemble)),
                    "chi": holevo_chi(ensemble),
                    "i_z": measurement_mutual_information(ensemble, "Z"),
                    "i_x": measurement_mutual_information(ensemble, "X"),
                }
            )
        if cmd.format == "csv":
            header = ("ensemble", "s_rho", "chi", "i_z", "i_x")
            return _csv_table(header, [[row[h] for h in header] for row in rows])
        return _json_doc({"demo": "ensembles", "rows": rows})

    # The entangled-pair numbers: a pure joint state with maximally mixed
    # halves, and what Bell-basis vs local measurements extract from the
    # uniform Bell ensemble.
    joint = density_of(PHI_PLUS)
    bell_ensemble = Ensemble(
        tuple((0.25, density_of(BELL_STATES[key])) for key in sorted(BELL_STATES))
    )
    quantities = [
        ("s_joint_pair", von_neumann_entropy(joint)),
        ("s_reduced_first", von_neumann_entropy(partial_trace(joint, (0,)))),
        ("s_reduced_second", von_neumann_entropy(partial_trace(joint, (1,)))),
        ("chi_bell_ensemble", holevo_chi(bell_ensemble)),
        (
            "i_bell_basis",
            measurement_mutual_information(bell_ensemble, bell_measurement()),
        ),
        ("i_local_zz", measurement_mutual_information(bell_ensemble, "Z")),
    ]
    if cmd.format == "csv":
        return _csv_table(("quantity", "value"), quantities)
    return _json_doc({"demo": "bell", "rows": [{"quantity": q, "value": v} for q, v in quantities]})


_RUNNERS = {
    "bb84": _run_bb84,
    "teleport": _run_teleport,
    "games": _run_games,
    "entropy": _run_entropy,
}


def run(cmd: Command) -> int:
    """Execute a parsed Command; returns the process exit status."""
    text = _RUNNERS[cmd.subcommand](cmd)
    _emit(text, cmd.options.get("out"))
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    """Console entry point: parse, run, map errors to exit statuses."""
    try:
        command = parse_args(sys.argv[1:] if argv is None else argv)
        return run(command)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except LabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
