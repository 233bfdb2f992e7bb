"""Command-line surface tying the modules into reproducible experiments.

Subcommands: build, norms, spectrum, amplify, verify-lemma, game, sparsify.
Primary outputs are deterministic JSON (byte-identical for identical config
and inputs); wall-clock timestamps go only to a ``<out>.log`` sidecar.
Every report embeds the full run configuration under the "config" key.

Exit codes: 0 ok, 1 usage, 2 input error, 3 capacity error, 4 verification
failure (verify-lemma reporting all_bounds_hold = false).

The dense-size limit and the term-count cap honor the environment
variables PAULIHAM_DENSE_LIMIT and PAULIHAM_TERM_CAP.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import datetime
import io
import json
import math
import sys
from pathlib import Path

from .amplify import AmplifyParams, amplify, verify_amplification
from .game import simulate
from .paulis import (
    CapacityError,
    DimensionMismatchError,
    PauliParseError,
    build_model,
    pauli_1_norm,
)
from .serialize import (
    SchemaError,
    hamiltonian_to_jsonable,
    load_hamiltonian,
    load_state,
    save_state,
    state_to_jsonable,
)
from .spectra import DEFAULT_DENSE_LIMIT, extremal_eigs, operator_norm
from .sparsify import SparsifyParams, empirical_deviation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_CAPACITY = 3
EXIT_VERIFY = 4


class _Parser(argparse.ArgumentParser):
    # argparse defaults to exit code 2 on usage errors; this CLI reserves 2
    # for input errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _jsonable(value):
    """Recursively convert to JSON-safe values; non-finite floats become strings."""
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
    return value


def _config_of(args: argparse.Namespace) -> dict:
    return _jsonable({k: v for k, v in vars(args).items() if not k.startswith("_")})


def _emit_text(text: str, out: "str | None", args: argparse.Namespace) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")
    _sidecar_log(out, args)


def _emit_json(doc: dict, out: "str | None", args: argparse.Namespace) -> None:
    doc = dict(doc)
    doc["config"] = _config_of(args)
    _emit_text(json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n", out, args)


def _sidecar_log(out: str, args: argparse.Namespace) -> None:
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    line = f"{stamp} {args.subcommand} {json.dumps(_config_of(args), sort_keys=True)}\n"
    with open(f"{out}.log", "a", encoding="utf-8") as fh:
        fh.write(line)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _cmd_build(args) -> int:
    ham = build_model(
        args.kind.replace("-", "_"),
        n=args.n,
        ell=args.ell,
        m=args.m,
        seed=args.seed,
    )
    doc = hamiltonian_to_jsonable(ham)
    doc["config"] = _config_of(args)
    _emit_text(json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n", args.out, args)
    return EXIT_OK


def _cmd_norms(args) -> int:
    ham = load_hamiltonian(args.ham)
    _emit_json(
        {
            "n": ham.n,
            "num_terms": ham.num_terms,
            "pauli_1_norm": pauli_1_norm(ham),
            "operator_norm": operator_norm(ham),
        },
        args.out,
        args,
    )
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    ham = load_hamiltonian(args.ham)
    result = extremal_eigs(ham, tol=args.tol, max_iters=args.max_iters)
    if args.eigvec_out:
        if result.eigvec_max is None:
            raise ValueError(
                "top eigenvector is only available on the dense path "
                f"(n <= {DEFAULT_DENSE_LIMIT})"
            )
        save_state(result.eigvec_max, args.eigvec_out)
    _emit_json(
        {
            "lambda_max": result.lambda_max,
            "lambda_min": result.lambda_min,
            "method": result.method,
            "iterations": result.iterations,
            "residual": result.residual,
            "converged": result.converged,
        },
        args.out,
        args,
    )
    return EXIT_OK


def _cmd_amplify(args) -> int:
    ham = load_hamiltonian(args.ham)
    amplified = amplify(ham, args.k, assume_norm_ok=args.assume_norm_ok)
    doc = hamiltonian_to_jsonable(amplified)
    doc["config"] = _config_of(args)
    _emit_text(json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n", args.out, args)
    return EXIT_OK


def _cmd_verify_lemma(args) -> int:
    ham = load_hamiltonian(args.ham)
    params = AmplifyParams(k=args.k, p=args.p, q=args.q)
    report = verify_amplification(ham, params, eigen_tol=args.eigen_tol)
    _emit_json(dataclasses.asdict(report), args.out, args)
    return EXIT_OK if report.all_bounds_hold else EXIT_VERIFY


def _resolve_state(state_arg: str, ham):
    if state_arg != "top-eig":
        return load_state(state_arg)
    if ham.n > DEFAULT_DENSE_LIMIT:
        raise ValueError(
            f"top-eig needs the dense path (n <= {DEFAULT_DENSE_LIMIT}, got "
            f"n={ham.n}); pass an explicit state file instead"
        )
    return extremal_eigs(ham).eigvec_max


def _cmd_game(args) -> int:
    ham = load_hamiltonian(args.ham)
    psi = _resolve_state(args.state, ham)
    record = True if args.format == "csv" else None
    transcript = simulate(ham, psi, args.shots, args.seed, record_rounds=record)
    if args.format == "csv":
        rows = [
            [i, r.sampled_term.label, r.coeff_sign, r.outcome, int(r.accepted)]
            for i, r in enumerate(transcript.rounds)
        ]
        _emit_text(
            _csv_text(["round", "pauli", "coeff_sign", "outcome", "accepted"], rows),
            args.out,
            args,
        )
        return EXIT_OK
    _emit_json(
        {
            "shots": transcript.shots,
            "accept_frequency": transcript.accept_frequency,
            "std_error": transcript.std_error,
            "exact_probability": transcript.exact_probability,
            "seed": transcript.seed,
            "rounds_elided": len(transcript.rounds) == 0,
            "rounds": [
                {
                    "pauli": r.sampled_term.label,
                    "coeff_sign": r.coeff_sign,
                    "outcome": r.outcome,
                    "accepted": r.accepted,
                }
                for r in transcript.rounds
            ],
        },
        args.out,
        args,
    )
    return EXIT_OK


def _cmd_sparsify(args) -> int:
    ham = load_hamiltonian(args.ham)
    params = SparsifyParams(m=args.m, delta=args.delta, seed=args.seed, trials=args.trials)
    report = empirical_deviation(ham, params)
    if args.format == "csv":
        rows = [
            [i, d, int(d >= params.delta)] for i, d in enumerate(report.deviations)
        ]
        _emit_text(_csv_text(["trial", "deviation", "failed"], rows), args.out, args)
        return EXIT_OK
    _emit_json(dataclasses.asdict(report), args.out, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pauliham", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_build = sub.add_parser("build", help="construct a model Hamiltonian file")
    p_build.add_argument(
        "--kind",
        required=True,
        choices=["hadamard-power", "xxzz-chain", "random-local"],
    )
    p_build.add_argument("--n", type=int, required=True)
    p_build.add_argument("--ell", type=int, help="locality for random-local")
    p_build.add_argument("--m", type=int, help="term count for random-local")
    p_build.add_argument("--seed", type=int, help="seed for random-local")
    p_build.add_argument("--out", help="output Hamiltonian JSON (default stdout)")
    p_build.set_defaults(_handler=_cmd_build)

    p_norms = sub.add_parser("norms", help="Pauli 1-norm and operator norm")
    p_norms.add_argument("--ham", required=True)
    p_norms.add_argument("--out")
    p_norms.set_defaults(_handler=_cmd_norms)

    p_spec = sub.add_parser("spectrum", help="extremal eigenvalues")
    p_spec.add_argument("--ham", required=True)
    p_spec.add_argument("--tol", type=float, default=1e-8)
    p_spec.add_argument("--max-iters", type=int, default=100_000)
    p_spec.add_argument("--eigvec-out", help="also save the top eigenvector (dense path)")
    p_spec.add_argument("--out")
    p_spec.set_defaults(_handler=_cmd_spectrum)

    p_amp = sub.add_parser("amplify", help="shifted tensor-power transform")
    p_amp.add_argument("--ham", required=True)
    p_amp.add_argument("--k", type=int, required=True)
    p_amp.add_argument(
        "--assume-norm-ok",
        action="store_true",
        help="skip the ||H|| <= 1 precondition check",
    )
    p_amp.add_argument("--out", help="output Hamiltonian JSON (default stdout)")
    p_amp.set_defaults(_handler=_cmd_amplify)

    p_ver = sub.add_parser(
        "verify-lemma",
        help="check the amplification eigenvalue and norm bounds on an instance",
    )
    p_ver.add_argument("--ham", required=True)
    p_ver.add_argument("--p", type=float, required=True, help="YES threshold 1 - 1/p; 'inf' allowed")
    p_ver.add_argument("--q", type=float, required=True, help="NO threshold 1 - 1/q")
    p_ver.add_argument("--k", type=int, required=True)
    p_ver.add_argument("--eigen-tol", type=float, default=1e-8)
    p_ver.add_argument("--out")
    p_ver.set_defaults(_handler=_cmd_verify_lemma)

    p_game = sub.add_parser("game", help="run the energy-measurement game")
    p_game.add_argument("--ham", required=True)
    p_game.add_argument("--state", required=True, help="state JSON path, or 'top-eig'")
    p_game.add_argument("--shots", type=int, required=True)
    p_game.add_argument("--seed", type=int, required=True)
    p_game.add_argument("--format", choices=["json", "csv"], default="json")
    p_game.add_argument("--out")
    p_game.set_defaults(_handler=_cmd_game)

    p_sparse = sub.add_parser("sparsify", help="randomized restriction experiment")
    p_sparse.add_argument("--ham", required=True)
    p_sparse.add_argument("--m", type=int, required=True)
    p_sparse.add_argument("--delta", type=float, required=True)
    p_sparse.add_argument("--trials", type=int, default=1)
    p_sparse.add_argument("--seed", type=int, required=True)
    p_sparse.add_argument("--format", choices=["json", "csv"], default="json")
    p_sparse.add_argument("--out")
    p_sparse.set_defaults(_handler=_cmd_sparsify)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args._handler(args)
    except CapacityError as exc:
        print(f"pauliham {args.subcommand}: capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (
        SchemaError,
        PauliParseError,
        DimensionMismatchError,
        FileNotFoundError,
        IsADirectoryError,
        ValueError,
    ) as exc:
        print(f"pauliham {args.subcommand}: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
