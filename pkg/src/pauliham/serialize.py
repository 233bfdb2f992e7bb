"""JSON file formats for Hamiltonians and state vectors.

Hamiltonian files:

    {"n": 2, "terms": [{"pauli": "XX", "coeff": 1.0}, ...]}

Terms are saved in canonical label order and duplicate labels merge by
summation on load; unknown top-level keys (e.g. embedded run configs) are
ignored.  State files:

    {"n": 1, "amplitudes": [[re, im], ...]}

with exactly 2^n entries; a norm within 1e-6 of 1 is renormalized exactly,
anything farther off is rejected.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .paulis import Hamiltonian, PauliParseError, parse_pauli, sorted_terms
from .spectra import StateVector

STATE_NORM_TOLERANCE = 1e-6


class SchemaError(ValueError):
    """A file does not match its JSON schema; the message names the field."""


def _load_json(path: "str | Path") -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc


def _require_int(obj: Any, field: str, path) -> int:
    value = obj.get(field)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{path}: field {field!r} must be an integer")
    return value


def load_hamiltonian(path: "str | Path") -> Hamiltonian:
    """Load and canonicalize a Hamiltonian JSON file.

    Raises:
        SchemaError: missing/ill-typed fields, inconsistent string lengths,
            non-finite coefficients, or illegal Pauli letters; the message
            names the offending entry.
    """
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be a JSON object")
    n = _require_int(doc, "n", path)
    if n < 1:
        raise SchemaError(f"{path}: field 'n' must be >= 1, got {n}")
    entries = doc.get("terms")
    if not isinstance(entries, list):
        raise SchemaError(f"{path}: field 'terms' must be a list")
    pairs = []
    for i, entry in enumerate(entries):
        where = f"{path}: terms[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{where} must be an object")
        label = entry.get("pauli")
        if not isinstance(label, str):
            raise SchemaError(f"{where}.pauli must be a string")
        coeff = entry.get("coeff")
        if isinstance(coeff, bool) or not isinstance(coeff, (int, float)):
            raise SchemaError(f"{where}.coeff must be a real number")
        if not math.isfinite(coeff):
            raise SchemaError(f"{where}.coeff is non-finite: {coeff}")
        try:
            pauli = parse_pauli(label)
        except PauliParseError as exc:
            raise SchemaError(f"{where}.pauli: {exc}") from exc
        if pauli.n != n:
            raise SchemaError(
                f"{where}.pauli has length {pauli.n}, expected n={n}"
            )
        pairs.append((pauli, float(coeff)))
    return Hamiltonian.from_pairs(n, pairs)


def hamiltonian_to_jsonable(h: Hamiltonian) -> dict:
    return {
        "n": h.n,
        "terms": [
            {"pauli": p.label, "coeff": c} for p, c in sorted_terms(h)
        ],
    }


def save_hamiltonian(h: Hamiltonian, path: "str | Path", *, extra: dict | None = None) -> None:
    """Write a Hamiltonian in canonical term order; deterministic bytes."""
    doc = hamiltonian_to_jsonable(h)
    if extra:
        doc.update(extra)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_state(path: "str | Path") -> StateVector:
    """Load a state-vector JSON file, renormalizing small norm drift.

    Raises:
        SchemaError: wrong amplitude count or shape, non-finite entries, or
            a norm farther than 1e-6 from 1.
    """
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be a JSON object")
    n = _require_int(doc, "n", path)
    if n < 1:
        raise SchemaError(f"{path}: field 'n' must be >= 1, got {n}")
    raw = doc.get("amplitudes")
    if not isinstance(raw, list):
        raise SchemaError(f"{path}: field 'amplitudes' must be a list")
    if len(raw) != 1 << n:
        raise SchemaError(
            f"{path}: amplitudes has {len(raw)} entries, expected {1 << n}"
        )
    amps = np.empty(1 << n, dtype=np.complex128)
    for i, entry in enumerate(raw):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in entry)
        ):
            raise SchemaError(f"{path}: amplitudes[{i}] must be a [re, im] pair")
        if not (math.isfinite(entry[0]) and math.isfinite(entry[1])):
            raise SchemaError(f"{path}: amplitudes[{i}] is non-finite")
        amps[i] = complex(entry[0], entry[1])
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > STATE_NORM_TOLERANCE:
        raise SchemaError(
            f"{path}: state norm {norm!r} deviates from 1 by more than "
            f"{STATE_NORM_TOLERANCE}"
        )
    return StateVector.normalized(n, amps)


def state_to_jsonable(psi: StateVector) -> dict:
    return {
        "n": psi.n,
        "amplitudes": [[float(a.real), float(a.imag)] for a in psi.amplitudes],
    }


def save_state(psi: StateVector, path: "str | Path") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state_to_jsonable(psi), fh, indent=2, sort_keys=True)
        fh.write("\n")
