"""Ensemble file round-trip.

The on-disk format is JSON::

    {
      "dim": 2,
      "members": [
        {"p": 0.5, "rho": [[[re, im], ...], ...]},
        {"p": 0.25, "psi": [[re, im], ...]},
        {"p": 0.25, "bloch": [x, y, z]}
      ]
    }

Complex entries are [re, im] pairs.  ``rho`` is a dim x dim density
matrix, ``psi`` a length-dim amplitude vector (stored as its projector),
and ``bloch`` a Bloch-ball vector (qubit files only).  Exactly one of the
three must be present per member.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .ensemble import Ensemble
from .errors import EnsembleFileError, EnsqError
from .states import DensityMatrix, PureState, density_from_bloch, projector

__all__ = ["load_ensemble", "save_ensemble", "ensemble_to_payload"]

_STATE_KEYS = ("rho", "psi", "bloch")


def _complex_from_pair(entry, where: str) -> complex:
    if (
        not isinstance(entry, (list, tuple))
        or len(entry) != 2
        or not all(isinstance(x, (int, float)) for x in entry)
    ):
        raise EnsembleFileError(f"{where}: expected an [re, im] pair, got {entry!r}")
    return complex(entry[0], entry[1])


def _member_state(spec: dict, dim: int, where: str) -> DensityMatrix:
    present = [k for k in _STATE_KEYS if k in spec]
    if len(present) != 1:
        raise EnsembleFileError(
            f"{where}: need exactly one of {', '.join(_STATE_KEYS)}, got {present or 'none'}"
        )
    key = present[0]
    value = spec[key]
    try:
        if key == "rho":
            if not isinstance(value, list) or len(value) != dim:
                raise EnsembleFileError(f"{where}: rho must be a {dim}x{dim} matrix")
            rows = []
            for r, row in enumerate(value):
                if not isinstance(row, list) or len(row) != dim:
                    raise EnsembleFileError(f"{where}: rho must be a {dim}x{dim} matrix")
                rows.append([_complex_from_pair(x, f"{where}, rho[{r}]") for x in row])
            return DensityMatrix(np.array(rows))
        if key == "psi":
            if not isinstance(value, list) or len(value) != dim:
                raise EnsembleFileError(f"{where}: psi must have {dim} amplitudes")
            amps = [_complex_from_pair(x, f"{where}, psi") for x in value]
            return projector(PureState(np.array(amps)))
        if dim != 2:
            raise EnsembleFileError(f"{where}: bloch members need dim 2, file has dim {dim}")
        if not isinstance(value, list) or len(value) != 3 or not all(
            isinstance(x, (int, float)) for x in value
        ):
            raise EnsembleFileError(f"{where}: bloch must be [x, y, z]")
        return density_from_bloch(value)
    except EnsembleFileError:
        raise
    except EnsqError as exc:
        raise EnsembleFileError(f"{where}: {exc}") from exc


def load_ensemble(path) -> Ensemble:
    """Load and validate an ensemble file; diagnostics name the offending member."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EnsembleFileError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise EnsembleFileError(f"{path}: top level must be an object")
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise EnsembleFileError(f"{path}: dim must be a positive integer")
    members = data.get("members")
    if not isinstance(members, list) or not members:
        raise EnsembleFileError(f"{path}: members must be a nonempty list")
    pairs = []
    for idx, spec in enumerate(members):
        where = f"member {idx}"
        if not isinstance(spec, dict):
            raise EnsembleFileError(f"{where}: must be an object")
        p = spec.get("p")
        if not isinstance(p, (int, float)) or isinstance(p, bool) or p < 0:
            raise EnsembleFileError(f"{where}: p must be a nonnegative number")
        pairs.append((float(p), _member_state(spec, dim, where)))
    try:
        return Ensemble(tuple(pairs))
    except EnsqError as exc:
        raise EnsembleFileError(f"{path}: {exc}") from exc


def _pairs(matrix: np.ndarray) -> list:
    return [[[float(x.real), float(x.imag)] for x in row] for row in matrix]


def ensemble_to_payload(ensemble: Ensemble) -> dict:
    """JSON-ready dict with every member stored as an explicit rho matrix."""
    return {
        "dim": ensemble.dim,
        "members": [
            {"p": float(p), "rho": _pairs(s.matrix)} for p, s in ensemble
        ],
    }


def save_ensemble(path, ensemble: Ensemble) -> None:
    """Write an ensemble file; byte-identical output for identical input."""
    payload = ensemble_to_payload(ensemble)
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
