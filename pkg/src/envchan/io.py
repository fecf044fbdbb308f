"""JSON serialization of channels, states, dilations, and reports.

All files are UTF-8 JSON with ``format_version: 1``. Complex matrices are
written as nested lists of ``[re, im]`` pairs; floats use Python's shortest
round-trip representation, so writing and re-reading is bit-exact.
Validation of loaded objects uses a looser tolerance (1e-8) than internal
construction, to absorb decimal round-trips of files produced elsewhere.
"""

from __future__ import annotations

import json
from numbers import Real

import numpy as np

from .channels import Channel, ChoiMatrix, KrausSet
from .dilation import Dilation
from .states import validate_density_matrix
from .tolerances import TOLS

FORMAT_VERSION = 1


def matrix_to_pairs(m) -> list:
    """Encode a complex matrix as nested lists of [re, im] pairs."""
    m = np.asarray(m, dtype=complex)
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def matrix_from_pairs(obj) -> np.ndarray:
    """Decode a matrix written by :func:`matrix_to_pairs`.

    Raises:
        ValueError: "malformed matrix" on any structural problem.
    """
    if not isinstance(obj, list) or not obj:
        raise ValueError("malformed matrix")
    rows = []
    width = None
    for row in obj:
        if not isinstance(row, list) or (width is not None and len(row) != width):
            raise ValueError("malformed matrix")
        width = len(row)
        entries = []
        for pair in row:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, Real) for x in pair)
            ):
                raise ValueError("malformed matrix")
            entries.append(complex(pair[0], pair[1]))
        rows.append(entries)
    if width == 0:
        raise ValueError("malformed matrix")
    return np.array(rows, dtype=complex)


def _check_version(data: dict) -> None:
    if not isinstance(data, dict):
        raise ValueError("malformed file")
    if data.get("format_version") != FORMAT_VERSION:
        raise ValueError("unsupported format version")


def channel_to_dict(ch: Channel) -> dict:
    """ChannelFile payload: the Kraus representation."""
    return {
        "format_version": FORMAT_VERSION,
        "kind": "channel",
        "d_in": ch.d_in,
        "d_out": ch.d_out,
        "kraus": [matrix_to_pairs(op) for op in ch.kraus.operators],
    }


def choi_to_dict(ch: Channel) -> dict:
    """ChannelFile payload: the Choi representation."""
    return {
        "format_version": FORMAT_VERSION,
        "kind": "choi",
        "d_in": ch.d_in,
        "d_out": ch.d_out,
        "choi": matrix_to_pairs(ch.choi.matrix),
    }


def channel_from_dict(data: dict) -> Channel:
    """Load a channel from either representation, validating at file
    tolerance.

    Raises:
        ValueError: "unsupported format version", "malformed file",
            "malformed matrix", or a validation message from the
            representation constructors.
    """
    _check_version(data)
    d_in, d_out = data.get("d_in"), data.get("d_out")
    if not isinstance(d_in, int) or not isinstance(d_out, int):
        raise ValueError("malformed file")
    if "kraus" in data:
        ops = data["kraus"]
        if not isinstance(ops, list) or not ops:
            raise ValueError("malformed file")
        operators = tuple(matrix_from_pairs(op) for op in ops)
        if any(op.shape != (d_out, d_in) for op in operators):
            raise ValueError("shape mismatch")
        return Channel.from_kraus(KrausSet(operators, atol=TOLS.file_roundtrip))
    if "choi" in data:
        matrix = matrix_from_pairs(data["choi"])
        choi = ChoiMatrix(
            d_in, d_out, matrix,
            psd_atol=TOLS.file_roundtrip, tp_atol=TOLS.file_roundtrip,
        )
        return Channel.from_choi(choi)
    raise ValueError("malformed file")


def state_to_dict(rho) -> dict:
    rho = np.asarray(rho, dtype=complex)
    return {
        "format_version": FORMAT_VERSION,
        "kind": "state",
        "dim": rho.shape[0],
        "matrix": matrix_to_pairs(rho),
    }


def state_from_dict(data: dict) -> np.ndarray:
    _check_version(data)
    matrix = matrix_from_pairs(data.get("matrix"))
    dim = data.get("dim")
    if not isinstance(dim, int) or matrix.shape != (dim, dim):
        raise ValueError("shape mismatch")
    return validate_density_matrix(
        matrix,
        hermitian_atol=TOLS.file_roundtrip,
        psd_atol=TOLS.file_roundtrip,
        trace_atol=TOLS.file_roundtrip,
    )


def dilation_to_dict(d: Dilation) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "dilation",
        "d_in": d.d_in,
        "d_fin": d.d_fin,
        "d_env": d.d_env,
        "unitary": matrix_to_pairs(d.unitary),
        "env_state": matrix_to_pairs(d.env_state),
    }


def dilation_from_dict(data: dict) -> Dilation:
    _check_version(data)
    dims = [data.get(key) for key in ("d_in", "d_fin", "d_env")]
    if not all(isinstance(x, int) for x in dims):
        raise ValueError("malformed file")
    return Dilation(
        d_in=dims[0],
        d_fin=dims[1],
        d_env=dims[2],
        unitary=matrix_from_pairs(data.get("unitary")),
        env_state=matrix_from_pairs(data.get("env_state")),
    )


def save_json(data: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(data, handle, indent=2)
        handle.write("\n")


def load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise ValueError("malformed file")
    return data
