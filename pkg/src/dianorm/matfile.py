"""JSON matrix interchange.

A matrix file is a JSON object::

    {"rows": 2, "cols": 2,
     "data": [[re, im], [re, im], [re, im], [re, im]],   # row-major
     "dim_w": 1, "dim_v": 2}                              # optional

``dim_w``/``dim_v`` mark a bipartite operator and require
``rows == cols == dim_w * dim_v``.  Floats are written with Python's
shortest round-trip repr, so reading a written file gives back the
identical doubles.
"""
import hashlib
import json

import numpy as np

from .bipartite import BipartiteOperator


class MatrixFileError(ValueError):
    """Malformed matrix file."""


def matrix_to_dict(M, dim_w: int = None, dim_v: int = None) -> dict:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise MatrixFileError("only 2-d arrays can be encoded")
    out = {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in M.reshape(-1)],
    }
    if dim_w is not None:
        out["dim_w"] = int(dim_w)
        out["dim_v"] = int(dim_v)
    return out


def operator_to_dict(X: BipartiteOperator) -> dict:
    return matrix_to_dict(X.matrix, X.dim_w, X.dim_v)


def dict_to_matrix(obj) -> np.ndarray:
    """Decode a matrix file object; raises :class:`MatrixFileError` on any schema violation."""
    if not isinstance(obj, dict):
        raise MatrixFileError("top level must be an object")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except KeyError as exc:
        raise MatrixFileError(f"missing field {exc.args[0]!r}") from None
    if not all(isinstance(v, int) and not isinstance(v, bool) and v > 0 for v in (rows, cols)):
        raise MatrixFileError("rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise MatrixFileError(f"data must hold rows * cols = {rows * cols} entries")
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError):
        raise MatrixFileError("data entries must be [re, im] number pairs") from None
    if arr.shape != (rows * cols, 2):
        raise MatrixFileError("data entries must be [re, im] number pairs")
    if not np.all(np.isfinite(arr)):
        raise MatrixFileError("data contains non-finite values")
    M = (arr[:, 0] + 1j * arr[:, 1]).reshape(rows, cols)
    if ("dim_w" in obj) != ("dim_v" in obj):
        raise MatrixFileError("dim_w and dim_v must be given together")
    if "dim_w" in obj:
        dw, dv = obj["dim_w"], obj["dim_v"]
        if not all(isinstance(v, int) and not isinstance(v, bool) and v > 0 for v in (dw, dv)):
            raise MatrixFileError("dim_w and dim_v must be positive integers")
        if not rows == cols == dw * dv:
            raise MatrixFileError(f"rows = cols = dim_w * dim_v required, got {rows}x{cols}")
    return M


def dumps(obj) -> str:
    return json.dumps(obj, indent=None, allow_nan=False)


def loads_matrix(text: str):
    """Parse matrix-file text; returns ``(matrix, dim_w, dim_v)`` with dims possibly ``None``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"invalid JSON: {exc}") from None
    M = dict_to_matrix(obj)
    return M, obj.get("dim_w"), obj.get("dim_v")


def read_matrix_file(path):
    """Read a matrix file; returns ``(matrix, dim_w, dim_v, sha256 hex digest of the bytes)``."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise MatrixFileError("file is not UTF-8 text") from None
    M, dw, dv = loads_matrix(text)
    return M, dw, dv, hashlib.sha256(raw).hexdigest()


def write_matrix_file(path, M, dim_w: int = None, dim_v: int = None):
    with open(path, "w") as fh:
        fh.write(dumps(matrix_to_dict(M, dim_w, dim_v)))
        fh.write("\n")
