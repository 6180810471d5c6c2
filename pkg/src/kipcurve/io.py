"""Matrix documents (JSON), curve CSV output, and bundled data access.

The matrix document format is

    {"n": 3, "entries": [[[re, im], ...], ...], "label": "...", "source": "..."}

with every entry an explicit [re, im] pair; floats round-trip losslessly
through ``repr``, which json uses.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import linalg


class MatrixDocumentError(ValueError):
    """Malformed matrix document (schema or value errors)."""


def matrix_to_document(a, label: str | None = None, source: str | None = None) -> dict:
    m = linalg.as_square_matrix(a)
    doc = {
        "n": int(m.shape[0]),
        "entries": [[[float(v.real), float(v.imag)] for v in row] for row in m],
    }
    if label is not None:
        doc["label"] = label
    if source is not None:
        doc["source"] = source
    return doc


def document_to_matrix(doc: dict) -> tuple[np.ndarray, dict]:
    """Parse a matrix document; returns (matrix, metadata)."""
    if not isinstance(doc, dict):
        raise MatrixDocumentError("document must be a JSON object")
    try:
        n = int(doc["n"])
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixDocumentError("document needs integer 'n' and 'entries'") from exc
    if not isinstance(entries, list) or len(entries) != n:
        raise MatrixDocumentError(f"'entries' must be a list of {n} rows")
    out = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixDocumentError(f"row {i} must have {n} entries")
        for j, cell in enumerate(row):
            if not (isinstance(cell, list) and len(cell) == 2):
                raise MatrixDocumentError(f"entry ({i},{j}) must be an [re, im] pair")
            try:
                out[i, j] = complex(float(cell[0]), float(cell[1]))
            except (TypeError, ValueError) as exc:
                raise MatrixDocumentError(f"entry ({i},{j}) is not numeric") from exc
    if not np.all(np.isfinite(out.view(float))):
        raise ValueError("matrix has non-finite entries")
    meta = {k: doc[k] for k in ("label", "source") if k in doc}
    return out, meta


def load_matrix(path) -> tuple[np.ndarray, dict]:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixDocumentError(f"invalid JSON: {exc}") from exc
    return document_to_matrix(doc)


def save_matrix(path, a, label: str | None = None, source: str | None = None) -> None:
    doc = matrix_to_document(a, label=label, source=source)
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")


def write_curve_csv(path, trace) -> None:
    """Curve CSV with columns theta,branch,lambda,re,im (theta-major).

    Floats are written with ``repr`` (shortest round-trip), so output is
    byte-stable for identical inputs.
    """
    lines = ["theta,branch,lambda,re,im"]
    for theta, branch, lam, point in trace.samples():
        lines.append(
            f"{float(theta)!r},{int(branch)},{float(lam)!r},{float(point.real)!r},{float(point.imag)!r}"
        )
    Path(path).write_text("\n".join(lines) + "\n")
