"""Access to the bundled reference matrix documents."""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from . import io

REFERENCE_NAMES = (
    "example1",
    "example2",
    "example3",
    "figure1",
    "figure2",
    "figure3",
)


def reference_document(name: str) -> dict:
    if name not in REFERENCE_NAMES:
        raise KeyError(f"unknown reference configuration {name!r}")
    text = resources.files("kipcurve").joinpath(f"data/{name}.json").read_text()
    return json.loads(text)


def reference_matrix(name: str) -> tuple[np.ndarray, dict]:
    return io.document_to_matrix(reference_document(name))
