"""JSON file formats for codes, read plans and matrices, plus the bundled fixture.

Code file::

    {"p": 43, "ell": 4, "lambda": 2, "kF": 2, "rF": 1, "rI": 4,
     "B": [[...], ...],   # kI*ell rows x rI*ell columns
     "C": [[...], ...]}   # kF*ell rows x rF*ell columns

Plan file: ``{"D": [[0, 1], [], ...]}`` with one 0-based list per initial
symbol. Matrix file: ``{"p": 43, "matrix": [[...], ...]}``. Signed entries
are accepted and reduced into ``[0, p)`` on load.
"""
from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path

from .code_model import ConvertiblePair, validate_params
from .conversion import ReadPlan
from .exceptions import DimensionMismatch
from .ff_linalg import FFMatrix, check_prime
from .validation import check_matrix_shape

SCHEMA = "convertbw/1"

# sha256 of the canonical JSON (sorted keys, no whitespace) of each bundled file.
FIXTURE_SHA256 = {
    "worked_example_code.json": "9d6049865e2bb77cc7534f79b30247ebd23f10da34bcb52d609effbc6f9ca101",
    "worked_example_plan.json": "ce22c3f83568f641db5bb4f460174497708ae8895c6f7749cbc427dce66bb2b3",
    "worked_example_E.json": "edf7050bf88c7e10885f817117006dda4ef7b53aa7def0eecd3d2aceaf390dcc",
}


def canonical_digest(doc) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _read(path) -> dict:
    with open(path) as f:
        doc = json.load(f)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: expected a JSON object")
    return doc


def _write(doc: dict, path) -> None:
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def code_from_dict(doc: dict) -> ConvertiblePair:
    missing = {"p", "ell", "lambda", "kF", "rF", "rI", "B", "C"} - set(doc)
    if missing:
        raise ValueError(f"code file is missing keys: {sorted(missing)}")
    params = validate_params(doc["lambda"], doc["kF"], doc["rF"], doc["rI"], doc["ell"], doc["p"])
    ell = params.ell
    check_matrix_shape(doc["B"], (params.kI * ell, params.rI * ell), "B")
    check_matrix_shape(doc["C"], (params.kF * ell, params.rF * ell), "C")
    B = FFMatrix.from_rows(doc["B"], params.p, cols=params.rI * ell)
    C = FFMatrix.from_rows(doc["C"], params.p, cols=params.rF * ell)
    return ConvertiblePair(params, B, C)


def code_to_dict(pair: ConvertiblePair) -> dict:
    pr = pair.params
    return {"p": pr.p, "ell": pr.ell, "lambda": pr.lambda_, "kF": pr.kF, "rF": pr.rF, "rI": pr.rI,
            "B": pair.B.tolist(), "C": pair.C.tolist()}


def load_code(path) -> ConvertiblePair:
    return code_from_dict(_read(path))


def save_code(pair: ConvertiblePair, path) -> None:
    _write(code_to_dict(pair), path)


def plan_from_dict(doc: dict) -> ReadPlan:
    if "D" not in doc or not isinstance(doc["D"], list):
        raise ValueError('plan file needs a "D" list')
    return ReadPlan.from_lists(doc["D"])


def load_plan(path) -> ReadPlan:
    return plan_from_dict(_read(path))


def save_plan(plan: ReadPlan, path) -> None:
    _write(plan.to_json(), path)


def matrix_from_dict(doc: dict) -> FFMatrix:
    p = check_prime(doc["p"])
    rows = doc["matrix"]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DimensionMismatch("ragged matrix rows")
    return FFMatrix.from_rows(rows, p, cols=doc.get("cols", 0))


def load_matrix(path) -> FFMatrix:
    return matrix_from_dict(_read(path))


def save_matrix(m: FFMatrix, path) -> None:
    _write({"p": m.p, "rows": m.rows, "cols": m.cols, "matrix": m.tolist()}, path)


def fixture_doc(name: str) -> dict:
    text = resources.files("convertbw").joinpath("data", name).read_text()
    return json.loads(text)


def fixture_intact() -> dict[str, bool]:
    """Compare each bundled fixture file against its recorded digest."""
    return {name: canonical_digest(fixture_doc(name)) == digest for name, digest in FIXTURE_SHA256.items()}


def worked_example() -> tuple[ConvertiblePair, ReadPlan, FFMatrix]:
    """The worked example: code pair over F_43, its 8-subsymbol plan, and ``E``."""
    return (code_from_dict(fixture_doc("worked_example_code.json")),
            plan_from_dict(fixture_doc("worked_example_plan.json")),
            matrix_from_dict(fixture_doc("worked_example_E.json")))
