"""
JSON codecs for algebra files and maximality reports.

Rationals travel as strings (``"p/q"`` or ``"n"``, lowest terms), never as floats. Algebra files
are written in canonical form: sorted keys, no insignificant whitespace, one trailing newline, so
writing a file that was just read gives the same bytes.
"""
import json
from collections import Counter
from typing import Optional, Sequence

import numpy as np

from error_function import AlgebraFileError, SuperJordanError
from general_function import generate_log, generate_uuid, initialize_output_file
from linalg_function import as_matrix, scalar_to_string, to_scalar
from superalgebra_function import MatrixRealization, Superalgebra, Superinvolution, make_superalgebra
from generation_function import MaximalityReport

log = generate_log(name=__name__)

FORMAT_VERSION = 1


def _matrix_to_strings(matrix: np.ndarray) -> list[list[str]]:
    return [[scalar_to_string(x) for x in row] for row in matrix]


def _parse(value: object, where: str):
    if not isinstance(value, str):
        raise AlgebraFileError(f"{where}: rationals must be strings, got {value!r}")
    try:
        return to_scalar(value)
    except (ValueError, ZeroDivisionError):
        raise AlgebraFileError(f"{where}: {value!r} is not an exact rational") from None


def algebra_to_dict(algebra: Superalgebra, involution: Optional[Superinvolution] = None) -> dict:
    """
    The AlgebraFile record: dense constants ``c[i][j][k]`` as rational strings.
    """
    d = algebra.dim
    constants = [[["0"] * d for _ in range(d)] for _ in range(d)]
    for i, row in algebra.table.items():
        for j, out in row.items():
            for k, value in out.items():
                constants[i][j][k] = scalar_to_string(value)
    data = {
        "format_version": FORMAT_VERSION,
        "name": algebra.name,
        "dim": d,
        "labels": list(algebra.labels),
        "parities": list(algebra.parities),
        "associative": algebra.associative,
        "constants": constants,
    }
    if algebra.realization is not None:
        data["realization"] = {
            "block_sizes": list(algebra.realization.block_sizes),
            "queer": algebra.realization.queer,
            "matrices": [_matrix_to_strings(m) for m in algebra.realization.matrices],
        }
    if involution is not None:
        data["superinvolution"] = {"name": involution.name, "matrix": _matrix_to_strings(involution.matrix)}
    return data


def dumps_algebra(algebra: Superalgebra, involution: Optional[Superinvolution] = None) -> str:
    return json.dumps(algebra_to_dict(algebra, involution), sort_keys=True, separators=(",", ":")) + "\n"


def algebra_from_dict(data: dict) -> tuple[Superalgebra, Optional[Superinvolution]]:
    """
    Rebuild the algebra (and its superinvolution, when present), re-validating the grading.

    Raises:
        AlgebraFileError: For a missing field, a wrong shape, a non-rational entry or a grading
            violation.
    """
    try:
        if data.get("format_version") != FORMAT_VERSION:
            raise AlgebraFileError(f"unsupported format_version {data.get('format_version')!r}")
        d = int(data["dim"])
        parities = [int(p) for p in data["parities"]]
        constants = data["constants"]
        labels = data.get("labels") or [f"b{i}" for i in range(d)]
        name = str(data["name"])
    except (KeyError, TypeError, ValueError) as error:
        if isinstance(error, AlgebraFileError):
            raise
        raise AlgebraFileError(f"malformed algebra file: {error}") from None
    if len(parities) != d or any(p not in (0, 1) for p in parities):
        raise AlgebraFileError("parities must be d values in {0, 1}")
    if len(constants) != d or any(len(row) != d or any(len(out) != d for out in row) for row in constants):
        raise AlgebraFileError(f"constants must be a {d}x{d}x{d} array")
    products = {}
    for i in range(d):
        for j in range(d):
            out = {k: _parse(value, f"c[{i}][{j}][{k}]") for k, value in enumerate(constants[i][j]) if value != "0"}
            if out:
                products[(i, j)] = out
    realization = None
    if "realization" in data:
        block = data["realization"]
        matrices = tuple(
            as_matrix([[_parse(x, "realization") for x in row] for row in matrix]) for matrix in block["matrices"])
        realization = MatrixRealization(matrices, tuple(block["block_sizes"]), bool(block.get("queer", False)))
    try:
        algebra = make_superalgebra(
            name, parities, products, labels, realization=realization,
            associative=bool(data.get("associative", False)))
    except SuperJordanError as error:
        raise AlgebraFileError(f"invalid algebra: {error}") from None
    involution = None
    if "superinvolution" in data:
        block = data["superinvolution"]
        matrix = as_matrix([[_parse(x, "superinvolution") for x in row] for row in block["matrix"]])
        if matrix.shape != (d, d):
            raise AlgebraFileError(f"superinvolution matrix must be {d}x{d}")
        involution = Superinvolution(algebra, matrix, block.get("name", "*"))
    return algebra, involution


def loads_algebra(text: str) -> tuple[Superalgebra, Optional[Superinvolution]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise AlgebraFileError(f"not valid JSON: {error}") from None
    if not isinstance(data, dict):
        raise AlgebraFileError("an algebra file holds one JSON object")
    return algebra_from_dict(data)


def write_algebra(file_path: str, algebra: Superalgebra, involution: Optional[Superinvolution] = None):
    initialize_output_file(file_path)
    with open(file_path, "w", encoding="utf-8") as handle:
        handle.write(dumps_algebra(algebra, involution))
    log.info(f"{algebra.name} written to {file_path}")


def read_algebra(file_path: str) -> tuple[Superalgebra, Optional[Superinvolution]]:
    """
    Raises:
        AlgebraFileError: If the file cannot be read or parsed.
    """
    try:
        with open(file_path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as error:
        raise AlgebraFileError(f"cannot read {file_path}: {error}") from None
    return loads_algebra(text)


def report_id(claim_id: str, mode: str) -> str:
    """Deterministic id: the same claim in the same mode (seed, prime) always gets the same id."""
    return generate_uuid(base_value=mode, added_string=f"{claim_id}|")


def report_file(claim_id: str, report: MaximalityReport, seconds: float) -> dict:
    """
    The ReportFile record of one maximality run; replaying its mode (seed or prime included)
    reproduces the verdict and witnesses.
    """
    data = report.to_dict()
    data.update({
        "report_id": report_id(claim_id, str(report.mode)),
        "claim_id": claim_id,
        "timing": round(seconds, 6),
    })
    return data


def registry_report(results: Sequence[dict]) -> dict:
    """
    Registry run as one JSON document: the claim records, each maximality report stamped with
    its ``report_id``, and the status counts.
    """
    claims = []
    for result in results:
        record = dict(result)
        record["reports"] = [
            {**report, "report_id": report_id(result["claim_id"], report["mode"])} for report in result["reports"]]
        claims.append(record)
    statuses = Counter(result["status"] for result in results)
    return {"format_version": FORMAT_VERSION, "claims": claims, "statuses": dict(sorted(statuses.items()))}


def write_json(file_path: str, data: object):
    initialize_output_file(file_path)
    with open(file_path, "w", encoding="utf-8") as handle:
        json.dump(data, handle, sort_keys=True, indent=2)
        handle.write("\n")
