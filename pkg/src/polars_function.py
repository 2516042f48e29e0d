import uuid
from typing import Optional, Sequence

import polars as pl
from polars import col as c

from general_function import generate_log, generate_uuid

# Global variable
log = generate_log(name=__name__)

STATUS_ORDER = ["FAIL", "PASS", "SKIPPED", "EVIDENCE"]


def generate_uuid_col(
    col: pl.Expr, base_uuid: Optional[uuid.UUID] = None, added_string: str = "") -> pl.Expr:
    """
    Generate UUIDs for a column based on a base UUID and an optional added string.

    Args:
        col (pl.Expr): The column to generate UUIDs for.
        base_uuid (uuid.UUID, optional): The base UUID for generating the UUIDs.
        added_string (str, optional): The optional added string. Defaults to "".

    Returns:
        pl.Expr: The column with generated UUIDs.
    """

    return (
        col.cast(pl.Utf8)
        .map_elements(lambda x: generate_uuid(base_value=x, base_uuid=base_uuid, added_string=added_string), pl.Utf8)
    )


def build_report_frame(results: Sequence[dict], run_label: str = "") -> pl.DataFrame:
    """
    One row per registry claim.

    Args:
        results (Sequence[dict]): ``ClaimResult.to_dict()`` records.
        run_label (str, optional): Mixed into the deterministic ``report_id``. Defaults to "".

    Returns:
        pl.DataFrame: Columns ``claim_id, expected, status, modes, verdicts, dims, seconds, report_id``.

    Example:
    ~~~~~~~~

    >>> frame = build_report_frame([{"claim_id": "ex4.3", "expected": "maximal", "status": "PASS",
    ...     "reports": [{"mode": "basis", "verdict": "AllGenerate"}], "details": {}, "seconds": 0.1}])
    >>> frame["verdicts"].to_list()
    ['AllGenerate']
    """
    rows = [
        {
            "claim_id": result["claim_id"],
            "expected": result["expected"],
            "status": result["status"],
            "modes": ",".join(report["mode"] for report in result["reports"]),
            "verdicts": ",".join(report["verdict"] for report in result["reports"]),
            "dims": result["details"].get("dims", ""),
            "seconds": float(result["seconds"]),
        }
        for result in results]
    schema = {
        "claim_id": pl.Utf8, "expected": pl.Utf8, "status": pl.Utf8, "modes": pl.Utf8,
        "verdicts": pl.Utf8, "dims": pl.Utf8, "seconds": pl.Float64}
    return pl.DataFrame(rows, schema=schema).with_columns(
        generate_uuid_col(c("claim_id") + pl.lit("|") + c("modes"), added_string=run_label).alias("report_id")
    )


def summarize_status(frame: pl.DataFrame) -> pl.DataFrame:
    """
    Claim count and total time per status, in the order FAIL, PASS, SKIPPED, EVIDENCE.
    """
    return (
        frame.group_by("status")
        .agg(pl.len().alias("claims"), c("seconds").sum().alias("seconds"))
        .with_columns(c("status").replace_strict(STATUS_ORDER, list(range(len(STATUS_ORDER))), default=len(STATUS_ORDER)).alias("_order"))
        .sort("_order")
        .drop("_order")
    )


def failed_claims(frame: pl.DataFrame) -> list[str]:
    """Ids of the claims with status FAIL."""
    return frame.filter(c("status") == "FAIL")["claim_id"].to_list()
