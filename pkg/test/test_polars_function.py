import unittest

import polars as pl

from polars_function import build_report_frame, failed_claims, generate_uuid_col, summarize_status


def _record(claim_id: str, status: str, verdicts: list[str], seconds: float = 0.5) -> dict:
    return {
        "claim_id": claim_id, "expected": "maximal", "status": status,
        "reports": [{"mode": mode, "verdict": verdict} for mode, verdict in zip(("basis", "modp:5"), verdicts)],
        "details": {"dims": "(1, 1) in (1, 2)"}, "seconds": seconds}


class TestPolarsFunctions(unittest.TestCase):

    def setUp(self):
        self.records = [
            _record("thm2.1.i.K3", "PASS", ["AllGenerate", "AllGenerate"]),
            _record("neg.K3.Fe", "FAIL", ["AllGenerate"]),
            _record("q5.1.m:2", "EVIDENCE", ["CounterexampleFound"], seconds=2.0),
            _record("ex4.3", "PASS", ["AllGenerate"], seconds=1.0),
        ]

    def test_generate_uuid_col(self):
        df = pl.DataFrame({"col": ["a", "b", "c"]})
        result = df.with_columns(generate_uuid_col(pl.col("col")).alias("uuid_col"))
        self.assertEqual(result["uuid_col"].n_unique(), 3)

    def test_build_report_frame(self):
        frame = build_report_frame(self.records)
        self.assertEqual(frame.columns, ["claim_id", "expected", "status", "modes", "verdicts", "dims", "seconds", "report_id"])
        self.assertEqual(frame["modes"].to_list()[0], "basis,modp:5")
        self.assertEqual(frame["report_id"].n_unique(), 4)
        again = build_report_frame(self.records)
        self.assertEqual(frame["report_id"].to_list(), again["report_id"].to_list())
        other_run = build_report_frame(self.records, run_label="nightly")
        self.assertNotEqual(frame["report_id"].to_list(), other_run["report_id"].to_list())

    def test_empty_frame(self):
        frame = build_report_frame([])
        self.assertEqual(frame.height, 0)
        self.assertEqual(failed_claims(frame), [])

    def test_summarize_status(self):
        summary = summarize_status(build_report_frame(self.records))
        self.assertEqual(summary["status"].to_list(), ["FAIL", "PASS", "EVIDENCE"])
        self.assertEqual(summary["claims"].to_list(), [1, 2, 1])
        self.assertEqual(summary["seconds"].to_list(), [0.5, 1.5, 2.0])

    def test_failed_claims(self):
        self.assertEqual(failed_claims(build_report_frame(self.records)), ["neg.K3.Fe"])


if __name__ == "__main__":
    unittest.main()
