import json
import os
import tempfile
import unittest
from fractions import Fraction

import numpy as np

from error_function import AlgebraFileError
from superalgebra_function import check_superinvolution
from catalog_function import build_superinvolution, d_t, kaplansky, matrix_superalgebra
from generation_function import maximality_check
from linalg_function import graded_subspace
from serialization_function import (
    algebra_to_dict, dumps_algebra, loads_algebra, read_algebra, registry_report, report_file, report_id,
    write_algebra, write_json
)


class TestAlgebraFiles(unittest.TestCase):

    def test_canonical_text(self):
        text = dumps_algebra(d_t(Fraction(-2, 3)))
        self.assertTrue(text.endswith("}\n"))
        self.assertNotIn(" ", text)
        data = json.loads(text)
        # v·u = -e - t f
        self.assertEqual(data["constants"][3][2], ["-1", "2/3", "0", "0"])
        self.assertEqual(data["parities"], [0, 0, 1, 1])

    def test_rewrite_is_byte_identical(self):
        involution = build_superinvolution("M:1,2", "orthosymplectic")
        text = dumps_algebra(involution.algebra, involution)
        algebra, parsed = loads_algebra(text)
        self.assertEqual(dumps_algebra(algebra, parsed), text)
        self.assertTrue(check_superinvolution(parsed).passed)
        self.assertEqual(algebra.realization.block_sizes, (1, 2))
        self.assertTrue(np.array_equal(algebra.realization.matrices[1], involution.algebra.realization.matrices[1]))

    def test_file_round_trip(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "algebras", "K3.json")
            write_algebra(path, kaplansky())
            algebra, involution = read_algebra(path)
        self.assertEqual(algebra.labels, ("e", "x", "y"))
        self.assertIsNone(involution)

    def test_malformed_files(self):
        good = algebra_to_dict(kaplansky())
        cases = {
            "float entry": {**good, "constants": [[[0.5] * 3] * 3] * 3},
            "bad rational": {**good, "constants": [[["x"] * 3] * 3] * 3},
            "wrong shape": {**good, "constants": [[["0"] * 3] * 3] * 2},
            "bad parity": {**good, "parities": [0, 1, 2]},
            "missing dim": {key: value for key, value in good.items() if key != "dim"},
            "version": {**good, "format_version": 2},
        }
        for name, data in cases.items():
            with self.subTest(case=name):
                with self.assertRaises(AlgebraFileError):
                    loads_algebra(json.dumps(data))

    def test_grading_violation_is_a_file_error(self):
        data = algebra_to_dict(kaplansky())
        data["constants"][0][0] = ["0", "1", "0"]
        with self.assertRaises(AlgebraFileError):
            loads_algebra(json.dumps(data))

    def test_not_json(self):
        for text in ("{", "[1, 2]"):
            with self.subTest(text=text):
                with self.assertRaises(AlgebraFileError):
                    loads_algebra(text)
        with self.assertRaises(AlgebraFileError):
            read_algebra("/nonexistent/algebra.json")

    def test_superinvolution_shape(self):
        data = algebra_to_dict(matrix_superalgebra(1, 1))
        data["superinvolution"] = {"name": "bad", "matrix": [["1", "0"], ["0", "1"]]}
        with self.assertRaises(AlgebraFileError):
            loads_algebra(json.dumps(data))


class TestReports(unittest.TestCase):

    def setUp(self):
        algebra = d_t(1)
        self.report = maximality_check(algebra, graded_subspace(algebra.parities, [[1, 0, 0, 0]]), "random:4:9")

    def test_report_id_is_deterministic(self):
        self.assertEqual(report_id("neg.Dt:1.Fe", "basis"), report_id("neg.Dt:1.Fe", "basis"))
        self.assertNotEqual(report_id("neg.Dt:1.Fe", "basis"), report_id("neg.Dt:1.Fe", "modp:5"))

    def test_report_file(self):
        data = report_file("neg.Dt:1.Fe", self.report, 0.1234567)
        self.assertEqual(data["verdict"], "CounterexampleFound")
        self.assertEqual(data["seed"], 9)
        self.assertEqual(data["timing"], 0.123457)
        self.assertEqual(data["report_id"], report_id("neg.Dt:1.Fe", "random:4:9"))
        self.assertEqual(data["witnesses"][-1]["closure_dim"], 2)

    def test_registry_report(self):
        results = [
            {"claim_id": "a", "status": "PASS", "reports": [{"mode": "basis"}]},
            {"claim_id": "b", "status": "FAIL", "reports": []},
            {"claim_id": "c", "status": "PASS", "reports": []},
        ]
        document = registry_report(results)
        self.assertEqual(document["statuses"], {"FAIL": 1, "PASS": 2})
        self.assertEqual(document["claims"][0]["reports"][0]["report_id"], report_id("a", "basis"))
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "registry.json")
            write_json(path, document)
            with open(path, encoding="utf-8") as handle:
                self.assertEqual(json.load(handle), document)


if __name__ == "__main__":
    unittest.main()
