import contextlib
import io
import json
import os
import tempfile
import unittest

from catalog_function import corrupted_fixture
from serialization_function import write_algebra
from cli_function import main


def run(*argv: str) -> tuple[int, str]:
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer), contextlib.redirect_stderr(io.StringIO()):
        code = main(list(argv))
    return code, buffer.getvalue()


class TestCli(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def path(self, name: str) -> str:
        return os.path.join(self.directory.name, name)

    def build(self, spec: str, *extra: str) -> str:
        path = self.path(spec.replace(":", "_").replace(",", "_").replace("/", "_") + ".json")
        code, _ = run("catalog", "build", spec, "--out", path, *extra)
        self.assertEqual(code, 0)
        return path

    def test_usage_errors(self):
        self.assertEqual(run()[0], 2)
        self.assertEqual(run("frobnicate")[0], 2)

    def test_catalog(self):
        code, output = run("catalog", "list")
        self.assertEqual(code, 0)
        self.assertIn("K3", output)
        code, output = run("catalog", "build", "Dt:-2/3")
        self.assertEqual((code, output.strip()), (0, "Dt:-2/3: dim 4 (2|2)"))
        self.assertEqual(run("catalog", "build", "Dt:0")[0], 2)
        self.assertEqual(run("catalog", "build", "K4")[0], 2)

    def test_check(self):
        self.assertEqual(run("check", "jordan", self.build("K3"))[0], 0)
        corrupted = self.path("corrupted.json")
        write_algebra(corrupted, corrupted_fixture("K3"))
        code, output = run("check", "jordan", corrupted)
        self.assertEqual(code, 1)
        self.assertIn("FAILED", output)
        self.assertEqual(run("check", "associative", self.build("M:2,1"))[0], 0)

    def test_check_superinvolution(self):
        path = self.build("M:1,1", "--superinvolution", "transpose")
        self.assertEqual(run("check", "superinvolution", path)[0], 0)
        self.assertEqual(run("check", "superinvolution", self.build("M:2,2"))[0], 2)
        self.assertEqual(run("check", "jordan", self.path("missing.json"))[0], 2)

    def test_closure(self):
        k3 = self.build("K3")
        code, output = run("closure", "--algebra", k3, "--span", "x", "y")
        self.assertEqual(code, 0)
        self.assertIn("Jordan closure in K3: dim 3 (1|2)", output)
        m11 = self.build("M:1,1")
        code, output = run("closure", "--algebra", m11, "--assoc", "--span", "e11", "e22", "0,1,1,0")
        self.assertIn("dim 4 (2|2)", output)
        self.assertEqual(run("closure", "--algebra", k3, "--span", "z")[0], 2)
        self.assertEqual(run("closure", "--algebra", k3, "--assoc", "--span", "x")[0], 2)

    def test_closure_maps_into_matrix_model(self):
        plus = self.build("plus:M:1,1")
        code, output = run("closure", "--algebra", plus, "--assoc", "--span", "e11", "0,1,1,0", "--dump")
        self.assertEqual(code, 0)
        self.assertIn("associative closure in M:1,1: dim 4", output)

    def test_maximal(self):
        d1 = self.build("Dt:1")
        code, output = run("maximal", "--algebra", d1, "--sub", "e")
        self.assertEqual(code, 1)
        self.assertTrue(output.startswith("CounterexampleFound"))
        report = self.path("report.json")
        code, _ = run("maximal", "--algebra", d1, "--sub", "e", "f", "u", "--mode", "modp:5", "--report", report, "--claim", "thm2.1.ii.Dt:1")
        self.assertEqual(code, 0)
        with open(report, encoding="utf-8") as handle:
            data = json.load(handle)
        self.assertEqual((data["claim_id"], data["verdict"], data["prime"]), ("thm2.1.ii.Dt:1", "AllGenerate", 5))
        self.assertGreater(data["timing"], 0)
        self.assertEqual(run("maximal", "--algebra", d1, "--sub", "e", "--mode", "modp:2")[0], 2)
        self.assertEqual(run("maximal", "--algebra", d1, "--sub", "u", "v")[0], 2)

    def test_registry(self):
        path = self.path("registry.json")
        code, _ = run("registry", "run", "--filter", "neg.*", "--json", path, "--threads", "1")
        self.assertEqual(code, 0)
        with open(path, encoding="utf-8") as handle:
            self.assertEqual(json.load(handle)["statuses"], {"PASS": 3})
        self.assertEqual(run("registry", "run", "--filter", "neg.*", "--mode", "modp:3")[0], 2)

    def test_osp(self):
        code, output = run("osp", "vm", "--m", "1", "--form")
        self.assertEqual(code, 0)
        self.assertIn("rho(h) =", output)
        self.assertIn("invariant form =", output)
        code, output = run("osp", "vm", "--m", "2", "--embed=-2/3")
        self.assertEqual(code, 0)
        self.assertIn("embedding on D_t in End(V(2)): passed", output)
        self.assertEqual(run("osp", "vm", "--m", "1", "--embed=-2/3")[0], 2)


if __name__ == "__main__":
    unittest.main()
