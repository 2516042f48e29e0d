import os
import unittest

from error_function import BadParameter, SideConditionViolated
from generation_function import Verdict
from maximal_function import (
    Claim, ClaimStatus, Expectation, assoc_maximal_families, build_registry, easy_maximals, herm_maximal_families,
    hermitian_maximal_in_plus, negative_control, nonss_example_m11, nonss_example_osp12, registry_exit_code,
    run_claim, run_registry, select_claims
)

FULL_SWEEP = os.environ.get("SUPERJORDAN_FULL_SWEEP") == "1"


class TestFamilies(unittest.TestCase):

    def assertChecksPass(self, family):
        for check in family.checks:
            self.assertTrue(check.passed, msg=f"{family.family_id}: {check.check}")

    def test_easy_k3(self):
        families = easy_maximals("K3")
        self.assertEqual([f.family_id for f in families], ["thm2.1.i.K3", "thm2.1.i.K3.r1", "thm2.1.i.K3.r2", "thm2.1.i.K3.r3"])
        for family in families:
            self.assertEqual(family.subalgebra.dims, (1, 1))

    def test_easy_dt(self):
        families = easy_maximals("Dt", ("1",), variants=0)
        self.assertEqual([f.family_id for f in families], ["thm2.1.ii.Dt:1", "thm2.1.ii.Dt:1.unit"])
        for family in families:
            self.assertChecksPass(family)

    def test_easy_superform(self):
        families = easy_maximals("superform", (2, 1), variants=0)
        self.assertEqual([f.subalgebra.dims for f in families], [(3, 1), (2, 2)])
        self.assertEqual(len(easy_maximals("superform", (1, 1), variants=0)), 2)
        with self.assertRaises(BadParameter):
            easy_maximals("K4")

    def test_hermitian_in_plus(self):
        family = hermitian_maximal_in_plus("transpose", 2)
        self.assertEqual(family.subalgebra.dim, 8)
        self.assertFalse(family.details["skew_is_subalgebra"])
        self.assertChecksPass(family)
        with self.assertRaises(BadParameter):
            hermitian_maximal_in_plus("orthosymplectic", 1)

    def test_associative_families(self):
        self.assertEqual(len(assoc_maximal_families("1a", 2, 1)), 2)
        for case, args in (("1a", (1, 1)), ("1b", (1,)), ("2a", (2,)), ("2b", (2,)), ("2c", (2,))):
            with self.subTest(case=case):
                for family in assoc_maximal_families(case, *args):
                    self.assertChecksPass(family)
        with self.assertRaises(BadParameter):
            assoc_maximal_families("1a", 1, 1, rank=2)

    def test_hermitian_families(self):
        family, = herm_maximal_families("i.1", (2, 2))
        self.assertEqual(family.family_id, "thm5.2.i.p:4")
        self.assertChecksPass(family)
        family, = herm_maximal_families("ii.2", (1, 0, 0, 1))
        self.assertChecksPass(family)
        with self.assertRaises(BadParameter):
            herm_maximal_families("i.1", (0, 2))

    def test_corner_side_condition(self):
        # the hermitian elements of an M_{1,1} corner span a two-dimensional subalgebra
        with self.assertRaises(SideConditionViolated):
            herm_maximal_families("i.1", (1, 1))

    def test_nonsemisimple_examples(self):
        for family in (nonss_example_m11(), nonss_example_osp12()):
            with self.subTest(family=family.family_id):
                self.assertChecksPass(family)
                self.assertEqual(family.details["nilpotency_index"], 2)
        osp12 = nonss_example_osp12()
        self.assertEqual(osp12.subalgebra.dims, (2, 1))
        # B stabilizes span(v1, v2 + v3), so B' stops at (3|2)
        self.assertEqual((nonss_example_m11().details["assoc_closure_dim"], osp12.details["assoc_closure_dim"]), (4, 5))
        self.assertIn("invariant_subspace", [check.check for check in osp12.checks])

    def test_example_claims_pass(self):
        results = run_registry("ex*", threads=1)
        self.assertEqual([r.status for r in results], [ClaimStatus.PASS] * 2)
        self.assertEqual(registry_exit_code(results), 0)

    def test_negative_controls(self):
        for name in ("Dt:1.Fe", "K3.Fe", "M:1,1.p:1"):
            with self.subTest(name=name):
                self.assertIs(negative_control(name).expected, Expectation.NOT_MAXIMAL)
        with self.assertRaises(BadParameter):
            negative_control("Q:2.A0")


class TestRegistry(unittest.TestCase):

    def test_registry_ids(self):
        claims = build_registry()
        ids = [claim.claim_id for claim in claims]
        self.assertEqual(len(ids), len(set(ids)))
        self.assertEqual(len(select_claims("neg.*", claims)), 3)
        self.assertIn("thm2.1.ii.Dt:-2/3.r2", ids)

    def test_codimension_one_claim(self):
        result = run_claim(select_claims("thm2.1.i.K3")[0])
        self.assertEqual(result.status, ClaimStatus.PASS)
        self.assertEqual(result.reports[0].verdict, Verdict.ALL_GENERATE)

    def test_negative_control_is_replayed(self):
        result = run_claim(select_claims("neg.Dt:1.Fe")[0], modes=("basis", "modp:5"))
        self.assertEqual(result.status, ClaimStatus.PASS)
        self.assertTrue(result.details["witness_replayed"])
        self.assertEqual([r.verdict for r in result.reports], [Verdict.COUNTEREXAMPLE] * 2)

    def test_bad_prime_skips_mode(self):
        result = run_claim(select_claims("thm2.1.i.K3")[0], modes=("modp:7", "modp:3"))
        self.assertEqual(len(result.reports), 1)
        self.assertIn("skipped[modp:3]", result.details)

    def test_hunt_m11(self):
        result = run_claim(select_claims("q4.3.hunt")[0], modes=("modp:5",))
        self.assertEqual(result.status, ClaimStatus.EVIDENCE)
        # the six codim-1 subalgebras J0 + F(a e12 + b e21); F(e11 - e22) + J1 is not closed
        self.assertEqual(result.details["maximal"], 6)
        self.assertEqual(result.details["candidates"], 4)

    def test_open_question_is_evidence(self):
        result = run_claim(select_claims("q5.1.m:2")[0])
        self.assertEqual(result.status, ClaimStatus.EVIDENCE)
        self.assertEqual(registry_exit_code([result]), 0)

    def test_run_negative_controls(self):
        results = run_registry("neg.*", threads=1)
        self.assertEqual([r.status for r in results], [ClaimStatus.PASS] * 3)
        self.assertEqual(registry_exit_code(results), 0)
        failed = results[0]
        failed.status = ClaimStatus.FAIL
        self.assertEqual(registry_exit_code(results), 1)

    def test_exit_code_counts_builder_errors(self):
        broken = Claim("broken", "family that cannot be built", Expectation.MAXIMAL, lambda: negative_control("Q:2.A0"))
        result = run_claim(broken)
        self.assertEqual(result.status, ClaimStatus.FAIL)
        self.assertIn("error", result.details)
        self.assertEqual(registry_exit_code([result]), 1)
        skipped = run_claim(select_claims("thm2.1.i.K3")[0], modes=("modp:3",))
        self.assertEqual(skipped.status, ClaimStatus.SKIPPED)
        self.assertEqual(registry_exit_code([skipped]), 0)

    @unittest.skipUnless(FULL_SWEEP, "set SUPERJORDAN_FULL_SWEEP=1")
    def test_full_registry(self):
        results = run_registry("*", modes=("basis", "modp:5"))
        self.assertEqual(registry_exit_code(results), 0)


if __name__ == "__main__":
    unittest.main()
