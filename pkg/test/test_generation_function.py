import unittest

import numpy as np

from error_function import BadPrime, NotASubalgebra, TooLarge
from linalg_function import as_matrix, graded_subspace, is_subspace_of, rref, subspace_contains
from superalgebra_function import element, hermitian_part, multiply, plus_algebra, random_homogeneous
from catalog_function import d_t, kaplansky, matrix_superalgebra, q_n, superform_algebra, transpose_superinvolution
from generation_function import (
    MaximalityMode, Verdict, assoc_closure, closure_dims_agree_mod_p, enumerate_graded_subalgebras_mod_p,
    exhaustive_subalgebra_scan_mod_p, generates, jordan_closure, maximality_check, parse_mode
)


class TestClosures(unittest.TestCase):

    def setUp(self):
        self.k3 = kaplansky()
        self.x = element(self.k3, {"x": 1})
        self.y = element(self.k3, {"y": 1})

    def test_odd_square_vanishes(self):
        result = jordan_closure(self.k3, [self.x])
        self.assertEqual(result.dim, 1)
        self.assertEqual(result.subspace.dims, (0, 1))

    def test_odd_pair_generates_k3(self):
        self.assertEqual(jordan_closure(self.k3, [self.x, self.y]).dim, 3)

    def test_idempotence(self):
        first = jordan_closure(self.k3, [element(self.k3, {"e": 1}), self.x])
        second = jordan_closure(self.k3, first.subspace)
        self.assertEqual(first.dim, 2)
        self.assertEqual(second.subspace.key(), first.subspace.key())

    def test_inhomogeneous_span(self):
        # (e + x)^2 = e + x
        result = jordan_closure(self.k3, [element(self.k3, {"e": 1, "x": 1})])
        self.assertFalse(result.graded)
        self.assertEqual(result.dim, 1)
        self.assertEqual(result.subspace.dims, (1, 1))

    def test_hermitian_part_is_closed(self):
        involution = transpose_superinvolution(2)
        hermitian = hermitian_part(involution.algebra, involution)
        jordan = plus_algebra(involution.algebra)
        self.assertEqual(jordan_closure(jordan, hermitian.subspace).dim, 8)
        self.assertEqual(assoc_closure(involution.algebra, hermitian.subspace).dim, 16)

    def test_assoc_closure(self):
        m11 = matrix_superalgebra(1, 1)
        span = [[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 1, 0]]
        self.assertEqual(assoc_closure(m11, span).dim, 4)
        self.assertEqual(jordan_closure(plus_algebra(m11), span).dim, 3)
        self.assertEqual(assoc_closure(m11, [[1, 0, 0, 1]]).dim, 1)

    def test_traceless_even_line_with_odd_part(self):
        # (e11 - e22)^2 = e11 + e22
        jordan = plus_algebra(matrix_superalgebra(1, 1))
        span = [element(jordan, {"e11": 1, "e22": -1}), element(jordan, {"e12": 1}), element(jordan, {"e21": 1})]
        self.assertEqual(jordan_closure(jordan, span).dim, 4)

    def test_mod_p_closure_agrees(self):
        self.assertEqual(closure_dims_agree_mod_p(self.k3, [self.x, self.y], 5), (3, 3))


def _span_closure_dim(algebra, generators) -> int:
    """Closure by saturating the span with all pairwise products until the rank stops growing."""
    basis = rref(as_matrix(generators))[0]
    while True:
        rows = list(basis) + [multiply(algebra, a, b) for a in basis for b in basis]
        extended = rref(as_matrix(rows))[0]
        if len(extended) == len(basis):
            return len(basis)
        basis = extended


class TestAssociativeClosure(unittest.TestCase):

    def setUp(self):
        self.algebras = [matrix_superalgebra(2, 1), matrix_superalgebra(1, 2), q_n(2)]

    def generator_sets(self, algebra, seed: int):
        rng = np.random.default_rng(seed)
        for _ in range(6):
            count = int(rng.integers(1, 4))
            yield [random_homogeneous(algebra, int(rng.integers(0, 2)), rng, bound=1) for _ in range(count)]

    def test_matches_span_saturation(self):
        for seed, algebra in enumerate(self.algebras):
            for generators in self.generator_sets(algebra, seed):
                with self.subTest(algebra=algebra.name, generators=[list(map(str, g)) for g in generators]):
                    self.assertEqual(assoc_closure(algebra, generators).dim, _span_closure_dim(algebra, generators))

    def test_result_is_product_closed(self):
        algebra = matrix_superalgebra(1, 2)
        closure = assoc_closure(algebra, [element(algebra, {"e11": 1}), element(algebra, {"e22": 1, "e33": 1}),
                                          element(algebra, {"e12": -1, "e13": 1, "e21": 1, "e31": 1})])
        self.assertEqual(closure.dim, 5)
        for a in closure.subspace.basis:
            for b in closure.subspace.basis:
                self.assertTrue(subspace_contains(closure.subspace, multiply(algebra, a, b)))

    def test_idempotent_and_monotone(self):
        for seed, algebra in enumerate(self.algebras):
            generators = next(self.generator_sets(algebra, seed + 10))
            extra = random_homogeneous(algebra, 1, np.random.default_rng(seed), bound=1)
            closure = assoc_closure(algebra, generators)
            with self.subTest(algebra=algebra.name):
                self.assertEqual(assoc_closure(algebra, closure.subspace).subspace.key(), closure.subspace.key())
                self.assertTrue(is_subspace_of(closure.subspace, assoc_closure(algebra, generators + [extra]).subspace))


class TestGenerates(unittest.TestCase):

    def setUp(self):
        self.k3 = kaplansky()
        self.b = graded_subspace(self.k3.parities, [[1, 0, 0], [0, 1, 0]])

    def test_generates(self):
        ok, result = generates(self.k3, self.b, element(self.k3, {"y": 1}))
        self.assertTrue(ok)
        self.assertEqual(result.dim, 3)

    def test_vector_inside_b(self):
        ok, result = generates(self.k3, self.b, element(self.k3, {"e": 1}))
        self.assertFalse(ok)
        self.assertEqual(result.dim, 2)

    def test_scalar_and_translation_invariance(self):
        self.assertTrue(generates(self.k3, self.b, element(self.k3, {"y": 3}))[0])
        self.assertTrue(generates(self.k3, self.b, element(self.k3, {"x": 2, "y": 1}))[0])

    def test_even_part_plus_odd_line_is_closed(self):
        jordan = plus_algebra(matrix_superalgebra(1, 1))
        even = graded_subspace(jordan.parities, [[1, 0, 0, 0], [0, 0, 0, 1]])
        ok, result = generates(jordan, even, element(jordan, {"e12": 1}))
        self.assertFalse(ok)
        self.assertEqual(result.dim, 3)


class TestMaximality(unittest.TestCase):

    def test_parse_mode(self):
        self.assertEqual(parse_mode("basis"), MaximalityMode("basis"))
        self.assertEqual(parse_mode("random:10:3"), MaximalityMode("random", trials=10, seed=3))
        self.assertEqual(parse_mode("modp:7").prime, 7)
        self.assertEqual(parse_mode("modp").prime, 5)
        self.assertEqual(str(parse_mode("random:10:3")), "random:10:3")
        with self.assertRaises(BadPrime):
            parse_mode("modp:2")
        with self.assertRaises(ValueError):
            parse_mode("exhaustive")

    def test_codimension_one(self):
        algebra = d_t(2)
        b = graded_subspace(algebra.parities, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
        report = maximality_check(algebra, b, "modp:5")
        self.assertEqual(report.verdict, Verdict.ALL_GENERATE)
        self.assertEqual(report.details["reason"], "codimension 1")

    def test_superform_family(self):
        algebra = superform_algebra(2, 1)
        b = graded_subspace(algebra.parities, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
        self.assertEqual(maximality_check(algebra, b, "modp:7").verdict, Verdict.ALL_GENERATE)

    def test_counterexample(self):
        algebra = d_t(1)
        fe = graded_subspace(algebra.parities, [[1, 0, 0, 0]])
        for mode in ("basis", "modp:5"):
            with self.subTest(mode=mode):
                report = maximality_check(algebra, fe, mode)
                self.assertEqual(report.verdict, Verdict.COUNTEREXAMPLE)
                self.assertLess(report.counterexample.closure_dim, 4)

    def test_hermitian_part_random_mode(self):
        involution = transpose_superinvolution(2)
        hermitian = hermitian_part(involution.algebra, involution)
        jordan = plus_algebra(involution.algebra)
        report = maximality_check(jordan, hermitian.subspace, "random:5:11")
        self.assertEqual(report.verdict, Verdict.ALL_GENERATE)
        self.assertEqual(len(report.witnesses), 8)
        self.assertEqual(report.details["random_trials"], 5)
        self.assertEqual(report.to_dict()["seed"], 11)

    def test_not_a_subalgebra(self):
        k3 = kaplansky()
        with self.assertRaises(NotASubalgebra):
            maximality_check(k3, graded_subspace(k3.parities, [[0, 1, 0], [0, 0, 1]]))
        with self.assertRaises(NotASubalgebra):
            maximality_check(k3, graded_subspace(k3.parities, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]))


class TestScans(unittest.TestCase):

    def test_maximal_scans_are_empty(self):
        k3 = kaplansky()
        self.assertEqual(exhaustive_subalgebra_scan_mod_p(k3, graded_subspace(k3.parities, [[1, 0, 0], [0, 1, 0]]), 5), [])
        d1 = d_t(1)
        b = graded_subspace(d1.parities, [[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        self.assertEqual(exhaustive_subalgebra_scan_mod_p(d1, b, 5), [])

    def test_scan_finds_even_part(self):
        d1 = d_t(1)
        found = exhaustive_subalgebra_scan_mod_p(d1, graded_subspace(d1.parities, [[1, 0, 0, 0]]), 5)
        even = graded_subspace(d1.parities, [[1, 0, 0, 0], [0, 1, 0, 0]], modulus=5)
        self.assertIn(even.key(), [space.key() for space in found])
        self.assertTrue(all(space.dim < 4 for space in found))

    def test_scan_limits(self):
        k3 = kaplansky()
        with self.assertRaises(TooLarge):
            exhaustive_subalgebra_scan_mod_p(k3, graded_subspace(k3.parities, [[1, 0, 0]]), 11)

    def test_enumerate_codimension_one(self):
        found = enumerate_graded_subalgebras_mod_p(kaplansky(), 5, 1)
        self.assertEqual(len(found), 6)
        k3 = kaplansky()
        e_line = graded_subspace(k3.parities, [[1, 0, 0]], modulus=5)
        self.assertTrue(all(is_subspace_of(e_line, space) for space in found))


if __name__ == "__main__":
    unittest.main()
