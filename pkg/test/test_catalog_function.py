import os
import unittest
from fractions import Fraction

import numpy as np

from error_function import AlreadyUnital, CatalogSpecError, EmptyForm, TooLarge, ZeroParameter
from linalg_function import as_matrix, graded_subspace, rank
from superalgebra_function import (
    check_associative, check_graded_hom, check_jordan_super, check_superinvolution, element,
    hermitian_part, is_graded_ideal, is_unital, multiply, unit_element
)
from catalog_function import (
    build_from_spec, build_superinvolution, corrupted_fixture, d_t, dt_reciprocal_map, fixture_map,
    grassmann, kantor_double, kaplansky, load_fixtures, matrix_superalgebra,
    orthosymplectic_superinvolution, q_n, superform_algebra, superinvolution_from_form,
    transpose_superinvolution, unital_hull
)

FULL_SWEEP = os.environ.get("SUPERJORDAN_FULL_SWEEP") == "1"


class TestJordanConstructors(unittest.TestCase):

    def test_kaplansky(self):
        k3 = kaplansky()
        self.assertEqual((k3.dim, k3.dims), (3, (1, 2)))
        self.assertTrue(check_jordan_super(k3).passed)
        self.assertFalse(is_unital(k3))

    def test_d_t(self):
        with self.assertRaises(ZeroParameter):
            d_t(0)
        algebra = d_t(3)
        self.assertEqual(unit_element(algebra).tolist(), [1, 1, 0, 0])
        u, v = element(algebra, {"u": 1}), element(algebra, {"v": 1})
        self.assertEqual(multiply(algebra, u, v).tolist(), [1, 3, 0, 0])
        self.assertEqual(multiply(algebra, v, u).tolist(), [-1, -3, 0, 0])

    def test_superform(self):
        algebra = superform_algebra(1, 1)
        self.assertEqual(algebra.dims, (2, 2))
        self.assertTrue(is_unital(algebra))
        w1, w2 = element(algebra, {"w1": 1}), element(algebra, {"w2": 1})
        difference = multiply(algebra, w1, w2) - multiply(algebra, w2, w1)
        self.assertEqual(difference.tolist(), [2, 0, 0, 0])
        for p, q in ((1, 1), (2, 1), (3, 2)):
            with self.subTest(p=p, q=q):
                self.assertTrue(check_jordan_super(superform_algebra(p, q)).passed)
        with self.assertRaises(EmptyForm):
            superform_algebra(0, 0)

    def test_kantor_double(self):
        algebra = kantor_double(1)
        self.assertEqual(algebra.dim, 4)
        x = element(algebra, {"1x": 1})
        self.assertEqual(multiply(algebra, x, x).tolist(), [0, 0, 0, 0])
        for n in (1, 2):
            with self.subTest(n=n):
                self.assertTrue(check_jordan_super(kantor_double(n)).passed)
        with self.assertRaises(TooLarge):
            kantor_double(7)

    @unittest.skipUnless(FULL_SWEEP, "set SUPERJORDAN_FULL_SWEEP=1")
    def test_kantor_double_three_generators(self):
        self.assertTrue(check_jordan_super(kantor_double(3)).passed)

    def test_unital_hull(self):
        hull = unital_hull(kaplansky())
        self.assertEqual(hull.dim, 4)
        ideal = graded_subspace(hull.parities, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
        self.assertTrue(is_graded_ideal(hull, ideal))
        x = element(hull, {"x": 1})
        self.assertEqual(multiply(hull, element(hull, {"1": 1}), x).tolist(), x.tolist())
        self.assertTrue(check_jordan_super(hull).passed)
        with self.assertRaises(AlreadyUnital):
            unital_hull(d_t(2))


class TestAssociativeConstructors(unittest.TestCase):

    def test_matrix_superalgebra(self):
        m11 = matrix_superalgebra(1, 1)
        self.assertEqual(m11.labels, ("e11", "e12", "e21", "e22"))
        self.assertEqual(m11.parities, (0, 1, 1, 0))
        self.assertTrue(check_associative(m11).passed)
        self.assertEqual(matrix_superalgebra(2, 1).dims, (5, 4))

    def test_queer(self):
        q2 = q_n(2)
        self.assertEqual(q2.dims, (4, 4))
        self.assertTrue(check_associative(q2).passed)
        u = element(q2, {"h11": 1, "h22": 1})
        self.assertEqual(multiply(q2, u, u).tolist(), element(q2, {"g11": 1, "g22": 1}).tolist())
        # u is central in the ungraded sense
        for label in q2.labels:
            b = element(q2, {label: 1})
            self.assertEqual(multiply(q2, u, b).tolist(), multiply(q2, b, u).tolist())
        self.assertEqual(q_n(1).dims, (1, 1))

    def test_grassmann(self):
        g2 = grassmann(2)
        self.assertEqual(g2.labels, ("1", "e1", "e2", "e1e2"))
        e1, e2 = element(g2, {"e1": 1}), element(g2, {"e2": 1})
        self.assertEqual(multiply(g2, e1, e2).tolist(), (-multiply(g2, e2, e1)).tolist())
        self.assertEqual(multiply(g2, e1, e1).tolist(), [0, 0, 0, 0])
        self.assertEqual(unit_element(g2).tolist(), [1, 0, 0, 0])
        with self.assertRaises(TooLarge):
            grassmann(11)


class TestSuperinvolutions(unittest.TestCase):

    def test_transpose(self):
        for n in (1, 2, 3):
            with self.subTest(n=n):
                self.assertTrue(check_superinvolution(transpose_superinvolution(n)).passed)
        p1 = hermitian_part(matrix_superalgebra(1, 1), transpose_superinvolution(1))
        self.assertEqual(p1.algebra.dims, (1, 1))

    def test_orthosymplectic(self):
        for n, m in ((1, 1), (2, 1), (3, 1), (2, 2)):
            with self.subTest(n=n, m=m):
                self.assertTrue(check_superinvolution(orthosymplectic_superinvolution(n, m)).passed)
        self.assertEqual(build_from_spec("osp:1,1").dims, (2, 2))

    def test_form_adjoint_is_orthosymplectic(self):
        m12 = matrix_superalgebra(1, 2)
        gram = as_matrix([[1, 0, 0], [0, 0, 1], [0, -1, 0]])
        adjoint = superinvolution_from_form(m12, gram)
        self.assertTrue(np.array_equal(adjoint.matrix, orthosymplectic_superinvolution(1, 1).matrix))
        identity = element(m12, {"e11": 1, "e22": 1, "e33": 1})
        self.assertEqual(adjoint.apply(identity).tolist(), identity.tolist())


class TestGrammarAndFixtures(unittest.TestCase):

    def test_build_from_spec(self):
        self.assertEqual(build_from_spec("Dt:-2/3").name, "Dt:-2/3")
        self.assertEqual(build_from_spec("hull:K3").dim, 4)
        self.assertEqual(build_from_spec("p:2").dim, 8)
        self.assertTrue(check_jordan_super(build_from_spec("plus:M:1,1")).passed)
        for spec in ("K4", "M:1", "Dt:x", "superform:a,b", "Dt"):
            with self.subTest(spec=spec):
                with self.assertRaises(CatalogSpecError):
                    build_from_spec(spec)
        with self.assertRaises(ZeroParameter):
            build_from_spec("Dt:0")

    def test_build_superinvolution(self):
        self.assertEqual(build_superinvolution("M:2,2", "transpose").name, "transpose")
        with self.assertRaises(CatalogSpecError):
            build_superinvolution("M:1,1", "orthosymplectic")
        with self.assertRaises(CatalogSpecError):
            build_superinvolution("K3", "transpose")

    def test_corrupted_names(self):
        with self.assertRaises(CatalogSpecError):
            corrupted_fixture("Q2")

    def test_reciprocal_maps(self):
        for t in (2, -2, 3, Fraction(-2, 3)):
            with self.subTest(t=t):
                phi = dt_reciprocal_map(t)
                self.assertTrue(check_graded_hom(phi, unital=True).passed)
                self.assertEqual(rank(phi.matrix), 4)

    def test_fixture_maps(self):
        fixtures = load_fixtures()
        self.assertEqual(len(fixtures), 6)
        for fixture in fixtures:
            with self.subTest(fixture=fixture.fixture_id):
                phi = fixture_map(fixture)
                self.assertTrue(check_graded_hom(phi, unital=True).passed)
                self.assertEqual(rank(phi.matrix), phi.source.dim)
                self.assertEqual(phi.source.dim, phi.target.dim)


if __name__ == "__main__":
    unittest.main()
