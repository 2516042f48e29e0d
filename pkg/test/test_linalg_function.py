import unittest
from fractions import Fraction

from error_function import BadPrime, DimensionMismatch, NotGraded
from linalg_function import (
    EchelonBasis, FieldElementModP, as_matrix, check_prime, coordinates_in_subspace,
    enumerate_subspaces_mod_p, graded_complement, graded_subspace, inverse, is_subspace_of, nullspace,
    projective_points, rank, rank_mod_p, reduce_mod_p, rref, scalar_mod_p, scalar_to_string, solve,
    subspace_contains, subspace_intersection, subspace_sum, to_scalar, zero_subspace, full_subspace
)


class TestScalars(unittest.TestCase):

    def test_to_scalar(self):
        self.assertEqual(to_scalar("-6/8"), Fraction(-3, 4))
        self.assertEqual(to_scalar(3), Fraction(3))
        self.assertEqual(scalar_to_string(Fraction(4, 2)), "2")

    def test_floats_are_rejected(self):
        with self.assertRaises(ValueError):
            to_scalar(0.5)
        with self.assertRaises(ValueError):
            to_scalar("0.5")

    def test_reduce_mod_p(self):
        self.assertEqual(scalar_mod_p(Fraction(1, 2), 5), 3)
        self.assertEqual(reduce_mod_p(-1, 7).residue, 6)
        self.assertEqual(reduce_mod_p({0: {1: Fraction(5)}}, 5), {})

    def test_vanishing_denominator(self):
        with self.assertRaises(BadPrime):
            scalar_mod_p(Fraction(1, 5), 5)

    def test_check_prime(self):
        self.assertEqual(check_prime(5), 5)
        for p in (2, 3, 4, 9):
            with self.assertRaises(BadPrime):
                check_prime(p)

    def test_field_element(self):
        x = FieldElementModP(3, 5)
        self.assertEqual(x * 2, 1)
        self.assertEqual(x.inverse(), FieldElementModP(2, 5))
        self.assertEqual(-x, FieldElementModP(2, 5))


class TestMatrices(unittest.TestCase):

    def test_rref_identity(self):
        reduced, pivots = rref([[1, 0], [0, 1]])
        self.assertEqual(reduced.tolist(), [[1, 0], [0, 1]])
        self.assertEqual(pivots, [0, 1])

    def test_rref_dependent_rows(self):
        reduced, pivots = rref([[2, 4], [1, 2]])
        self.assertEqual(reduced.tolist(), [[1, 2]])
        self.assertEqual(pivots, [0])

    def test_rref_swap(self):
        reduced, pivots = rref([[0, 1, 1], [1, 0, 1]])
        self.assertEqual(reduced.tolist(), [[1, 0, 1], [0, 1, 1]])
        self.assertEqual(pivots, [0, 1])

    def test_rank_mod_p(self):
        matrix = as_matrix([[1, 2], [3, 1]])
        self.assertEqual(rank(matrix), 2)
        # determinant -5
        self.assertEqual(rank_mod_p(matrix, 5), 1)

    def test_nullspace(self):
        kernel = nullspace([[1, 1, 0]])
        self.assertEqual(len(kernel), 2)
        for vector in kernel:
            self.assertEqual(vector[0] + vector[1], 0)

    def test_solve_and_inverse(self):
        matrix = as_matrix([[2, 1], [1, 1]])
        self.assertEqual(solve(matrix, [3, 2]).tolist(), [1, 1])
        self.assertEqual(inverse(matrix).tolist(), [[1, -1], [-1, 2]])
        with self.assertRaises(ValueError):
            inverse(as_matrix([[1, 2], [2, 4]]))
        with self.assertRaises(ValueError):
            solve(as_matrix([[1, 1], [1, 1]]), [0, 1])


class TestGradedSubspace(unittest.TestCase):

    def setUp(self):
        self.plane = graded_subspace([0, 0, 0], [[1, 0, 0], [0, 1, 0]])

    def test_contains(self):
        self.assertTrue(subspace_contains(self.plane, [0, 0, 0]))
        self.assertTrue(subspace_contains(self.plane, [1, 1, 0]))
        self.assertFalse(subspace_contains(self.plane, [0, 0, 1]))
        with self.assertRaises(DimensionMismatch):
            subspace_contains(self.plane, [1, 0])

    def test_contains_inhomogeneous_vector(self):
        s = graded_subspace([0, 1], [[1, 0], [0, 1]])
        self.assertEqual(s.dims, (1, 1))
        self.assertTrue(subspace_contains(s, [1, 1]))

    def test_not_graded(self):
        with self.assertRaises(NotGraded):
            graded_subspace([0, 1], [[1, 1]])
        hull = graded_subspace([0, 1], [[1, 1]], homogenize=True)
        self.assertEqual(hull.dims, (1, 1))

    def test_sum(self):
        self.assertEqual(subspace_sum(self.plane, self.plane).key(), self.plane.key())
        self.assertEqual(subspace_sum(self.plane, zero_subspace([0, 0, 0])).key(), self.plane.key())
        a = graded_subspace([0, 0], [[1, 0]])
        b = graded_subspace([0, 0], [[0, 1]])
        self.assertEqual(subspace_sum(a, b).key(), full_subspace([0, 0]).key())

    def test_complement(self):
        self.assertEqual(graded_complement(full_subspace([0, 1, 1])).dim, 0)
        self.assertEqual(graded_complement(zero_subspace([0, 1, 1])).dims, (1, 2))
        line = graded_subspace([0, 0, 0], [[1, 1, 0]])
        complement = graded_complement(line)
        self.assertEqual(complement.dim, 2)
        self.assertEqual(subspace_sum(line, complement).dim, 3)

    def test_intersection(self):
        other = graded_subspace([0, 0, 0], [[0, 1, 0], [0, 0, 1]])
        meet = subspace_intersection(self.plane, other)
        self.assertEqual(meet.dim, 1)
        self.assertTrue(subspace_contains(meet, [0, 1, 0]))
        self.assertTrue(is_subspace_of(meet, self.plane))

    def test_coordinates(self):
        coordinates = coordinates_in_subspace(self.plane, [2, Fraction(1, 3), 0])
        self.assertEqual(coordinates.tolist(), [2, Fraction(1, 3)])
        with self.assertRaises(ValueError):
            coordinates_in_subspace(self.plane, [0, 0, 1])

    def test_mod_p_subspace(self):
        s = graded_subspace([0, 0], [[1, 2], [2, 4]], modulus=5)
        self.assertEqual(s.dim, 1)


class TestEchelonBasis(unittest.TestCase):

    def test_insert(self):
        basis = EchelonBasis()
        self.assertIsNotNone(basis.insert({0: 1, 1: 1}))
        self.assertIsNotNone(basis.insert({1: 2}))
        self.assertIsNone(basis.insert({0: 3}))
        self.assertEqual(len(basis), 2)
        self.assertEqual(basis.dense_rows(2), [(1, 0), (0, 1)])

    def test_returned_rows_are_not_rewritten(self):
        basis = EchelonBasis()
        first = basis.insert({0: 1, 1: 1})
        basis.insert({1: 1})
        self.assertEqual(first, {0: 1, 1: 1})
        self.assertEqual(basis.dense_rows(2), [(1, 0), (0, 1)])

    def test_insert_mod_p(self):
        basis = EchelonBasis(5)
        basis.insert({0: 2, 1: 4})
        self.assertTrue(basis.contains({0: 1, 1: 2}))


class TestEnumeration(unittest.TestCase):

    def test_projective_points(self):
        self.assertEqual(len(list(projective_points(3, 5))), (5 ** 3 - 1) // 4)

    def test_subspaces(self):
        # Gaussian binomials [3 choose 1]_5 = [3 choose 2]_5 = 31
        self.assertEqual(len(list(enumerate_subspaces_mod_p(3, 1, 5))), 31)
        self.assertEqual(len(list(enumerate_subspaces_mod_p(3, 2, 5))), 31)
        self.assertEqual(len(set(enumerate_subspaces_mod_p(4, 2, 5))), 806)


if __name__ == "__main__":
    unittest.main()
