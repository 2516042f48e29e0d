"""
Exact linear algebra over the rationals and over prime fields.

Scalars are ``fractions.Fraction``; matrices are numpy arrays of ``dtype=object`` holding them.
Row reduction, rank and nullspaces are delegated to ``sympy.polys.matrices.DomainMatrix`` over
``QQ`` (or ``GF(p)`` for the finite-field oracle). Closures, which add vectors one by one, use the
incremental sparse :class:`EchelonBasis` instead.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

import numpy as np
import sympy
from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from error_function import BadPrime, DimensionMismatch, NotGraded
from general_function import generate_log

log = generate_log(name=__name__)

Scalar = Fraction
SparseVector = dict[int, Union[Fraction, int]]
VectorLike = Union[Sequence, np.ndarray, Mapping[int, object]]


def to_scalar(value: object) -> Fraction:
    """
    Convert an exact value into a ``Fraction``.

    Args:
        value (object): ``Fraction``, integer, sympy rational or a string such as ``"-3/4"``.

    Returns:
        Fraction: The value in lowest terms.

    Raises:
        ValueError: For floats or unparsable strings; floating point is never accepted.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"{value!r} is not an exact rational")
        return Fraction(text)
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))  # type: ignore
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return Fraction(int(value.numerator), int(value.denominator))  # type: ignore
    raise ValueError(f"{value!r} is not an exact rational")


def scalar_to_string(value: object) -> str:
    """``"p/q"`` or ``"n"``, lowest terms."""
    return str(to_scalar(value))


def as_matrix(rows: Iterable[Iterable[object]], cols: Optional[int] = None) -> np.ndarray:
    """
    Build an object matrix of ``Fraction`` entries.

    Args:
        rows (Iterable[Iterable[object]]): Row iterables.
        cols (Optional[int], optional): Column count, needed when ``rows`` is empty.

    Returns:
        np.ndarray: 2-d object array.
    """
    data = [[to_scalar(x) for x in row] for row in rows]
    if not data:
        return np.empty((0, cols or 0), dtype=object)
    width = len(data[0])
    if any(len(row) != width for row in data):
        raise DimensionMismatch("rows have different lengths")
    matrix = np.empty((len(data), width), dtype=object)
    for i, row in enumerate(data):
        for j, x in enumerate(row):
            matrix[i, j] = x
    return matrix


def zero_matrix(rows: int, cols: int) -> np.ndarray:
    matrix = np.empty((rows, cols), dtype=object)
    matrix.fill(Fraction(0))
    return matrix


def identity_matrix(n: int) -> np.ndarray:
    matrix = zero_matrix(n, n)
    for i in range(n):
        matrix[i, i] = Fraction(1)
    return matrix


def zero_vector(n: int) -> np.ndarray:
    vector = np.empty(n, dtype=object)
    vector.fill(Fraction(0))
    return vector


def as_vector(vector: VectorLike, n: int, modulus: Optional[int] = None) -> np.ndarray:
    """
    Dense coordinate vector of length ``n`` from a sequence or a sparse ``{index: value}`` mapping.

    Raises:
        DimensionMismatch: If a sequence has the wrong length or an index is out of range.
    """
    out = zero_vector(n) if modulus is None else np.zeros(n, dtype=object)
    if isinstance(vector, Mapping):
        for index, value in vector.items():
            if not 0 <= int(index) < n:
                raise DimensionMismatch(f"index {index} outside dimension {n}")
            out[int(index)] = _coerce(value, modulus)
        return out
    values = list(vector)
    if len(values) != n:
        raise DimensionMismatch(f"expected {n} coordinates, got {len(values)}")
    for index, value in enumerate(values):
        out[index] = _coerce(value, modulus)
    return out


def to_sparse(vector: VectorLike, modulus: Optional[int] = None) -> SparseVector:
    """Nonzero entries of a vector as ``{index: value}``."""
    if isinstance(vector, Mapping):
        items: Iterable = vector.items()
    else:
        items = enumerate(vector)
    sparse: SparseVector = {}
    for index, value in items:
        value = _coerce(value, modulus)
        if value != 0:
            sparse[int(index)] = value
    return sparse


def _coerce(value: object, modulus: Optional[int]) -> Union[Fraction, int]:
    if modulus is None:
        return to_scalar(value)
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return int(value) % modulus
    return scalar_mod_p(to_scalar(value), modulus)


def check_prime(p: int) -> int:
    """
    Validate a modulus for the finite-field oracle.

    Raises:
        BadPrime: Unless ``p`` is a prime greater than 3 (2 and 3 must stay invertible).
    """
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool) or p <= 3 or not sympy.isprime(int(p)):
        raise BadPrime(f"{p} is not a prime greater than 3")
    return int(p)


def scalar_mod_p(value: Fraction, p: int) -> int:
    """
    Residue of a rational modulo ``p``.

    Raises:
        BadPrime: If the denominator vanishes modulo ``p``.
    """
    value = to_scalar(value)
    if value.denominator % p == 0:
        raise BadPrime(f"denominator {value.denominator} vanishes modulo {p}")
    return value.numerator * pow(value.denominator, -1, p) % p


@dataclass(frozen=True)
class FieldElementModP:
    """An element of the prime field F_p, p > 3."""
    residue: int
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _other(self, other: object) -> int:
        if isinstance(other, FieldElementModP):
            if other.modulus != self.modulus:
                raise BadPrime("moduli differ")
            return other.residue
        return scalar_mod_p(to_scalar(other), self.modulus)

    def __add__(self, other: object) -> "FieldElementModP":
        return FieldElementModP(self.residue + self._other(other), self.modulus)

    def __sub__(self, other: object) -> "FieldElementModP":
        return FieldElementModP(self.residue - self._other(other), self.modulus)

    def __mul__(self, other: object) -> "FieldElementModP":
        return FieldElementModP(self.residue * self._other(other), self.modulus)

    def __neg__(self) -> "FieldElementModP":
        return FieldElementModP(-self.residue, self.modulus)

    def __eq__(self, other: object) -> bool:
        try:
            return self.residue == self._other(other)
        except (BadPrime, ValueError):
            return False

    def __hash__(self) -> int:
        return hash((self.residue, self.modulus))

    def inverse(self) -> "FieldElementModP":
        if self.residue == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElementModP(pow(self.residue, -1, self.modulus), self.modulus)


def reduce_mod_p(value: object, p: int) -> object:
    """
    Reduce an exact object modulo a prime.

    A scalar becomes a :class:`FieldElementModP`; a matrix becomes an object array of residues; a
    nested ``dict`` (sparse vectors or structure tables) is reduced entrywise, zero residues dropped.

    Args:
        value (object): Scalar, numpy matrix, sequence or nested dict.
        p (int): Prime > 3.

    Returns:
        object: The mod-p image.

    Raises:
        BadPrime: If ``p`` is not admissible or a denominator vanishes modulo ``p``.

    Example:
    >>> reduce_mod_p(Fraction(1, 2), 5).residue
    3
    """
    check_prime(p)
    if isinstance(value, np.ndarray):
        out = np.empty(value.shape, dtype=object)
        for index, x in np.ndenumerate(value):
            out[index] = scalar_mod_p(to_scalar(x), p)
        return out
    if isinstance(value, Mapping):
        reduced = {}
        for key, item in value.items():
            if isinstance(item, Mapping):
                image = reduce_mod_p(item, p)
                if image:
                    reduced[key] = image
            else:
                residue = scalar_mod_p(to_scalar(item), p)
                if residue:
                    reduced[key] = residue
        return reduced
    if isinstance(value, (list, tuple)):
        return type(value)(scalar_mod_p(to_scalar(x), p) for x in value)
    return FieldElementModP(scalar_mod_p(to_scalar(value), p), p)


def _to_domain(matrix: np.ndarray, modulus: Optional[int] = None) -> DomainMatrix:
    rows, cols = matrix.shape
    if modulus is None:
        domain = QQ
        data = [[QQ(to_scalar(x).numerator, to_scalar(x).denominator) for x in row] for row in matrix]
    else:
        domain = GF(modulus)
        data = [[domain(int(_coerce(x, modulus))) for x in row] for row in matrix]
    return DomainMatrix(data, (rows, cols), domain)


def _from_domain_element(x: object, modulus: Optional[int]) -> Union[Fraction, int]:
    if modulus is None:
        return Fraction(int(x.numerator), int(x.denominator))  # type: ignore
    return int(x) % modulus  # type: ignore


def rref(matrix: Union[np.ndarray, Sequence[Sequence[object]]], modulus: Optional[int] = None
         ) -> tuple[np.ndarray, list[int]]:
    """
    Reduced row-echelon form with exact arithmetic.

    Zero rows are dropped, so the result has one row per pivot.

    Args:
        matrix (Union[np.ndarray, Sequence[Sequence[object]]]): Input matrix.
        modulus (Optional[int], optional): Work over F_p instead of Q. Defaults to None.

    Returns:
        tuple[np.ndarray, list[int]]: The nonzero rows of the rref and the pivot columns.

    Example:
    >>> reduced, pivots = rref([[2, 4], [1, 2]])
    >>> reduced.tolist(), pivots
    ([[Fraction(1, 1), Fraction(2, 1)]], [0])
    """
    if not isinstance(matrix, np.ndarray):
        matrix = as_matrix(matrix)
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return np.empty((0, cols), dtype=object), []
    reduced, pivots = _to_domain(matrix, modulus).rref()
    pivots = [int(p) for p in pivots]
    data = reduced.to_list()
    out = np.empty((len(pivots), cols), dtype=object)
    for i in range(len(pivots)):
        for j in range(cols):
            out[i, j] = _from_domain_element(data[i][j], modulus)
    return out, pivots


def rank(matrix: Union[np.ndarray, Sequence[Sequence[object]]], modulus: Optional[int] = None) -> int:
    return len(rref(matrix, modulus=modulus)[1])


def rank_mod_p(matrix: Union[np.ndarray, Sequence[Sequence[object]]], p: int) -> int:
    """Rank over F_p of a rational matrix (denominators must be invertible mod ``p``)."""
    return rank(matrix, modulus=check_prime(p))


def nullspace(matrix: Union[np.ndarray, Sequence[Sequence[object]]], cols: Optional[int] = None,
              modulus: Optional[int] = None) -> list[np.ndarray]:
    """
    Basis of the right kernel ``{x : M x = 0}``, one vector per free column of the rref.

    Args:
        matrix (Union[np.ndarray, Sequence[Sequence[object]]]): Input matrix.
        cols (Optional[int], optional): Column count when ``matrix`` has no rows.
        modulus (Optional[int], optional): Work over F_p. Defaults to None.

    Returns:
        list[np.ndarray]: Kernel basis vectors.
    """
    if not isinstance(matrix, np.ndarray):
        matrix = as_matrix(matrix, cols=cols)
    n = matrix.shape[1]
    reduced, pivots = rref(matrix, modulus=modulus)
    one = Fraction(1) if modulus is None else 1
    basis = []
    for free in (j for j in range(n) if j not in pivots):
        vector = zero_vector(n) if modulus is None else np.zeros(n, dtype=object)
        vector[free] = one
        for row, pivot in enumerate(pivots):
            value = -reduced[row, free]
            vector[pivot] = value if modulus is None else value % modulus
        basis.append(vector)
    return basis


def solve(matrix: np.ndarray, rhs: VectorLike) -> np.ndarray:
    """
    A solution of ``M x = b``; free variables are set to zero.

    Raises:
        ValueError: If the system is inconsistent.
    """
    if not isinstance(matrix, np.ndarray):
        matrix = as_matrix(matrix)
    rows, cols = matrix.shape
    b = as_vector(rhs, rows)
    augmented = np.empty((rows, cols + 1), dtype=object)
    augmented[:, :cols] = matrix
    augmented[:, cols] = b
    reduced, pivots = rref(augmented)
    if cols in pivots:
        raise ValueError("inconsistent linear system")
    solution = zero_vector(cols)
    for row, pivot in enumerate(pivots):
        solution[pivot] = reduced[row, cols]
    return solution


def inverse(matrix: np.ndarray) -> np.ndarray:
    """
    Exact inverse of a square matrix.

    Raises:
        ValueError: If the matrix is singular.
    """
    if not isinstance(matrix, np.ndarray):
        matrix = as_matrix(matrix)
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise DimensionMismatch("inverse of a non-square matrix")
    augmented = np.empty((n, 2 * n), dtype=object)
    augmented[:, :n] = matrix
    augmented[:, n:] = identity_matrix(n)
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return reduced[:, n:]


@dataclass(frozen=True)
class GradedSubspace:
    """
    A homogeneous subspace of a graded coordinate space.

    ``even_basis`` and ``odd_basis`` are the rows of the reduced echelon form of the subspace,
    split by the parity of their support. ``modulus`` is ``None`` over Q and ``p`` over F_p.
    """
    ambient_parities: tuple[int, ...]
    even_basis: tuple[tuple, ...]
    odd_basis: tuple[tuple, ...]
    modulus: Optional[int] = None

    @property
    def ambient_dim(self) -> int:
        return len(self.ambient_parities)

    @property
    def dim(self) -> int:
        return len(self.even_basis) + len(self.odd_basis)

    @property
    def dims(self) -> tuple[int, int]:
        return len(self.even_basis), len(self.odd_basis)

    @property
    def basis(self) -> tuple[tuple, ...]:
        return self.even_basis + self.odd_basis

    @property
    def pivots(self) -> list[int]:
        return [_pivot(row) for row in self.basis]

    def key(self) -> tuple:
        """Hashable canonical form (rows sorted by pivot)."""
        return tuple(sorted(self.basis, key=_pivot))


def _pivot(row: Sequence) -> int:
    return next(index for index, x in enumerate(row) if x != 0)


def graded_subspace(
    parities: Sequence[int], vectors: Iterable[VectorLike], modulus: Optional[int] = None,
    homogenize: bool = False
) -> GradedSubspace:
    """
    Echelon basis of the span of ``vectors`` in the graded space with the given parities.

    Args:
        parities (Sequence[int]): Parity (0 or 1) of each coordinate.
        vectors (Iterable[VectorLike]): Spanning vectors (dense or sparse).
        modulus (Optional[int], optional): Work over F_p. Defaults to None.
        homogenize (bool, optional): Replace each vector by its two homogeneous components,
            i.e. take the graded hull of the span. Defaults to False.

    Returns:
        GradedSubspace: The span.

    Raises:
        NotGraded: If the span is not graded and ``homogenize`` is false.
    """
    parities = tuple(int(p) for p in parities)
    n = len(parities)
    dense = [as_vector(vector, n, modulus) for vector in vectors]
    if homogenize:
        split = []
        for vector in dense:
            for parity in (0, 1):
                part = vector.copy()
                part[[i for i in range(n) if parities[i] != parity]] = 0 if modulus else Fraction(0)
                split.append(part)
        dense = split
    if not dense:
        return GradedSubspace(parities, (), (), modulus)
    reduced, pivots = rref(np.array(dense, dtype=object).reshape(len(dense), n), modulus=modulus)
    even_rows, odd_rows = [], []
    for row, pivot in zip(reduced, pivots):
        support_parities = {parities[i] for i in range(n) if row[i] != 0}
        if len(support_parities) > 1:
            raise NotGraded("the span is not a graded subspace")
        (even_rows if parities[pivot] == 0 else odd_rows).append(tuple(row))
    return GradedSubspace(parities, tuple(even_rows), tuple(odd_rows), modulus)


def zero_subspace(parities: Sequence[int], modulus: Optional[int] = None) -> GradedSubspace:
    return GradedSubspace(tuple(int(p) for p in parities), (), (), modulus)


def full_subspace(parities: Sequence[int], modulus: Optional[int] = None) -> GradedSubspace:
    n = len(parities)
    one = 1 if modulus else Fraction(1)
    units = [{i: one} for i in range(n)]
    return graded_subspace(parities, units, modulus=modulus)


def _residual(s: GradedSubspace, vector: VectorLike) -> np.ndarray:
    if not isinstance(vector, np.ndarray) or vector.shape != (s.ambient_dim,):
        v = as_vector(vector, s.ambient_dim, s.modulus)
    else:
        v = np.array([_coerce(x, s.modulus) for x in vector], dtype=object)
    for row in s.basis:
        pivot = _pivot(row)
        coefficient = v[pivot]
        if coefficient != 0:
            v = v - coefficient * np.array(row, dtype=object)
            if s.modulus:
                v = v % s.modulus
    return v


def subspace_contains(s: GradedSubspace, vector: VectorLike) -> bool:
    """
    Whether ``vector`` lies in ``s``; the vector need not be homogeneous.

    Raises:
        DimensionMismatch: If the vector length differs from the ambient dimension.
    """
    return not any(x != 0 for x in _residual(s, vector))


def coordinates_in_subspace(s: GradedSubspace, vector: VectorLike) -> np.ndarray:
    """
    Coordinates of ``vector`` in ``s.basis`` (even rows first): the entries at the pivots.

    Raises:
        ValueError: If the vector is not in the subspace.
    """
    if any(x != 0 for x in _residual(s, vector)):
        raise ValueError("vector is not in the subspace")
    v = as_vector(vector, s.ambient_dim, s.modulus)
    return np.array([v[pivot] for pivot in s.pivots], dtype=object)


def _check_same_ambient(a: GradedSubspace, b: GradedSubspace):
    if a.ambient_parities != b.ambient_parities or a.modulus != b.modulus:
        raise DimensionMismatch("subspaces live in different ambient spaces")


def subspace_sum(a: GradedSubspace, b: GradedSubspace) -> GradedSubspace:
    _check_same_ambient(a, b)
    return graded_subspace(a.ambient_parities, a.basis + b.basis, modulus=a.modulus)


def subspace_intersection(a: GradedSubspace, b: GradedSubspace) -> GradedSubspace:
    """Intersection of two graded subspaces, computed per parity block from a kernel."""
    _check_same_ambient(a, b)
    vectors = []
    for rows_a, rows_b in ((a.even_basis, b.even_basis), (a.odd_basis, b.odd_basis)):
        if not rows_a or not rows_b:
            continue
        stacked = [list(row) for row in rows_a] + [[-x for x in row] for row in rows_b]
        transposed = np.array(stacked, dtype=object).T
        for kernel_vector in nullspace(transposed, modulus=a.modulus):
            combination = sum(
                (kernel_vector[i] * np.array(row, dtype=object) for i, row in enumerate(rows_a)),
                start=np.zeros(a.ambient_dim, dtype=object))
            vectors.append(combination)
    return graded_subspace(a.ambient_parities, vectors, modulus=a.modulus)


def is_subspace_of(a: GradedSubspace, b: GradedSubspace) -> bool:
    _check_same_ambient(a, b)
    return all(subspace_contains(b, row) for row in a.basis)


def graded_complement(s: GradedSubspace) -> GradedSubspace:
    """
    Deterministic homogeneous complement: the coordinate vectors of the non-pivot columns.

    Example:
    >>> s = graded_subspace([0, 0, 0], [[1, 1, 0]])
    >>> graded_complement(s).dims
    (2, 0)
    """
    pivots = set(s.pivots)
    one = 1 if s.modulus else Fraction(1)
    units = [{i: one} for i in range(s.ambient_dim) if i not in pivots]
    return graded_subspace(s.ambient_parities, units, modulus=s.modulus)


class EchelonBasis:
    """
    Incrementally maintained reduced echelon basis of sparse vectors.

    Rows are stored as ``{pivot: {index: value}}`` with ``row[pivot] == 1`` and every row zero at
    the other pivots, so reducing a vector needs one subtraction per pivot it touches. With
    ``modulus`` set, values are residues in ``[0, p)``.
    """

    def __init__(self, modulus: Optional[int] = None):
        self.modulus = modulus
        self.rows: dict[int, dict[int, Union[Fraction, int]]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def _clean(self, vector: dict) -> dict:
        if self.modulus:
            return {k: x % self.modulus for k, x in vector.items() if x % self.modulus}
        return {k: x for k, x in vector.items() if x != 0}

    def reduce(self, vector: Mapping[int, object]) -> SparseVector:
        """Remainder of ``vector`` modulo the current span."""
        v = self._clean(dict(vector))
        for pivot in [k for k in v if k in self.rows]:
            coefficient = v.get(pivot)
            if not coefficient:
                continue
            for index, value in self.rows[pivot].items():
                v[index] = v.get(index, 0) - coefficient * value
        return self._clean(v)

    def contains(self, vector: Mapping[int, object]) -> bool:
        return not self.reduce(vector)

    def insert(self, vector: Mapping[int, object]) -> Optional[SparseVector]:
        """
        Add ``vector`` to the span.

        Returns:
            Optional[SparseVector]: The new normalized row, or None if the vector was dependent.
        """
        r = self.reduce(vector)
        if not r:
            return None
        pivot = min(r)
        if self.modulus:
            scale = pow(int(r[pivot]), -1, self.modulus)
        else:
            scale = 1 / Fraction(r[pivot])
        r = self._clean({k: x * scale for k, x in r.items()})
        for other_pivot, row in list(self.rows.items()):
            coefficient = row.get(pivot)
            if coefficient:
                # rows handed out by insert stay untouched
                updated = dict(row)
                for index, value in r.items():
                    updated[index] = updated.get(index, 0) - coefficient * value
                self.rows[other_pivot] = self._clean(updated)
        self.rows[pivot] = r
        return r

    def dense_rows(self, n: int) -> list[tuple]:
        zero = 0 if self.modulus else Fraction(0)
        rows = []
        for pivot in sorted(self.rows):
            row = [zero] * n
            for index, value in self.rows[pivot].items():
                row[index] = value
            rows.append(tuple(row))
        return rows


def projective_points(d: int, p: int) -> Iterator[tuple[int, ...]]:
    """
    Nonzero vectors of F_p^d up to scalars: the first nonzero coordinate is 1.

    There are ``(p**d - 1) // (p - 1)`` of them.
    """
    for lead in range(d):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            yield (0,) * lead + (1,) + tail


def enumerate_subspaces_mod_p(d: int, k: int, p: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All ``k``-dimensional subspaces of F_p^d, as reduced echelon row tuples."""
    for pivots in itertools.combinations(range(d), k):
        free_slots = [
            (row, col) for row, pivot in enumerate(pivots)
            for col in range(pivot + 1, d) if col not in pivots]
        for values in itertools.product(range(p), repeat=len(free_slots)):
            rows = [[0] * d for _ in range(k)]
            for row, pivot in enumerate(pivots):
                rows[row][pivot] = 1
            for (row, col), value in zip(free_slots, values):
                rows[row][col] = value
            yield tuple(tuple(row) for row in rows)
