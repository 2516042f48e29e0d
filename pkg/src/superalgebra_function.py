"""
Superalgebras given by structure constants, and the identities they are checked against.

A :class:`Superalgebra` stores its product sparsely: ``table[i][j] = {k: c}`` means
``basis_i * basis_j = sum_k c * basis_k``. The dense identity checks scale the table to integers
(``D * table`` with ``D`` the lcm of the denominators) and vectorize over one basis index with
numpy, so a check on a 25-dimensional algebra is a few seconds of integer matrix products.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, NamedTuple, Optional, Sequence, Union

import numpy as np
import tqdm
from more_itertools import powerset

from error_function import (
    DimensionMismatch, GradingViolation, InvalidSuperinvolution, NoRealization, NotAnIdeal,
    NotASubalgebra, NotAssociative, NotIdempotent, NotNilpotent, NotPeirceDecomposable
)
from general_function import SETTINGS, generate_log
from linalg_function import (
    GradedSubspace, SparseVector, VectorLike, as_vector, coordinates_in_subspace, graded_subspace,
    identity_matrix, nullspace, reduce_mod_p, solve, subspace_contains, to_scalar, to_sparse,
    zero_matrix, zero_vector
)

log = generate_log(name=__name__)

Table = dict[int, dict[int, dict[int, Union[Fraction, int]]]]
INT64_LIMIT = 2 ** 62


@dataclass(frozen=True)
class MatrixRealization:
    """
    A faithful matrix model: one square matrix per basis element.

    ``block_sizes`` is ``(p, q)`` for the M_{p,q} grading; ``queer`` marks the Q_n grading inside
    M_{n,n}.
    """
    matrices: tuple[np.ndarray, ...]
    block_sizes: tuple[int, int]
    queer: bool = False


@dataclass(frozen=True)
class Superalgebra:
    name: str
    parities: tuple[int, ...]
    table: Table
    labels: tuple[str, ...]
    realization: Optional[MatrixRealization] = None
    associative: bool = False
    modulus: Optional[int] = None

    @property
    def dim(self) -> int:
        return len(self.parities)

    @property
    def dims(self) -> tuple[int, int]:
        odd = sum(self.parities)
        return self.dim - odd, odd

    @property
    def even_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.parities) if p == 0]

    @property
    def odd_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.parities) if p == 1]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a basis label of {self.name}") from None

    def product(self, i: int, j: int) -> dict[int, Union[Fraction, int]]:
        return self.table.get(i, {}).get(j, {})


@dataclass
class VerificationReport:
    """Outcome of an identity or property check. Failures are data, never exceptions."""
    check: str
    subject: str
    passed: bool
    counterexample: Optional[tuple[str, ...]] = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "check": self.check, "subject": self.subject, "passed": self.passed,
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "details": {key: str(value) for key, value in self.details.items()},
        }


@dataclass(frozen=True)
class GradedLinearMap:
    """``matrix`` has one column per source basis element, in target coordinates."""
    source: Superalgebra
    target: Superalgebra
    matrix: np.ndarray
    parity_shift: int = 0

    def apply(self, vector: VectorLike) -> np.ndarray:
        v = as_vector(vector, self.source.dim)
        return self.matrix.dot(v)


@dataclass(frozen=True)
class Superinvolution:
    """``matrix`` has one column per basis element of ``algebra``: the image x*."""
    algebra: Superalgebra
    matrix: np.ndarray
    name: str = "*"

    def apply(self, vector: VectorLike) -> np.ndarray:
        return self.matrix.dot(as_vector(vector, self.algebra.dim))


class PeirceDecomposition(NamedTuple):
    one: GradedSubspace
    half: GradedSubspace
    zero: GradedSubspace


@dataclass(frozen=True)
class HermitianPart:
    """H(A,*) as an algebra, its inclusion into A⁺, and both eigenspaces of * in A coordinates."""
    algebra: Superalgebra
    embedding: GradedLinearMap
    subspace: GradedSubspace
    skew: GradedSubspace


def make_superalgebra(
    name: str, parities: Sequence[int], products: Mapping, labels: Optional[Sequence[str]] = None,
    realization: Optional[MatrixRealization] = None, associative: bool = False,
    modulus: Optional[int] = None
) -> Superalgebra:
    """
    Build a superalgebra from its nonzero products and assert the grading.

    Args:
        name (str): Display name.
        parities (Sequence[int]): Parity of each basis element.
        products (Mapping): Either ``{(i, j): {k: c}}`` or a nested table ``{i: {j: {k: c}}}``.
        labels (Optional[Sequence[str]], optional): Basis labels. Defaults to ``b0, b1, ...``.
        realization (Optional[MatrixRealization], optional): Matrix model. Defaults to None.
        associative (bool, optional): Set by constructors of associative algebras. Defaults to False.
        modulus (Optional[int], optional): Prime for a reduction mod p. Defaults to None.

    Returns:
        Superalgebra: The algebra.

    Raises:
        GradingViolation: If some ``c[i][j][k] != 0`` with ``parity(k) != parity(i) + parity(j)``.
    """
    parities = tuple(int(p) for p in parities)
    n = len(parities)
    if labels is None:
        labels = tuple(f"b{i}" for i in range(n))
    if len(labels) != n:
        raise DimensionMismatch("one label per basis element is required")
    items = []
    for key, value in products.items():
        if isinstance(key, tuple):
            items.append((key[0], key[1], value))
        else:
            items.extend((key, j, out) for j, out in value.items())
    table: Table = {}
    for i, j, out in items:
        if not (0 <= i < n and 0 <= j < n):
            raise DimensionMismatch(f"product ({i}, {j}) outside dimension {n}")
        clean = {}
        for k, value in out.items():
            value = int(value) % modulus if modulus else to_scalar(value)
            if value == 0:
                continue
            if not 0 <= k < n:
                raise DimensionMismatch(f"basis index {k} outside dimension {n}")
            if parities[k] != (parities[i] + parities[j]) % 2:
                raise GradingViolation(
                    f"{labels[i]}*{labels[j]} has a component on {labels[k]} of the wrong parity")
            clean[k] = value
        if clean:
            table.setdefault(i, {})[j] = clean
    return Superalgebra(
        name=name, parities=parities, table=table, labels=tuple(labels), realization=realization,
        associative=associative, modulus=modulus)


def superalgebra_mod_p(algebra: Superalgebra, p: int) -> Superalgebra:
    """
    Reduce the structure constants modulo ``p``.

    Raises:
        BadPrime: If ``p`` is not a prime > 3 or a denominator vanishes modulo ``p``.
    """
    table = reduce_mod_p(algebra.table, p)
    return Superalgebra(
        name=f"{algebra.name} mod {p}", parities=algebra.parities, table=table,  # type: ignore
        labels=algebra.labels, associative=algebra.associative, modulus=p)


def element(algebra: Superalgebra, coefficients: Union[Mapping, Sequence]) -> np.ndarray:
    """
    Coordinate vector from ``{label or index: coefficient}`` or a full sequence.

    Example:
    >>> element(kaplansky(), {"x": 1, "y": "1/2"})  # doctest: +SKIP
    """
    if isinstance(coefficients, Mapping):
        sparse = {}
        for key, value in coefficients.items():
            index = algebra.index(key) if isinstance(key, str) else int(key)
            sparse[index] = value
        return as_vector(sparse, algebra.dim, algebra.modulus)
    return as_vector(coefficients, algebra.dim, algebra.modulus)


def basis_vector(algebra: Superalgebra, index: int) -> np.ndarray:
    return element(algebra, {index: 1})


def sparse_product(
    table: Table, u: Mapping[int, object], v: Mapping[int, object], modulus: Optional[int] = None
) -> SparseVector:
    """Bilinear extension of a structure table on sparse vectors."""
    result: dict = {}
    for i, u_i in u.items():
        row = table.get(i)
        if not row:
            continue
        if len(row) <= len(v):
            pairs = ((out, v.get(j)) for j, out in row.items())
        else:
            pairs = ((row.get(j), v_j) for j, v_j in v.items())
        for out, v_j in pairs:
            if not out or not v_j:
                continue
            coefficient = u_i * v_j
            for k, c in out.items():
                result[k] = result.get(k, 0) + coefficient * c
    if modulus:
        return {k: x % modulus for k, x in result.items() if x % modulus}
    return {k: x for k, x in result.items() if x != 0}


def multiply(algebra: Superalgebra, u: VectorLike, v: VectorLike) -> np.ndarray:
    """
    Product of two elements.

    Raises:
        DimensionMismatch: If a vector does not have ``algebra.dim`` coordinates.
    """
    for vector in (u, v):
        if not isinstance(vector, Mapping) and len(vector) != algebra.dim:  # type: ignore
            raise DimensionMismatch(f"expected {algebra.dim} coordinates, got {len(vector)}")  # type: ignore
    product = sparse_product(
        algebra.table, to_sparse(u, algebra.modulus), to_sparse(v, algebra.modulus), algebra.modulus)
    return as_vector(product, algebra.dim, algebra.modulus)


def supercommutator(algebra: Superalgebra, u: VectorLike, v: VectorLike) -> np.ndarray:
    """``[u, v] = uv - (-1)^{|u||v|} vu`` for homogeneous u, v."""
    pu, pv = parity_of(algebra, u), parity_of(algebra, v)
    if pu is None or pv is None:
        raise GradingViolation("the supercommutator is defined on homogeneous elements")
    sign = -1 if pu and pv else 1
    return multiply(algebra, u, v) - sign * multiply(algebra, v, u)


def parity_of(algebra: Superalgebra, vector: VectorLike) -> Optional[int]:
    """0 or 1 for a nonzero homogeneous element, None otherwise (the zero vector gives 0)."""
    support = {algebra.parities[i] for i in to_sparse(vector, algebra.modulus)}
    if len(support) > 1:
        return None
    return support.pop() if support else 0


def left_multiplication(algebra: Superalgebra, u: VectorLike) -> np.ndarray:
    """Matrix of ``L_u`` (column j is ``u * basis_j``)."""
    sparse_u = to_sparse(u)
    matrix = zero_matrix(algebra.dim, algebra.dim)
    for j in range(algebra.dim):
        for k, value in sparse_product(algebra.table, sparse_u, {j: Fraction(1)}).items():
            matrix[k, j] = value
    return matrix


def integer_tensor(algebra: Superalgebra, degree: int = 3, factor: int = 1) -> tuple[np.ndarray, int]:
    """
    Dense tensor ``D * c[i][j][k]`` with integer entries, and the scale ``D``.

    The dtype is int64 when ``3 * factor * dim^(2 degree) * max|entry|^degree`` stays below 2**62,
    object (arbitrary precision) otherwise. ``degree`` is the number of tensor factors in the
    largest product the caller forms, ``factor`` bounds the contribution of input coefficients.
    """
    d = algebra.dim
    constants = [
        (i, j, k, to_scalar(c)) for i, row in algebra.table.items()
        for j, out in row.items() for k, c in out.items()]
    scale = math.lcm(1, *(c.denominator for *_, c in constants))
    bound = max((abs(c.numerator * (scale // c.denominator)) for *_, c in constants), default=1)
    dtype = np.int64 if 3 * factor * max(d, 1) ** (2 * degree) * bound ** degree < INT64_LIMIT else object
    tensor = np.zeros((d, d, d), dtype=np.int64) if dtype is np.int64 else np.full((d, d, d), 0, dtype=object)
    for i, j, k, c in constants:
        tensor[i, j, k] = c.numerator * (scale // c.denominator)
    return tensor, scale


def _labels(algebra: Superalgebra, *indices: int) -> tuple[str, ...]:
    return tuple(algebra.labels[i] for i in indices)


def check_supercommutative(algebra: Superalgebra) -> VerificationReport:
    """``a * b = (-1)^{|a||b|} b * a`` on all basis pairs."""
    tensor, _ = integer_tensor(algebra, degree=1)
    parity = np.array(algebra.parities, dtype=np.int64)
    sign = np.where(np.outer(parity, parity) == 1, -1, 1)
    ok = np.all(tensor == sign[:, :, None] * tensor.transpose(1, 0, 2), axis=2)
    bad = np.argwhere(~ok)
    if len(bad):
        i, j = (int(x) for x in bad[0])
        return VerificationReport("supercommutativity", algebra.name, False, _labels(algebra, i, j))
    return VerificationReport("supercommutativity", algebra.name, True)


def check_jordan_super(algebra: Superalgebra) -> VerificationReport:
    """
    Check supercommutativity and the operator form of the Jordan superidentity.

    For every basis triple (a, b, c) the four operators

    - E1 = L_a L_b L_c + (-1)^{ab+ac+bc} L_c L_b L_a + (-1)^{bc} L_{(ac)b}
    - E2 = L_{ab} L_c + (-1)^{bc} L_{ac} L_b + (-1)^{ab+ac} L_{bc} L_a
    - E3 = (-1)^{ab} L_b L_a L_c + (-1)^{ac+bc} L_c L_a L_b + L_{a(bc)}
    - E4 = (-1)^{ac+bc} L_c L_{ab} + (-1)^{ab} L_b L_{ac} + L_a L_{bc}

    must coincide (exponents are products of parities). The loop runs over (a, b) and handles
    every c at once.

    Args:
        algebra (Superalgebra): The algebra to check.

    Returns:
        VerificationReport: Passed, or the first failing triple in lexicographic order.
    """
    commutative = check_supercommutative(algebra)
    if not commutative.passed:
        return VerificationReport(
            "jordan_super", algebra.name, False, commutative.counterexample,
            {"failure": "supercommutativity"})
    d = algebra.dim
    tensor, _ = integer_tensor(algebra, degree=3)
    parity = np.array(algebra.parities, dtype=np.int64)
    ops = np.ascontiguousarray(tensor.transpose(0, 2, 1))
    flat_ops = ops.reshape(d, d * d)

    def batch(vectors: np.ndarray) -> np.ndarray:
        return (vectors @ flat_ops).reshape(vectors.shape[0], d, d)

    for a in tqdm.tqdm(range(d), desc=f"Check Jordan superidentity on {algebra.name}", ncols=120, disable=None):
        la, ta = ops[a], tensor[a]
        l_ac = batch(ta)
        s_ac = np.where(parity * parity[a] == 1, -1, 1)
        for b in range(d):
            lb, tb = ops[b], tensor[b]
            s_ab = -1 if parity[a] and parity[b] else 1
            s_bc = np.where(parity * parity[b] == 1, -1, 1)
            la_lb, lb_la = la @ lb, lb @ la
            l_ab = (tensor[a, b] @ flat_ops).reshape(d, d)
            l_bc = batch(tb)
            l_acb = batch(ta @ tensor[:, b, :])
            l_abc = batch(tb @ ta)
            e1 = la_lb @ ops + (s_ab * s_ac * s_bc)[:, None, None] * (ops @ lb_la) + s_bc[:, None, None] * l_acb
            e2 = l_ab @ ops + s_bc[:, None, None] * (l_ac @ lb) + (s_ab * s_ac)[:, None, None] * (l_bc @ la)
            e3 = s_ab * (lb_la @ ops) + (s_ac * s_bc)[:, None, None] * (ops @ la_lb) + l_abc
            e4 = (s_ac * s_bc)[:, None, None] * (ops @ l_ab) + s_ab * (lb @ l_ac) + la @ l_bc
            agree = [
                (equality, np.all((e1 == other).reshape(d, d * d), axis=1))
                for equality, other in (("E1=E2", e2), ("E1=E3", e3), ("E1=E4", e4))]
            bad = np.flatnonzero(~(agree[0][1] & agree[1][1] & agree[2][1]))
            if len(bad):
                c = int(bad[0])
                equality = next(name for name, ok in agree if not ok[c])
                return VerificationReport(
                    "jordan_super", algebra.name, False, _labels(algebra, a, b, c),
                    {"failure": equality})
    return VerificationReport("jordan_super", algebra.name, True)


def check_associative(algebra: Superalgebra) -> VerificationReport:
    """``(ab)c = a(bc)`` over all basis triples, first failure in lexicographic order."""
    d = algebra.dim
    tensor, _ = integer_tensor(algebra, degree=2)
    left_flat = tensor.reshape(d, d * d)
    right_flat = tensor.reshape(d * d, d)
    for a in range(d):
        left = (tensor[a] @ left_flat).reshape(d, d, d)
        right = (right_flat @ tensor[a]).reshape(d, d, d)
        ok = np.all(left == right, axis=2)
        bad = np.argwhere(~ok)
        if len(bad):
            b, c = (int(x) for x in bad[0])
            return VerificationReport("associative", algebra.name, False, _labels(algebra, a, b, c))
    return VerificationReport("associative", algebra.name, True)


def plus_algebra(algebra: Superalgebra, name: Optional[str] = None) -> Superalgebra:
    """
    The special Jordan superalgebra A⁺ with ``x∘y = ½(xy + (-1)^{|x||y|} yx)``.

    Raises:
        NotAssociative: If the input is not associative.
    """
    if not algebra.associative:
        report = check_associative(algebra)
        if not report.passed:
            raise NotAssociative(f"{algebra.name} fails associativity at {report.counterexample}")
    half = Fraction(1, 2)
    products: dict = {}
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            sign = -1 if algebra.parities[i] and algebra.parities[j] else 1
            out: dict = {}
            for k, c in algebra.product(i, j).items():
                out[k] = out.get(k, 0) + half * c
            for k, c in algebra.product(j, i).items():
                out[k] = out.get(k, 0) + sign * half * c
            if out:
                products[(i, j)] = out
    return make_superalgebra(
        name or f"{algebra.name}+", algebra.parities, products, algebra.labels,
        realization=algebra.realization)


def check_superinvolution(involution: Superinvolution) -> VerificationReport:
    """Parity preservation, ``** = id`` and ``(xy)* = (-1)^{|x||y|} y* x*`` on basis pairs."""
    algebra = involution.algebra
    matrix = involution.matrix
    d = algebra.dim
    subject = f"{involution.name} on {algebra.name}"
    for k, j in zip(*np.nonzero(matrix != 0)):
        if algebra.parities[k] != algebra.parities[j]:
            return VerificationReport(
                "superinvolution", subject, False, _labels(algebra, int(j)), {"failure": "parity"})
    square = matrix.dot(matrix)
    if not np.array_equal(square, identity_matrix(d)):
        j = int(np.argwhere(square != identity_matrix(d))[0][1])
        return VerificationReport(
            "superinvolution", subject, False, _labels(algebra, j), {"failure": "involutive"})
    images = [to_sparse(matrix[:, j]) for j in range(d)]
    for i in range(d):
        for j in range(d):
            lhs: dict = {}
            for k, c in algebra.product(i, j).items():
                for m, value in images[k].items():
                    lhs[m] = lhs.get(m, 0) + c * value
            lhs = {m: x for m, x in lhs.items() if x != 0}
            sign = -1 if algebra.parities[i] and algebra.parities[j] else 1
            rhs = {m: sign * x for m, x in sparse_product(algebra.table, images[j], images[i]).items()}
            if lhs != rhs:
                return VerificationReport(
                    "superinvolution", subject, False, _labels(algebra, i, j),
                    {"failure": "anti-automorphism"})
    return VerificationReport("superinvolution", subject, True)


def is_subalgebra(algebra: Superalgebra, subspace: GradedSubspace) -> bool:
    basis = [to_sparse(row, algebra.modulus) for row in subspace.basis]
    for u in basis:
        for v in basis:
            if not subspace_contains(subspace, sparse_product(algebra.table, u, v, algebra.modulus)):
                return False
    return True


def subalgebra_from_subspace(
    algebra: Superalgebra, subspace: GradedSubspace, name: Optional[str] = None,
    labels: Optional[Sequence[str]] = None
) -> tuple[Superalgebra, GradedLinearMap]:
    """
    Structure constants of a product-closed graded subspace in its echelon basis (even rows first).

    Returns:
        tuple[Superalgebra, GradedLinearMap]: The subalgebra and its inclusion.

    Raises:
        NotASubalgebra: If a product of basis vectors leaves the subspace.
    """
    basis = [to_sparse(row) for row in subspace.basis]
    parities = [0] * len(subspace.even_basis) + [1] * len(subspace.odd_basis)
    products = {}
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            product = sparse_product(algebra.table, u, v)
            if not product:
                continue
            try:
                coordinates = coordinates_in_subspace(subspace, product)
            except ValueError:
                raise NotASubalgebra(f"subspace of {algebra.name} is not closed under the product") from None
            products[(i, j)] = {k: c for k, c in enumerate(coordinates) if c != 0}
    realization = None
    if algebra.realization is not None:
        matrices = []
        for u in basis:
            total = sum(
                (c * algebra.realization.matrices[i] for i, c in u.items()),
                start=zero_matrix(*algebra.realization.matrices[0].shape))
            matrices.append(total)
        realization = MatrixRealization(
            tuple(matrices), algebra.realization.block_sizes, algebra.realization.queer)
    if labels is None:
        labels = [f"h{i}" for i in range(len(basis))]
    sub = make_superalgebra(
        name or f"sub({algebra.name})", parities, products, labels, realization=realization)
    inclusion = np.empty((algebra.dim, len(basis)), dtype=object)
    for j, row in enumerate(subspace.basis):
        inclusion[:, j] = as_vector(row, algebra.dim)
    return sub, GradedLinearMap(sub, algebra, inclusion)


def hermitian_part(
    algebra: Superalgebra, involution: Superinvolution, name: Optional[str] = None
) -> HermitianPart:
    """
    The Jordan superalgebra H(A,*) of *-fixed elements, inside A⁺.

    Raises:
        InvalidSuperinvolution: If the map fails :func:`check_superinvolution`.
    """
    report = check_superinvolution(involution)
    if not report.passed:
        raise InvalidSuperinvolution(
            f"{involution.name} fails {report.details.get('failure')} at {report.counterexample}")
    d = algebra.dim
    fixed = graded_subspace(algebra.parities, nullspace(involution.matrix - identity_matrix(d)))
    skew = graded_subspace(algebra.parities, nullspace(involution.matrix + identity_matrix(d)))
    jordan = plus_algebra(algebra)
    sub, embedding = subalgebra_from_subspace(jordan, fixed, name=name or f"H({algebra.name},{involution.name})")
    return HermitianPart(sub, embedding, fixed, skew)


def peirce_decompose(algebra: Superalgebra, idempotent: VectorLike) -> PeirceDecomposition:
    """
    Eigenspaces of ``L_e`` for the eigenvalues 1, ½ and 0.

    Raises:
        NotIdempotent: If ``e`` is not an even idempotent.
        NotPeirceDecomposable: If the three eigenspaces do not span the algebra.
    """
    e = as_vector(idempotent, algebra.dim)
    if parity_of(algebra, e) != 0 or not np.array_equal(multiply(algebra, e, e), e):
        raise NotIdempotent("e is not an even idempotent")
    operator = left_multiplication(algebra, e)
    spaces = []
    for eigenvalue in (Fraction(1), Fraction(1, 2), Fraction(0)):
        shifted = operator - eigenvalue * identity_matrix(algebra.dim)
        spaces.append(graded_subspace(algebra.parities, nullspace(shifted)))
    if sum(space.dim for space in spaces) != algebra.dim:
        raise NotPeirceDecomposable("L_e has eigenvalues outside {0, 1/2, 1}")
    return PeirceDecomposition(*spaces)


def unit_element(algebra: Superalgebra) -> Optional[np.ndarray]:
    """The two-sided identity, or None when the algebra is not unital."""
    d = algebra.dim
    if d == 0:
        return None
    rows, rhs = [], []
    for j in range(d):
        for k in range(d):
            rows.append([algebra.product(i, j).get(k, 0) for i in range(d)])
            rhs.append(1 if j == k else 0)
            rows.append([algebra.product(j, i).get(k, 0) for i in range(d)])
            rhs.append(1 if j == k else 0)
    try:
        return solve(np.array([[to_scalar(x) for x in row] for row in rows], dtype=object), rhs)
    except ValueError:
        return None


def is_unital(algebra: Superalgebra) -> bool:
    return unit_element(algebra) is not None


def check_graded_hom(
    phi: GradedLinearMap, jordan: bool = False, unital: bool = False
) -> VerificationReport:
    """
    Check that ``phi`` respects the grading (up to ``parity_shift``) and all basis products.

    Args:
        phi (GradedLinearMap): The map.
        jordan (bool, optional): Compare with the Jordan product A⁺ when the target is associative.
            Defaults to False.
        unital (bool, optional): Also require ``phi(1) = 1``. Defaults to False.

    Returns:
        VerificationReport: Passed, or the first failing basis pair.
    """
    source = phi.source
    target = plus_algebra(phi.target) if jordan and phi.target.associative else phi.target
    subject = f"{source.name} -> {target.name}"
    matrix = phi.matrix
    if matrix.shape != (target.dim, source.dim):
        return VerificationReport("graded_hom", subject, False, details={"failure": "shape"})
    for k, j in zip(*np.nonzero(matrix != 0)):
        if target.parities[k] != (source.parities[j] + phi.parity_shift) % 2:
            return VerificationReport(
                "graded_hom", subject, False, _labels(source, int(j)), {"failure": "grading"})
    images = [to_sparse(matrix[:, j]) for j in range(source.dim)]
    for i in range(source.dim):
        for j in range(source.dim):
            lhs: dict = {}
            for k, c in source.product(i, j).items():
                for m, value in images[k].items():
                    lhs[m] = lhs.get(m, 0) + c * value
            lhs = {m: x for m, x in lhs.items() if x != 0}
            if lhs != sparse_product(target.table, images[i], images[j]):
                return VerificationReport(
                    "graded_hom", subject, False, _labels(source, i, j), {"failure": "product"})
    if unital:
        source_unit, target_unit = unit_element(source), unit_element(target)
        if source_unit is None or target_unit is None or not np.array_equal(
                phi.apply(source_unit), target_unit):
            return VerificationReport("graded_hom", subject, False, details={"failure": "unit"})
    return VerificationReport("graded_hom", subject, True)


def is_graded_ideal(algebra: Superalgebra, subspace: GradedSubspace) -> bool:
    """Whether ``J*S`` and ``S*J`` lie in ``S`` (checked on basis pairs)."""
    for row in subspace.basis:
        s = to_sparse(row, algebra.modulus)
        for i in range(algebra.dim):
            unit = {i: 1}
            if not subspace_contains(subspace, sparse_product(algebra.table, unit, s, algebra.modulus)):
                return False
            if not subspace_contains(subspace, sparse_product(algebra.table, s, unit, algebra.modulus)):
                return False
    return True


def nilpotency_index(algebra: Superalgebra, ideal: GradedSubspace) -> int:
    """
    Least k with S^k = 0, where S^1 = S and S^k is spanned by the products S^i S^j, i + j = k.

    Raises:
        NotAnIdeal: If ``S`` is not a graded ideal.
        NotNilpotent: If no power vanishes up to ``dim + 1``.
    """
    if not is_graded_ideal(algebra, ideal):
        raise NotAnIdeal("the subspace is not a graded ideal")
    if ideal.dim == 0:
        return 1
    powers = {1: [to_sparse(row) for row in ideal.basis]}
    for k in range(2, algebra.dim + 2):
        products = []
        for i in range(1, k):
            for u in powers[i]:
                for v in powers[k - i]:
                    product = sparse_product(algebra.table, u, v)
                    if product:
                        products.append(product)
        if not products:
            return k
        space = graded_subspace(algebra.parities, products, homogenize=True)
        powers[k] = [to_sparse(row) for row in space.basis]
        if not powers[k]:
            return k
    raise NotNilpotent("no power of the ideal vanishes")


def grassmann_table(n: int) -> tuple[list[tuple[int, ...]], Table]:
    """
    Monomial basis and product of the Grassmann algebra on ``n`` generators.

    Monomials are increasing index tuples ordered by length; the product of two monomials is 0 when
    they share a generator and otherwise the sorted union with sign ``(-1)^inversions``.
    """
    monomials = list(powerset(range(n)))
    position = {monomial: index for index, monomial in enumerate(monomials)}
    table: Table = {}
    for i, left in enumerate(monomials):
        for j, right in enumerate(monomials):
            if set(left) & set(right):
                continue
            inversions = sum(1 for a in left for b in right if a > b)
            merged = tuple(sorted(left + right))
            table.setdefault(i, {})[j] = {position[merged]: Fraction(-1 if inversions % 2 else 1)}
    return monomials, table


def grassmann_envelope(algebra: Superalgebra, n: int) -> Superalgebra:
    """
    Even part of G(n) ⊗ J with ``(g⊗a)(h⊗b) = (-1)^{|a||h|} gh ⊗ ab``, as an ordinary algebra.
    """
    monomials, grassmann = grassmann_table(n)
    basis = [
        (m, a) for m, monomial in enumerate(monomials) for a in range(algebra.dim)
        if len(monomial) % 2 == algebra.parities[a]]
    position = {pair: index for index, pair in enumerate(basis)}
    products: dict = {}
    for x, (g, a) in enumerate(basis):
        for y, (h, b) in enumerate(basis):
            gh = grassmann.get(g, {}).get(h)
            ab = algebra.product(a, b)
            if not gh or not ab:
                continue
            (m, sign), = gh.items()
            if algebra.parities[a] and len(monomials[h]) % 2:
                sign = -sign
            out = products.setdefault((x, y), {})
            for c, value in ab.items():
                target = position[(m, c)]
                out[target] = out.get(target, 0) + sign * value
    labels = [f"{''.join(f'e{i + 1}' for i in monomials[m]) or '1'}*{algebra.labels[a]}" for m, a in basis]
    return make_superalgebra(f"G({n})({algebra.name})", [0] * len(basis), products, labels)


def grassmann_envelope_check(
    algebra: Superalgebra, n: Optional[int] = None, trials: Optional[int] = None,
    seed: Optional[int] = None
) -> VerificationReport:
    """
    Check that the Grassmann envelope G(n)(J) is a Jordan algebra.

    Commutativity is checked on basis pairs; ``(xy)(xx) = x(y(xx))`` on all basis pairs (x, y)
    and on ``trials`` seeded random pairs with coefficients in {-3..3}.

    Args:
        algebra (Superalgebra): The superalgebra J.
        n (Optional[int], optional): Grassmann generators. Defaults to ``ENVELOPE_GENERATORS``.
        trials (Optional[int], optional): Random pairs. Defaults to ``ENVELOPE_TRIALS``.
        seed (Optional[int], optional): Random seed. Defaults to ``DEFAULT_SEED``.

    Returns:
        VerificationReport: The outcome, counterexample labels for basis failures.
    """
    n = int(SETTINGS.get("ENVELOPE_GENERATORS", 2)) if n is None else n
    trials = int(SETTINGS.get("ENVELOPE_TRIALS", 200)) if trials is None else trials
    seed = int(SETTINGS.get("DEFAULT_SEED")) if seed is None else seed
    if n < 1:
        raise ValueError("the envelope needs at least one Grassmann generator")
    envelope = grassmann_envelope(algebra, n)
    name = f"G({n})({algebra.name})"
    commutative = check_supercommutative(envelope)
    if not commutative.passed:
        return VerificationReport(
            "grassmann_envelope", name, False, commutative.counterexample, {"failure": "commutativity"})
    d = envelope.dim
    bound = int(SETTINGS.get("COEFFICIENT_RANGE", 3))
    tensor, _ = integer_tensor(envelope, degree=3, factor=max(bound, 1) ** 4)
    flat = tensor.reshape(d, d * d)
    by_right = np.ascontiguousarray(tensor.transpose(0, 2, 1)).reshape(d * d, d)

    def right_operator(w: np.ndarray) -> np.ndarray:
        # R[i, k] = coordinates of basis_i * w
        return (by_right @ w).reshape(d, d)

    for x in range(d):
        square = tensor[x, x]
        right = right_operator(square)
        lhs = tensor[x] @ right
        rhs = right @ tensor[x]
        bad = np.argwhere(~np.all(lhs == rhs, axis=1))
        if len(bad):
            y = int(bad[0][0])
            return VerificationReport(
                "grassmann_envelope", name, False, (envelope.labels[x], envelope.labels[y]),
                {"failure": "jordan identity"})
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        x = rng.integers(-bound, bound + 1, size=d).astype(tensor.dtype)
        y = rng.integers(-bound, bound + 1, size=d).astype(tensor.dtype)

        def times(u: np.ndarray, v: np.ndarray) -> np.ndarray:
            return v @ (u @ flat).reshape(d, d)

        square = times(x, x)
        if not np.array_equal(times(times(x, y), square), times(x, times(y, square))):
            return VerificationReport(
                "grassmann_envelope", name, False, details={"failure": "jordan identity", "trial": trial})
    return VerificationReport("grassmann_envelope", name, True, details={"trials": trials, "seed": seed})


def matrix_trace(algebra: Superalgebra, vector: VectorLike) -> Fraction:
    """
    Ordinary trace of the realizing matrix of an element.

    Raises:
        NoRealization: If the algebra carries no matrix model.
    """
    if algebra.realization is None:
        raise NoRealization(f"{algebra.name} has no matrix realization")
    total = Fraction(0)
    for i, c in to_sparse(vector).items():
        total += c * sum(algebra.realization.matrices[i].diagonal(), start=Fraction(0))
    return total


def realize(algebra: Superalgebra, vector: VectorLike) -> np.ndarray:
    """Matrix of an element in the realization."""
    if algebra.realization is None:
        raise NoRealization(f"{algebra.name} has no matrix realization")
    matrices = algebra.realization.matrices
    total = zero_matrix(*matrices[0].shape)
    for i, c in to_sparse(vector).items():
        total = total + c * matrices[i]
    return total


def random_homogeneous(
    algebra: Superalgebra, parity: int, rng: np.random.Generator, bound: int = 3
) -> np.ndarray:
    """Random nonzero element of one parity, integer coordinates in ``[-bound, bound]``."""
    indices = algebra.odd_indices if parity else algebra.even_indices
    if not indices:
        raise ValueError(f"{algebra.name} has no basis element of parity {parity}")
    vector = zero_vector(algebra.dim)
    while all(x == 0 for x in vector):
        for i in indices:
            vector[i] = Fraction(int(rng.integers(-bound, bound + 1)))
    return vector


def trace_obstruction(
    algebra: Superalgebra, samples: int = 100, seed: Optional[int] = None
) -> VerificationReport:
    """
    Two trace facts of a matrix superalgebra A: ``trace(u∘v) = 0`` for odd u, v (sampled), and
    every nonzero diagonal even idempotent (sum of leading diagonal units) has nonzero trace.

    Because ``x∘y = e`` with x, y odd forces ``trace(e) = 0``, A⁺ contains no copy of K3 and no
    superform algebra with a nonzero odd part.
    """
    seed = int(SETTINGS.get("DEFAULT_SEED")) if seed is None else seed
    if algebra.realization is None:
        raise NoRealization(f"{algebra.name} has no matrix realization")
    jordan = plus_algebra(algebra)
    rng = np.random.default_rng(seed)
    for sample in range(samples if algebra.odd_indices else 0):
        u = random_homogeneous(algebra, 1, rng)
        v = random_homogeneous(algebra, 1, rng)
        if matrix_trace(jordan, multiply(jordan, u, v)) != 0:
            return VerificationReport(
                "trace_obstruction", algebra.name, False, details={"failure": "odd pair", "sample": sample})
    size = algebra.realization.matrices[0].shape[0]
    for rank in range(1, size + 1):
        target = zero_matrix(size, size)
        for i in range(rank):
            target[i, i] = Fraction(1)
        flat = np.array([m.reshape(-1) for m in algebra.realization.matrices], dtype=object).T
        try:
            coordinates = solve(flat, target.reshape(-1))
        except ValueError:
            continue
        if parity_of(algebra, coordinates) != 0:
            continue
        if matrix_trace(algebra, coordinates) == 0:
            return VerificationReport(
                "trace_obstruction", algebra.name, False, details={"failure": "idempotent", "rank": rank})
    return VerificationReport("trace_obstruction", algebra.name, True, details={"samples": samples, "seed": seed})


def element_from_matrix(algebra: Superalgebra, matrix: np.ndarray) -> np.ndarray:
    """
    Coordinates of a matrix in the realization of ``algebra``.

    Raises:
        NoRealization: If the algebra carries no matrix model.
        ValueError: If the matrix is not in the span of the realization.
    """
    if algebra.realization is None:
        raise NoRealization(f"{algebra.name} has no matrix realization")
    flat = np.array([m.reshape(-1) for m in algebra.realization.matrices], dtype=object).T
    return solve(flat, np.asarray(matrix, dtype=object).reshape(-1))
