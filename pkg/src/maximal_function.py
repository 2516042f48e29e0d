"""
Maximal subalgebra families and the claims registry.

Every family is built as a graded subspace of its ambient Jordan superalgebra and checked to be a
proper product-closed subspace on construction. The registry runs :func:`maximality_check` on
each claim in the requested modes and turns the verdicts into a status:

- expected maximal: ``PASS`` when a mode returns AllGenerate and none finds a counterexample;
- expected not maximal (negative controls): ``PASS`` when a counterexample is found;
- open questions: always ``EVIDENCE``.
"""
import fnmatch
import functools
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from error_function import (
    BadParameter, BadPrime, NotASubalgebra, SideConditionViolated, SuperJordanError, TooLarge
)
from general_function import SETTINGS, generate_log, parallel_map
from linalg_function import (
    GradedSubspace, as_matrix, coordinates_in_subspace, graded_subspace, identity_matrix,
    is_subspace_of, nullspace, rank, subspace_contains, subspace_intersection, to_scalar, to_sparse,
    zero_matrix, zero_vector
)
from superalgebra_function import (
    HermitianPart, Superalgebra, VerificationReport, basis_vector, element, element_from_matrix,
    hermitian_part, is_graded_ideal, is_subalgebra, nilpotency_index, plus_algebra, sparse_product,
    subalgebra_from_subspace, superalgebra_mod_p, unit_element
)
from catalog_function import (
    d_t, kaplansky, matrix_superalgebra, orthosymplectic_superinvolution, q_n, superform_algebra,
    superinvolution_from_form, transpose_superinvolution
)
from generation_function import (
    MaximalityReport, Verdict, assoc_closure, enumerate_graded_subalgebras_mod_p,
    exhaustive_subalgebra_scan_mod_p, generates, jordan_closure, maximality_check, parse_mode
)
from osp_function import embed_dt, embedding_superinvolution

log = generate_log(name=__name__)


class Expectation(str, Enum):
    MAXIMAL = "maximal"
    NOT_MAXIMAL = "not-maximal"
    OPEN = "open"


class ClaimStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"
    EVIDENCE = "EVIDENCE"


@dataclass
class MaximalFamily:
    family_id: str
    ambient: Superalgebra
    subalgebra: GradedSubspace
    provenance: str
    expected: Expectation = Expectation.MAXIMAL
    checks: list[VerificationReport] = field(default_factory=list)
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Claim:
    """A registry entry: either a family builder or, for open questions, an evidence hunter."""
    claim_id: str
    anchor: str
    expected: Expectation
    builder: Optional[Callable[[], MaximalFamily]] = None
    hunter: Optional[Callable[[Optional[int]], dict]] = None


@dataclass
class ClaimResult:
    claim_id: str
    anchor: str
    expected: Expectation
    status: ClaimStatus = ClaimStatus.SKIPPED
    reports: list[MaximalityReport] = field(default_factory=list)
    checks: list[VerificationReport] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "anchor": self.anchor,
            "expected": self.expected.value,
            "status": self.status.value,
            "reports": [report.to_dict() for report in self.reports],
            "checks": [check.to_dict() for check in self.checks],
            "details": {key: str(value) for key, value in self.details.items()},
            "seconds": round(self.seconds, 3),
        }


def _family(
    family_id: str, ambient: Superalgebra, vectors: Iterable, provenance: str,
    expected: Expectation = Expectation.MAXIMAL, **details
) -> MaximalFamily:
    subspace = graded_subspace(ambient.parities, list(vectors))
    if jordan_closure(ambient, subspace).dim != subspace.dim:
        raise NotASubalgebra(f"{family_id}: the subspace is not closed under the product")
    if subspace.dim == ambient.dim:
        raise NotASubalgebra(f"{family_id}: the subspace is all of {ambient.name}")
    return MaximalFamily(family_id, ambient, subspace, provenance, expected, details=details)


def unit_check(family: MaximalFamily) -> VerificationReport:
    """A maximal subalgebra of a unital algebra contains the unit."""
    unit = unit_element(family.ambient)
    passed = unit is None or subspace_contains(family.subalgebra, unit)
    return VerificationReport("contains_unit", family.family_id, passed)


### Hyperplane families J₀ ⊕ M₁ and (F1 + M₀) ⊕ J₁ ###

def _hyperplane_family(
    family_id: str, algebra: Superalgebra, keep: Sequence[np.ndarray], block: Sequence[int],
    functional: Sequence[int], provenance: str
) -> MaximalFamily:
    vectors = list(keep)
    for kernel_vector in nullspace(as_matrix([functional])):
        vector = zero_vector(algebra.dim)
        for index, value in zip(block, kernel_vector):
            vector[index] = value
        vectors.append(vector)
    return _family(family_id, algebra, vectors, provenance, functional=list(functional))


def _functionals(size: int, variants: int, rng: np.random.Generator) -> list[tuple[str, list[int]]]:
    """The canonical functional (last coordinate) then seeded random nonzero ones."""
    bound = int(SETTINGS.get("COEFFICIENT_RANGE", 3))
    choices = [("", [0] * (size - 1) + [1])]
    if size < 2:
        return choices
    for k in range(variants):
        coefficients = [0] * size
        while not any(coefficients):
            coefficients = [int(c) for c in rng.integers(-bound, bound + 1, size=size)]
        choices.append((f".r{k + 1}", coefficients))
    return choices


def easy_maximals(
    kind: str, params: Sequence = (), variants: int = 3, seed: Optional[int] = None
) -> list[MaximalFamily]:
    """
    Maximal subalgebras of K3, D_t and the superform algebras.

    - ``K3``: J₀ ⊕ M₁ with M₁ a line in J₁ (canonical Fx);
    - ``Dt``: J₀ ⊕ M₁ with M₁ a line in J₁, and F1 + J₁ when t = 1;
    - ``superform``: J₀ ⊕ M₁ with M₁ a hyperplane of V₁ and (F1 + M₀) ⊕ J₁ with M₀ a hyperplane of V₀.

    The free subspace is the kernel of a functional: the last coordinate for the canonical family,
    then ``variants`` seeded random ones.

    Args:
        kind (str): ``K3``, ``Dt`` or ``superform``.
        params (Sequence, optional): ``(t,)`` for D_t, ``(p, q)`` for superform.
        variants (int, optional): Random variants per family. Defaults to 3.
        seed (Optional[int], optional): Defaults to ``DEFAULT_SEED``.

    Raises:
        BadParameter: For an unknown kind.

    Example:
    >>> [f.subalgebra.dims for f in easy_maximals("K3", variants=0)]
    [(1, 1)]
    """
    rng = np.random.default_rng(int(SETTINGS.get("DEFAULT_SEED")) if seed is None else seed)
    families = []
    if kind == "K3":
        algebra = kaplansky()
        keep = [basis_vector(algebra, i) for i in algebra.even_indices]
        for suffix, functional in _functionals(len(algebra.odd_indices), variants, rng):
            families.append(_hyperplane_family(
                f"thm2.1.i.K3{suffix}", algebra, keep, algebra.odd_indices, functional, "J0 + M1 in K3"))
    elif kind == "Dt":
        t = to_scalar(params[0])
        algebra = d_t(t)
        keep = [basis_vector(algebra, i) for i in algebra.even_indices]
        for suffix, functional in _functionals(len(algebra.odd_indices), variants, rng):
            families.append(_hyperplane_family(
                f"thm2.1.ii.{algebra.name}{suffix}", algebra, keep, algebra.odd_indices, functional,
                "J0 + M1 in D_t"))
        if t == 1:
            vectors = [element(algebra, {"e": 1, "f": 1})]
            vectors += [basis_vector(algebra, i) for i in algebra.odd_indices]
            families.append(_family(f"thm2.1.ii.{algebra.name}.unit", algebra, vectors, "F1 + J1 in D_1"))
    elif kind == "superform":
        p, q = (int(x) for x in params)
        algebra = superform_algebra(p, q)
        odd = algebra.odd_indices
        even_space = [i for i in algebra.even_indices if i != 0]
        if odd:
            keep = [basis_vector(algebra, i) for i in algebra.even_indices]
            for suffix, functional in _functionals(len(odd), variants, rng):
                families.append(_hyperplane_family(
                    f"thm2.1.iii.{algebra.name}.odd{suffix}", algebra, keep, odd, functional,
                    "J0 + M1, M1 a hyperplane of V1"))
        if even_space:
            keep = [basis_vector(algebra, i) for i in [0] + odd]
            for suffix, functional in _functionals(len(even_space), variants, rng):
                families.append(_hyperplane_family(
                    f"thm2.1.iii.{algebra.name}.even{suffix}", algebra, keep, even_space, functional,
                    "(F1 + M0) + J1, M0 a hyperplane of V0"))
    else:
        raise BadParameter(f"no easy maximal families for {kind!r}")
    for family in families:
        family.checks.append(unit_check(family))
    return families


### Hermitian parts in A⁺ ###

def hermitian_maximal_in_plus(flavor: str, n: int, m: Optional[int] = None) -> MaximalFamily:
    """
    H(A,*) inside A⁺ for the transpose superinvolution on M_{n,n} (``p(n)``) or the
    orthosymplectic one on M_{n,2m} (``osp_{n,2m}``).

    The skew part K is recorded too: ``details["skew_is_subalgebra"]`` is false, K∘K lands in H.

    Raises:
        BadParameter: For an unknown flavor or a missing m.
    """
    if flavor == "transpose":
        algebra, involution, family_id = matrix_superalgebra(n, n), transpose_superinvolution(n), f"thm4.3.p:{n}"
    elif flavor == "orthosymplectic":
        if m is None:
            raise BadParameter("the orthosymplectic flavor needs m")
        algebra = matrix_superalgebra(n, 2 * m)
        involution, family_id = orthosymplectic_superinvolution(n, m), f"thm4.3.osp:{n},{m}"
    else:
        raise BadParameter(f"unknown superinvolution flavor {flavor!r}")
    hermitian = hermitian_part(algebra, involution)
    ambient = plus_algebra(algebra)
    family = _family(
        family_id, ambient, hermitian.subspace.basis, f"H({algebra.name},{involution.name}) in A+",
        skew_is_subalgebra=is_subalgebra(ambient, hermitian.skew))
    family.checks.append(unit_check(family))
    return family


### C⁺ inside A⁺ for an associative maximal C ###

def _unit_index(n: int, i: int, j: int) -> int:
    return i * n + j


def _assoc_family(family_id: str, algebra: Superalgebra, indices: list[int], provenance: str) -> MaximalFamily:
    vectors = [basis_vector(algebra, i) for i in indices]
    closure = assoc_closure(algebra, vectors)
    family = _family(family_id, plus_algebra(algebra), vectors, provenance, assoc_closure_dim=closure.dim)
    family.checks.append(VerificationReport(
        "assoc_closure_inside_C", family_id, closure.dim == len(indices) < algebra.dim,
        details={"assoc_closure_dim": closure.dim, "C_dim": len(indices)}))
    family.checks.append(unit_check(family))
    return family


def _queer_embedding(p: int) -> list[np.ndarray]:
    """Q_p inside M_{p,p}: [[a, b], [b, a]], the super-centralizer of u = [[0, I], [I, 0]]."""
    n = 2 * p
    vectors = []
    for shift in (0, p):
        for i in range(p):
            for j in range(p):
                vector = zero_vector(n * n)
                vector[_unit_index(n, i, j + shift)] = Fraction(1)
                vector[_unit_index(n, i + p, (j + shift + p) % n)] = Fraction(1)
                vectors.append(vector)
    return vectors


def assoc_maximal_families(case: str, n: int, q: Optional[int] = None, rank: Optional[int] = None) -> list[MaximalFamily]:
    """
    C⁺ inside A⁺ where C is a maximal associative subalgebra with B' ≠ A.

    - ``1a``: A = M_{n,q}, C = eAe + eAf + fAf for e the first ``rank`` diagonal units;
    - ``1b``: A = M_{n,n}, C = C_A(u) ≅ Q_n;
    - ``2a``: A = Q_n, C = C₀ + C₀u with C₀ the parabolic of block sizes (rank, n - rank);
    - ``2b``: A = Q_n, C = A₀;
    - ``2c``: A = Q_n, C = D₀ + D₁u for the (rank, n - rank) grading of A₀.

    Without ``rank`` the cases 1a, 2a and 2c return every admissible rank.

    Raises:
        BadParameter: For an unknown case or sizes without a proper idempotent.
    """
    families = []
    if case == "1a":
        q = n if q is None else q
        algebra = matrix_superalgebra(n, q)
        size = n + q
        ranks = [rank] if rank is not None else list(range(1, size))
        for r in ranks:
            if not 1 <= r < size:
                raise BadParameter(f"rank {r} gives no proper idempotent in M_{{{n},{q}}}")
            indices = [_unit_index(size, i, j) for i in range(size) for j in range(size) if not (i >= r > j)]
            families.append(_assoc_family(f"thm4.4.1a.{algebra.name}.e{r}", algebra, indices, "C = eAe + eAf + fAf"))
    elif case == "1b":
        algebra = matrix_superalgebra(n, n)
        vectors = _queer_embedding(n)
        closure = assoc_closure(algebra, vectors)
        family = _family(f"thm4.4.1b.{algebra.name}", plus_algebra(algebra), vectors, "C = C_A(u) = Q_n",
                         assoc_closure_dim=closure.dim)
        family.checks.append(VerificationReport(
            "assoc_closure_inside_C", family.family_id, closure.dim == 2 * n * n < algebra.dim,
            details={"assoc_closure_dim": closure.dim}))
        family.checks.append(unit_check(family))
        families.append(family)
    elif case in ("2a", "2b", "2c"):
        algebra = q_n(n)
        size = n * n
        if case == "2b":
            families.append(_assoc_family(f"thm4.4.2b.{algebra.name}", algebra, list(range(size)), "C = A0"))
        else:
            ranks = [rank] if rank is not None else list(range(1, n))
            for r in ranks:
                if not 1 <= r < n:
                    raise BadParameter(f"rank {r} gives no proper block split of Q_{n}")
                cells = [(i, j) for i in range(n) for j in range(n)]
                if case == "2a":
                    kept = [i * n + j for i, j in cells if not (i >= r > j)]
                    indices = kept + [size + k for k in kept]
                    provenance = "C = C0 + C0 u, C0 parabolic"
                else:
                    indices = [i * n + j for i, j in cells if (i < r) == (j < r)]
                    indices += [size + i * n + j for i, j in cells if (i < r) != (j < r)]
                    provenance = "C = D0 + D1 u"
                families.append(_assoc_family(f"thm4.4.{case}.{algebra.name}.r{r}", algebra, indices, provenance))
    else:
        raise BadParameter(f"unknown associative case {case!r}")
    return families


### H(C,*) inside H(A,*) ###

def _projector(n: int, positions: Iterable[int]) -> np.ndarray:
    matrix = zero_matrix(n, n)
    for i in positions:
        matrix[i, i] = Fraction(1)
    return matrix


def _sandwich(algebra: Superalgebra, left: np.ndarray, right: np.ndarray) -> list[np.ndarray]:
    """Spanning vectors of left·A·right for diagonal 0/1 projectors."""
    n = left.shape[0]
    rows = [i for i in range(n) if left[i, i] != 0]
    cols = [j for j in range(n) if right[j, j] != 0]
    return [basis_vector(algebra, _unit_index(n, i, j)) for i in rows for j in cols]


def _span(algebra: Superalgebra, vectors: list[np.ndarray]) -> GradedSubspace:
    return graded_subspace(algebra.parities, vectors)


def corner_side_condition(
    algebra: Superalgebra, hermitian: HermitianPart, projector: np.ndarray, label: str
) -> VerificationReport:
    """
    H(gAg,*)' = gAg for a *-fixed projector g: the hermitian elements of the corner generate it.

    Raises:
        SideConditionViolated: If the associative closure is smaller than the corner.
    """
    corner = _span(algebra, _sandwich(algebra, projector, projector))
    fixed = subspace_intersection(hermitian.subspace, corner)
    closure = assoc_closure(algebra, fixed.basis)
    if closure.dim != corner.dim:
        raise SideConditionViolated(
            f"H({label}A{label},*)' has dimension {closure.dim}, the corner has {corner.dim}")
    return VerificationReport(
        "corner_side_condition", label, True, details={"corner_dim": corner.dim, "hermitian_dim": fixed.dim})


def _hermitian_family(
    family_id: str, algebra: Superalgebra, hermitian: HermitianPart, c_vectors: list[np.ndarray],
    corners: dict[str, np.ndarray], provenance: str
) -> MaximalFamily:
    checks = [corner_side_condition(algebra, hermitian, g, label) for label, g in corners.items()]
    c_space = _span(algebra, c_vectors)
    fixed = subspace_intersection(hermitian.subspace, c_space)
    vectors = [coordinates_in_subspace(hermitian.subspace, row) for row in fixed.basis]
    family = _family(family_id, hermitian.algebra, vectors, provenance, C_dims=c_space.dims)
    family.checks.extend(checks)
    family.checks.append(unit_check(family))
    return family


def _check_adjoint(involution, e: np.ndarray, e_star: np.ndarray):
    if not np.array_equal(involution.apply(e.reshape(-1)), e_star.reshape(-1)):
        raise BadParameter("the idempotent layout is not compatible with the superinvolution")


def herm_maximal_families(case: str, sizes: Sequence[int]) -> list[MaximalFamily]:
    """
    H(C,*) inside H(A,*) for the canonical idempotent layouts.

    - ``i.1`` (sizes ``(i, j)``): p(i+j), e = diag(I_i, 0_j | I_i, 0_j), C = eAe + fAf;
    - ``i.2`` (sizes ``(i, j, k, l)``): osp_{i+j, 2(k+l)}, e = diag(I_i, 0_j | I_k, 0_l, I_k, 0_l),
      C = eAe + fAf;
    - ``ii.1`` (sizes ``(s1, s2, s3)``): p(s1+s2+s3) with blocks (s1, s2, s3 | s1, s2, s3),
      e on blocks 1 and 6, e* on 3 and 4, ff* on 2 and 5, C = eA + Ae* + ff*Aff*;
    - ``ii.2`` (sizes ``(a, b, c, d)``): the form diag(I_a, [[0, I_b], [I_b, 0]]) on V₀ and
      [[0, I], [-I, 0]] on V₁ = (c, d | c, d), ff* on blocks (a | c, c), e on (b | d), e* on the
      paired copies, C = eA + Ae* + ff*Aff*.

    Raises:
        BadParameter: For an unknown case or empty idempotents.
        SideConditionViolated: If a corner H(gAg,*) does not generate gAg (quaternion corners).
    """
    sizes = [int(s) for s in sizes]
    if any(s < 0 for s in sizes):
        raise BadParameter("block sizes must be nonnegative")
    if case == "i.1":
        i, j = sizes
        if i < 1 or j < 1:
            raise BadParameter("i.1 needs i, j >= 1")
        n = i + j
        algebra = matrix_superalgebra(n, n)
        hermitian = hermitian_part(algebra, transpose_superinvolution(n), name=f"p:{n}")
        e = _projector(2 * n, list(range(i)) + list(range(n, n + i)))
        f = identity_matrix(2 * n) - e
        c_vectors = _sandwich(algebra, e, e) + _sandwich(algebra, f, f)
        return [_hermitian_family(f"thm5.2.i.p:{n}", algebra, hermitian, c_vectors, {"e": e, "f": f},
                                  "C = eAe + fAf, e* = e")]
    if case == "i.2":
        i, j, k, l = sizes
        n, m = i + j, k + l
        if m < 1 or i + k < 1 or j + l < 1:
            raise BadParameter("i.2 needs m >= 1 and both e and f nonzero")
        algebra = matrix_superalgebra(n, 2 * m)
        hermitian = hermitian_part(algebra, orthosymplectic_superinvolution(n, m), name=f"osp:{n},{m}")
        size = n + 2 * m
        e = _projector(size, list(range(i)) + [n + x for x in range(k)] + [n + m + x for x in range(k)])
        f = identity_matrix(size) - e
        c_vectors = _sandwich(algebra, e, e) + _sandwich(algebra, f, f)
        return [_hermitian_family(f"thm5.2.i.osp:{n},{m}", algebra, hermitian, c_vectors, {"e": e, "f": f},
                                  "C = eAe + fAf, e* = e")]
    if case == "ii.1":
        s1, s2, s3 = sizes
        n = s1 + s2 + s3
        if s1 + s3 < 1:
            raise BadParameter("ii.1 needs a nonzero e")
        algebra = matrix_superalgebra(n, n)
        involution = transpose_superinvolution(n)
        hermitian = hermitian_part(algebra, involution, name=f"p:{n}")
        e = _projector(2 * n, list(range(s1)) + [n + s1 + s2 + x for x in range(s3)])
        e_star = _projector(2 * n, [s1 + s2 + x for x in range(s3)] + [n + x for x in range(s1)])
        g = _projector(2 * n, [s1 + x for x in range(s2)] + [n + s1 + x for x in range(s2)])
        _check_adjoint(involution, e, e_star)
        one = identity_matrix(2 * n)
        c_vectors = _sandwich(algebra, e, one) + _sandwich(algebra, one, e_star) + _sandwich(algebra, g, g)
        return [_hermitian_family(f"thm5.2.ii.p:{n}", algebra, hermitian, c_vectors, {"ff*": g},
                                  "C = eA + Ae* + ff*Aff*")]
    if case == "ii.2":
        a, b, c, d = sizes
        n, m = a + 2 * b, c + d
        if m < 1 or b + d < 1:
            raise BadParameter("ii.2 needs m >= 1 and a nonzero e")
        algebra = matrix_superalgebra(n, 2 * m)
        size = n + 2 * m
        gram = zero_matrix(size, size)
        for x in range(a):
            gram[x, x] = Fraction(1)
        for x in range(b):
            gram[a + x, a + b + x] = gram[a + b + x, a + x] = Fraction(1)
        for x in range(m):
            gram[n + x, n + m + x] = Fraction(1)
            gram[n + m + x, n + x] = Fraction(-1)
        involution = superinvolution_from_form(algebra, gram, name="osp-form")
        hermitian = hermitian_part(algebra, involution, name=f"osp:{n},{m}")
        g = _projector(size, list(range(a)) + [n + x for x in range(c)] + [n + m + x for x in range(c)])
        e = _projector(size, [a + x for x in range(b)] + [n + c + x for x in range(d)])
        e_star = _projector(size, [a + b + x for x in range(b)] + [n + m + c + x for x in range(d)])
        _check_adjoint(involution, e, e_star)
        one = identity_matrix(size)
        c_vectors = _sandwich(algebra, e, one) + _sandwich(algebra, one, e_star) + _sandwich(algebra, g, g)
        return [_hermitian_family(f"thm5.2.ii.osp:{n},{m}", algebra, hermitian, c_vectors, {"ff*": g},
                                  "C = eA + Ae* + ff*Aff*")]
    raise BadParameter(f"unknown hermitian case {case!r}")


### Non-semisimple maximal subalgebras ###

def _nonsemisimple_checks(
    family: MaximalFamily, associative: Superalgebra, images: list[np.ndarray],
    closure_dim: Optional[int] = None
) -> list[VerificationReport]:
    closure = assoc_closure(associative, images)
    closure_dim = associative.dim if closure_dim is None else closure_dim
    sub, _ = subalgebra_from_subspace(family.ambient, family.subalgebra)
    odd = graded_subspace(sub.parities, [basis_vector(sub, i) for i in sub.odd_indices])
    ideal = is_graded_ideal(sub, odd)
    index = nilpotency_index(sub, odd) if ideal else None
    family.details.update({"assoc_closure_dim": closure.dim, "radical_dims": odd.dims, "nilpotency_index": index})
    return [
        VerificationReport("assoc_closure_dim", family.family_id, closure.dim == closure_dim,
                           details={"assoc_closure_dim": closure.dim, "expected": closure_dim}),
        VerificationReport("odd_radical", family.family_id, ideal and index == 2,
                           details={"nilpotency_index": index}),
    ]


def nonss_example_m11() -> MaximalFamily:
    """
    span{e11, e22, e12 + e21} in M_{1,1}⁺: codimension 1, B' = M_{1,1}, radical F(e12 + e21).
    """
    associative = matrix_superalgebra(1, 1)
    ambient = plus_algebra(associative)
    vectors = [element(ambient, {"e11": 1}), element(ambient, {"e22": 1}), element(ambient, {"e12": 1, "e21": 1})]
    family = _family("ex4.3", ambient, vectors, "non-semisimple maximal of M_{1,1}+ with B' = A")
    family.checks.extend(_nonsemisimple_checks(family, associative, vectors))
    family.checks.append(unit_check(family))
    return family


def _stabilizes(matrices: Sequence[np.ndarray], columns: np.ndarray) -> bool:
    """Every matrix maps the column span of ``columns`` into itself."""
    width = rank(columns)
    return all(rank(np.hstack([columns, matrix.dot(columns)])) == width for matrix in matrices)


def nonss_example_osp12() -> MaximalFamily:
    """
    {[[a, -b, b], [b, d, 0], [b, 0, d]]} in osp_{1,2}: dims (2|1), radical = odd part.

    B stabilizes W = span(v1, v2 + v3), so B' is the (3|2)-dimensional algebra
    span{e11, e22 + e33, e11 u, u e11, u^2} with u = -e12 + e13 + e21 + e31, not all of M_{1,2}.
    """
    associative = matrix_superalgebra(1, 2)
    hermitian = hermitian_part(associative, orthosymplectic_superinvolution(1, 1), name="osp:1,1")
    matrices = [
        as_matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
        as_matrix([[0, 0, 0], [0, 1, 0], [0, 0, 1]]),
        as_matrix([[0, -1, 1], [1, 0, 0], [1, 0, 0]]),
    ]
    vectors = [element_from_matrix(hermitian.algebra, matrix) for matrix in matrices]
    family = _family("ex5.3", hermitian.algebra, vectors, "non-semisimple maximal of osp_{1,2}, B' of dim 5")
    family.checks.extend(
        _nonsemisimple_checks(family, associative, [matrix.reshape(-1) for matrix in matrices], closure_dim=5))
    invariant = as_matrix([[1, 0], [0, 1], [0, 1]])
    family.checks.append(VerificationReport(
        "invariant_subspace", family.family_id, _stabilizes(matrices, invariant), details={"W": "v1, v2 + v3"}))
    family.checks.append(unit_check(family))
    return family


### Negative controls ###

def negative_control(name: str) -> MaximalFamily:
    """
    Deliberately non-maximal subalgebras.

    - ``Dt:1.Fe``: Fe in D_1 (inside J₀);
    - ``K3.Fe``: Fe in K3 (inside Fe + Fx);
    - ``M:1,1.p:1``: p(1) in M_{1,1}⁺.

    Raises:
        BadParameter: For an unknown name.
    """
    if name == "Dt:1.Fe":
        algebra = d_t(1)
        vectors = [element(algebra, {"e": 1})]
    elif name == "K3.Fe":
        algebra = kaplansky()
        vectors = [element(algebra, {"e": 1})]
    elif name == "M:1,1.p:1":
        associative = matrix_superalgebra(1, 1)
        algebra = plus_algebra(associative)
        vectors = list(hermitian_part(associative, transpose_superinvolution(1)).subspace.basis)
    else:
        raise BadParameter(f"no negative control named {name!r}")
    return _family(f"neg.{name}", algebra, vectors, "deliberately not maximal", Expectation.NOT_MAXIMAL)


### Open questions ###

def dt_in_hermitian_end(m: int) -> MaximalFamily:
    """The image of D_t, t = -m/(m+1), inside H(End V(m), *): open whether it is maximal."""
    phi = embed_dt(m, Fraction(-m, m + 1))
    involution = embedding_superinvolution(m)
    hermitian = hermitian_part(involution.algebra, involution, name=f"H(End V({m}))")
    vectors = [coordinates_in_subspace(hermitian.subspace, phi.matrix[:, j]) for j in range(phi.source.dim)]
    return _family(f"q5.1.m:{m}", hermitian.algebra, vectors, "D_t inside H(End V(m), *)", Expectation.OPEN)


def hunt_nonsemisimple_maximals(
    jordan: Superalgebra, associative: Superalgebra, inclusion: np.ndarray, p: Optional[int] = None,
    max_codim: int = 2
) -> dict:
    """
    Over F_p, the maximal graded subalgebras B of codimension at most ``max_codim`` with B' = A whose
    odd part is a nonzero square-zero ideal.

    Args:
        jordan (Superalgebra): J = A⁺ or H(A,*), at most 8-dimensional.
        associative (Superalgebra): A.
        inclusion (np.ndarray): J coordinates to A coordinates.
        p (Optional[int], optional): Prime. Defaults to ``DEFAULT_PRIME``.
        max_codim (int, optional): Codimension bound. Defaults to 2.

    Returns:
        dict: Counts and the dims of every candidate found.
    """
    p = int(SETTINGS.get("DEFAULT_PRIME", 5)) if p is None else p
    subalgebras = enumerate_graded_subalgebras_mod_p(jordan, p, max_codim)
    maximal = [
        b for b in subalgebras
        if not any(other.dim > b.dim and is_subspace_of(b, other) for other in subalgebras)]
    reduced_jordan = superalgebra_mod_p(jordan, p)
    reduced_associative = superalgebra_mod_p(associative, p)
    candidates = []
    for b in maximal:
        odd = [to_sparse(row, p) for row in b.odd_basis]
        if not odd:
            continue
        odd_space = graded_subspace(jordan.parities, b.odd_basis, modulus=p)
        square_zero = all(not sparse_product(reduced_jordan.table, u, w, p) for u in odd for w in odd)
        ideal = all(
            subspace_contains(odd_space, sparse_product(reduced_jordan.table, to_sparse(x, p), w, p))
            for x in b.even_basis for w in odd)
        if not (square_zero and ideal):
            continue
        images = [to_sparse(inclusion.dot(np.array(row, dtype=object)), p) for row in b.basis]
        if assoc_closure(reduced_associative, images).dim == associative.dim:
            candidates.append(b)
    log.info(f"{jordan.name} mod {p}: {len(maximal)} maximal of codim <= {max_codim}, {len(candidates)} candidate(s)")
    return {
        "prime": p, "subalgebras": len(subalgebras), "maximal": len(maximal),
        "candidates": len(candidates), "candidate_dims": [b.dims for b in candidates]}


def hunt_m11(p: Optional[int] = None) -> dict:
    associative = matrix_superalgebra(1, 1)
    return hunt_nonsemisimple_maximals(
        plus_algebra(associative), associative, identity_matrix(associative.dim), p)


def hunt_osp12(p: Optional[int] = None) -> dict:
    associative = matrix_superalgebra(1, 2)
    hermitian = hermitian_part(associative, orthosymplectic_superinvolution(1, 1), name="osp:1,1")
    return hunt_nonsemisimple_maximals(hermitian.algebra, associative, hermitian.embedding.matrix, p)


### Registry ###

def _pick(builder: Callable[..., list[MaximalFamily]], family_id: str, *args) -> MaximalFamily:
    """One family out of a builder that returns several."""
    for family in builder(*args):
        if family.family_id == family_id:
            return family
    raise BadParameter(f"{family_id} is not produced by {builder.__name__}{args}")


def _family_claims(builder: Callable[..., list[MaximalFamily]], ids: Sequence[str], anchor: str, *args) -> list[Claim]:
    return [
        Claim(family_id, anchor, Expectation.MAXIMAL, functools.partial(_pick, builder, family_id, *args))
        for family_id in ids]


def _variant_ids(base: str, variants: int = 3) -> list[str]:
    return [base] + [f"{base}.r{k}" for k in range(1, variants + 1)]


def build_registry() -> list[Claim]:
    """All claims in a stable order; families are only built when a claim runs."""
    claims: list[Claim] = []
    claims += _family_claims(easy_maximals, _variant_ids("thm2.1.i.K3"), "easy maximals (i)", "K3")
    for t in ("2", "-2/3", "-1", "1"):
        claims += _family_claims(easy_maximals, _variant_ids(f"thm2.1.ii.Dt:{t}"), "easy maximals (ii)", "Dt", (t,))
    claims += _family_claims(easy_maximals, ["thm2.1.ii.Dt:1.unit"], "easy maximals (ii), t = 1", "Dt", ("1",))
    for p, q in ((2, 1), (1, 1)):
        ids = _variant_ids(f"thm2.1.iii.superform:{p},{q}.odd")
        ids += _variant_ids(f"thm2.1.iii.superform:{p},{q}.even", 3 if p > 1 else 0)
        claims += _family_claims(easy_maximals, ids, "easy maximals (iii)", "superform", (p, q))
    claims.append(Claim("thm4.3.p:2", "B = H(A,*)", Expectation.MAXIMAL,
                        functools.partial(hermitian_maximal_in_plus, "transpose", 2)))
    claims.append(Claim("thm4.3.osp:1,1", "B = H(A,*)", Expectation.MAXIMAL,
                        functools.partial(hermitian_maximal_in_plus, "orthosymplectic", 1, 1)))
    claims += _family_claims(assoc_maximal_families, ["thm4.4.1a.M:1,1.e1"], "B = C+ (1.a)", "1a", 1, 1)
    claims += _family_claims(assoc_maximal_families, ["thm4.4.1a.M:2,1.e1", "thm4.4.1a.M:2,1.e2"], "B = C+ (1.a)", "1a", 2, 1)
    claims += _family_claims(assoc_maximal_families, ["thm4.4.1b.M:2,2"], "B = C+ (1.b)", "1b", 2)
    claims += _family_claims(assoc_maximal_families, ["thm4.4.2a.Q:2.r1"], "B = C+ (2.a)", "2a", 2)
    claims += _family_claims(assoc_maximal_families, ["thm4.4.2b.Q:2"], "B = C+ (2.b)", "2b", 2)
    claims += _family_claims(assoc_maximal_families, ["thm4.4.2c.Q:2.r1"], "B = C+ (2.c)", "2c", 2)
    claims += _family_claims(herm_maximal_families, ["thm5.2.i.p:4"], "B = H(C,*) (i.1)", "i.1", (2, 2))
    claims += _family_claims(herm_maximal_families, ["thm5.2.i.osp:2,1"], "B = H(C,*) (i.2)", "i.2", (1, 1, 1, 0))
    claims += _family_claims(herm_maximal_families, ["thm5.2.ii.p:3"], "B = H(C,*) (ii.1)", "ii.1", (1, 2, 0))
    claims += _family_claims(herm_maximal_families, ["thm5.2.ii.osp:1,1"], "B = H(C,*) (ii.2)", "ii.2", (1, 0, 0, 1))
    claims += _family_claims(herm_maximal_families, ["thm5.2.ii.osp:1,2"], "B = H(C,*) (ii.2)", "ii.2", (1, 0, 1, 1))
    claims.append(Claim("ex4.3", "non-semisimple maximal in M_{1,1}+", Expectation.MAXIMAL, nonss_example_m11))
    claims.append(Claim("ex5.3", "non-semisimple maximal in osp_{1,2}", Expectation.MAXIMAL, nonss_example_osp12))
    for name in ("Dt:1.Fe", "K3.Fe", "M:1,1.p:1"):
        claims.append(Claim(f"neg.{name}", "negative control", Expectation.NOT_MAXIMAL,
                            functools.partial(negative_control, name)))
    for m in (2, 3):
        claims.append(Claim(f"q5.1.m:{m}", "is D_t maximal in H(End V(m), *)?", Expectation.OPEN,
                            functools.partial(dt_in_hermitian_end, m)))
    claims.append(Claim("q4.3.hunt", "non-semisimple maximals of M_{1,1}+ with B' = A", Expectation.OPEN, hunter=hunt_m11))
    claims.append(Claim("q5.3.hunt", "non-semisimple maximals of osp_{1,2} with B' = A", Expectation.OPEN, hunter=hunt_osp12))
    return claims


def select_claims(pattern: str = "*", claims: Optional[list[Claim]] = None) -> list[Claim]:
    """Claims whose id matches a glob pattern, in registry order."""
    claims = build_registry() if claims is None else claims
    return [claim for claim in claims if fnmatch.fnmatchcase(claim.claim_id, pattern)]


def _status(result: ClaimResult) -> ClaimStatus:
    if result.expected is Expectation.OPEN:
        return ClaimStatus.EVIDENCE
    verdicts = [report.verdict for report in result.reports]
    if result.expected is Expectation.NOT_MAXIMAL:
        if Verdict.COUNTEREXAMPLE in verdicts:
            return ClaimStatus.PASS
        return ClaimStatus.FAIL if Verdict.ALL_GENERATE in verdicts else ClaimStatus.SKIPPED
    if any(not check.passed for check in result.checks) or Verdict.COUNTEREXAMPLE in verdicts:
        return ClaimStatus.FAIL
    if result.details.get("intermediate_mod_p"):
        return ClaimStatus.FAIL
    return ClaimStatus.PASS if Verdict.ALL_GENERATE in verdicts else ClaimStatus.SKIPPED


def _scan(family: MaximalFamily, report: MaximalityReport, result: ClaimResult):
    if family.ambient.dim - family.subalgebra.dim < 2:
        return
    try:
        found = exhaustive_subalgebra_scan_mod_p(family.ambient, family.subalgebra, report.mode.prime)  # type: ignore
    except TooLarge as error:
        result.details["scan"] = f"skipped: {error}"
        return
    result.details["intermediate_mod_p"] = len(found)


def run_claim(claim: Claim, modes: Sequence[str] = ("basis",), threads: Optional[int] = None) -> ClaimResult:
    """
    Build one claim and run it in every mode.

    Inadmissible primes and size caps skip a mode with a warning. For expected-maximal claims a
    mod-p AllGenerate is backed by the exhaustive intermediate-subalgebra scan, and a
    counterexample of a negative control is replayed over Q.
    """
    start = time.perf_counter()
    result = ClaimResult(claim.claim_id, claim.anchor, claim.expected)
    try:
        if claim.hunter is not None:
            prime = next((parse_mode(mode).prime for mode in modes if mode.startswith("modp")), None)
            result.details.update(claim.hunter(prime))
            result.status = ClaimStatus.EVIDENCE
            return result
        family = claim.builder()  # type: ignore
    except SuperJordanError as error:
        log.warning(f"{claim.claim_id}: {error}")
        result.details["error"] = str(error)
        result.status = ClaimStatus.EVIDENCE if claim.expected is Expectation.OPEN else ClaimStatus.FAIL
        return result
    finally:
        result.seconds = time.perf_counter() - start
    result.checks = list(family.checks)
    result.details["algebra"] = family.ambient.name
    result.details["dims"] = f"{family.subalgebra.dims} in {family.ambient.dims}"
    for mode in modes:
        try:
            report = maximality_check(family.ambient, family.subalgebra, mode, threads=threads)
        except (BadPrime, TooLarge) as error:
            log.warning(f"{claim.claim_id} [{mode}] skipped: {error}")
            result.details[f"skipped[{mode}]"] = str(error)
            continue
        result.reports.append(report)
        if report.mode.kind == "modp" and claim.expected is Expectation.MAXIMAL and report.verdict == Verdict.ALL_GENERATE:
            _scan(family, report, result)
        witness = report.counterexample
        if claim.expected is Expectation.NOT_MAXIMAL and witness is not None and report.mode.kind != "modp":
            replayed, closure = generates(family.ambient, family.subalgebra, witness.vector)
            result.details["witness_closure_dim"] = closure.dim
            result.details["witness_replayed"] = not replayed
    result.status = _status(result)
    result.seconds = time.perf_counter() - start
    log.info(f"{claim.claim_id}: {result.status.value} ({result.seconds:.2f} s)")
    return result


def run_registry(
    pattern: str = "*", modes: Optional[Sequence[str]] = None, threads: Optional[int] = None
) -> list[ClaimResult]:
    """
    Run every claim matching ``pattern``; results follow the registry order.

    Args:
        pattern (str, optional): Glob over claim ids. Defaults to "*".
        modes (Optional[Sequence[str]], optional): Maximality modes. Defaults to ``("basis",)``.
        threads (Optional[int], optional): Worker processes over claims. Defaults to ``THREADS``.

    Raises:
        ValueError: For a malformed mode (BadPrime for an inadmissible prime).
    """
    modes = tuple(modes or ("basis",))
    for mode in modes:
        parse_mode(mode)
    claims = select_claims(pattern)
    outer = max(1, int(SETTINGS.get("THREADS", 1))) if threads is None else threads
    task = functools.partial(run_claim, modes=modes, threads=1 if outer > 1 else None)
    return parallel_map(task, claims, desc="Registry claims", threads=outer, chunksize=1)


def registry_exit_code(results: Sequence[ClaimResult]) -> int:
    """
    1 if any claim has status FAIL, else 0.

    FAIL covers more than a counterexample to an expected-maximal claim: a family whose
    construction raises, a failed family check, an intermediate subalgebra found by the mod-p scan,
    and a negative control that a mode declared maximal. Open claims and skipped modes never fail.
    """
    return 1 if any(result.status is ClaimStatus.FAIL for result in results) else 0
