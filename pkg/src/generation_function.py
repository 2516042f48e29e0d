"""
Subalgebra generation and the maximality verifier.

A closure keeps an incremental :class:`EchelonBasis` and multiplies only the vectors found in the
previous round against everything known so far. ``maximality_check`` offers three modes:

- ``basis``: every basis vector of the deterministic complement must generate (necessary evidence);
- ``random:<trials>:<seed>``: the same plus seeded random homogeneous complement vectors;
- ``modp:<p>``: every nonzero homogeneous complement vector over F_p up to scalars, which proves
  maximality over F_p (x = b + w gives the same closure as w, so the complement suffices).
"""
import functools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence, Union

import numpy as np
import tqdm

from error_function import NotASubalgebra, TooLarge
from general_function import SETTINGS, generate_log, parallel_map
from linalg_function import (
    EchelonBasis, GradedSubspace, SparseVector, VectorLike, check_prime, enumerate_subspaces_mod_p,
    graded_complement, graded_subspace, projective_points, scalar_to_string, to_sparse
)
from superalgebra_function import Superalgebra, sparse_product, superalgebra_mod_p

log = generate_log(name=__name__)


class Verdict(str, Enum):
    ALL_GENERATE = "AllGenerate"
    COUNTEREXAMPLE = "CounterexampleFound"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ClosureResult:
    """
    ``subspace`` is the closure when it is graded, otherwise its graded hull (``graded`` false).
    """
    subspace: GradedSubspace
    dim: int
    rounds: int
    products_computed: int
    graded: bool = True
    elements: tuple = ()


@dataclass(frozen=True)
class MaximalityMode:
    kind: str
    trials: int = 0
    seed: Optional[int] = None
    prime: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == "random":
            return f"random:{self.trials}:{self.seed}"
        if self.kind == "modp":
            return f"modp:{self.prime}"
        return self.kind


@dataclass(frozen=True)
class Witness:
    vector: tuple
    closure_dim: int
    generates: bool

    def to_dict(self) -> dict:
        return {
            "vector": [scalar_to_string(x) for x in self.vector],
            "closure_dim": self.closure_dim, "generates": self.generates}


@dataclass
class MaximalityReport:
    algebra: str
    algebra_dims: tuple[int, int]
    subalgebra_dims: tuple[int, int]
    mode: MaximalityMode
    verdict: Verdict
    witnesses: list[Witness] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def counterexample(self) -> Optional[Witness]:
        return next((w for w in self.witnesses if not w.generates), None)

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "algebra_dims": list(self.algebra_dims),
            "subalgebra_dims": list(self.subalgebra_dims),
            "mode": str(self.mode),
            "seed": self.mode.seed,
            "prime": self.mode.prime,
            "verdict": self.verdict.value,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "details": {key: str(value) for key, value in self.details.items()},
        }


def parse_mode(text: str) -> MaximalityMode:
    """
    ``basis``, ``random:<trials>:<seed>`` (both optional) or ``modp:<p>``.

    Raises:
        ValueError: For anything else.
        BadPrime: For an inadmissible prime.
    """
    kind, *rest = text.strip().split(":")
    if kind == "basis" and not rest:
        return MaximalityMode("basis")
    if kind == "random" and len(rest) <= 2:
        trials = int(rest[0]) if rest and rest[0] else int(SETTINGS.get("RANDOM_TRIALS", 200))
        seed = int(rest[1]) if len(rest) == 2 else int(SETTINGS.get("DEFAULT_SEED"))
        return MaximalityMode("random", trials=trials, seed=seed)
    if kind == "modp" and len(rest) <= 1:
        prime = int(rest[0]) if rest and rest[0] else int(SETTINGS.get("DEFAULT_PRIME", 5))
        return MaximalityMode("modp", prime=check_prime(prime))
    raise ValueError(f"unknown maximality mode {text!r}")


def _vectors(algebra: Superalgebra, span: Union[GradedSubspace, Iterable[VectorLike]]) -> list[SparseVector]:
    rows = span.basis if isinstance(span, GradedSubspace) else span
    return [to_sparse(row, algebra.modulus) for row in rows]


def _is_homogeneous(algebra: Superalgebra, vector: SparseVector) -> bool:
    return len({algebra.parities[i] for i in vector}) <= 1


def _is_supercommutative(algebra: Superalgebra) -> bool:
    for i, row in algebra.table.items():
        for j, out in row.items():
            sign = -1 if algebra.parities[i] and algebra.parities[j] else 1
            mirrored = algebra.product(j, i)
            if algebra.modulus:
                if {k: (sign * c) % algebra.modulus for k, c in mirrored.items()} != out:
                    return False
            elif {k: sign * c for k, c in mirrored.items()} != out:
                return False
    return True


def _close(
    algebra: Superalgebra, basis: EchelonBasis, known: list[SparseVector], new: list[SparseVector],
    associative: bool, target_dim: Optional[int]
) -> tuple[list[SparseVector], int, int]:
    """
    Extend a closed family ``known`` by ``new`` until product-closed.

    Jordan closures multiply each new vector with the known ones and the new ones up to itself;
    one product order is enough when all vectors are homogeneous. Associative closures multiply
    on the right by the generators ``new`` only, which spans all words.
    """
    modulus = algebra.modulus
    generators = [dict(v) for v in new]
    elements = list(known)
    rounds = products = 0
    both_orders = (
        associative or not _is_supercommutative(algebra)
        or not all(_is_homogeneous(algebra, v) for v in known + new))
    while new and (target_dim is None or len(basis) < target_dim):
        rounds += 1
        found: list[SparseVector] = []
        if associative:
            pairs = [(w, g) for w in new for g in generators]
        else:
            pairs = []
            partners = elements
            for index, x in enumerate(new):
                pairs.extend((x, y) for y in partners + new[:index + 1])
        elements.extend(new)
        for x, y in pairs:
            orders = ((x, y), (y, x)) if both_orders and not associative else ((x, y),)
            for left, right in orders:
                products += 1
                row = basis.insert(sparse_product(algebra.table, left, right, modulus))
                if row is not None:
                    found.append(row)
                    if not associative and not _is_homogeneous(algebra, row):
                        both_orders = True
            if target_dim is not None and len(basis) >= target_dim:
                break
        log.debug(f"closure round {rounds}: {len(found)} new vectors, dim {len(basis)}")
        new = found
    elements.extend(new)
    return elements, rounds, products


def _result(algebra: Superalgebra, basis: EchelonBasis, elements: list, rounds: int, products: int) -> ClosureResult:
    rows = basis.dense_rows(algebra.dim)
    graded = all(_is_homogeneous(algebra, to_sparse(row, algebra.modulus)) for row in rows)
    subspace = graded_subspace(algebra.parities, rows, modulus=algebra.modulus, homogenize=not graded)
    return ClosureResult(subspace, len(basis), rounds, products, graded, tuple(elements))


def jordan_closure(
    algebra: Superalgebra, span: Union[GradedSubspace, Iterable[VectorLike]],
    target_dim: Optional[int] = None
) -> ClosureResult:
    """
    Least product-closed subspace containing the span, for the product of ``algebra``.

    The span need not be homogeneous; ``ClosureResult.graded`` says whether the result is.

    Args:
        algebra (Superalgebra): Ambient algebra (rational or reduced mod p).
        span (Union[GradedSubspace, Iterable[VectorLike]]): Generators.
        target_dim (Optional[int], optional): Stop as soon as this dimension is reached.

    Returns:
        ClosureResult: The closure and its cost counters.
    """
    basis = EchelonBasis(algebra.modulus)
    new = [row for row in (basis.insert(v) for v in _vectors(algebra, span)) if row is not None]
    elements, rounds, products = _close(algebra, basis, [], new, False, target_dim)
    return _result(algebra, basis, elements, rounds, products)


def assoc_closure(
    algebra: Superalgebra, span: Union[GradedSubspace, Iterable[VectorLike]],
    target_dim: Optional[int] = None
) -> ClosureResult:
    """The associative subalgebra B' generated by the span: all words in the generators."""
    basis = EchelonBasis(algebra.modulus)
    new = [row for row in (basis.insert(v) for v in _vectors(algebra, span)) if row is not None]
    elements, rounds, products = _close(algebra, basis, [], new, True, target_dim)
    return _result(algebra, basis, elements, rounds, products)


def _closed_start(algebra: Superalgebra, closed: GradedSubspace) -> tuple[EchelonBasis, list[SparseVector]]:
    basis = EchelonBasis(algebra.modulus)
    known = [row for row in (basis.insert(v) for v in _vectors(algebra, closed)) if row is not None]
    return basis, known


def generates(
    algebra: Superalgebra, subalgebra: GradedSubspace, vector: VectorLike
) -> tuple[bool, ClosureResult]:
    """
    Whether B and x generate the whole algebra. B must be product-closed: its own products are
    not recomputed.
    """
    basis, known = _closed_start(algebra, subalgebra)
    row = basis.insert(to_sparse(vector, algebra.modulus))
    new = [row] if row is not None else []
    elements, rounds, products = _close(algebra, basis, known, new, False, algebra.dim)
    result = _result(algebra, basis, elements, rounds, products)
    return result.dim == algebra.dim, result


def _witness_generates(
    algebra: Superalgebra, subalgebra: GradedSubspace, vector: tuple
) -> Witness:
    ok, result = generates(algebra, subalgebra, vector)
    return Witness(tuple(vector), result.dim, ok)


def _check_proper_subalgebra(algebra: Superalgebra, subalgebra: GradedSubspace):
    if subalgebra.ambient_parities != algebra.parities:
        raise NotASubalgebra("the subspace lives in another ambient space")
    closure = jordan_closure(algebra, subalgebra)
    if closure.dim != subalgebra.dim:
        raise NotASubalgebra(f"the subspace of {algebra.name} is not closed under the product")
    if subalgebra.dim == algebra.dim:
        raise NotASubalgebra(f"the subspace is all of {algebra.name}")


def _complement_by_parity(complement: GradedSubspace) -> dict[int, list[tuple]]:
    return {0: list(complement.even_basis), 1: list(complement.odd_basis)}


def _combine(rows: Sequence[tuple], coefficients: Sequence[int], modulus: Optional[int]) -> tuple:
    total = np.zeros(len(rows[0]), dtype=object)
    for c, row in zip(coefficients, rows):
        if c:
            total = total + c * np.array(row, dtype=object)
    if modulus:
        total = total % modulus
    return tuple(total)


def _reduce_subspace(subalgebra: GradedSubspace, p: int) -> GradedSubspace:
    return graded_subspace(subalgebra.ambient_parities, subalgebra.basis, modulus=p)


def maximality_check(
    algebra: Superalgebra, subalgebra: GradedSubspace, mode: Union[str, MaximalityMode] = "basis",
    threads: Optional[int] = None
) -> MaximalityReport:
    """
    Test that every complement vector generates the algebra together with B.

    Args:
        algebra (Superalgebra): Ambient Jordan superalgebra J.
        subalgebra (GradedSubspace): Proper graded subalgebra B.
        mode (Union[str, MaximalityMode], optional): See :func:`parse_mode`. Defaults to "basis".
        threads (Optional[int], optional): Workers for the mod-p enumeration.

    Returns:
        MaximalityReport: AllGenerate, CounterexampleFound (with the witness) or Inconclusive
        (B loses rank modulo p).

    Raises:
        NotASubalgebra: If B is not closed or not proper.
        BadPrime: If a constant has a denominator divisible by p.
        TooLarge: If a complement parity block exceeds ``MODP_MAX_COMPLEMENT`` in mode modp.
    """
    if isinstance(mode, str):
        mode = parse_mode(mode)
    _check_proper_subalgebra(algebra, subalgebra)
    report = MaximalityReport(
        algebra.name, algebra.dims, subalgebra.dims, mode, Verdict.ALL_GENERATE)
    if algebra.dim - subalgebra.dim == 1:
        report.details["reason"] = "codimension 1"
        return report
    complement = graded_complement(subalgebra)

    if mode.kind == "modp":
        return _maximality_mod_p(algebra, subalgebra, report, threads)

    for row in tqdm.tqdm(complement.basis, desc=f"Complement basis of {algebra.name}", ncols=120, disable=None):
        witness = _witness_generates(algebra, subalgebra, row)
        report.witnesses.append(witness)
        if not witness.generates:
            report.verdict = Verdict.COUNTEREXAMPLE
            return report
    if mode.kind == "random":
        rng = np.random.default_rng(mode.seed)
        bound = int(SETTINGS.get("COEFFICIENT_RANGE", 3))
        blocks = {parity: rows for parity, rows in _complement_by_parity(complement).items() if rows}
        parities = sorted(blocks)
        for _ in tqdm.tqdm(range(mode.trials), desc=f"Random complement vectors of {algebra.name}", ncols=120, disable=None):
            parity = parities[int(rng.integers(len(parities)))]
            rows = blocks[parity]
            coefficients = [0] * len(rows)
            while not any(coefficients):
                coefficients = [int(c) for c in rng.integers(-bound, bound + 1, size=len(rows))]
            witness = _witness_generates(algebra, subalgebra, _combine(rows, coefficients, None))
            if not witness.generates:
                report.witnesses.append(witness)
                report.verdict = Verdict.COUNTEREXAMPLE
                return report
        report.details["random_trials"] = mode.trials
    return report


def _maximality_mod_p(
    algebra: Superalgebra, subalgebra: GradedSubspace, report: MaximalityReport, threads: Optional[int]
) -> MaximalityReport:
    p = report.mode.prime
    reduced_algebra = superalgebra_mod_p(algebra, p)  # type: ignore
    reduced = _reduce_subspace(subalgebra, p)  # type: ignore
    if reduced.dims != subalgebra.dims or jordan_closure(reduced_algebra, reduced).dim != reduced.dim:
        report.verdict = Verdict.INCONCLUSIVE
        report.details["reason"] = f"the subalgebra does not reduce to a subalgebra modulo {p}"
        return report
    complement = graded_complement(reduced)
    limit = int(SETTINGS.get("MODP_MAX_COMPLEMENT", 6))
    blocks = _complement_by_parity(complement)
    if max(len(rows) for rows in blocks.values()) > limit:
        raise TooLarge(f"complement block larger than MODP_MAX_COMPLEMENT = {limit}")
    vectors = [
        _combine(rows, point, p)
        for rows in blocks.values() if rows
        for point in projective_points(len(rows), p)]  # type: ignore
    task = functools.partial(_witness_generates, reduced_algebra, reduced)
    witnesses = parallel_map(task, vectors, desc=f"Enumerate complement of {algebra.name} mod {p}", threads=threads)
    failure = next((w for w in witnesses if not w.generates), None)
    report.details["vectors"] = len(vectors)
    if failure is not None:
        report.verdict = Verdict.COUNTEREXAMPLE
        report.witnesses.append(failure)
    return report


def exhaustive_subalgebra_scan_mod_p(
    algebra: Superalgebra, subalgebra: GradedSubspace, p: int
) -> list[GradedSubspace]:
    """
    Every graded subalgebra T with B ⊊ T ⊊ J over F_p.

    Breadth-first: close each known intermediate T with every homogeneous complement vector of T
    (up to scalars); an intermediate subalgebra strictly containing T is reached from some vector.

    Args:
        algebra (Superalgebra): Rational ambient algebra J.
        subalgebra (GradedSubspace): Rational subalgebra B.
        p (int): Prime > 3, at most ``SCAN_MAX_PRIME``.

    Returns:
        list[GradedSubspace]: Intermediate subalgebras over F_p, sorted by dimension (empty when B is
        maximal over F_p).

    Raises:
        TooLarge: If the codimension exceeds ``SCAN_MAX_CODIM`` or p exceeds ``SCAN_MAX_PRIME``.
        BadPrime: If p is not admissible for the constants.
    """
    check_prime(p)
    if algebra.dim - subalgebra.dim > int(SETTINGS.get("SCAN_MAX_CODIM", 6)):
        raise TooLarge("codimension exceeds SCAN_MAX_CODIM")
    if p > int(SETTINGS.get("SCAN_MAX_PRIME", 7)):
        raise TooLarge("prime exceeds SCAN_MAX_PRIME")
    reduced_algebra = superalgebra_mod_p(algebra, p)
    start = _reduce_subspace(subalgebra, p)
    found: dict[tuple, GradedSubspace] = {}
    frontier = [start]
    while frontier:
        following = []
        for current in frontier:
            blocks = _complement_by_parity(graded_complement(current))
            for rows in blocks.values():
                if not rows:
                    continue
                for point in projective_points(len(rows), p):
                    vector = _combine(rows, point, p)
                    ok, result = generates(reduced_algebra, current, vector)
                    if ok:
                        continue
                    key = result.subspace.key()
                    if key not in found:
                        found[key] = result.subspace
                        following.append(result.subspace)
        frontier = following
    log.info(f"scan of {algebra.name} mod {p}: {len(found)} intermediate subalgebra(s)")
    return sorted(found.values(), key=lambda s: (s.dim, s.key()))


def enumerate_graded_subalgebras_mod_p(
    algebra: Superalgebra, p: int, max_codim: int
) -> list[GradedSubspace]:
    """
    All proper graded subalgebras of codimension at most ``max_codim`` over F_p, by enumerating
    the graded subspaces block by block.

    Raises:
        TooLarge: If p exceeds ``SCAN_MAX_PRIME`` or the algebra has more than 8 dimensions.
    """
    check_prime(p)
    if p > int(SETTINGS.get("SCAN_MAX_PRIME", 7)) or algebra.dim > 8:
        raise TooLarge("subalgebra enumeration is limited to dim <= 8 and p <= SCAN_MAX_PRIME")
    reduced = superalgebra_mod_p(algebra, p)
    even, odd = algebra.even_indices, algebra.odd_indices
    found = []
    for k0 in range(len(even), -1, -1):
        for k1 in range(len(odd), -1, -1):
            codim = algebra.dim - k0 - k1
            if codim < 1 or codim > max_codim:
                continue
            for even_rows in enumerate_subspaces_mod_p(len(even), k0, p):
                for odd_rows in enumerate_subspaces_mod_p(len(odd), k1, p):
                    vectors = [{even[i]: x for i, x in enumerate(row) if x} for row in even_rows]
                    vectors += [{odd[i]: x for i, x in enumerate(row) if x} for row in odd_rows]
                    space = graded_subspace(algebra.parities, vectors, modulus=p)
                    if jordan_closure(reduced, space).dim == space.dim:
                        found.append(space)
    return found


def closure_dims_agree_mod_p(
    algebra: Superalgebra, span: Iterable[VectorLike], p: int
) -> tuple[int, int]:
    """Dimensions of the rational closure and of the closure of the reduced generators mod p."""
    vectors = list(span)
    rational = jordan_closure(algebra, vectors).dim
    reduced = jordan_closure(superalgebra_mod_p(algebra, p), vectors).dim
    return rational, reduced
