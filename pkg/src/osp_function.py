"""
The Lie superalgebra osp(1,2), its irreducible modules V(m) and the embeddings of D_t in End(V(m))⁺.

Module matrices act on column vectors: column i of ``rho["x"]`` is x·e_i in the basis
e_0, ..., e_2m (e_i = y^i v, parity i mod 2).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy

from error_function import BadBlocks, BadParameter
from general_function import SETTINGS, generate_log
from linalg_function import (
    as_matrix, identity_matrix, nullspace, solve, subspace_contains, to_scalar, zero_matrix, zero_vector
)
from superalgebra_function import (
    GradedLinearMap, MatrixRealization, Superalgebra, Superinvolution, VerificationReport, check_graded_hom,
    make_superalgebra, plus_algebra, sparse_product
)
from catalog_function import d_t, matrix_superalgebra, q_n, superinvolution_from_form
from generation_function import assoc_closure

log = generate_log(name=__name__)

OSP_LABELS = ("h", "e", "f", "x", "y")
OSP_PARITIES = (0, 0, 0, 1, 1)


@dataclass(frozen=True)
class VmModule:
    m: int
    rho: dict
    opposite_parity: bool = False

    @property
    def dim(self) -> int:
        return 2 * self.m + 1

    @property
    def parities(self) -> tuple[int, ...]:
        shift = 1 if self.opposite_parity else 0
        return tuple((i + shift) % 2 for i in range(self.dim))


@dataclass(frozen=True)
class InvariantForm:
    module: VmModule
    gram: np.ndarray


def osp_matrices() -> dict[str, np.ndarray]:
    """The basis h, e, f | x, y of osp(1,2) as skew elements of M_{1,2}."""
    return {
        "h": as_matrix([[0, 0, 0], [0, 1, 0], [0, 0, -1]]),
        "e": as_matrix([[0, 0, 0], [0, 0, 1], [0, 0, 0]]),
        "f": as_matrix([[0, 0, 0], [0, 0, 0], [0, 1, 0]]),
        "x": as_matrix([[0, 0, -1], [1, 0, 0], [0, 0, 0]]),
        "y": as_matrix([[0, 1, 0], [0, 0, 0], [1, 0, 0]]),
    }


def _bracket(a: np.ndarray, b: np.ndarray, sign: int) -> np.ndarray:
    return a.dot(b) - sign * b.dot(a)


def osp12() -> Superalgebra:
    """
    osp(1,2) with the super bracket ``[a, b] = ab - (-1)^{|a||b|} ba`` of its matrix realization,
    which is attached as the skew elements of M_{1,2}.

    Example:
    >>> osp = osp12()
    >>> osp.product(osp.index("x"), osp.index("y"))
    {0: Fraction(1, 1)}
    """
    matrices = osp_matrices()
    ordered = [matrices[label] for label in OSP_LABELS]
    flat = np.array([m.reshape(-1) for m in ordered], dtype=object).T
    products = {}
    for i, a in enumerate(ordered):
        for j, b in enumerate(ordered):
            sign = -1 if OSP_PARITIES[i] and OSP_PARITIES[j] else 1
            coordinates = solve(flat, _bracket(a, b, sign).reshape(-1))
            products[(i, j)] = {k: c for k, c in enumerate(coordinates) if c != 0}
    realization = MatrixRealization(tuple(ordered), (1, 2))
    return make_superalgebra("osp(1,2)", OSP_PARITIES, products, OSP_LABELS, realization=realization)


def check_super_jacobi(algebra: Superalgebra) -> VerificationReport:
    """
    Super-anticommutativity and ``[a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]`` on basis triples.
    """
    d = algebra.dim
    par = algebra.parities
    for a in range(d):
        for b in range(d):
            sign = -1 if par[a] and par[b] else 1
            mirrored = {k: -sign * c for k, c in algebra.product(b, a).items()}
            if mirrored != algebra.product(a, b):
                return VerificationReport(
                    "super_jacobi", algebra.name, False, (algebra.labels[a], algebra.labels[b]),
                    {"failure": "anticommutativity"})
    for a in range(d):
        for b in range(d):
            for c in range(d):
                ea, eb, ec = {a: 1}, {b: 1}, {c: 1}
                lhs = sparse_product(algebra.table, ea, sparse_product(algebra.table, eb, ec))
                first = sparse_product(algebra.table, sparse_product(algebra.table, ea, eb), ec)
                second = sparse_product(algebra.table, eb, sparse_product(algebra.table, ea, ec))
                sign = -1 if par[a] and par[b] else 1
                rhs = dict(first)
                for k, value in second.items():
                    rhs[k] = rhs.get(k, 0) + sign * value
                rhs = {k: v for k, v in rhs.items() if v != 0}
                if lhs != rhs:
                    return VerificationReport(
                        "super_jacobi", algebra.name, False,
                        (algebra.labels[a], algebra.labels[b], algebra.labels[c]), {"failure": "jacobi"})
    return VerificationReport("super_jacobi", algebra.name, True)


def vm_module(m: int, opposite_parity: bool = False) -> VmModule:
    """
    The irreducible module V(m) of dimension 2m + 1.

    Args:
        m (int): Highest weight, m >= 0.
        opposite_parity (bool, optional): Build V(m)^op (all parities flipped). Defaults to False.

    Raises:
        BadParameter: If ``m < 0``.
    """
    if m < 0:
        raise BadParameter(f"V(m) needs m >= 0, got {m}")
    n = 2 * m + 1
    rho = {label: zero_matrix(n, n) for label in OSP_LABELS}
    for i in range(n):
        rho["h"][i, i] = Fraction(m - i)
        if i + 2 < n:
            rho["f"][i + 2, i] = Fraction(1)
        if i + 1 < n:
            rho["y"][i + 1, i] = Fraction(1)
        half = i // 2
        if i % 2 == 0:
            if half >= 1:
                rho["x"][i - 1, i] = Fraction(-half)
                rho["e"][i - 2, i] = Fraction(half * (m - half + 1))
        else:
            rho["x"][i - 1, i] = Fraction(m - half)
            if half >= 1:
                rho["e"][i - 2, i] = Fraction(half * (m - half))
    return VmModule(m, rho, opposite_parity)


def rho_of(module: VmModule, coordinates: dict) -> np.ndarray:
    """Action matrix of a combination ``{basis index: coefficient}`` of h, e, f, x, y."""
    total = zero_matrix(module.dim, module.dim)
    for index, value in coordinates.items():
        total = total + value * module.rho[OSP_LABELS[index]]
    return total


def check_rep(module: VmModule) -> VerificationReport:
    """
    ``rho([a, b]) = rho_a rho_b - (-1)^{|a||b|} rho_b rho_a`` on the 15 unordered basis pairs.

    ``details["failures"]`` lists every failing pair, ``counterexample`` is the first.
    """
    osp = osp12()
    failures = []
    for i in range(5):
        for j in range(i, 5):
            sign = -1 if OSP_PARITIES[i] and OSP_PARITIES[j] else 1
            a, b = module.rho[OSP_LABELS[i]], module.rho[OSP_LABELS[j]]
            if not np.array_equal(rho_of(module, osp.product(i, j)), _bracket(a, b, sign)):
                failures.append((OSP_LABELS[i], OSP_LABELS[j]))
    subject = f"V({module.m})"
    if failures:
        return VerificationReport("representation", subject, False, failures[0], {"failures": failures})
    return VerificationReport("representation", subject, True)


def weight_spectrum(module: VmModule) -> list[int]:
    """Eigenvalues of rho_h (diagonal), highest first."""
    return [int(module.rho["h"][i, i]) for i in range(module.dim)]


def xy_commutator(module: VmModule) -> np.ndarray:
    """rho_x rho_y - rho_y rho_x."""
    return module.rho["x"].dot(module.rho["y"]) - module.rho["y"].dot(module.rho["x"])


def minimal_poly_xyyx(module: VmModule) -> sympy.Poly:
    """
    Minimal polynomial of ``rho_x rho_y - rho_y rho_x``, from the first linear dependence among
    its powers.

    Example:
    >>> minimal_poly_xyyx(vm_module(1)).all_coeffs()
    [1, 1, -2]
    """
    operator = xy_commutator(module)
    n = module.dim
    powers = [identity_matrix(n)]
    X = sympy.Symbol("X")
    while True:
        powers.append(powers[-1].dot(operator))
        columns = np.array([p.reshape(-1) for p in powers], dtype=object).T
        kernel = nullspace(columns)
        if kernel:
            relation = kernel[0]
            lead = relation[-1]
            coefficients = [sympy.Rational(c.numerator, c.denominator) for c in (x / lead for x in relation)]
            return sympy.Poly(list(reversed(coefficients)), X, domain=sympy.QQ)


def _parity_signs(parities: Sequence[int]) -> np.ndarray:
    signs = identity_matrix(len(parities))
    for i, parity in enumerate(parities):
        if parity:
            signs[i, i] = Fraction(-1)
    return signs


def vm_form(module: VmModule) -> InvariantForm:
    """
    The invariant even form with ``(e_2r | e_2(m-r)) = (-1)^r`` and ``(e_2r+1 | e_2(m-r)-1) = (-1)^r``.

    On V(m)^op the form is the primed one ``(u|v)' = (-1)^{|u|} (u|v)``, ``|u|`` the parity in V(m).
    """
    m, n = module.m, module.dim
    gram = zero_matrix(n, n)
    for r in range(m + 1):
        gram[2 * r, 2 * (m - r)] = Fraction((-1) ** r)
    for r in range(m):
        gram[2 * r + 1, 2 * (m - r) - 1] = Fraction((-1) ** r)
    if module.opposite_parity:
        gram = _parity_signs([i % 2 for i in range(n)]).dot(gram)
    return InvariantForm(module, gram)


def op_form(module: VmModule) -> InvariantForm:
    """The primed form on V(m)^op; supersymmetric exactly when m is odd."""
    return vm_form(VmModule(module.m, module.rho, opposite_parity=True))


def check_form_invariance(form: InvariantForm) -> VerificationReport:
    """
    rho_x, rho_y supersymmetric (``rho^t G = S G rho`` with S the parity signs) and
    rho_h, rho_e, rho_f skew (``rho^t G = -G rho``).
    """
    gram = form.gram
    signs = _parity_signs(form.module.parities)
    subject = f"form on V({form.module.m})"
    for label in ("x", "y"):
        rho = form.module.rho[label]
        if not np.array_equal(rho.T.dot(gram), signs.dot(gram).dot(rho)):
            return VerificationReport("form_invariance", subject, False, (label,), {"failure": "supersymmetry"})
    for label in ("h", "e", "f"):
        rho = form.module.rho[label]
        if not np.array_equal(rho.T.dot(gram), -gram.dot(rho)):
            return VerificationReport("form_invariance", subject, False, (label,), {"failure": "skew"})
    return VerificationReport("form_invariance", subject, True)


def form_is_supersymmetric(form: InvariantForm) -> bool:
    """``(v|w) = (-1)^{|v||w|} (w|v)`` for homogeneous v, w."""
    parities = form.module.parities
    gram = form.gram
    for i, j in zip(*np.nonzero(gram != 0)):
        sign = -1 if parities[i] and parities[j] else 1
        if gram[i, j] != sign * gram[j, i]:
            return False
    return True


def form_uniqueness_rank(module: VmModule) -> int:
    """
    Dimension of the space of even Gram matrices X with rho_x and rho_y supersymmetric.
    """
    n = module.dim
    parities = module.parities
    rows = []
    for label in ("x", "y"):
        rho = module.rho[label]
        for i in range(n):
            sign = -1 if parities[i] else 1
            for j in range(n):
                # (rho^t X - S X rho)[i, j] = 0
                row = [Fraction(0)] * (n * n)
                for k in range(n):
                    if rho[k, i] != 0:
                        row[k * n + j] += rho[k, i]
                    if rho[k, j] != 0:
                        row[i * n + k] -= sign * rho[k, j]
                if any(row):
                    rows.append(row)
    for i in range(n):
        for j in range(n):
            if parities[i] != parities[j]:
                row = [Fraction(0)] * (n * n)
                row[i * n + j] = Fraction(1)
                rows.append(row)
    return len(nullspace(as_matrix(rows, cols=n * n), cols=n * n))


def endomorphism_sorting(module: VmModule) -> list[int]:
    """Basis permutation putting the even vectors e_0, e_2, ... first, so End(V) is M_{m+1,m}."""
    original = [i % 2 for i in range(module.dim)]
    return [i for i in range(module.dim) if original[i] == 0] + [i for i in range(module.dim) if original[i] == 1]


def _sorted_coordinates(matrix: np.ndarray, permutation: list[int]) -> np.ndarray:
    return matrix[np.ix_(permutation, permutation)].reshape(-1)


def admissible_parameters(m: int) -> tuple[Fraction, Fraction]:
    """t = -m/(m+1) and t = -(m+1)/m."""
    return Fraction(-m, m + 1), Fraction(-(m + 1), m)


def embed_dt(m: int, t: object) -> GradedLinearMap:
    """
    D_t -> End(V(m))⁺ through the V(m) action:

    ``e -> (t + (1+t)a)/(t-1)``, ``f -> (1 + (1+t)a)/(1-t)``, ``u -> 2 rho_x``, ``v -> -(1+t) rho_y``
    with ``a = rho_x rho_y - rho_y rho_x``. End(V(m)) is M_{m+1,m} after :func:`endomorphism_sorting`.

    Raises:
        BadParameter: If ``m < 1`` or t is not -m/(m+1) or -(m+1)/m.
    """
    if m < 1:
        raise BadParameter(f"embeddings of D_t need m >= 1, got {m}")
    t = to_scalar(t)
    if t not in admissible_parameters(m):
        raise BadParameter(f"t = {t} is not -m/(m+1) or -(m+1)/m for m = {m}")
    module = vm_module(m)
    n = module.dim
    a = xy_commutator(module)
    one = identity_matrix(n)
    images = {
        "e": (t * one + (1 + t) * a) * (1 / (t - 1)),
        "f": (one + (1 + t) * a) * (1 / (1 - t)),
        "u": 2 * module.rho["x"],
        "v": -(1 + t) * module.rho["y"],
    }
    permutation = endomorphism_sorting(module)
    source = d_t(t)
    target = plus_algebra(matrix_superalgebra(m + 1, m), name=f"End(V({m}))+")
    matrix = np.empty((target.dim, source.dim), dtype=object)
    for j, label in enumerate(source.labels):
        matrix[:, j] = _sorted_coordinates(images[label], permutation)
    return GradedLinearMap(source, target, matrix)


def embedding_superinvolution(m: int) -> Superinvolution:
    """
    Adjoint superinvolution on End(V(m)) = M_{m+1,m}: from the form for even m, from the primed form
    on V(m)^op for odd m.
    """
    module = vm_module(m)
    form = op_form(module) if m % 2 else vm_form(module)
    module = form.module
    permutation = endomorphism_sorting(module)
    gram = form.gram[np.ix_(permutation, permutation)]
    vector_parities = [module.parities[i] for i in permutation]
    return superinvolution_from_form(
        matrix_superalgebra(m + 1, m), gram, vector_parities, name=f"adjoint(V({m}))")


def verify_embedding_claims(m: int, t: Optional[object] = None) -> VerificationReport:
    """
    For each admissible t (or the given one): the embedding is a unital Jordan homomorphism, its
    images are fixed by the form adjoint, they generate all of End(V(m)) associatively, and
    End(V(m)) = M_{p,q} with q = p - 1 and t in {-p/q, -q/p}.
    """
    if m < 1:
        raise BadParameter(f"embeddings of D_t need m >= 1, got {m}")
    parameters = admissible_parameters(m) if t is None else (to_scalar(t),)
    involution = embedding_superinvolution(m)
    end = involution.algebra
    p, q = end.realization.block_sizes  # type: ignore
    details: dict = {"p": p, "q": q}
    subject = f"D_t in End(V({m}))"
    for value in parameters:
        phi = embed_dt(m, value)
        hom = check_graded_hom(phi, unital=True)
        if not hom.passed:
            return VerificationReport("embedding", subject, False, hom.counterexample, {"failure": "homomorphism", "t": value})
        images = [phi.matrix[:, j] for j in range(phi.source.dim)]
        for label, image in zip(phi.source.labels, images):
            if not np.array_equal(involution.apply(image), image):
                return VerificationReport("embedding", subject, False, (label,), {"failure": "hermitian", "t": value})
        closure = assoc_closure(end, images)
        details[f"closure_dim[t={value}]"] = closure.dim
        log.info(f"D_t, t = {value}: associative closure of dim {closure.dim} in {end.name}")
        if closure.dim != (2 * m + 1) ** 2:
            return VerificationReport("embedding", subject, False, details={"failure": "closure", "t": value, "closure_dim": closure.dim})
        if abs(p - q) != 1 or value not in (Fraction(-p, q), Fraction(-q, p)):
            return VerificationReport("embedding", subject, False, details={"failure": "block sizes", "t": value})
    return VerificationReport("embedding", subject, True, details=details)


def _off_diagonal(block: np.ndarray, s: int) -> bool:
    return all(x == 0 for x in block[:s, :s].reshape(-1)) and all(x == 0 for x in block[s:, s:].reshape(-1))


def peirce_obstruction_qn(
    n: int, s: int, u: Optional[np.ndarray] = None, v: Optional[np.ndarray] = None,
    seed: Optional[int] = None
) -> VerificationReport:
    """
    In Q_n with ``e = diag(I_s, 0 | I_s, 0)`` and ``f = 1 - e``, the odd part of the Peirce ½-space
    is {h(b) : b off-diagonal in the (s, n-s) blocks}. For u, v there (seeded random when not
    given) the associative closure of {e, f, u, v} contains no odd h(b) with b block diagonal, so it
    is a proper subalgebra of Q_n.

    Args:
        n (int): Size of Q_n.
        s (int): Rank of the idempotent block, 1 <= s < n.
        u (Optional[np.ndarray], optional): The b-block of u (n x n, off-diagonal blocks).
        v (Optional[np.ndarray], optional): The b-block of v.
        seed (Optional[int], optional): Seed for random u, v. Defaults to ``DEFAULT_SEED``.

    Raises:
        BadBlocks: If s is out of range or u, v are not off-diagonal.
    """
    if not 1 <= s < n:
        raise BadBlocks(f"need 1 <= s < n, got n = {n}, s = {s}")
    seed = int(SETTINGS.get("DEFAULT_SEED")) if seed is None else seed
    rng = np.random.default_rng(seed)
    bound = int(SETTINGS.get("COEFFICIENT_RANGE", 3))
    blocks = []
    for given in (u, v):
        if given is None:
            block = zero_matrix(n, n)
            for i in range(n):
                for j in range(n):
                    if (i < s) != (j < s):
                        block[i, j] = Fraction(int(rng.integers(-bound, bound + 1)))
        else:
            block = as_matrix(given)
            if block.shape != (n, n) or not _off_diagonal(block, s):
                raise BadBlocks("u and v must be off-diagonal in the (s, n - s) block split")
        blocks.append(block)
    algebra = q_n(n)
    size = n * n
    e = zero_vector(algebra.dim)
    f = zero_vector(algebra.dim)
    for i in range(n):
        if i < s:
            e[i * n + i] = Fraction(1)
        else:
            f[i * n + i] = Fraction(1)
    generators = [e, f]
    for block in blocks:
        odd = zero_vector(algebra.dim)
        odd[size:] = block.reshape(-1)
        generators.append(odd)
    closure = assoc_closure(algebra, generators)
    log.debug(f"Q_{n}, s = {s}: closure of e, f, u, v has dims {closure.subspace.dims}")
    odd_rows = [row[size:] for row in closure.subspace.odd_basis]
    excluded = all(_off_diagonal(np.array(row, dtype=object).reshape(n, n), s) for row in odd_rows)
    unit_odd = zero_vector(algebra.dim)
    for i in range(n):
        unit_odd[size + i * n + i] = Fraction(1)
    details = {"closure_dim": closure.dim, "closure_dims": closure.subspace.dims, "ambient_dim": algebra.dim}
    passed = excluded and closure.dim < algebra.dim and not subspace_contains(closure.subspace, unit_odd)
    return VerificationReport("peirce_obstruction", f"Q:{n} s={s}", passed, details=details)
