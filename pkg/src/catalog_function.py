"""
Constructors for the named superalgebras, their superinvolutions and the isomorphism fixtures.

Catalog names follow a small grammar shared with the command line:

``K3``, ``Dt:<rational>``, ``superform:<p>,<q>``, ``M:<p>,<q>``, ``Q:<n>``, ``grassmann:<n>``,
``kantor:<n>``, ``p:<n>``, ``osp:<n>,<m>``, ``hull:<inner>``, ``plus:<inner>`` and
``corrupt:<K3|Dt|M11plus>`` for the three deliberately broken identity fixtures.
"""
import functools
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from error_function import (
    AlreadyUnital, BadParameter, CatalogSpecError, DegenerateForm, EmptyForm, TooLarge, ZeroParameter
)
from general_function import PROJECT_ROOT, SETTINGS, generate_log
from linalg_function import as_matrix, identity_matrix, inverse, to_scalar, zero_matrix
from superalgebra_function import (
    GradedLinearMap, MatrixRealization, Superalgebra, Superinvolution, element, element_from_matrix,
    grassmann_table, hermitian_part, is_unital, make_superalgebra, plus_algebra
)

log = generate_log(name=__name__)

HALF = Fraction(1, 2)

CATALOG: dict[str, str] = {
    "K3": "Kaplansky superalgebra, dim 3, not unital",
    "Dt:<t>": "the one-parameter family D_t, t != 0, dim 4",
    "superform:<p>,<q>": "superform algebra F1 + V of a form with dims (p | 2q)",
    "M:<p>,<q>": "associative matrix superalgebra M_{p,q}",
    "Q:<n>": "associative queer superalgebra Q_n inside M_{n,n}",
    "grassmann:<n>": "Grassmann superalgebra on n generators",
    "kantor:<n>": "Kantor double of the Grassmann algebra on n generators",
    "p:<n>": "H(M_{n,n}, transpose superinvolution)",
    "osp:<n>,<m>": "H(M_{n,2m}, orthosymplectic superinvolution)",
    "hull:<inner>": "unital hull of a non-unital algebra",
    "plus:<inner>": "Jordan superalgebra A+ of an associative algebra",
    "corrupt:<K3|Dt|M11plus>": "identity-breaking fixtures for negative tests",
}


@dataclass(frozen=True)
class SuperformSpace:
    """Coordinates (v_1..v_p | w_1..w_2q) with the form I_p on V_0 and [[0, I], [-I, 0]] on V_1."""
    p: int
    q: int
    gram: np.ndarray


@dataclass(frozen=True)
class FixtureMap:
    fixture_id: str
    source: str
    target: str
    jordan: bool
    images: dict
    provenance: str


def kaplansky() -> Superalgebra:
    """
    The Kaplansky superalgebra K3 with basis (e | x, y).

    Example:
    >>> kaplansky().dims
    (1, 2)
    """
    products = {
        (0, 0): {0: 1},
        (0, 1): {1: HALF}, (1, 0): {1: HALF},
        (0, 2): {2: HALF}, (2, 0): {2: HALF},
        (1, 2): {0: 1}, (2, 1): {0: -1},
    }
    return make_superalgebra("K3", [0, 1, 1], products, ["e", "x", "y"])


def d_t(t: object) -> Superalgebra:
    """
    The superalgebra D_t with basis (e, f | u, v), unit e + f and ``u*v = e + t f = -v*u``.

    Raises:
        ZeroParameter: If ``t == 0``.
    """
    t = to_scalar(t)
    if t == 0:
        raise ZeroParameter("D_t needs t != 0")
    products = {
        (0, 0): {0: 1}, (1, 1): {1: 1},
        (0, 2): {2: HALF}, (2, 0): {2: HALF}, (0, 3): {3: HALF}, (3, 0): {3: HALF},
        (1, 2): {2: HALF}, (2, 1): {2: HALF}, (1, 3): {3: HALF}, (3, 1): {3: HALF},
        (2, 3): {0: 1, 1: t}, (3, 2): {0: -1, 1: -t},
    }
    return make_superalgebra(f"Dt:{t}", [0, 0, 1, 1], products, ["e", "f", "u", "v"])


def superform_space(p: int, q: int) -> SuperformSpace:
    """
    Raises:
        EmptyForm: Unless ``p, q >= 0`` and ``p + q >= 1``.
    """
    if p < 0 or q < 0 or p + q < 1:
        raise EmptyForm(f"a superform needs p, q >= 0 and p + q >= 1, got ({p}, {q})")
    gram = zero_matrix(p + 2 * q, p + 2 * q)
    for i in range(p):
        gram[i, i] = Fraction(1)
    for i in range(q):
        gram[p + i, p + q + i] = Fraction(1)
        gram[p + q + i, p + i] = Fraction(-1)
    return SuperformSpace(p, q, gram)


def superform_algebra(p: int, q: int) -> Superalgebra:
    """
    The Jordan superalgebra F1 + V of a nondegenerate supersymmetric form on V = V_0 + V_1.

    ``1`` is the unit and ``v*w = (v, w) 1`` for v, w in V. For odd v, w this gives
    ``v*w - w*v = 2 (v, w) 1``.

    Raises:
        EmptyForm: Unless ``p, q >= 0`` and ``p + q >= 1``.
    """
    space = superform_space(p, q)
    n = 1 + p + 2 * q
    parities = [0] * (1 + p) + [1] * (2 * q)
    labels = ["1"] + [f"v{i + 1}" for i in range(p)] + [f"w{i + 1}" for i in range(2 * q)]
    products: dict = {(0, i): {i: 1} for i in range(n)}
    products.update({(i, 0): {i: 1} for i in range(1, n)})
    for i in range(n - 1):
        for j in range(n - 1):
            value = space.gram[i, j]
            if value != 0:
                products[(i + 1, j + 1)] = {0: value}
    return make_superalgebra(f"superform:{p},{q}", parities, products, labels)


def _unit_label(i: int, j: int, n: int) -> str:
    return f"e{i + 1}{j + 1}" if n < 10 else f"e{i + 1},{j + 1}"


def _matrix_unit(n: int, i: int, j: int) -> np.ndarray:
    unit = zero_matrix(n, n)
    unit[i, j] = Fraction(1)
    return unit


def matrix_superalgebra(p: int, q: int) -> Superalgebra:
    """
    M_{p,q}: matrix units ``e_ij`` (row-major), odd iff exactly one index lies in the first block.

    Raises:
        BadParameter: Unless ``p, q >= 0`` and ``p + q >= 1``.
    """
    if p < 0 or q < 0 or p + q < 1:
        raise BadParameter(f"M_{{p,q}} needs p, q >= 0 and p + q >= 1, got ({p}, {q})")
    n = p + q
    parities = [int((i < p) != (j < p)) for i in range(n) for j in range(n)]
    products = {
        (i * n + j, j * n + k): {i * n + k: 1}
        for i in range(n) for j in range(n) for k in range(n)}
    realization = MatrixRealization(
        tuple(_matrix_unit(n, i, j) for i in range(n) for j in range(n)), (p, q))
    labels = [_unit_label(i, j, n) for i in range(n) for j in range(n)]
    return make_superalgebra(
        f"M:{p},{q}", parities, products, labels, realization=realization, associative=True)


def q_n(n: int) -> Superalgebra:
    """
    Q_n = {[[a, b], [b, a]]} inside M_{n,n}; basis ``g_ij`` (b = 0) then ``h_ij`` (a = 0).

    Raises:
        BadParameter: If ``n < 1``.
    """
    if n < 1:
        raise BadParameter(f"Q_n needs n >= 1, got {n}")
    size = n * n
    parities = [0] * size + [1] * size
    products = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left, right, out = i * n + j, j * n + k, i * n + k
                products[(left, right)] = {out: 1}
                products[(left, size + right)] = {size + out: 1}
                products[(size + left, right)] = {size + out: 1}
                products[(size + left, size + right)] = {out: 1}
    matrices = []
    for shift in (0, n):
        for i in range(n):
            for j in range(n):
                block = zero_matrix(2 * n, 2 * n)
                block[i, (j + shift) % (2 * n)] = Fraction(1)
                block[i + n, (j + n + shift) % (2 * n)] = Fraction(1)
                matrices.append(block)
    labels = [f"g{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    labels += [f"h{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return make_superalgebra(
        f"Q:{n}", parities, products, labels,
        realization=MatrixRealization(tuple(matrices), (n, n), queer=True), associative=True)


def _monomial_label(monomial: Sequence[int]) -> str:
    return "".join(f"e{i + 1}" for i in monomial) or "1"


def grassmann(n: int) -> Superalgebra:
    """
    Grassmann superalgebra on ``n`` generators, basis the increasing monomials, 1 first.

    Raises:
        BadParameter: If ``n < 1``.
        TooLarge: If ``n`` exceeds ``GRASSMANN_MAX``.
    """
    if n < 1:
        raise BadParameter(f"grassmann needs n >= 1, got {n}")
    if n > int(SETTINGS.get("GRASSMANN_MAX", 10)):
        raise TooLarge(f"grassmann:{n} exceeds GRASSMANN_MAX")
    monomials, table = grassmann_table(n)
    return make_superalgebra(
        f"grassmann:{n}", [len(m) % 2 for m in monomials], table,
        [_monomial_label(m) for m in monomials], associative=True)


def _left_derivative(monomial: tuple[int, ...], generator: int) -> Optional[tuple[int, tuple[int, ...]]]:
    """Sign and remaining monomial of d/de_i, moving e_i to the left first."""
    if generator not in monomial:
        return None
    position = monomial.index(generator)
    return (-1 if position % 2 else 1), monomial[:position] + monomial[position + 1:]


def kantor_double(n: int) -> Superalgebra:
    """
    Kantor double J = G + Gx of the Grassmann algebra G on ``n`` generators.

    Products: ``ab`` in G, ``a(bx) = (ab)x``, ``(bx)a = (-1)^|a| (ba)x`` and
    ``(ax)(bx) = (-1)^|b| {a, b}`` with ``{f, g} = sum_i (-1)^|f| (df/de_i)(dg/de_i)`` using left
    derivatives. The grading is J_0 = G_0 + G_1 x, J_1 = G_1 + G_0 x.

    Raises:
        BadParameter: If ``n < 1``.
        TooLarge: If ``n`` exceeds ``KANTOR_MAX``.
    """
    if n < 1:
        raise BadParameter(f"kantor needs n >= 1, got {n}")
    if n > int(SETTINGS.get("KANTOR_MAX", 6)):
        raise TooLarge(f"kantor:{n} exceeds KANTOR_MAX")
    monomials, table = grassmann_table(n)
    size = len(monomials)
    position = {monomial: index for index, monomial in enumerate(monomials)}
    degree = [len(m) % 2 for m in monomials]
    products: dict = {}

    def add(key: tuple[int, int], target: int, value: Fraction):
        out = products.setdefault(key, {})
        out[target] = out.get(target, 0) + value

    for a in range(size):
        for b in range(size):
            for k, c in table.get(a, {}).get(b, {}).items():
                add((a, b), k, c)
                add((a, size + b), size + k, c)
            for k, c in table.get(b, {}).get(a, {}).items():
                add((size + b, a), size + k, -c if degree[a] else c)
            for generator in range(n):
                left = _left_derivative(monomials[a], generator)
                right = _left_derivative(monomials[b], generator)
                if left is None or right is None:
                    continue
                product = table.get(position[left[1]], {}).get(position[right[1]])
                if not product:
                    continue
                sign = left[0] * right[0] * (-1 if degree[a] else 1) * (-1 if degree[b] else 1)
                for k, c in product.items():
                    add((size + a, size + b), k, sign * c)
    labels = [_monomial_label(m) for m in monomials] + [f"{_monomial_label(m)}x" for m in monomials]
    parities = degree + [1 - d for d in degree]
    return make_superalgebra(f"kantor:{n}", parities, products, labels)


def unital_hull(algebra: Superalgebra) -> Superalgebra:
    """
    J + F1 with a formal unit appended as the last basis element; J stays an ideal.

    Raises:
        AlreadyUnital: If ``algebra`` already has a unit.
    """
    if is_unital(algebra):
        raise AlreadyUnital(f"{algebra.name} already has a unit")
    one = algebra.dim
    products: dict = {(i, j): dict(out) for i, row in algebra.table.items() for j, out in row.items()}
    for i in range(algebra.dim + 1):
        products[(one, i)] = {i: 1}
        products[(i, one)] = {i: 1}
    return make_superalgebra(
        f"hull:{algebra.name}", list(algebra.parities) + [0], products, list(algebra.labels) + ["1"])


def _blocks(matrix: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    return matrix[:p, :p], matrix[:p, p:], matrix[p:, :p], matrix[p:, p:]


def _involution_from_rule(algebra: Superalgebra, rule, name: str) -> Superinvolution:
    n = sum(algebra.realization.block_sizes)  # type: ignore
    matrix = zero_matrix(algebra.dim, algebra.dim)
    for j, unit in enumerate(algebra.realization.matrices):  # type: ignore
        matrix[:, j] = rule(unit).reshape(n * n)
    return Superinvolution(algebra, matrix, name)


def _symplectic_unit(m: int) -> np.ndarray:
    q = zero_matrix(2 * m, 2 * m)
    for i in range(m):
        q[i, m + i] = Fraction(1)
        q[m + i, i] = Fraction(-1)
    return q


def transpose_superinvolution(n: int) -> Superinvolution:
    """
    ``[[a, b], [c, d]] -> [[d^t, -b^t], [c^t, a^t]]`` on M_{n,n}.

    Raises:
        BadParameter: If ``n < 1``.
    """
    if n < 1:
        raise BadParameter(f"the transpose superinvolution needs n >= 1, got {n}")
    algebra = matrix_superalgebra(n, n)

    def rule(x: np.ndarray) -> np.ndarray:
        a, b, c, d = _blocks(x, n)
        return np.block([[d.T, -b.T], [c.T, a.T]])

    return _involution_from_rule(algebra, rule, "transpose")


def orthosymplectic_superinvolution(n: int, m: int) -> Superinvolution:
    """
    ``[[a, b], [c, d]] -> [[a^t, c^t q], [-q^t b^t, q^t d^t q]]`` on M_{n,2m}, q = [[0, I_m], [-I_m, 0]].

    Raises:
        BadParameter: Unless ``n >= 0`` and ``m >= 1``.
    """
    if n < 0 or m < 1:
        raise BadParameter(f"the orthosymplectic superinvolution needs n >= 0, m >= 1, got ({n}, {m})")
    algebra = matrix_superalgebra(n, 2 * m)
    q = _symplectic_unit(m)

    def rule(x: np.ndarray) -> np.ndarray:
        a, b, c, d = _blocks(x, n)
        return np.block([[a.T, c.T.dot(q)], [-q.T.dot(b.T), q.T.dot(d.T).dot(q)]])

    return _involution_from_rule(algebra, rule, "orthosymplectic")


def superinvolution_from_form(
    algebra: Superalgebra, gram: np.ndarray, vector_parities: Optional[Sequence[int]] = None,
    name: str = "adjoint"
) -> Superinvolution:
    """
    Adjoint superinvolution of a bilinear form on V, on the matrix superalgebra End(V).

    The adjoint of a homogeneous F is ``F* = G^-1 P_F F^t G`` with
    ``P_F = diag((-1)^{|F| |v_i|})``, which is the solution of ``(Fv, w) = (-1)^{|F||v|} (v, F*w)``.

    Args:
        algebra (Superalgebra): A matrix superalgebra M_{p,q} (realized by matrix units).
        gram (np.ndarray): Gram matrix of the form in the basis of V.
        vector_parities (Optional[Sequence[int]], optional): Parities of the basis of V used in the
            sign rule. Defaults to the block parities (p even then q odd).
        name (str, optional): Display name. Defaults to "adjoint".

    Returns:
        Superinvolution: The adjoint map.

    Raises:
        DegenerateForm: If the Gram matrix is singular.
        BadParameter: If the form is not homogeneous or the algebra is not a matrix superalgebra.
    """
    if algebra.realization is None or algebra.realization.queer:
        raise BadParameter("the adjoint needs a matrix superalgebra M_{p,q}")
    p, q = algebra.realization.block_sizes
    n = p + q
    gram = as_matrix(gram)
    if gram.shape != (n, n):
        raise BadParameter(f"gram matrix must be {n}x{n}")
    if vector_parities is None:
        vector_parities = [0] * p + [1] * q
    form_parities = {(vector_parities[i] + vector_parities[j]) % 2 for i, j in zip(*np.nonzero(gram != 0))}
    if len(form_parities) > 1:
        raise BadParameter("the form is not homogeneous")
    try:
        gram_inverse = inverse(gram)
    except ValueError:
        raise DegenerateForm("the Gram matrix is singular") from None
    odd_sign = identity_matrix(n)
    for i, parity in enumerate(vector_parities):
        if parity:
            odd_sign[i, i] = Fraction(-1)

    def rule(x: np.ndarray) -> np.ndarray:
        support = {algebra.parities[i * n + j] for i, j in zip(*np.nonzero(x != 0))}
        sign = odd_sign if support == {1} else identity_matrix(n)
        return gram_inverse.dot(sign).dot(x.T).dot(gram)

    return _involution_from_rule(algebra, rule, name)


def p_n(n: int) -> Superalgebra:
    """The hermitian part p(n) of the transpose superinvolution, dim 2n^2."""
    return hermitian_part(matrix_superalgebra(n, n), transpose_superinvolution(n), name=f"p:{n}").algebra


def osp_algebra(n: int, m: int) -> Superalgebra:
    """The hermitian part osp_{n,2m} of the orthosymplectic superinvolution."""
    involution = orthosymplectic_superinvolution(n, m)
    return hermitian_part(involution.algebra, involution, name=f"osp:{n},{m}").algebra


def corrupted_fixture(name: str) -> Superalgebra:
    """
    Algebras with one deliberately wrong family of constants.

    - ``K3``: ``e*x = x*e = x`` instead of ½x.
    - ``Dt``: D_2 with ``f*v = v*f = v`` instead of ½v.
    - ``M11plus``: M_{1,1} symmetrized without the sign rule, ``x∘y = ½(xy + yx)``.

    Raises:
        CatalogSpecError: For any other name.
    """
    if name == "K3":
        base = kaplansky()
        table = {i: {j: dict(out) for j, out in row.items()} for i, row in base.table.items()}
        table[0][1] = {1: Fraction(1)}
        table[1][0] = {1: Fraction(1)}
    elif name == "Dt":
        base = d_t(2)
        table = {i: {j: dict(out) for j, out in row.items()} for i, row in base.table.items()}
        table[1][3] = {3: Fraction(1)}
        table[3][1] = {3: Fraction(1)}
    elif name == "M11plus":
        base = matrix_superalgebra(1, 1)
        table = {}
        for i in range(base.dim):
            for j in range(base.dim):
                out: dict = {}
                for k, c in list(base.product(i, j).items()) + list(base.product(j, i).items()):
                    out[k] = out.get(k, 0) + HALF * c
                if out:
                    table.setdefault(i, {})[j] = out
    else:
        raise CatalogSpecError(f"no corrupted fixture named {name!r}")
    return make_superalgebra(f"corrupt:{name}", base.parities, table, base.labels)


def _integers(text: str, count: int, spec: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        raise CatalogSpecError(f"{spec!r}: parameters must be integers") from None
    if len(values) != count:
        raise CatalogSpecError(f"{spec!r}: expected {count} parameter(s)")
    return values


@functools.lru_cache(maxsize=128)
def build_from_spec(spec: str) -> Superalgebra:
    """
    Build an algebra from its catalog name.

    Example:
    >>> build_from_spec("Dt:-2/3").name
    'Dt:-2/3'

    Raises:
        CatalogSpecError: For unknown names or malformed parameters.
        SuperJordanError: Whatever the constructor raises for bad values (e.g. ZeroParameter).
    """
    spec = spec.strip()
    kind, _, argument = spec.partition(":")
    if kind == "K3" and not argument:
        return kaplansky()
    if not argument:
        raise CatalogSpecError(f"unknown or incomplete catalog name {spec!r}")
    if kind == "Dt":
        try:
            t = to_scalar(argument)
        except (ValueError, ZeroDivisionError):
            raise CatalogSpecError(f"{spec!r}: t must be a rational") from None
        return d_t(t)
    if kind == "superform":
        return superform_algebra(*_integers(argument, 2, spec))
    if kind == "M":
        return matrix_superalgebra(*_integers(argument, 2, spec))
    if kind == "Q":
        return q_n(*_integers(argument, 1, spec))
    if kind == "grassmann":
        return grassmann(*_integers(argument, 1, spec))
    if kind == "kantor":
        return kantor_double(*_integers(argument, 1, spec))
    if kind == "p":
        return p_n(*_integers(argument, 1, spec))
    if kind == "osp":
        return osp_algebra(*_integers(argument, 2, spec))
    if kind == "hull":
        return unital_hull(build_from_spec(argument))
    if kind == "plus":
        inner = build_from_spec(argument)
        return plus_algebra(inner, name=f"plus:{inner.name}")
    if kind == "corrupt":
        return corrupted_fixture(argument)
    raise CatalogSpecError(f"unknown catalog name {spec!r}")


def build_superinvolution(spec: str, kind: str) -> Superinvolution:
    """
    Standard superinvolution on a matrix algebra from the catalog: ``transpose`` on ``M:n,n``,
    ``orthosymplectic`` on ``M:n,2m``.

    Raises:
        CatalogSpecError: If the algebra does not carry that superinvolution.
    """
    algebra = build_from_spec(spec)
    if algebra.realization is None or algebra.realization.queer or not algebra.associative:
        raise CatalogSpecError(f"{spec} is not a matrix superalgebra M_{{p,q}}")
    p, q = algebra.realization.block_sizes
    if kind == "transpose" and p == q:
        return transpose_superinvolution(p)
    if kind == "orthosymplectic" and q >= 2 and q % 2 == 0:
        return orthosymplectic_superinvolution(p, q // 2)
    raise CatalogSpecError(f"{spec} carries no {kind} superinvolution")


def dt_reciprocal_map(t: object) -> GradedLinearMap:
    """
    Isomorphism D_t -> D_{1/t}: ``e -> f, f -> e, u -> u, v -> t v``.

    Raises:
        ZeroParameter: If ``t == 0``.
    """
    t = to_scalar(t)
    source = d_t(t)
    target = d_t(1 / t)
    matrix = zero_matrix(4, 4)
    matrix[1, 0] = matrix[0, 1] = matrix[2, 2] = Fraction(1)
    matrix[3, 3] = t
    return GradedLinearMap(source, target, matrix)


def fixture_path() -> str:
    path = SETTINGS.get("FIXTURE_FILE", "data/isomorphism_fixtures.json")
    return path if os.path.isabs(path) else os.path.join(PROJECT_ROOT, path)


def load_fixtures(file_path: Optional[str] = None) -> list[FixtureMap]:
    """Isomorphism fixtures from the JSON data file, in file order."""
    with open(file_path or fixture_path(), encoding="utf-8") as handle:
        data = json.load(handle)
    log.debug(f"{len(data['fixtures'])} isomorphism fixture(s) in {file_path or fixture_path()}")
    return [
        FixtureMap(
            fixture_id=item["id"], source=item["source"], target=item["target"],
            jordan=bool(item.get("jordan", False)), images=item["images"],
            provenance=item.get("provenance", ""))
        for item in data["fixtures"]]


def fixture_map(fixture: FixtureMap) -> GradedLinearMap:
    """
    The fixture as a graded linear map.

    Each image is either ``{label: coefficient}`` in the target basis or ``{"matrix": rows}`` in the
    target realization. With ``jordan`` set the target is the plus algebra of the named algebra.
    """
    source = build_from_spec(fixture.source)
    target = build_from_spec(fixture.target)
    if fixture.jordan:
        target = plus_algebra(target)
    matrix = zero_matrix(target.dim, source.dim)
    for label, image in fixture.images.items():
        if "matrix" in image:
            column = element_from_matrix(target, as_matrix(image["matrix"]))
        else:
            column = element(target, image)
        matrix[:, source.index(label)] = column
    return GradedLinearMap(source, target, matrix)
