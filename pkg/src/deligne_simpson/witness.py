"""Verification of explicit matrix tuples over Gaussian rationals.

Covers the defining relation (sum zero / product one), class membership by
exact rank tests, centralizer dimension, the commutator-map surjectivity
criterion, irreducibility via generated-algebra dimension, local dimension
of the solution variety, the Euler-characteristic cross-check, block
diagonal assembly with an explicit centralizing certificate, and the
first-order deformation step with an exact residual bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactnum import GR_ONE, GR_ZERO, GaussianRational
from .eigenvalues import ADDITIVE, MULTIPLICATIVE, MultiplicativeEigenvalue
from .jnf_core import ClassSpec, d_of, rank_sequence
from .linalg import (
    Matrix,
    SingularMatrixError,
    inverse,
    operator_columns,
    rank,
    rank_of_rows,
    sl_basis,
    solve_first,
    vec,
)


class WitnessError(ValueError):
    pass


class WitnessPreconditionError(WitnessError):
    pass


class DeformationError(WitnessError):
    pass


class MatrixTuple:
    """Mode-tagged tuple of equally sized square matrices.

    Multiplicative tuples must consist of invertible matrices; this is
    checked eagerly at construction.
    """

    __slots__ = ("mode", "matrices")

    def __init__(self, mode: str, matrices: Sequence[Matrix]):
        matrices = tuple(matrices)
        if mode not in (ADDITIVE, MULTIPLICATIVE):
            raise WitnessError(f"unknown mode {mode!r}")
        if not matrices:
            raise WitnessError("a tuple needs at least one matrix")
        n = matrices[0].nrows
        for j, m in enumerate(matrices):
            if not isinstance(m, Matrix):
                raise WitnessError(f"entry {j} is not a Matrix")
            if not m.is_square or m.nrows != n:
                raise WitnessError(f"matrix {j} is not {n}x{n}")
        if mode == MULTIPLICATIVE:
            for j, m in enumerate(matrices):
                if rank(m) != n:
                    raise WitnessError(f"matrix {j} is singular in multiplicative mode")
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "matrices", matrices)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixTuple is immutable")

    @property
    def n(self) -> int:
        return self.matrices[0].nrows

    @property
    def count(self) -> int:
        return len(self.matrices)

    def __eq__(self, other):
        return (
            isinstance(other, MatrixTuple)
            and self.mode == other.mode
            and self.matrices == other.matrices
        )

    def __repr__(self):
        return f"MatrixTuple({self.mode}, {self.count} matrices of size {self.n})"


def verify_relation(t: MatrixTuple) -> bool:
    """Exact check of sum = 0 (additive) or product = identity."""
    if t.mode == ADDITIVE:
        acc = t.matrices[0]
        for m in t.matrices[1:]:
            acc = acc + m
        return acc.is_zero()
    acc = Matrix.identity(t.n)
    for m in t.matrices:
        acc = acc * m
    return acc == Matrix.identity(t.n)


def eigenvalue_as_gaussian(value) -> GaussianRational:
    """Embed an eigenvalue into Q(i) when possible.

    Angle/magnitude values embed exactly when the angle is a multiple of
    1/4; anything else cannot be an entry of a Gaussian-rational matrix
    computation and is rejected.
    """
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, MultiplicativeEigenvalue):
        quarter = value.angle * 4
        if quarter.denominator != 1:
            raise WitnessError(
                f"eigenvalue angle {value.angle} is not a multiple of 1/4; "
                "it has no Gaussian-rational embedding to test against"
            )
        unit = [GR_ONE, GaussianRational(0, 1), -GR_ONE, GaussianRational(0, -1)][
            quarter.numerator % 4
        ]
        return unit * value.magnitude
    raise WitnessError(f"cannot interpret eigenvalue {value!r}")


def class_membership(matrix: Matrix, spec: ClassSpec) -> bool:
    """Does the matrix realize exactly the declared class?

    For each declared eigenvalue the ranks of the shifted powers must match
    the shape's rank sequence up to the largest declared block.  Declared
    multiplicities summing to the full size make this complete: any hidden
    Jordan structure would push some rank above its target.
    """
    if not matrix.is_square or matrix.nrows != spec.n:
        raise WitnessError(
            f"matrix is {matrix.nrows}x{matrix.ncols}, class has size {spec.n}"
        )
    for label, value in enumerate(spec.values):
        lam = eigenvalue_as_gaussian(value)
        expected = rank_sequence(spec.shape, label)
        shifted = matrix.minus_scalar(lam)
        power = shifted
        for k in range(1, len(expected.values) + 1):
            if rank(power) != expected.values[k - 1]:
                return False
            if k < len(expected.values):
                power = power * shifted
    return True


def centralizer_dimension(t: MatrixTuple) -> int:
    """Dimension of {X : XM_j = M_jX for all j}; 1 means trivial."""
    n = t.n
    rows: list[list[GaussianRational]] = []
    from .linalg import commutator_operator

    for m in t.matrices:
        rows.extend(list(r) for r in commutator_operator(m).rows)
    return n * n - rank_of_rows(rows)


def check_surjectivity(matrices: Sequence[Matrix]) -> bool:
    """Is (X_1..X_p) -> sum of [M_j, X_j] onto the trace-zero matrices?

    Equivalent to the p-tuple having trivial centralizer.  Inputs range over
    a trace-zero basis; commutators land in trace-zero automatically.
    """
    matrices = tuple(matrices)
    if not matrices:
        raise WitnessError("need at least one matrix")
    n = matrices[0].nrows
    basis = sl_basis(n)
    images = [m * b - b * m for m in matrices for b in basis]
    if n == 1:
        return True
    return rank(operator_columns(images)) == n * n - 1


@dataclass(frozen=True)
class IrreducibilityReport:
    irreducible: bool
    algebra_dimension: int

    def __bool__(self):
        return self.irreducible


def is_irreducible(t: MatrixTuple) -> IrreducibilityReport:
    """Burnside test: the unital algebra generated by the tuple has full
    dimension n^2 exactly when no common proper invariant subspace exists.

    The span of the words in the generators is closed by repeatedly
    left-multiplying independent words by generators.
    """
    n = t.n
    size = n * n
    pivots: dict[int, list[GaussianRational]] = {}

    def try_add(m: Matrix) -> bool:
        v = list(vec(m))
        for col in range(size):
            if not v[col]:
                continue
            if col in pivots:
                f = v[col]
                pv = pivots[col]
                for j in range(col, size):
                    if pv[j]:
                        v[j] = v[j] - f * pv[j]
            else:
                inv = GR_ONE / v[col]
                pivots[col] = [x * inv for x in v]
                return True
        return False

    queue = [Matrix.identity(n)]
    try_add(queue[0])
    while queue and len(pivots) < size:
        m = queue.pop()
        for g in t.matrices:
            p = g * m
            if try_add(p):
                queue.append(p)
    dim = len(pivots)
    return IrreducibilityReport(irreducible=dim == size, algebra_dimension=dim)


def local_dimension(t: MatrixTuple, classes: Sequence[ClassSpec]) -> int:
    """Dimension of the solution variety at the given point.

    Computed as sum of class dimensions minus the rank of the summed
    tangent map (Y_1..Y_k) -> sum of [M_j, Y_j]; at points with trivial
    centralizer that rank is n^2 - 1 and the value reduces to n^2 + 1 - kappa.
    """
    classes = tuple(classes)
    if len(classes) != t.count:
        raise WitnessPreconditionError("one class per matrix is required")
    if not verify_relation(t):
        raise WitnessPreconditionError("tuple does not satisfy its defining relation")
    for j, (m, c) in enumerate(zip(t.matrices, classes)):
        if not class_membership(m, c):
            raise WitnessPreconditionError(f"matrix {j} is not in its declared class")
    n = t.n
    basis = sl_basis(n)
    images = [m * b - b * m for m in t.matrices for b in basis]
    tangent_rank = rank(operator_columns(images)) if n > 1 else 0
    return sum(d_of(c.shape) for c in classes) - tangent_rank


def euler_characteristic(t: MatrixTuple) -> int:
    """2n^2 minus the per-matrix class dimensions, each computed from the
    matrix itself via its commutant; equals the rigidity index of the
    tuple's classes."""
    from .linalg import commutator_operator

    n = t.n
    total_drop = 0
    for m in t.matrices:
        commutant = n * n - rank(commutator_operator(m))
        total_drop += n * n - commutant
    return 2 * n * n - total_drop


@dataclass(frozen=True)
class AssemblyResult:
    assembled: MatrixTuple
    certificate: Matrix


def assemble_block_diagonal(block_tuple: MatrixTuple, copies: int) -> AssemblyResult:
    """Repeat each matrix `copies` times along the diagonal.

    The certificate is the block matrix with an identity block in block
    position (1, copies) and zeros elsewhere; it commutes with every
    assembled matrix, exhibiting a non-scalar centralizer element whenever
    copies >= 2.
    """
    if copies < 1:
        raise WitnessError(f"copies must be >= 1, got {copies}")
    if not verify_relation(block_tuple):
        raise WitnessError("block tuple does not satisfy its defining relation")
    l = block_tuple.n
    n = l * copies
    assembled = []
    for m in block_tuple.matrices:
        rows = [[GR_ZERO] * n for _ in range(n)]
        for b in range(copies):
            for i in range(l):
                for j in range(l):
                    rows[b * l + i][b * l + j] = m.rows[i][j]
        assembled.append(Matrix(rows))
    cert_rows = [[GR_ZERO] * n for _ in range(n)]
    for i in range(l):
        cert_rows[i][(copies - 1) * l + i] = GR_ONE
    certificate = Matrix(cert_rows)
    tup = MatrixTuple(block_tuple.mode, assembled)
    for m in tup.matrices:
        if m * certificate != certificate * m:
            raise WitnessError("internal: certificate fails to commute")
    return AssemblyResult(assembled=tup, certificate=certificate)


@dataclass(frozen=True)
class DeformationRequest:
    """First-order deformation of a trivial-centralizer base tuple.

    `directions` are the per-matrix drift matrices; additive mode requires
    trace(sum of directions) = 0, multiplicative mode the first-order
    determinant condition sum of tr(M_j^-1 N_j) = 0.
    """

    base: MatrixTuple
    directions: tuple[Matrix, ...]
    epsilon: Fraction
    tolerance: float = 1e-9


@dataclass(frozen=True)
class DeformationResult:
    deformed: MatrixTuple
    x_matrices: tuple[Matrix, ...]
    epsilon: Fraction
    residual: Fraction
    residual_float: float
    bound: Fraction | None
    within_tolerance: bool


def deform_step(req: DeformationRequest) -> DeformationResult:
    """Solve the first-order matching system and conjugate.

    Additive: find X_j with sum of [A_j, X_j] = -sum of N_j, then return
    (I + eps X_j)^-1 (A_j + eps N_j) (I + eps X_j).  The defining relation
    then fails only at second order; the exact residual is reported together
    with a proven residual <= bound (= K eps^2) whenever eps ||X_j|| < 1.
    Multiplicative mode is the analogue on the product relation.
    """
    base = req.base
    n = base.n
    eps = req.epsilon
    if isinstance(eps, float):
        eps = Fraction(eps)  # exact binary-float conversion
    else:
        eps = Fraction(eps)
    directions = tuple(req.directions)
    if len(directions) != base.count:
        raise DeformationError("one direction per base matrix is required")
    for d in directions:
        if not d.is_square or d.nrows != n:
            raise DeformationError("direction size mismatch")
    if centralizer_dimension(base) != 1:
        raise DeformationError("base tuple has a non-trivial centralizer")

    if base.mode == ADDITIVE:
        total = directions[0]
        for d in directions[1:]:
            total = total + d
        if total.trace() != GR_ZERO:
            raise DeformationError("additive direction constraint tr(sum N_j) = 0 fails")
        x_matrices = _solve_first_order_additive(base, directions)
    else:
        constraint = GR_ZERO
        for m, d in zip(base.matrices, directions):
            constraint = constraint + (inverse(m) * d).trace()
        if constraint != GR_ZERO:
            raise DeformationError(
                "multiplicative direction constraint sum tr(M_j^-1 N_j) = 0 fails"
            )
        x_matrices = _solve_first_order_multiplicative(base, directions)

    deformed = []
    for m, d, x in zip(base.matrices, directions, x_matrices):
        conj = Matrix.identity(n) + x.scale(eps)
        try:
            conj_inv = inverse(conj)
        except SingularMatrixError as exc:
            raise DeformationError("epsilon too large: I + eps X is singular") from exc
        target = m + d.scale(eps)
        deformed.append(conj_inv * target * conj)

    if base.mode == ADDITIVE:
        acc = deformed[0]
        for m in deformed[1:]:
            acc = acc + m
        residual_matrix = acc
    else:
        acc = Matrix.identity(n)
        for m in deformed:
            acc = acc * m
        residual_matrix = acc - Matrix.identity(n)
    residual = (
        residual_matrix.norm_rowsum() if not residual_matrix.is_zero() else Fraction(0)
    )
    bound = _residual_bound(base, directions, x_matrices, eps)
    try:
        deformed_tuple = MatrixTuple(base.mode, deformed)
    except WitnessError as exc:
        raise DeformationError(f"deformed tuple invalid: {exc}") from exc
    return DeformationResult(
        deformed=deformed_tuple,
        x_matrices=tuple(x_matrices),
        epsilon=eps,
        residual=residual,
        residual_float=float(residual),
        bound=bound,
        within_tolerance=float(residual) <= req.tolerance,
    )


def _solve_first_order_additive(base: MatrixTuple, directions) -> list[Matrix]:
    n = base.n
    basis = sl_basis(n) if n > 1 else []
    images = [m * b - b * m for m in base.matrices for b in basis]
    rhs_matrix = directions[0]
    for d in directions[1:]:
        rhs_matrix = rhs_matrix + d
    rhs = [-x for x in vec(rhs_matrix)]
    return _coords_to_matrices(base, basis, images, rhs)


def _solve_first_order_multiplicative(base: MatrixTuple, directions) -> list[Matrix]:
    n = base.n
    k = base.count
    prefix = [Matrix.identity(n)]
    for m in base.matrices[:-1]:
        prefix.append(prefix[-1] * m)
    suffix = [Matrix.identity(n)] * k
    for j in range(k - 2, -1, -1):
        suffix[j] = base.matrices[j + 1] * suffix[j + 1]
    basis = sl_basis(n) if n > 1 else []
    images = []
    for j, m in enumerate(base.matrices):
        for b in basis:
            images.append(prefix[j] * (m * b - b * m) * suffix[j])
    rhs_matrix = None
    for j, d in enumerate(directions):
        term = prefix[j] * d * suffix[j]
        rhs_matrix = term if rhs_matrix is None else rhs_matrix + term
    rhs = [-x for x in vec(rhs_matrix)]
    return _coords_to_matrices(base, basis, images, rhs)


def _coords_to_matrices(base: MatrixTuple, basis, images, rhs) -> list[Matrix]:
    n = base.n
    if not basis:
        # n == 1: commutators vanish; the constraint already forces rhs = 0
        if any(rhs):
            raise DeformationError("no first-order solution at size 1")
        return [Matrix.zeros(1, 1) for _ in range(base.count)]
    system = operator_columns(images)
    coords = solve_first(system, rhs)
    if coords is None:
        raise DeformationError("first-order system is unsolvable")
    dim = len(basis)
    out = []
    for j in range(base.count):
        acc = Matrix.zeros(n, n)
        for i, b in enumerate(basis):
            c = coords[j * dim + i]
            if c:
                acc = acc + b.scale(c)
        out.append(acc)
    return out


def _residual_bound(base, directions, x_matrices, eps: Fraction) -> Fraction | None:
    """Exact K eps^2 style bound on the relation residual, valid while
    eps ||X_j|| < 1 for every j."""
    if eps == 0:
        return Fraction(0)
    abs_eps = abs(eps)
    norms = [
        (m.norm_rowsum(), d.norm_rowsum(), x.norm_rowsum())
        for m, d, x in zip(base.matrices, directions, x_matrices)
    ]
    if any(abs_eps * x >= 1 for _, _, x in norms):
        return None
    rhos = [
        2 * x * (nd + x * na) / (1 - abs_eps * x) for na, nd, x in norms
    ]
    if base.mode == ADDITIVE:
        return abs_eps * abs_eps * sum(rhos, Fraction(0))
    f_norms = [
        (d + (m * x - x * m)).norm_rowsum()
        for (m, d, x) in zip(base.matrices, directions, x_matrices)
    ]
    a_norms = [na for na, _, _ in norms]
    full = math.prod([a + abs_eps * f + abs_eps * abs_eps * r
                      for a, f, r in zip(a_norms, f_norms, rhos)])
    base_prod = math.prod(a_norms)
    linear = sum(
        f * math.prod(a_norms[:j] + a_norms[j + 1 :])
        for j, f in enumerate(f_norms)
    )
    return full - base_prod - abs_eps * linear
