"""Combinatorial solvability screens on tuples of Jordan shapes.

Three inequalities drive everything: alpha (the class dimensions sum to at
least 2n^2 - 2), beta (every deleted-one-class sum of r-invariants reaches
n), and omega (the full r-sum reaches 2n).  When alpha and beta hold but
omega fails, a size-decreasing reduction applies: pick, in each class, an
eigenvalue with the maximal number of Jordan blocks and shrink its smallest
blocks by one.  A shape tuple is "good" when the reduction chain ends at
size one or at a level satisfying omega; goodness is what the verdict
engine feeds on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .jnf_core import JnfShape, Partition, d_of, r_of


class CriteriaError(ValueError):
    pass


class PsiPreconditionError(CriteriaError):
    """A reduction step was requested where it is undefined."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class TieVerdictError(CriteriaError):
    """Exhaustive tie exploration produced disagreeing goodness verdicts."""


TERMINAL_N_EQUALS_1 = "reached_n_equals_1"
TERMINAL_OMEGA = "reached_omega"
TERMINAL_ALPHA_FAILED = "alpha_failed"
TERMINAL_BETA_FAILED = "beta_failed"
TERMINAL_N1_NONPOSITIVE = "n1_nonpositive"


@dataclass(frozen=True)
class RigidityReport:
    n: int
    class_count: int
    d_values: tuple[int, ...]
    r_values: tuple[int, ...]
    sum_d: int
    sum_r: int
    kappa: int
    alpha: bool
    beta: bool
    beta_failures: tuple[int, ...]
    omega: bool


def rigidity_report(shapes: tuple[JnfShape, ...]) -> RigidityReport:
    """Rigidity index kappa = 2n^2 - sum(d_j) plus the alpha/beta/omega flags."""
    shapes = tuple(shapes)
    if not shapes:
        raise CriteriaError("need at least one shape")
    n = shapes[0].n
    for i, s in enumerate(shapes):
        if s.n != n:
            raise CriteriaError(f"size mismatch: shape {i} has size {s.n}, expected {n}")
    d_values = tuple(d_of(s) for s in shapes)
    r_values = tuple(r_of(s) for s in shapes)
    sum_d, sum_r = sum(d_values), sum(r_values)
    beta_failures = tuple(
        j for j in range(len(shapes)) if sum_r - r_values[j] < n
    )
    return RigidityReport(
        n=n,
        class_count=len(shapes),
        d_values=d_values,
        r_values=r_values,
        sum_d=sum_d,
        sum_r=sum_r,
        kappa=2 * n * n - sum_d,
        alpha=sum_d >= 2 * n * n - 2,
        beta=not beta_failures,
        beta_failures=beta_failures,
        omega=sum_r >= 2 * n,
    )


def max_block_labels(shape: JnfShape) -> tuple[int, ...]:
    """Labels whose block count attains the maximum for the shape."""
    top = shape.max_block_count
    return tuple(i for i in range(shape.label_count) if shape.block_count(i) == top)


@dataclass(frozen=True)
class PsiReduction:
    shapes: tuple[JnfShape, ...]
    chosen_labels: tuple[int, ...]
    n1: int


def psi_reduce(
    shapes: tuple[JnfShape, ...],
    chosen_labels: tuple[int, ...] | None = None,
) -> PsiReduction:
    """One reduction step: shrink the n - n1 smallest blocks of a maximal
    eigenvalue in every class, where n1 = sum(r_j) - n.

    Defined only when n > 1, alpha and beta hold, omega fails, and n1 >= 1.
    When several eigenvalues tie for the maximal block count the canonically
    first label is used unless `chosen_labels` overrides the choice.
    """
    report = rigidity_report(shapes)
    n = report.n
    if n <= 1:
        raise PsiPreconditionError("size_one", "reduction undefined at size 1")
    if not report.alpha:
        raise PsiPreconditionError(
            "alpha", f"alpha fails: sum d = {report.sum_d} < {2 * n * n - 2}"
        )
    if not report.beta:
        raise PsiPreconditionError(
            "beta", f"beta fails at classes {list(report.beta_failures)}"
        )
    if report.omega:
        raise PsiPreconditionError(
            "omega_holds", f"omega holds: sum r = {report.sum_r} >= {2 * n}"
        )
    n1 = report.sum_r - n
    if n1 <= 0:
        raise PsiPreconditionError("n1_nonpositive", f"target size {n1} is not positive")

    if chosen_labels is None:
        chosen_labels = tuple(max_block_labels(s)[0] for s in shapes)
    else:
        chosen_labels = tuple(chosen_labels)
        if len(chosen_labels) != len(shapes):
            raise CriteriaError("one chosen label per class is required")
        for j, (s, lab) in enumerate(zip(shapes, chosen_labels)):
            if lab not in max_block_labels(s):
                raise CriteriaError(
                    f"class {j}: label {lab} does not attain the maximal block count"
                )

    drop = n - n1
    reduced = []
    for s, lab in zip(shapes, chosen_labels):
        parts = list(s.blocks[lab].parts)
        if len(parts) < drop:
            raise CriteriaError(
                f"internal: {len(parts)} blocks cannot absorb {drop} decrements"
            )
        for i in range(len(parts) - drop, len(parts)):
            parts[i] -= 1
        new_blocks = []
        for i, p in enumerate(s.blocks):
            src = parts if i == lab else p.parts
            if any(x > 0 for x in src):
                new_blocks.append(Partition(src))
        reduced_shape = JnfShape(new_blocks)
        if reduced_shape.n != n1:
            raise CriteriaError("internal: reduced shape has wrong size")
        reduced.append(reduced_shape)
    return PsiReduction(shapes=tuple(reduced), chosen_labels=chosen_labels, n1=n1)


@dataclass(frozen=True)
class PsiStep:
    """One visited level: the tuple at size n, its report, and (when the
    chain continues) the chosen labels and the target size."""

    n: int
    shapes: tuple[JnfShape, ...]
    report: RigidityReport
    chosen_labels: tuple[int, ...] | None
    n1: int | None


@dataclass(frozen=True)
class PsiTrace:
    steps: tuple[PsiStep, ...]
    terminal: str

    @property
    def final_shapes(self) -> tuple[JnfShape, ...]:
        return self.steps[-1].shapes

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(s.n for s in self.steps)

    @property
    def kappas(self) -> tuple[int, ...]:
        return tuple(s.report.kappa for s in self.steps)


@dataclass(frozen=True)
class GoodnessResult:
    good: bool
    trace: PsiTrace
    branches_explored: int = 1

    def __bool__(self):
        return self.good


def _level_status(shapes: tuple[JnfShape, ...]):
    """Classify a level: (terminal, good) or (None, n1) when reducible."""
    report = rigidity_report(shapes)
    n = report.n
    if n == 1:
        return report, TERMINAL_N_EQUALS_1, True, None
    if report.omega:
        # omega forces alpha and beta (each d_j >= n * r_j), so stopping
        # here cannot hide a failed necessary condition.
        if not (report.alpha and report.beta):
            raise CriteriaError("internal: omega held while alpha or beta failed")
        return report, TERMINAL_OMEGA, True, None
    if not report.alpha:
        return report, TERMINAL_ALPHA_FAILED, False, None
    if not report.beta:
        return report, TERMINAL_BETA_FAILED, False, None
    n1 = report.sum_r - n
    if n1 <= 0:
        return report, TERMINAL_N1_NONPOSITIVE, False, None
    return report, None, None, n1


def is_good(
    shapes: tuple[JnfShape, ...],
    exhaustive_ties: bool = False,
) -> GoodnessResult:
    """Run the reduction chain and report goodness with the full trace.

    Default mode resolves block-count ties by the canonically first label.
    With `exhaustive_ties` every tie branch is explored; the boolean verdict
    must agree across branches, otherwise TieVerdictError is raised.
    """
    shapes = tuple(shapes)
    steps: list[PsiStep] = []
    current = shapes
    while True:
        report, terminal, good, n1 = _level_status(current)
        if terminal is not None:
            steps.append(PsiStep(current[0].n, current, report, None, None))
            trace = PsiTrace(steps=tuple(steps), terminal=terminal)
            break
        reduction = psi_reduce(current)
        steps.append(
            PsiStep(current[0].n, current, report, reduction.chosen_labels, n1)
        )
        current = reduction.shapes

    branches = 1
    if exhaustive_ties:
        branches = _explore_branches(shapes, good)
    return GoodnessResult(good=good, trace=trace, branches_explored=branches)


def _explore_branches(shapes: tuple[JnfShape, ...], expected: bool) -> int:
    """Walk every tie branch, memoizing per tuple; count distinct tuples."""
    from itertools import product

    memo: dict[tuple[JnfShape, ...], bool] = {}

    def verdict(current: tuple[JnfShape, ...]) -> bool:
        if current in memo:
            return memo[current]
        _, terminal, good, _ = _level_status(current)
        if terminal is not None:
            memo[current] = good
            return good
        results = set()
        for choice in product(*(max_block_labels(s) for s in current)):
            reduced = psi_reduce(current, chosen_labels=choice)
            results.add(verdict(reduced.shapes))
        if len(results) != 1:
            raise TieVerdictError(
                f"tie branches disagree on goodness at tuple {current}"
            )
        memo[current] = results.pop()
        return memo[current]

    final = verdict(shapes)
    if final != expected:
        raise TieVerdictError(
            "canonical tie-break verdict differs from exhaustive exploration"
        )
    return len(memo)
