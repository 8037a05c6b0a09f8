"""Exact eigenvalue arithmetic for sum-zero and product-identity problems.

Additive eigenvalues are Gaussian rationals.  Multiplicative eigenvalues are
pairs (angle, magnitude) encoding magnitude * exp(2*pi*i*angle) with both
components exact rationals; that subgroup of C* is closed under products,
has decidable identity, and covers every root of unity.  Genericity means:
no selection of equally many eigenvalues from every class (respecting
multiplicities, fewer than n per class) sums to zero, respectively
multiplies to one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product as iter_product

from .exactnum import GR_ZERO, GaussianRational, format_rational
from .jnf_core import ClassSpec, JnfError, JnfShape

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"

DEFAULT_RELATION_CAP = 10**8


class ProblemError(ValueError):
    pass


class RelationSearchCapError(ProblemError):
    """The exhaustive relation search would exceed the configured cap."""


class GenericAssignmentError(ProblemError):
    """No generic assignment exists, or generation failed within bounds."""


@dataclass(frozen=True)
class MultiplicativeEigenvalue:
    """magnitude * exp(2*pi*i*angle) with rational angle in [0,1) and
    positive rational magnitude."""

    angle: Fraction
    magnitude: Fraction = Fraction(1)

    def __post_init__(self):
        angle = Fraction(self.angle)
        magnitude = Fraction(self.magnitude)
        if magnitude <= 0:
            raise ProblemError(f"magnitude must be positive, got {magnitude}")
        object.__setattr__(self, "angle", angle % 1)
        object.__setattr__(self, "magnitude", magnitude)

    def __mul__(self, other: "MultiplicativeEigenvalue") -> "MultiplicativeEigenvalue":
        return MultiplicativeEigenvalue(
            self.angle + other.angle, self.magnitude * other.magnitude
        )

    def power(self, k: int) -> "MultiplicativeEigenvalue":
        return MultiplicativeEigenvalue(self.angle * k, self.magnitude**k)

    def inverse(self) -> "MultiplicativeEigenvalue":
        return MultiplicativeEigenvalue(-self.angle, 1 / self.magnitude)

    def is_identity(self) -> bool:
        return self.angle == 0 and self.magnitude == 1

    def sort_key(self):
        return (self.angle, self.magnitude)

    def __str__(self):
        return f"e(2pi i {format_rational(self.angle)})*{format_rational(self.magnitude)}"


MULT_ONE = MultiplicativeEigenvalue(Fraction(0))

AdditiveEigenvalue = GaussianRational


class TupleProblem:
    """A full problem instance: mode, size, and one class per puncture.

    Construction validates the document invariants: consistent mode/value
    types, every class of total size n, and distinct eigenvalues within a
    class (ClassSpec enforces the last one).
    """

    __slots__ = ("mode", "n", "classes")

    def __init__(self, mode: str, n: int, classes):
        classes = tuple(classes)
        if mode not in (ADDITIVE, MULTIPLICATIVE):
            raise ProblemError(f"unknown mode {mode!r}")
        if not classes:
            raise ProblemError("a problem needs at least one class")
        for j, c in enumerate(classes):
            if not isinstance(c, ClassSpec):
                raise ProblemError(f"class {j} is not a ClassSpec")
            if c.n != n:
                raise ProblemError(
                    f"class {j}: eigenvalue multiplicities sum to {c.n}, expected {n}"
                )
            want = GaussianRational if mode == ADDITIVE else MultiplicativeEigenvalue
            for v in c.values:
                if not isinstance(v, want):
                    raise ProblemError(
                        f"class {j}: value {v!r} does not match mode {mode!r}"
                    )
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "classes", classes)

    def __setattr__(self, name, value):
        raise AttributeError("TupleProblem is immutable")

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def shapes(self) -> tuple[JnfShape, ...]:
        return tuple(c.shape for c in self.classes)

    def __eq__(self, other):
        return (
            isinstance(other, TupleProblem)
            and self.mode == other.mode
            and self.n == other.n
            and self.classes == other.classes
        )

    def __hash__(self):
        return hash((self.mode, self.n, self.classes))

    def __repr__(self):
        return f"TupleProblem({self.mode}, n={self.n}, {len(self.classes)} classes)"


def check_consistency(problem: TupleProblem) -> bool:
    """Sum of all eigenvalues (with multiplicity) is zero, respectively the
    product is one."""
    if problem.mode == ADDITIVE:
        total = GR_ZERO
        for c in problem.classes:
            for i, v in enumerate(c.values):
                total = total + v * c.shape.multiplicity(i)
        return total.is_zero()
    acc = MULT_ONE
    for c in problem.classes:
        for i, v in enumerate(c.values):
            acc = acc * v.power(c.shape.multiplicity(i))
    return acc.is_identity()


# -- non-genericity relations ------------------------------------------------


@dataclass(frozen=True)
class NonGenericityRelation:
    """A selection of m eigenvalue slots per class (with multiplicity,
    1 <= m < n) whose combined sum vanishes / product is the identity.

    `counts[j][k]` is how many copies of class j's k-th eigenvalue enter."""

    mode: str
    m: int
    counts: tuple[tuple[int, ...], ...]

    def verify(self, problem: TupleProblem) -> bool:
        if problem.mode != self.mode or len(self.counts) != problem.class_count:
            return False
        for c, t in zip(problem.classes, self.counts):
            if len(t) != len(c.values) or sum(t) != self.m:
                return False
            if any(
                cnt < 0 or cnt > c.shape.multiplicity(i) for i, cnt in enumerate(t)
            ):
                return False
        if not 1 <= self.m < problem.n:
            return False
        if self.mode == ADDITIVE:
            total = GR_ZERO
            for c, t in zip(problem.classes, self.counts):
                for v, cnt in zip(c.values, t):
                    total = total + v * cnt
            return total.is_zero()
        acc = MULT_ONE
        for c, t in zip(problem.classes, self.counts):
            for v, cnt in zip(c.values, t):
                acc = acc * v.power(cnt)
        return acc.is_identity()


@dataclass(frozen=True)
class GenericityResult:
    generic: bool
    witness: NonGenericityRelation | None = None

    def __bool__(self):
        return self.generic


def _selection_vectors(mults: tuple[int, ...], m: int):
    """Count vectors 0 <= t_i <= mults[i] with sum m, lexicographic order."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, remaining: int, acc: tuple[int, ...]):
        if i == len(mults):
            if remaining == 0:
                out.append(acc)
            return
        tail_capacity = sum(mults[i + 1 :])
        lo = max(0, remaining - tail_capacity)
        hi = min(mults[i], remaining)
        for t in range(lo, hi + 1):
            rec(i + 1, remaining - t, acc + (t,))

    rec(0, m, ())
    return out


def _selection_count(mults: tuple[int, ...], m: int) -> int:
    # small dynamic program; avoids materializing vectors for the cap check
    counts = [1] + [0] * m
    for mu in mults:
        new = [0] * (m + 1)
        for s in range(m + 1):
            if counts[s]:
                for t in range(0, min(mu, m - s) + 1):
                    new[s + t] += counts[s]
        counts = new
    return counts[m]


def _combine(problem: TupleProblem, values, counts) -> GaussianRational | MultiplicativeEigenvalue:
    if problem.mode == ADDITIVE:
        total = GR_ZERO
        for v, c in zip(values, counts):
            if c:
                total = total + v * c
        return total
    acc = MULT_ONE
    for v, c in zip(values, counts):
        if c:
            acc = acc * v.power(c)
    return acc


def _fold_classes(problem: TupleProblem, class_indices, m: int):
    """Map: combined value -> first-seen tuple of count vectors, folding the
    listed classes in order.  Deterministic because every enumeration is."""
    acc = {_identity_value(problem.mode): ()}
    for j in class_indices:
        spec = problem.classes[j]
        mults = spec.shape.multiplicities()
        options = []
        for t in _selection_vectors(mults, m):
            options.append((t, _combine(problem, spec.values, t)))
        new_acc: dict = {}
        for value, chosen in acc.items():
            for t, v in options:
                combined = _merge_values(problem.mode, value, v)
                key = combined
                if key not in new_acc:
                    new_acc[key] = chosen + (t,)
        acc = new_acc
    return acc


def _identity_value(mode: str):
    return GR_ZERO if mode == ADDITIVE else MULT_ONE


def _merge_values(mode: str, a, b):
    return a + b if mode == ADDITIVE else a * b


def _needed_complement(mode: str, left):
    return -left if mode == ADDITIVE else left.inverse()


def find_first_relation(
    problem: TupleProblem, cap: int = DEFAULT_RELATION_CAP
) -> NonGenericityRelation | None:
    """Smallest-cardinality relation, or None.  Meet-in-the-middle over a
    balanced split of the classes keeps the table sizes near the square
    root of the full selection count."""
    n = problem.n
    for m in range(1, n):
        per_class = [
            _selection_count(c.shape.multiplicities(), m) for c in problem.classes
        ]
        total = math.prod(per_class)
        if total > cap:
            raise RelationSearchCapError(
                f"cardinality {m} needs {total} selections, cap is {cap}"
            )
        if total == 0:
            continue
        split = _balanced_split(per_class)
        left = _fold_classes(problem, range(split), m)
        right = _fold_classes(problem, range(split, problem.class_count), m)
        for value, left_counts in left.items():
            match = right.get(_needed_complement(problem.mode, value))
            if match is not None:
                return NonGenericityRelation(
                    mode=problem.mode, m=m, counts=left_counts + match
                )
    return None


def _balanced_split(per_class: list[int]) -> int:
    best, best_cost = 1, None
    for h in range(1, len(per_class) + 1):
        cost = max(math.prod(per_class[:h]), math.prod(per_class[h:]))
        if best_cost is None or cost < best_cost:
            best, best_cost = h, cost
    return best


def iter_all_relations(problem: TupleProblem, cap: int = DEFAULT_RELATION_CAP):
    """Every relation, by full product enumeration.  Only viable on small
    instances; the same cap as the first-witness search applies per
    cardinality."""
    n = problem.n
    for m in range(1, n):
        per_class = [
            _selection_count(c.shape.multiplicities(), m) for c in problem.classes
        ]
        total = math.prod(per_class)
        if total > cap:
            raise RelationSearchCapError(
                f"cardinality {m} needs {total} selections, cap is {cap}"
            )
        vectors = [
            _selection_vectors(c.shape.multiplicities(), m) for c in problem.classes
        ]
        if any(not v for v in vectors):
            continue
        for combo in iter_product(*vectors):
            value = _identity_value(problem.mode)
            for spec, t in zip(problem.classes, combo):
                value = _merge_values(
                    problem.mode, value, _combine(problem, spec.values, t)
                )
            identity = value.is_zero() if problem.mode == ADDITIVE else value.is_identity()
            if identity:
                yield NonGenericityRelation(mode=problem.mode, m=m, counts=combo)


def is_generic(
    problem: TupleProblem, cap: int = DEFAULT_RELATION_CAP
) -> GenericityResult:
    """Exhaustive search for a non-genericity relation.

    Requires the instance to be consistent.  Raises RelationSearchCapError
    when the search space exceeds `cap` at some cardinality.
    """
    if not check_consistency(problem):
        raise ProblemError("eigenvalues are inconsistent; genericity is undefined")
    witness = find_first_relation(problem, cap=cap)
    if witness is None:
        return GenericityResult(generic=True)
    return GenericityResult(generic=False, witness=witness)


# -- reduced-multiplicity products --------------------------------------------


@dataclass(frozen=True)
class ReducedProduct:
    mode: str
    divisor: int
    value: GaussianRational | MultiplicativeEigenvalue
    is_identity: bool


def reduced_multiplicity_product(problem: TupleProblem, divisor: int) -> ReducedProduct:
    """Divide every eigenvalue multiplicity by `divisor` and recombine.

    With all multiplicities divisible by d, a consistent additive instance
    always reduces to zero, while the multiplicative product lands on some
    d-th root of unity that need not be one."""
    if divisor < 1:
        raise ProblemError(f"divisor must be >= 1, got {divisor}")
    for j, c in enumerate(problem.classes):
        for i in range(c.shape.label_count):
            if c.shape.multiplicity(i) % divisor:
                raise ProblemError(
                    f"class {j}: multiplicity {c.shape.multiplicity(i)} "
                    f"not divisible by {divisor}"
                )
    if problem.mode == ADDITIVE:
        total = GR_ZERO
        for c in problem.classes:
            for i, v in enumerate(c.values):
                total = total + v * (c.shape.multiplicity(i) // divisor)
        return ReducedProduct(ADDITIVE, divisor, total, total.is_zero())
    acc = MULT_ONE
    for c in problem.classes:
        for i, v in enumerate(c.values):
            acc = acc * v.power(c.shape.multiplicity(i) // divisor)
    return ReducedProduct(MULTIPLICATIVE, divisor, acc, acc.is_identity())


# -- generation ---------------------------------------------------------------


def _primes_from(start: int):
    candidate = max(2, start)
    while True:
        if all(candidate % p for p in range(2, int(candidate**0.5) + 1)):
            yield candidate
        candidate += 1


def generate_generic(
    shapes: tuple[JnfShape, ...],
    mode: str,
    seed: int = 0,
    attempts: int = 32,
) -> TupleProblem:
    """Produce a consistent, verified-generic eigenvalue assignment.

    Strategy: all but one slot get values with large pairwise-distinct prime
    denominators, the last slot absorbs the consistency constraint, and the
    result is checked with the exhaustive search (generation never trusts
    itself).  In additive mode no generic assignment exists when a common
    divisor > 1 divides every multiplicity; that is reported as an error.
    """
    shapes = tuple(shapes)
    if not shapes:
        raise ProblemError("need at least one shape")
    n = shapes[0].n
    slots = [
        (j, l, s.multiplicity(l))
        for j, s in enumerate(shapes)
        for l in range(s.label_count)
    ]
    mults = [mu for _, _, mu in slots]
    if mode == ADDITIVE and n > 1:
        g = reduce(math.gcd, mults)
        if g > 1:
            raise GenericAssignmentError(
                f"all multiplicities share the divisor {g}; the total-sum "
                "constraint then forces a non-genericity relation"
            )

    prime_stream = _primes_from(n * n + 1)
    primes_pool = [next(prime_stream) for _ in range(len(slots) * (attempts + seed + 2))]

    for attempt in range(attempts):
        offset = (seed + attempt) * len(slots)
        qs = primes_pool[offset : offset + max(0, len(slots) - 1)]
        try:
            problem = _assemble_assignment(shapes, mode, slots, qs)
        except (ProblemError, JnfError):
            # value collision inside a class; retry with fresh denominators
            continue
        if not check_consistency(problem):
            raise GenericAssignmentError("internal: generated assignment inconsistent")
        if is_generic(problem).generic:
            return problem
    raise GenericAssignmentError(
        f"no generic assignment found within {attempts} attempts"
    )


def _assemble_assignment(shapes, mode, slots, qs) -> TupleProblem:
    n = shapes[0].n
    values: list = []
    if mode == ADDITIVE:
        partial = GR_ZERO
        for (_, _, mu), q in zip(slots[:-1], qs):
            v = GaussianRational(Fraction(1, q))
            values.append(v)
            partial = partial + v * mu
        last_mu = slots[-1][2]
        values.append(GaussianRational(0) - partial / last_mu)
    else:
        s = Fraction(0)
        for (_, _, mu), q in zip(slots[:-1], qs):
            x = Fraction(1, q)
            values.append(MultiplicativeEigenvalue(x))
            s += mu * x
        last_mu = slots[-1][2]
        k = math.ceil(s)
        while math.gcd(k, last_mu) != 1 and k < math.ceil(s) + last_mu:
            k += 1
        values.append(MultiplicativeEigenvalue(Fraction(k - s, last_mu)))

    per_class: dict[int, list] = {}
    for (j, _, _), v in zip(slots, values):
        per_class.setdefault(j, []).append(v)
    classes = [
        ClassSpec(shape, per_class[j]) for j, shape in enumerate(shapes)
    ]
    return TupleProblem(mode, n, classes)
