"""One-variable weighted shifts: weights, moments, norms, hyponormality, left inverses.

A unilateral weighted shift W sends e_n to alpha_n * e_{n+1}.  Everything here
is determined by the positive weight sequence, which we represent as a finite
head plus a closed-form tail rule, so weights at large n stay exact to
rounding and never come from a truncated array.

All values are immutable after construction and every operation is pure, so
concurrent use needs no synchronization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Protocol, runtime_checkable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import IntegrityError, LeftSpectrumAtResolutionError

REL_TOL = 1e-12       # moment identities, relative
SUP_SLACK = 1e-12     # materialized weights may exceed declared_sup by at most this
SECTION_FLOOR = 1e-12  # sigma_min below this flags lambda as (approximate) left spectrum


@runtime_checkable
class TailRule(Protocol):
    """Closed-form rule producing the weight at every absolute index n."""

    def weight(self, n: int) -> float: ...

    @property
    def sup(self) -> float: ...

    @property
    def nondecreasing(self) -> bool: ...


@dataclass(frozen=True)
class ConstantTail:
    value: float

    def weight(self, n: int) -> float:
        return self.value

    @property
    def sup(self) -> float:
        return self.value

    @property
    def nondecreasing(self) -> bool:
        return True


@dataclass(frozen=True)
class BergmanLikeTail:
    """weight(n) = sqrt(ell - 1/(n+2)), increasing to sqrt(ell)."""

    ell: int

    def weight(self, n: int) -> float:
        return math.sqrt(self.ell - 1.0 / (n + 2))

    @property
    def sup(self) -> float:
        return math.sqrt(self.ell)

    @property
    def nondecreasing(self) -> bool:
        return True


@dataclass(frozen=True)
class ArcsineTail:
    """weight(n) = sqrt(2 - 1/(n+1)); the shift of the arcsine measure on [0,2]."""

    def weight(self, n: int) -> float:
        return math.sqrt(2.0 - 1.0 / (n + 1))

    @property
    def sup(self) -> float:
        return math.sqrt(2.0)

    @property
    def nondecreasing(self) -> bool:
        return True


@dataclass(frozen=True)
class TwoAtomTail:
    """Weights of the shift whose moments are (1 + kappa^n)/2.

    weight(0) = sqrt((1+kappa)/2); weight(n) = sqrt((1+kappa^(n+1))/(1+kappa^n)),
    increasing to sqrt(kappa) for kappa > 1.
    """

    kappa: float

    def weight(self, n: int) -> float:
        k = self.kappa
        if n == 0:
            return math.sqrt((1.0 + k) / 2.0)
        return math.sqrt((1.0 + k ** (n + 1)) / (1.0 + k ** n))

    @property
    def sup(self) -> float:
        return math.sqrt(self.kappa)

    @property
    def nondecreasing(self) -> bool:
        return True


@dataclass(frozen=True)
class ExpGapTail:
    """weight(n) = cap * exp(-a * decay^-n): increasing to cap with large early jumps."""

    cap: float
    a: float
    decay: float

    def weight(self, n: int) -> float:
        return self.cap * math.exp(-self.a * self.decay ** (-n))

    @property
    def sup(self) -> float:
        return self.cap

    @property
    def nondecreasing(self) -> bool:
        return True


@dataclass(frozen=True)
class DelegateTail:
    """Delegates weight(n) to another WeightSequence at the same index (n >= offset)."""

    base: "WeightSequence"
    offset: int = 0

    def weight(self, n: int) -> float:
        return self.base.weight(n + self.offset)

    @property
    def sup(self) -> float:
        return self.base.declared_sup

    @property
    def nondecreasing(self) -> bool:
        return self.base.tail.nondecreasing


@dataclass(frozen=True)
class WeightSequence:
    """Finite head of explicit weights plus a tail rule for every later index.

    Invariants: all weights positive and bounded by declared_sup + 1e-12;
    the tail rule answers every index past the head.
    """

    head: tuple[float, ...]
    tail: TailRule
    declared_sup: float

    def __post_init__(self):
        for i, w in enumerate(self.head):
            if not w > 0:
                raise ValueError(f"weight {i} is not positive: {w}")
        if not self.declared_sup > 0:
            raise ValueError("declared_sup must be positive")

    @classmethod
    def of(cls, head, tail, declared_sup=None) -> "WeightSequence":
        """Build a sequence, deriving declared_sup from head and tail when omitted."""
        head = tuple(float(w) for w in head)
        if declared_sup is None:
            declared_sup = max([tail.sup, *head])
        return cls(head, tail, float(declared_sup))

    def weight(self, n: int) -> float:
        if n < 0:
            raise ValueError("weight index must be nonnegative")
        w = self.head[n] if n < len(self.head) else self.tail.weight(n)
        if not w > 0:
            raise IntegrityError(f"weight {n} is not positive: {w}")
        if w > self.declared_sup + SUP_SLACK:
            raise IntegrityError(
                f"weight {n} = {w} exceeds declared_sup {self.declared_sup}"
            )
        return w

    def weights(self, n: int) -> list[float]:
        """First n weights, materialized."""
        return [self.weight(i) for i in range(n)]


@dataclass(frozen=True)
class UnilateralShift:
    """A unilateral weighted shift, identified by its weight sequence and family tag."""

    weights: WeightSequence
    label: str = "adhoc"

    def weight(self, n: int) -> float:
        return self.weights.weight(n)

    @property
    def declared_sup(self) -> float:
        return self.weights.declared_sup


@dataclass(frozen=True)
class Moments1D:
    """Moments gamma_n = alpha_0^2 ... alpha_{n-1}^2, with gamma_0 = 1."""

    values: tuple[float, ...]

    def gamma(self, n: int) -> float:
        return self.values[n]

    def __call__(self, n: int) -> float:
        return self.values[n]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1


def shift(*head: float, tail: TailRule | float | None = None) -> UnilateralShift:
    """Shift with explicit leading weights; the tail repeats the last head value by default."""
    if not head and tail is None:
        raise ValueError("shift() needs at least one weight or a tail rule")
    if tail is None:
        tail = ConstantTail(float(head[-1]))
    elif not isinstance(tail, TailRule):
        tail = ConstantTail(float(tail))
    return UnilateralShift(WeightSequence.of(head, tail))


def unweighted_shift() -> UnilateralShift:
    """U_+, all weights 1."""
    return UnilateralShift(WeightSequence.of((), ConstantTail(1.0)), label="unweighted")


def make_bergman_like(ell: int) -> UnilateralShift:
    """Bergman-like shift with weights sqrt(ell - 1/(n+2)); ell = 1 is the Bergman shift."""
    if ell < 1:
        raise ValueError(f"bergman-like index must be >= 1, got {ell}")
    tail = BergmanLikeTail(int(ell))
    return UnilateralShift(
        WeightSequence.of((), tail, declared_sup=math.sqrt(ell)),
        label=f"bergman-like-{int(ell)}",
    )


def make_two_atom_shift(kappa: float) -> UnilateralShift:
    """Subnormal shift with two-atom representing measure (delta_1 + delta_kappa)/2."""
    if not kappa > 1:
        raise ValueError(f"two-atom parameter must be > 1, got {kappa}")
    tail = TwoAtomTail(float(kappa))
    return UnilateralShift(
        WeightSequence.of((), tail, declared_sup=math.sqrt(kappa)),
        label=f"two-atom-{kappa:g}",
    )


def arcsine_shift() -> UnilateralShift:
    """Shift of the arcsine measure on [0,2]: weights sqrt((2n+1)/(n+1)), norm sqrt(2)."""
    return UnilateralShift(
        WeightSequence.of((), ArcsineTail(), declared_sup=math.sqrt(2.0)),
        label="arcsine",
    )


def moments(s: UnilateralShift, n_max: int) -> Moments1D:
    """Moments up to n_max by exact left-to-right products of squared weights."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    vals = [1.0]
    g = 1.0
    for n in range(n_max):
        g *= s.weight(n) ** 2
        vals.append(g)
    return Moments1D(tuple(vals))


@lru_cache(maxsize=None)
def gamma1(s: UnilateralShift, n: int) -> float:
    """Single moment gamma_n; cached per shift."""
    if n == 0:
        return 1.0
    return gamma1(s, n - 1) * s.weight(n - 1) ** 2


def norm(s: UnilateralShift, check_terms: int = 256) -> float:
    """Operator norm, i.e. the declared supremum of the weights.

    The norm of a weighted shift is sup alpha_n; declared_sup records that
    analytic fact per family, and this call asserts consistency on a
    materialized prefix before returning it.
    """
    sup = s.declared_sup
    for n in range(max(check_terms, len(s.weights.head) + 16)):
        s.weight(n)  # raises IntegrityError on violation
    return sup


@dataclass(frozen=True)
class Hypo1DVerdict:
    passed: bool
    witness: int | None
    checked_up_to: int
    tail_certified: bool

    def __bool__(self) -> bool:
        return self.passed


def is_hyponormal_1d(s: UnilateralShift, n_max: int) -> Hypo1DVerdict:
    """Monotone-weight test: PASS iff alpha_n <= alpha_{n+1} up to n_max.

    The verdict records the checked range; the tail rule's monotonicity
    certificate covers indices past it.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    for n in range(n_max):
        if s.weight(n) > s.weight(n + 1) * (1 + REL_TOL):
            return Hypo1DVerdict(False, n, n_max, False)
    return Hypo1DVerdict(True, None, n_max, s.weights.tail.nondecreasing)


def section_gram_tridiagonal(s: UnilateralShift, lam: complex, n: int):
    """Diagonal and off-diagonal of the Gram matrix of the (N+1) x N section of W - lambda.

    Column j of the section carries -lambda at row j and alpha_j at row j+1, so
    the Gram matrix is tridiagonal; a diagonal phase scaling makes it real.
    """
    alphas = np.array(s.weights.weights(n))
    mod = abs(lam)
    d = mod * mod + alphas**2
    e = alphas[: n - 1] * mod
    return d, e


def canonical_left_inverse_norm(s: UnilateralShift, lam: complex, n: int) -> float:
    """Norm of [(W-lambda)* (W-lambda)]^(-1/2) at section size N.

    Returns 1/sigma_min of the exact (N+1) x N restriction of W - lambda to the
    first N basis vectors; sigma_min is nonincreasing in N and upper-bounds the
    operator's lower bound.  Raises LeftSpectrumAtResolutionError when
    sigma_min falls below the resolution floor.
    """
    if n < 2:
        raise ValueError("section size must be >= 2")
    d, e = section_gram_tridiagonal(s, lam, n)
    w = eigh_tridiagonal(d, e, select="i", select_range=(0, 0), eigvals_only=True)
    sigma_min = math.sqrt(max(float(w[0]), 0.0))
    if sigma_min < SECTION_FLOOR:
        raise LeftSpectrumAtResolutionError(lam, n, sigma_min)
    return 1.0 / sigma_min
