"""Atomic and registered-density measures: moments, marginals, weighted slices.

Atomic measures get the general-purpose operations.  Continuous measures exist
only as the two registered Bergman-like densities (d xi_1 = ds on [0,1] and
d xi_2 = s ds / (pi sqrt(2s - s^2)) on [0,2]), evaluated by quadrature.

Values are immutable; all operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .errors import QuadratureError, SliceUndefinedError
from .weights import UnilateralShift, WeightSequence

MASS_TOL = 1e-12      # probability / zero-mass tolerance
LOC_MERGE_TOL = 1e-12  # computed atom locations this close are the same point
QUAD_TOL = 1e-8       # absolute quadrature accuracy for density moments

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


@dataclass(frozen=True)
class AtomicMeasure1D:
    """Finitely atomic measure on [0, inf): tuple of (location, mass) atoms."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        for loc, mass in self.atoms:
            if loc < 0:
                raise ValueError(f"atom location must be >= 0, got {loc}")
            if not mass > 0:
                raise ValueError(f"atom mass must be > 0, got {mass}")
        locs = [a[0] for a in self.atoms]
        if len(set(locs)) != len(locs):
            raise ValueError("atom locations must be distinct")

    @property
    def total_mass(self) -> float:
        return sum(m for _, m in self.atoms)

    @property
    def is_probability(self) -> bool:
        return abs(self.total_mass - 1.0) <= MASS_TOL

    def support(self) -> tuple[float, ...]:
        return tuple(sorted(loc for loc, _ in self.atoms))

    def moment(self, n: int) -> float:
        return sum(mass * loc**n for loc, mass in self.atoms)

    def to_json(self) -> dict:
        return {"atoms": [{"s": loc, "mass": mass} for loc, mass in self.atoms]}


@dataclass(frozen=True)
class AtomicMeasure2D:
    """Finitely atomic measure on the closed quadrant: atoms ((s, t), mass)."""

    atoms: tuple[tuple[tuple[float, float], float], ...]

    def __post_init__(self):
        for (s, t), mass in self.atoms:
            if s < 0 or t < 0:
                raise ValueError(f"atom location must be in the closed quadrant, got {(s, t)}")
            if not mass > 0:
                raise ValueError(f"atom mass must be > 0, got {mass}")
        pts = [p for p, _ in self.atoms]
        if len(set(pts)) != len(pts):
            raise ValueError("atom locations must be distinct")

    @property
    def total_mass(self) -> float:
        return sum(m for _, m in self.atoms)

    def moment(self, m1: int, m2: int) -> float:
        return sum(mass * s**m1 * t**m2 for (s, t), mass in self.atoms)

    def to_json(self) -> dict:
        return {"atoms": [{"s": s, "t": t, "mass": mass} for (s, t), mass in self.atoms]}


def _merge_atoms(pairs, tol=LOC_MERGE_TOL):
    """Sum masses of nearby locations; drop (sub-)zero masses. Locations sorted."""
    merged: list[list[float]] = []
    for loc, mass in sorted(pairs):
        if merged and abs(loc - merged[-1][0]) <= tol:
            merged[-1][1] += mass
        else:
            merged.append([loc, mass])
    return tuple((loc, mass) for loc, mass in merged if mass > MASS_TOL)


def atomic1d(pairs) -> AtomicMeasure1D:
    """Atomic measure from (location, mass) pairs, merging nearby locations."""
    return AtomicMeasure1D(_merge_atoms(pairs))


def atomic2d(triples) -> AtomicMeasure2D:
    """Atomic measure from ((s, t), mass) triples; nearby points are merged."""
    merged: dict[tuple[float, float], float] = {}
    for (s, t), mass in triples:
        key = next(
            (p for p in merged if abs(p[0] - s) <= LOC_MERGE_TOL and abs(p[1] - t) <= LOC_MERGE_TOL),
            (s, t),
        )
        merged[key] = merged.get(key, 0.0) + mass
    atoms = tuple((p, m) for p, m in sorted(merged.items()) if m > MASS_TOL)
    return AtomicMeasure2D(atoms)


def delta(loc: float, mass: float = 1.0) -> AtomicMeasure1D:
    return AtomicMeasure1D(((float(loc), float(mass)),))


def two_atom_measure(kappa: float) -> AtomicMeasure1D:
    """(delta_1 + delta_kappa) / 2, the representing measure of the two-atom shift."""
    if not kappa > 1:
        raise ValueError(f"two-atom parameter must be > 1, got {kappa}")
    return AtomicMeasure1D(((1.0, 0.5), (float(kappa), 0.5)))


@dataclass(frozen=True)
class DensityMeasure1D:
    """Registered closed-form density; family is 'bergman1' or 'bergman2'.

    bergman1: ds on [0,1].  bergman2: s ds / (pi sqrt(2s - s^2)) on [0,2];
    its moments are computed with the substitution s = 1 + sin(theta), which
    removes the endpoint singularities exactly.
    """

    family: str

    def __post_init__(self):
        if self.family not in ("bergman1", "bergman2"):
            raise ValueError(f"unknown density family: {self.family}")

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, 1.0) if self.family == "bergman1" else (0.0, 2.0)

    def density(self, s: float) -> float:
        if self.family == "bergman1":
            return 1.0 if 0.0 <= s <= 1.0 else 0.0
        if s <= 0.0 or s >= 2.0:
            return 0.0
        return s / (math.pi * math.sqrt(2.0 * s - s * s))

    def moment(self, n: int) -> float:
        return _density_moment(self.family, n)

    def moment_raw_quadrature(self, n: int, tol: float = 1e-6) -> float:
        """Fallback: adaptive quadrature on the raw density, looser tolerance."""
        lo, hi = self.support
        val, err = quad(lambda s: s**n * self.density(s), lo, hi, epsabs=tol, limit=200)
        if err > tol:
            raise QuadratureError(f"raw quadrature error {err:.2e} > {tol:.2e}", err)
        return val

    def to_json(self) -> dict:
        return {"density": self.family}


@lru_cache(maxsize=None)
def _density_moment(family: str, n: int) -> float:
    if family == "bergman1":
        val, err = quad(lambda s: s**n, 0.0, 1.0, epsabs=QUAD_TOL * 1e-2)
    else:
        # s = 1 + sin(theta): the integrand becomes (1 + sin theta)^(n+1) / pi, smooth.
        val, err = quad(
            lambda th: (1.0 + math.sin(th)) ** (n + 1) / math.pi,
            -math.pi / 2.0,
            math.pi / 2.0,
            epsabs=QUAD_TOL * 1e-2,
        )
    if err > QUAD_TOL:
        raise QuadratureError(
            f"moment quadrature for {family}, n={n}: error {err:.2e} > {QUAD_TOL:.2e}", err
        )
    return val


def measure_moment(mu, n: int) -> float:
    """Integral of s^n against an atomic or registered-density measure."""
    if n < 0:
        raise ValueError("moment order must be >= 0")
    return mu.moment(n)


@dataclass(frozen=True)
class MomentRatioTail:
    """Weights sqrt(gamma_{n+1}/gamma_n) of the shift represented by a measure.

    Nondecreasing for every positive measure since moment sequences are
    log-convex (Cauchy-Schwarz).
    """

    measure: AtomicMeasure1D

    def weight(self, n: int) -> float:
        return math.sqrt(_measure_gamma(self.measure, n + 1) / _measure_gamma(self.measure, n))

    @property
    def sup(self) -> float:
        return math.sqrt(max(self.measure.support()))

    @property
    def nondecreasing(self) -> bool:
        return True


@lru_cache(maxsize=None)
def _measure_gamma(mu: AtomicMeasure1D, n: int) -> float:
    return mu.moment(n)


def shift_from_measure(mu: AtomicMeasure1D, n_max: int = 0) -> UnilateralShift:
    """Shift whose moments are those of the probability measure mu.

    The first n_max weights are materialized into the head; the tail rule keeps
    computing the same moment ratios, so the correspondence is exact at every
    index.  The norm is sqrt of the supremum of the support.
    """
    if not mu.is_probability:
        raise ValueError(f"measure must be a probability measure, total mass {mu.total_mass}")
    tail = MomentRatioTail(mu)
    head = tuple(tail.weight(n) for n in range(n_max))
    sup = math.sqrt(max(mu.support()))
    return UnilateralShift(WeightSequence.of(head, tail, declared_sup=sup), label="from-measure")


def marginal_x(mu: AtomicMeasure2D) -> AtomicMeasure1D:
    """Project onto the s coordinate, summing masses of atoms sharing it."""
    return atomic1d([(s, mass) for (s, _), mass in mu.atoms])


def marginal_y(mu: AtomicMeasure2D) -> AtomicMeasure1D:
    return atomic1d([(t, mass) for (_, t), mass in mu.atoms])


def slice_measure(mu: AtomicMeasure2D, j: int, axis: str = HORIZONTAL) -> AtomicMeasure1D:
    """Representing measure of the j-th horizontal (or vertical) slice.

    Horizontal: reweight by t^j, normalize, and take the s marginal; the result
    is a probability measure.  Undefined when the normalizer vanishes (all
    atoms on t = 0 with j >= 1).
    """
    if j < 0:
        raise ValueError("slice index must be >= 0")
    if axis not in (HORIZONTAL, VERTICAL):
        raise ValueError(f"axis must be {HORIZONTAL!r} or {VERTICAL!r}")
    weighted = []
    normalizer = 0.0
    for (s, t), mass in mu.atoms:
        w = t**j if axis == HORIZONTAL else s**j
        keep = s if axis == HORIZONTAL else t
        weighted.append((keep, mass * w))
        normalizer += mass * w
    if normalizer <= MASS_TOL:
        raise SliceUndefinedError(f"slice j={j} ({axis}) undefined: normalizer {normalizer}")
    return atomic1d([(loc, m / normalizer) for loc, m in weighted])


def mutually_abs_continuous(mu: AtomicMeasure1D, nu: AtomicMeasure1D) -> bool:
    """Atomic measures are mutually absolutely continuous iff supports coincide."""
    a, b = mu.support(), nu.support()
    if len(a) != len(b):
        return False
    return all(abs(x - y) <= LOC_MERGE_TOL for x, y in zip(a, b))


def measure_from_json(data: dict):
    """Inverse of to_json for atomic (1-D and 2-D) and density measures."""
    if "density" in data:
        return DensityMeasure1D(data["density"])
    atoms = data["atoms"]
    if atoms and "t" in atoms[0]:
        return atomic2d([((a["s"], a["t"]), a["mass"]) for a in atoms])
    return atomic1d([(a["s"], a["mass"]) for a in atoms])
