"""Moment matrices, PSD testing, hyponormality verdicts, and parameter searches.

PSD decisions come from a pivoted Cholesky factorization with a one-sided
tolerance (exact boundary cases must classify as PSD); the reported minimum
eigenvalue is informational and the Jacobi eigensolver in the oracle module
cross-checks the decision in tests.

Region verdicts never claim "for all m": a PASS covers the scanned rectangle
plus, when the family certifies an all-unit tail, a structural certificate for
the rows above it (all-ones moment matrices are PSD).

Lattice scans are order-independent: a FAIL reports the smallest witness in
row-major order, so any parallel schedule would aggregate to the same verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NegativeMassError
from .lattice import (
    WeightDiagram2D,
    important_column,
    lattice_point,
    make_thm_important,
    make_thm_khypo,
)
from .measures import AtomicMeasure2D, atomic2d, two_atom_measure
from .weights import UnilateralShift, gamma1, make_two_atom_shift

PSD_TOL = 1e-10  # absolute, scaled by max(1, trace)


def multi_indices(k: int) -> tuple[tuple[int, int], ...]:
    """Lattice multi-indices of total degree <= k in graded order.

    Within each degree the first component descends: (0,0), (1,0), (0,1),
    (2,0), (1,1), (0,2), ...  Fixed so matrix layouts are reproducible.
    """
    return tuple((d - t, t) for d in range(k + 1) for t in range(d + 1))


@dataclass(frozen=True)
class MomentMatrix:
    """Symmetric matrix of lattice moments.

    labels are integers (Hankel form, entry (i, j) = gamma_{m1+i+j}) or
    multi-index pairs (entry (p, q) = gamma_{m+p+q}).
    """

    entries: np.ndarray
    labels: tuple
    origin: tuple[int, int] | int
    order: int

    def __post_init__(self):
        a = self.entries
        if a.shape[0] != a.shape[1]:
            raise ValueError("moment matrix must be square")
        if np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, float(np.max(np.abs(a)))):
            raise ValueError("moment matrix must be symmetric")


def hankel_matrix(shift: UnilateralShift, m1: int, k: int) -> MomentMatrix:
    """(k+1) x (k+1) Hankel matrix with entry (i, j) = gamma_{m1+i+j}."""
    if m1 < 0 or k < 0:
        raise ValueError("m1 and k must be >= 0")
    g = [gamma1(shift, m1 + n) for n in range(2 * k + 1)]
    a = np.array([[g[i + j] for j in range(k + 1)] for i in range(k + 1)])
    return MomentMatrix(a, tuple(range(k + 1)), m1, k)


@dataclass(frozen=True)
class PsdResult:
    is_psd: bool
    lambda_min: float
    threshold: float

    def __bool__(self) -> bool:
        return self.is_psd


def _pivoted_cholesky_psd(a: np.ndarray, thr: float) -> bool:
    """Semidefinite test by pivoted Cholesky with one-sided tolerance thr.

    Negative pivots or Schur-complement diagonals below -thr certify a negative
    eigenvalue (Schur complements of PSD matrices are PSD).  When every
    remaining pivot is below thr the factorization stops; the remainder then
    must be negligible, up to off-diagonal entries that a genuinely PSD
    remainder with such a tiny diagonal could still carry.
    """
    s = np.array(a, dtype=float)
    n = s.shape[0]
    for _ in range(n):
        d = np.diag(s)
        if d.min() < -thr:
            return False
        p = int(np.argmax(d))
        if d[p] <= thr:
            if s.shape[0] == 1:
                return True
            off = np.abs(s - np.diag(np.diag(s))).max()
            return bool(off <= 2.0 * thr)
        # symmetric pivot to front, one factorization step, recurse on the remainder
        if p != 0:
            s[[0, p], :] = s[[p, 0], :]
            s[:, [0, p]] = s[:, [p, 0]]
        pivot = s[0, 0]
        col = s[1:, 0]
        s = s[1:, 1:] - np.outer(col, col) / pivot
        s = 0.5 * (s + s.T)
        if s.size == 0:
            return True
    return True


def is_psd(m: MomentMatrix | np.ndarray, tol: float = PSD_TOL) -> PsdResult:
    """PSD verdict: true iff lambda_min >= -tol * max(1, trace).

    The decision runs through pivoted Cholesky so that exactly singular
    boundary cases classify as PSD; lambda_min is reported from a direct
    symmetric eigensolve and carried on FAIL witnesses.
    """
    a = m.entries if isinstance(m, MomentMatrix) else np.asarray(m, dtype=float)
    if np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, float(np.max(np.abs(a)))):
        raise ValueError("matrix must be symmetric")
    thr = tol * max(1.0, float(np.trace(a)))
    ok = _pivoted_cholesky_psd(a, thr)
    lam_min = float(np.linalg.eigvalsh(a)[0])
    return PsdResult(ok, lam_min, thr)


def shifted_psd_test(kappa: float, y0: float, k: int, m1: int, tol: float = PSD_TOL) -> PsdResult:
    """Is the two-atom Hankel matrix minus y0^2 times all-ones PSD?"""
    if not kappa > 1 or not y0 > 0:
        raise ValueError("need kappa > 1 and y0 > 0")
    h = hankel_matrix(make_two_atom_shift(kappa), m1, k)
    return is_psd(h.entries - y0 * y0 * np.ones_like(h.entries), tol)


def two_var_moment_matrix(
    d: WeightDiagram2D, m, k: int, normalized: bool = False
) -> MomentMatrix:
    """Moment matrix at base point m, indexed by all multi-indices of degree <= k.

    Entry (p, q) = gamma_{m + p + q}; size (k+1)(k+2)/2.  With normalized=True
    the entries are divided by gamma_m (computed as short weight products), a
    positive scaling that preserves PSD-ness and never overflows.
    """
    if k < 1:
        raise ValueError("order k must be >= 1")
    m = lattice_point(m)
    idx = multi_indices(k)
    if normalized:
        ent = lambda p, q: d.gamma_ratio(m, (m[0] + p[0] + q[0], m[1] + p[1] + q[1]))
    else:
        ent = lambda p, q: d.gamma((m[0] + p[0] + q[0], m[1] + p[1] + q[1]))
    a = np.array([[ent(p, q) for q in idx] for p in idx])
    a = 0.5 * (a + a.T)  # the two path products agree to rounding; symmetrize exactly
    return MomentMatrix(a, idx, m, k)


@dataclass(frozen=True)
class PositivityVerdict:
    """Region-bounded verdict; FAIL always carries a witness."""

    status: str  # "PASS_ON_REGION" | "FAIL"
    k: int
    region: tuple[int, int]
    tol: float
    witness: tuple[int, int] | None = None
    witness_lambda_min: float | None = None
    structural_tail: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS_ON_REGION"

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "k": self.k,
            "region": list(self.region),
            "tol": self.tol,
        }
        if self.witness is not None:
            out["witness"] = {"m": list(self.witness), "lambda_min": self.witness_lambda_min}
        if self.structural_tail is not None:
            out["structural_tail"] = self.structural_tail
        return out


def _as_region(region) -> tuple[int, int]:
    if isinstance(region, int):
        return (region, region)
    r1, r2 = region
    return (int(r1), int(r2))


def is_k_hyponormal(
    d: WeightDiagram2D, k: int, region, tol: float = PSD_TOL
) -> PositivityVerdict:
    """Scan the order-k moment matrices over a lattice rectangle.

    Matrices are tested in gamma_m-normalized form.  The scan runs in
    row-major order, so the first failure is the smallest witness.  Families
    with an all-unit tail from row j0 get a structural certificate: every
    matrix based at m2 >= j0 is constant, hence PSD.
    """
    if k < 1:
        raise ValueError("order k must be >= 1")
    r1, r2 = _as_region(region)
    for m1 in range(r1):
        for m2 in range(r2):
            mm = two_var_moment_matrix(d, (m1, m2), k, normalized=True)
            res = is_psd(mm, tol)
            if not res:
                return PositivityVerdict(
                    "FAIL", k, (r1, r2), tol, witness=(m1, m2),
                    witness_lambda_min=res.lambda_min,
                )
    tail = None
    j0 = d.family.unit_tail_from
    if j0 is not None:
        tail = (
            f"all weights are 1 on m2 >= {j0}: every moment matrix based there "
            "is a constant multiple of all-ones, hence PSD"
        )
    return PositivityVerdict("PASS_ON_REGION", k, (r1, r2), tol, structural_tail=tail)


def is_hyponormal_pair(d: WeightDiagram2D, region, tol: float = PSD_TOL) -> PositivityVerdict:
    """Joint hyponormality is the k = 1 case of the moment-matrix criterion."""
    return is_k_hyponormal(d, 1, region, tol)


def find_max_y0(kappa: float, k: int, m1_max: int, tol: float = 1e-6) -> float:
    """Largest y0 for which the shifted PSD test passes at all m1 <= m1_max.

    Bisection is justified by monotonicity: shrinking y0 adds a PSD multiple of
    the all-ones matrix back, so a pass at y0 implies a pass below it.
    """
    if not kappa > 1 or k < 1:
        raise ValueError("need kappa > 1 and k >= 1")

    def passes(y0: float) -> bool:
        return all(bool(shifted_psd_test(kappa, y0, k, m1)) for m1 in range(m1_max + 1))

    lo, hi = 0.0, 1.0
    if passes(hi):
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if passes(mid):
            lo = mid
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# Parameter search for the Bergman-like-rows family

def log_convex_ells(k: int) -> tuple[int, ...]:
    """Smallest integer row indices with ell_{j+1}^2 < ell_j * ell_{j+2} (tail 1s).

    Strict log-convexity of (ells, 1, 1, ...) makes the commutativity-derived
    column ratios grow geometrically at every row transition, which is what the
    moment-matrix conditions demand for large m1.  Ends at 2: a bottom index of
    1 would force an unbounded derived column.
    """
    ls = [2]
    below = 1
    while len(ls) < k:
        ls.insert(0, ls[0] * ls[0] // below + 1)
        below = ls[1]
    return tuple(ls)


@dataclass(frozen=True)
class ImportantSearchResult:
    ells: tuple[int, ...]
    c: float
    col_a: float
    col_g: float
    verdict: PositivityVerdict

    def build(self) -> WeightDiagram2D:
        d = make_thm_important(self.ells, important_column(self.c, self.col_a, self.col_g))
        d.family.params.update({"c": self.c, "col_a": self.col_a, "col_g": self.col_g})
        return d


SEARCH_COLUMN_GRID = ((8.0, 2.5), (14.0, 2.0))
SEARCH_CAP_GRID = (0.5, 0.8, 1.0)


def search_thm_important_params(k: int, region_size: int) -> ImportantSearchResult | None:
    """First hyponormal candidate on the documented grid, or None.

    Grid: ells = log_convex_ells(k); columns beta_n = c * exp(-a * g^-n) with
    (a, g) in SEARCH_COLUMN_GRID and c in SEARCH_CAP_GRID.  Candidates are
    scanned with is_hyponormal_pair on region_size^2; the grid order is fixed
    so recorded results are reproducible.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    ells = log_convex_ells(k)
    for c in SEARCH_CAP_GRID:
        for a, g in SEARCH_COLUMN_GRID:
            d = make_thm_important(ells, important_column(c, a, g))
            verdict = is_hyponormal_pair(d, region_size)
            if verdict:
                return ImportantSearchResult(ells, c, a, g, verdict)
    return None


def remark_measure_decomposition(kappa: float, y0: float) -> AtomicMeasure2D:
    """Two-variable representing measure of the two-atom-row diagram.

    mu = y0^2 delta_(1,1) + ((delta_1 + delta_kappa)/2 - y0^2 delta_1) x delta_0;
    exists iff 1/2 - y0^2 >= 0, otherwise NegativeMassError.  Zero masses are
    dropped.
    """
    if not kappa > 1 or not y0 > 0:
        raise ValueError("need kappa > 1 and y0 > 0")
    xi = two_atom_measure(kappa)
    resid = {loc: mass for loc, mass in xi.atoms}
    resid[1.0] = resid.get(1.0, 0.0) - y0 * y0
    neg = min(resid.values())
    if neg < -1e-12:
        raise NegativeMassError(
            f"residual mass at an atom is negative ({neg:.6g}); "
            f"y0^2 = {y0*y0:.6g} exceeds the delta_1 mass"
        )
    atoms = [((1.0, 1.0), y0 * y0)]
    atoms += [((loc, 0.0), mass) for loc, mass in resid.items() if mass > 1e-12]
    return atomic2d(atoms)
