"""Independent brute-force numerics backing the derived values elsewhere.

Nothing here shares code paths with the primary implementations: singular
values come from Sturm-sequence bisection on the Golub-Kahan tridiagonal form
of the bidiagonal section, lattice moments walk the reverse staircase using
only the raw inputs, and PSD verdicts come from a cyclic Jacobi eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError
from .lattice import WeightDiagram2D, lattice_point
from .measures import measure_moment
from .weights import UnilateralShift, gamma1


@dataclass(frozen=True)
class RectangularSection:
    """The (N+1) x N matrix of (W - lambda) restricted to span{e_0, ..., e_{N-1}}.

    Column n carries -lambda at row n and alpha_n at row n+1; all other entries
    vanish, so the section is lower bidiagonal.
    """

    matrix: np.ndarray
    shift: UnilateralShift
    lam: complex

    @property
    def n(self) -> int:
        return self.matrix.shape[1]


def build_section(shift: UnilateralShift, lam: complex, n: int) -> RectangularSection:
    if n < 2:
        raise ValueError("section size must be >= 2")
    dtype = complex if isinstance(lam, complex) and lam.imag != 0 else float
    m = np.zeros((n + 1, n), dtype=dtype)
    for j in range(n):
        m[j, j] = -lam if dtype is complex else -float(np.real(lam))
        m[j + 1, j] = shift.weight(j)
    return RectangularSection(m, shift, lam)


def _sturm_count(offdiag: np.ndarray, t: float) -> int:
    """Number of eigenvalues < t of the zero-diagonal tridiagonal with these off-diagonals."""
    count = 0
    q = -t
    if q < 0:
        count += 1
    tiny = 1e-300
    for c in offdiag:
        if q == 0.0:
            q = -tiny
        q = -t - (c * c) / q
        if q < 0:
            count += 1
    return count


def min_singular(section: RectangularSection, tol: float = 1e-12) -> float:
    """Smallest singular value of the bidiagonal section by Golub-Kahan bisection.

    The shuffled symmetric form of [[0, B], [B^T, 0]] is tridiagonal with zero
    diagonal and off-diagonals interleaving |lambda| and the weights; its
    spectrum is {+-sigma_i} plus one zero, so sigma_min is the smallest t at
    which the Sturm count reaches N + 2.  No squaring of the section occurs,
    so accuracy is at the level of the singular value itself.
    """
    n = section.n
    mod = abs(section.lam)
    weights = np.array([section.shift.weight(j) for j in range(n)])
    offdiag = np.empty(2 * n)
    offdiag[0::2] = mod
    offdiag[1::2] = weights
    hi = 2.0 * max(float(mod), float(weights.max()))
    lo = 0.0
    target = n + 2
    for _ in range(200):
        if hi - lo <= max(tol, 1e-15 * hi):
            break
        mid = 0.5 * (lo + hi)
        if _sturm_count(offdiag, mid) >= target:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def gamma_bruteforce(d: WeightDiagram2D, m) -> float:
    """Moment along the reverse staircase (north along column 0, then east).

    Uses only column-0 data and the row weights, never the derived beta field,
    so it cross-checks the canonical staircase independently.
    """
    m1, m2 = lattice_point(m)
    g = 1.0
    for r in range(m2):
        g *= d.col0.weight(r) ** 2
    for l in range(m1):
        g *= d.alpha(l, m2) ** 2
    return g


def _jacobi_rotate(a: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] in place with a symmetric Jacobi rotation."""
    app, aqq, apq = a[p, p], a[q, q], a[p, q]
    phi = 0.5 * math.atan2(2.0 * apq, aqq - app)
    c, s = math.cos(phi), math.sin(phi)
    a[p, p] = c * c * app + s * s * aqq - 2.0 * s * c * apq
    a[q, q] = s * s * app + c * c * aqq + 2.0 * s * c * apq
    a[p, q] = 0.0
    a[q, p] = 0.0
    for i in range(a.shape[0]):
        if i == p or i == q:
            continue
        aip, aiq = a[i, p], a[i, q]
        a[i, p] = c * aip - s * aiq
        a[i, q] = c * aiq + s * aip
        a[p, i] = a[i, p]
        a[q, i] = a[i, q]


def psd_bruteforce(mat: np.ndarray, max_sweeps: int = 100, tol: float = 1e-12) -> float:
    """Minimum eigenvalue via cyclic Jacobi rotations on a symmetric matrix."""
    a = np.array(mat, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, np.max(np.abs(a))):
        raise ValueError("matrix must be symmetric")
    scale = max(1.0, np.max(np.abs(a)))
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= tol * scale:
            return float(np.min(np.diag(a)))
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > 1e-300:
                    _jacobi_rotate(a, p, q)
    raise ConvergenceError(f"Jacobi sweep budget exhausted ({max_sweeps} sweeps)")


@dataclass(frozen=True)
class MomentMatchVerdict:
    passed: bool
    first_bad_n: int | None
    max_abs_defect: float

    def __bool__(self) -> bool:
        return self.passed


def measure_moment_match(
    shift: UnilateralShift, mu, n_max: int, tol: float = 1e-12
) -> MomentMatchVerdict:
    """PASS iff the shift's moments match the measure's for n <= n_max.

    Defects are measured relative to max(1, gamma_n).
    """
    if not getattr(mu, "is_probability", True):
        raise ValueError("measure must be a probability measure")
    worst = 0.0
    for n in range(n_max + 1):
        g = gamma1(shift, n)
        defect = abs(g - measure_moment(mu, n)) / max(1.0, abs(g))
        worst = max(worst, defect)
        if defect > tol:
            return MomentMatchVerdict(False, n, worst)
    return MomentMatchVerdict(True, None, worst)
