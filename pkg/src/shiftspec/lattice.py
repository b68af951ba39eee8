"""Two-variable weight diagrams: constructors, commutativity, slices, lattice moments.

A commuting pair (T1, T2) acting on the lattice basis is stored as the row
weight sequences alpha(., j) plus the column-0 weights beta(0, .).  Every other
beta is derived from the commutativity identity

    beta(i+1, j) * alpha(i, j) = alpha(i, j+1) * beta(i, j),

so the identity holds by construction and the figures' displayed beta entries
become assertions rather than inputs.

Moments gamma_m are products of squared weights along the canonical staircase
path (all horizontal steps, then all vertical steps); path-independence is a
property test, not a runtime recomputation.

Diagrams are immutable after construction; the weight functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import FamilyMismatchError
from .weights import (
    ConstantTail,
    DelegateTail,
    UnilateralShift,
    WeightSequence,
    arcsine_shift,
    make_bergman_like,
    make_two_atom_shift,
    unweighted_shift,
)

EPS1 = (1, 0)
EPS2 = (0, 1)

LatticePoint = tuple[int, int]


def lattice_point(m) -> LatticePoint:
    m1, m2 = int(m[0]), int(m[1])
    if m1 < 0 or m2 < 0:
        raise ValueError(f"lattice point must be componentwise >= 0, got {m}")
    return (m1, m2)


@dataclass(frozen=True)
class FamilyInfo:
    """Family tag plus structure certificates used by positivity and spectra.

    rows_equal_from: rows j >= this index all share one weight sequence.
    unit_tail_from: all alpha and beta weights are exactly 1 on m2 >= this index.
    """

    tag: str
    params: dict = field(default_factory=dict)
    rows_equal_from: int | None = None
    unit_tail_from: int | None = None


class WeightDiagram2D:
    """Commuting 2-variable weight diagram with derived beta field."""

    def __init__(
        self,
        rows: Callable[[int], WeightSequence],
        col0: WeightSequence,
        family: FamilyInfo,
        t1_norm: float,
        t2_norm: float,
        vertical_tail: Callable[[int], tuple[tuple[float, ...], object]] | None = None,
    ):
        self._rows = rows
        self.col0 = col0
        self.family = family
        self.t1_norm = t1_norm
        self.t2_norm = t2_norm
        self._vertical_tail = vertical_tail
        self._beta_cache: dict[LatticePoint, float] = {}
        self._gamma_cache: dict[LatticePoint, float] = {(0, 0): 1.0}

    def row(self, j: int) -> WeightSequence:
        return self._rows(j)

    def alpha(self, i: int, j: int) -> float:
        """T1 weight at (i, j)."""
        return self._rows(j).weight(i)

    def beta(self, i: int, j: int) -> float:
        """T2 weight at (i, j); column 0 is data, the rest is forced by commutativity."""
        if i == 0:
            return self.col0.weight(j)
        key = (i, j)
        val = self._beta_cache.get(key)
        if val is None:
            val = self.beta(i - 1, j) * self.alpha(i - 1, j + 1) / self.alpha(i - 1, j)
            self._beta_cache[key] = val
        return val

    def gamma(self, m) -> float:
        """Moment at m: squared weights along the staircase path (east, then north)."""
        m1, m2 = lattice_point(m)
        key = (m1, m2)
        val = self._gamma_cache.get(key)
        if val is None:
            if m2 > 0:
                val = self.gamma((m1, m2 - 1)) * self.beta(m1, m2 - 1) ** 2
            else:
                val = self.gamma((m1 - 1, 0)) * self.alpha(m1 - 1, 0) ** 2
            self._gamma_cache[key] = val
        return val

    def gamma_ratio(self, m, target) -> float:
        """gamma(target)/gamma(m) as a short product of squared weights.

        Stays in range even where gamma itself would overflow, since only the
        steps from m to target enter.
        """
        (i0, j0), (i1, j1) = lattice_point(m), lattice_point(target)
        if i1 < i0 or j1 < j0:
            raise ValueError("target must dominate m componentwise")
        r = 1.0
        for l in range(i0, i1):
            r *= self.alpha(l, j0) ** 2
        for s in range(j0, j1):
            r *= self.beta(i1, s) ** 2
        return r

    def commutativity_defect(self, i: int, j: int) -> float:
        """Relative defect of beta(m+e1)*alpha(m) = alpha(m+e2)*beta(m) at m=(i,j)."""
        lhs = self.beta(i + 1, j) * self.alpha(i, j)
        rhs = self.alpha(i, j + 1) * self.beta(i, j)
        return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def check_commutativity(d: WeightDiagram2D, region: int, rel_tol: float = 1e-12) -> float:
    """Largest relative commutativity defect on region x region; must be <= rel_tol."""
    worst = 0.0
    for i in range(region):
        for j in range(region):
            worst = max(worst, d.commutativity_defect(i, j))
    return worst


def gamma2d(d: WeightDiagram2D, m) -> float:
    """Lattice moment along the canonical staircase path."""
    return d.gamma(m)


def horizontal_slice(d: WeightDiagram2D, j: int) -> UnilateralShift:
    """Row j as a 1-variable shift."""
    if j < 0:
        raise ValueError("slice index must be >= 0")
    return UnilateralShift(d.row(j), label=f"{d.family.tag}-row-{j}")


def vertical_slice(d: WeightDiagram2D, i: int) -> UnilateralShift:
    """Column i as a 1-variable shift, with an exact tail rule per family."""
    if i < 0:
        raise ValueError("slice index must be >= 0")
    if i == 0:
        return UnilateralShift(d.col0, label=f"{d.family.tag}-col-0")
    if d._vertical_tail is not None:
        head, tail = d._vertical_tail(i)
        return UnilateralShift(WeightSequence.of(head, tail), label=f"{d.family.tag}-col-{i}")
    j0 = d.family.rows_equal_from
    if j0 is None:
        raise FamilyMismatchError(
            f"family {d.family.tag} has no exact vertical tail rule for i >= 1"
        )
    # Rows j >= j0 coincide, so beta(i, j) = beta(0, j) there; below j0 it is derived.
    head = tuple(d.beta(i, j) for j in range(j0))
    return UnilateralShift(
        WeightSequence.of(head, DelegateTail(d.col0)), label=f"{d.family.tag}-col-{i}"
    )


def _diagram(rows, col0, family, t1_norm, t2_norm=None, vertical_tail=None):
    d = WeightDiagram2D(rows, col0, family, t1_norm, col0.declared_sup, vertical_tail)
    if t2_norm is None:
        # Sup of the derived beta field over a prefix, capped by the column-0 sup;
        # exact for families whose betas are dominated by column 0.
        t2_norm = max(col0.declared_sup, max(d.beta(i, j) for i in range(24) for j in range(12)))
    d.t2_norm = t2_norm
    return d


def make_thm_compactper(
    row0: UnilateralShift,
    row1: UnilateralShift,
    col0: UnilateralShift,
    tag: str = "thm-compactper",
    params: dict | None = None,
) -> WeightDiagram2D:
    """Diagram with distinguished bottom row: row 0, identical rows j >= 1, column 0 given.

    beta(i, 0) telescopes to beta_0 * prod alpha(l,1)/alpha(l,0); when the
    rows-j>=1 norm is strictly below the row-0 norm those entries decay, which
    is the compact-perturbation structure behind this family.
    """
    rows = _memo_rows(lambda j: row0.weights if j == 0 else row1.weights)
    fam = FamilyInfo(tag, dict(params or {}), rows_equal_from=1)
    t1 = max(row0.declared_sup, row1.declared_sup)
    return _diagram(rows, col0.weights, fam, t1)


def make_example_bergman() -> WeightDiagram2D:
    """Arcsine row 0 over Bergman rows, column 0 = (sqrt(1/2), 1, 1, ...).

    Row 0 weights are sqrt((2n+1)/(n+1)) with norm sqrt(2); rows j >= 1 are the
    Bergman shift with norm 1.
    """
    col0 = UnilateralShift(
        WeightSequence.of((math.sqrt(0.5),), ConstantTail(1.0)), label="bergman-col"
    )
    return make_thm_compactper(
        arcsine_shift(), make_bergman_like(1), col0, tag="example-bergman"
    )


def make_example_exof1atom(alpha: float, beta: float) -> WeightDiagram2D:
    """alpha(i, j) = alpha^j, beta(i, j) = alpha^i * beta, for 0 < alpha < beta <= 1.

    Every slice has a one-atom representing measure; the pair is commuting but
    not hyponormal.
    """
    if not (0.0 < alpha < beta <= 1.0):
        raise ValueError(f"parameters must satisfy 0 < alpha < beta <= 1, got {alpha}, {beta}")
    rows = _memo_rows(lambda j: WeightSequence.of((), ConstantTail(alpha**j)))
    col0 = WeightSequence.of((), ConstantTail(beta))
    fam = FamilyInfo("exof1atom", {"alpha": alpha, "beta": beta})

    def vtail(i):
        return (), ConstantTail(alpha**i * beta)

    return _diagram(rows, col0, fam, t1_norm=1.0, t2_norm=beta, vertical_tail=vtail)


def important_column(c: float, a: float = 8.0, g: float = 2.5) -> UnilateralShift:
    """Strictly increasing column shift beta_n = c * exp(-a * g^-n) with sup c.

    Early ratios beta_{n+1}/beta_n are large and decay geometrically in n,
    which is what the Bergman-like row transitions demand of the column.
    """
    if not (c > 0 and a > 0 and g > 1):
        raise ValueError(f"need c > 0, a > 0, g > 1; got {c}, {a}, {g}")
    from .weights import ExpGapTail

    return UnilateralShift(
        WeightSequence.of((), ExpGapTail(float(c), float(a), float(g)), declared_sup=c),
        label=f"exp-gap-{c:g}-{a:g}-{g:g}",
    )


def make_thm_important(ells, colbeta: UnilateralShift) -> WeightDiagram2D:
    """Rows j < k are Bergman-like with index ells[j], rows j >= k unweighted;
    column 0 is a strictly increasing shift.

    Rejects a column that is not strictly increasing on its materialized prefix
    or whose tail rule is not nondecreasing.
    """
    ells = tuple(int(l) for l in ells)
    if not ells or any(l < 1 for l in ells):
        raise ValueError(f"ells must be a nonempty list of integers >= 1, got {ells}")
    k = len(ells)
    # Strict increase is checked where increments are resolvable in floats; the
    # far tail of a convergent column may tie at machine precision, so only
    # decreases are rejected there.
    probe = colbeta.weights.weights(64)
    head_strict = all(a < b for a, b in zip(probe[:16], probe[1:17]))
    no_decrease = all(a <= b for a, b in zip(probe, probe[1:]))
    if not (head_strict and no_decrease and colbeta.weights.tail.nondecreasing):
        raise ValueError("column shift must be strictly increasing")
    bergs = [make_bergman_like(l).weights for l in ells]
    unit = unweighted_shift().weights
    rows = _memo_rows(lambda j: bergs[j] if j < k else unit)
    fam = FamilyInfo("thm-important", {"ells": ells}, rows_equal_from=k)
    return _diagram(rows, colbeta.weights, fam, t1_norm=math.sqrt(max(ells)))


def make_example_stair(a: float) -> WeightDiagram2D:
    """Staircase of a's and 1's: alpha(i,j) = a iff i < j, beta(i,j) = a iff j < i."""
    if not (0.0 < a < 1.0):
        raise ValueError(f"stair parameter must be in (0, 1), got {a}")
    rows = _memo_rows(lambda j: WeightSequence.of((a,) * j, ConstantTail(1.0)))
    col0 = WeightSequence.of((), ConstantTail(1.0))
    fam = FamilyInfo("stair", {"a": a})

    def vtail(i):
        return (a,) * i, ConstantTail(1.0)

    return _diagram(rows, col0, fam, t1_norm=1.0, t2_norm=1.0, vertical_tail=vtail)


def make_thm_khypo(kappa: float, y0: float) -> WeightDiagram2D:
    """Two-atom row 0 under unweighted rows; column 0 = (y0, 1, 1, ...).

    The restriction to m2 >= 1 is the doubly unweighted pair, so all weights
    are exactly 1 there.
    """
    if not kappa > 1:
        raise ValueError(f"kappa must be > 1, got {kappa}")
    if not (0.0 < y0 <= 1.0):
        raise ValueError(f"y0 must be in (0, 1], got {y0}")
    row0 = make_two_atom_shift(kappa).weights
    unit = unweighted_shift().weights
    rows = _memo_rows(lambda j: row0 if j == 0 else unit)
    col0 = WeightSequence.of((y0,), ConstantTail(1.0))
    fam = FamilyInfo(
        "thm-khypo", {"kappa": kappa, "y0": y0}, rows_equal_from=1, unit_tail_from=1
    )
    return _diagram(rows, col0, fam, t1_norm=math.sqrt(kappa), t2_norm=1.0)


def make_adhoc(rows: list[UnilateralShift], tail_row: UnilateralShift, col0: UnilateralShift) -> WeightDiagram2D:
    """Diagram from explicit leading rows, a repeated tail row, and column 0.

    Supports moments, slices, and region-bounded positivity tests, but no
    closed-form spectral picture.
    """
    seqs = [r.weights for r in rows]
    j0 = len(seqs)
    rowfn = _memo_rows(lambda j: seqs[j] if j < j0 else tail_row.weights)
    fam = FamilyInfo("adhoc", {}, rows_equal_from=j0)
    t1 = max([tail_row.declared_sup, *(r.declared_sup for r in rows)])
    return _diagram(rowfn, col0.weights, fam, t1_norm=t1)


def _memo_rows(fn):
    cache: dict[int, WeightSequence] = {}

    def rows(j: int) -> WeightSequence:
        if j < 0:
            raise ValueError("row index must be >= 0")
        if j not in cache:
            cache[j] = fn(j)
        return cache[j]

    return rows


def compactness_witness(d: WeightDiagram2D, n: int, tol: float = 0.02):
    """First n diagonal entries beta_0 * prod alpha(l,1)/alpha(l,0), plus a decay verdict.

    Only meaningful for diagrams with the distinguished-row structure
    (rows j >= 1 identical); the entries coincide with the derived beta(i, 0).
    """
    if d.family.rows_equal_from != 1:
        raise FamilyMismatchError(
            f"compactness witness needs a distinguished-row family, got {d.family.tag}"
        )
    entries = [d.beta(i, 0) for i in range(n)]
    return entries, entries[-1] < tol


# ---------------------------------------------------------------------------
# JSON interface

def diagram_to_json(d: WeightDiagram2D) -> dict:
    return {"family": d.family.tag, "params": _params_json(d.family.params)}


def _params_json(params: dict) -> dict:
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in params.items()}


def diagram_from_json(data: dict) -> WeightDiagram2D:
    """Rebuild a diagram from {"family": ..., "params": {...}}."""
    tag = data["family"]
    p = data.get("params", {})
    if tag == "example-bergman":
        return make_example_bergman()
    if tag == "exof1atom":
        return make_example_exof1atom(p["alpha"], p["beta"])
    if tag == "stair":
        return make_example_stair(p["a"])
    if tag == "thm-khypo":
        return make_thm_khypo(p["kappa"], p["y0"])
    if tag == "thm-important":
        col = important_column(p["c"], p["col_a"], p["col_g"])
        d = make_thm_important(p["ells"], col)
        d.family.params.update({"c": p["c"], "col_a": p["col_a"], "col_g": p["col_g"]})
        return d
    raise ValueError(f"unknown or non-serializable family: {tag}")
