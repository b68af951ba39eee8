"""Spectral pictures as exact Reinhardt primitives in the modulus plane.

Every spectral set produced here is invariant under independent rotations of
the coordinates, so it is faithfully represented by its image under
(z1, z2) -> (|z1|, |z2|): a finite union of products of radial sets (intervals,
points, geometric circle families).  Working with exact primitives makes
picture equality decidable.

The outer boundary of a picture is computed on a symbolic arrangement of the
primitives: boundary of the unbounded connected component of the complement
within the closed quadrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NormGapError
from .lattice import WeightDiagram2D, horizontal_slice, vertical_slice
from .weights import (
    ConstantTail,
    UnilateralShift,
    canonical_left_inverse_norm,
    is_hyponormal_1d,
    norm,
)

GEOM_TOL = 1e-9     # coincidence tolerance for radii in the modulus plane
NORM_EQ_TOL = 1e-9  # slice-norm equality tolerance
CONVERGES = "CONVERGES"
DIVERGES = "DIVERGES"
UNDECIDED = "UNDECIDED"


# ---------------------------------------------------------------------------
# Radial primitives

@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi):
            raise ValueError(f"need 0 <= lo <= hi, got [{self.lo}, {self.hi}]")

    def contains(self, x: float, tol: float = GEOM_TOL) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def breakpoints(self):
        return (self.lo, self.hi)

    def key(self):
        return (1, self.lo, self.hi)


@dataclass(frozen=True)
class Point:
    r: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"radius must be >= 0, got {self.r}")

    def contains(self, x: float, tol: float = GEOM_TOL) -> bool:
        return abs(x - self.r) <= tol

    def breakpoints(self):
        return (self.r,)

    def key(self):
        return (0, self.r, self.r)


@dataclass(frozen=True)
class GeometricFamily:
    """{r0 * q^k : k >= 0} together with its accumulation point 0 (closed)."""

    r0: float
    q: float

    def __post_init__(self):
        if not self.r0 > 0 or not (0.0 < self.q < 1.0):
            raise ValueError(f"need r0 > 0 and q in (0,1), got {self.r0}, {self.q}")

    def members(self, count: int):
        return [self.r0 * self.q**k for k in range(count)]

    def contains(self, x: float, tol: float = GEOM_TOL) -> bool:
        if abs(x) <= tol:
            return True
        if x > self.r0 + tol:
            return False
        k = round(math.log(x / self.r0) / math.log(self.q))
        return any(
            abs(x - self.r0 * self.q**kk) <= tol for kk in {max(0, k - 1), max(0, k), k + 1}
        )

    def breakpoints(self):
        # closure endpoints only; fine-structure handled by dedicated geometric logic
        return (0.0, self.r0)

    def key(self):
        return (2, self.r0, self.q)


RadialSet = Interval | Point | GeometricFamily


def interval(lo: float, hi: float) -> RadialSet:
    """Interval, collapsed to a point when degenerate."""
    return Point(lo) if abs(hi - lo) <= 0.0 else Interval(lo, hi)


def radial_contains_set(outer: RadialSet, inner: RadialSet, tol: float = GEOM_TOL) -> bool:
    """Decidable containment between radial primitives (conservative on exotic pairs)."""
    if isinstance(inner, Point):
        return outer.contains(inner.r, tol)
    if isinstance(inner, Interval):
        if isinstance(outer, Interval):
            return outer.lo - tol <= inner.lo and inner.hi <= outer.hi + tol
        if isinstance(outer, Point):
            return abs(inner.lo - outer.r) <= tol and abs(inner.hi - outer.r) <= tol
        return abs(inner.hi - inner.lo) <= tol and outer.contains(inner.lo, tol)
    # inner is geometric: 0 is a member, so the outer set must reach 0
    if isinstance(outer, Interval):
        return outer.lo <= tol and inner.r0 <= outer.hi + tol
    if isinstance(outer, GeometricFamily):
        return (
            abs(outer.r0 - inner.r0) <= tol and abs(outer.q - inner.q) <= tol
        )
    return False


def radial_intersects(a: RadialSet, b: RadialSet, tol: float = GEOM_TOL) -> bool:
    if isinstance(a, GeometricFamily) and isinstance(b, GeometricFamily):
        return True  # both contain 0
    if isinstance(a, GeometricFamily):
        a, b = b, a
    if isinstance(b, GeometricFamily):
        if isinstance(a, Point):
            return b.contains(a.r, tol)
        if a.lo <= tol:
            return True  # interval reaches the accumulation point
        if a.lo > b.r0 + tol:
            return False
        k_lo = math.ceil(math.log(min(a.hi, b.r0) / b.r0) / math.log(b.q) - 1e-12)
        return b.r0 * b.q ** max(k_lo, 0) >= a.lo - tol
    if isinstance(a, Point) and isinstance(b, Point):
        return abs(a.r - b.r) <= tol
    if isinstance(a, Point):
        return b.contains(a.r, tol)
    if isinstance(b, Point):
        return a.contains(b.r, tol)
    return a.lo <= b.hi + tol and b.lo <= a.hi + tol


# ---------------------------------------------------------------------------
# Pictures

Product = tuple[RadialSet, RadialSet]


@dataclass(frozen=True)
class SpectralPicture:
    """Finite union of products of radial sets, labeled sigma_T, sigma_Te, ..."""

    label: str
    primitives: tuple[Product, ...]

    def contains(self, point, tol: float = GEOM_TOL) -> bool:
        r1, r2 = point
        return any(p.contains(r1, tol) and q.contains(r2, tol) for p, q in self.primitives)

    def normal_form(self) -> "SpectralPicture":
        """Merge duplicates and absorb products contained in other products."""
        prims = []
        for p, q in self.primitives:
            c = (_canon(p), _canon(q))
            if c not in prims:
                prims.append(c)
        kept = []
        for i, a in enumerate(prims):
            # absorbed by a strict container, or by an earlier set-equal product
            absorbed = any(
                i != j
                and _product_contains(b, a)
                and (not _product_contains(a, b) or j < i)
                for j, b in enumerate(prims)
            )
            if not absorbed:
                kept.append(a)
        kept.sort(key=lambda pr: (pr[0].key(), pr[1].key()))
        return SpectralPicture(self.label, tuple(kept))

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "primitives": [
                {"z1": _radial_json(p), "z2": _radial_json(q)}
                for p, q in self.normal_form().primitives
            ],
        }


def _canon(r: RadialSet) -> RadialSet:
    if isinstance(r, Interval) and abs(r.hi - r.lo) <= 0.0:
        return Point(r.lo)
    return r


def _product_contains(outer: Product, inner: Product) -> bool:
    return radial_contains_set(outer[0], inner[0]) and radial_contains_set(outer[1], inner[1])


def _radial_json(r: RadialSet) -> dict:
    if isinstance(r, Interval):
        return {"kind": "interval", "lo": r.lo, "hi": r.hi}
    if isinstance(r, Point):
        return {"kind": "point", "r": r.r}
    return {"kind": "geometric", "r0": r.r0, "q": r.q}


def radial_from_json(data: dict) -> RadialSet:
    kind = data["kind"]
    if kind == "interval":
        return Interval(data["lo"], data["hi"])
    if kind == "point":
        return Point(data["r"])
    if kind == "geometric":
        return GeometricFamily(data["r0"], data["q"])
    raise ValueError(f"unknown radial kind: {kind}")


def picture_from_json(data: dict) -> SpectralPicture:
    prims = tuple(
        (radial_from_json(pr["z1"]), radial_from_json(pr["z2"])) for pr in data["primitives"]
    )
    return SpectralPicture(data["label"], prims)


def same_picture(a: SpectralPicture, b: SpectralPicture, tol: float = 0.0) -> bool:
    """Structural equality after normal form (labels not compared)."""
    pa, pb = a.normal_form().primitives, b.normal_form().primitives
    if len(pa) != len(pb):
        return False
    return all(
        _same_radial(x[0], y[0], tol) and _same_radial(x[1], y[1], tol)
        for x, y in zip(pa, pb)
    )


def _same_radial(x: RadialSet, y: RadialSet, tol: float) -> bool:
    if type(x) is not type(y):
        return False
    kx, ky = x.key(), y.key()
    return all(abs(a - b) <= tol for a, b in zip(kx[1:], ky[1:]))


@dataclass(frozen=True)
class PictureSet:
    """The spectral pictures of one diagram, keyed by classical labels."""

    sigma_t: SpectralPicture
    sigma_te: SpectralPicture
    others: tuple[tuple[str, SpectralPicture], ...] = ()

    def all_pictures(self):
        yield self.sigma_t
        yield self.sigma_te
        for _, p in self.others:
            yield p

    def to_json(self) -> dict:
        out = {"sigma_T": self.sigma_t.to_json(), "sigma_Te": self.sigma_te.to_json()}
        for name, p in self.others:
            out[name] = p.to_json()
        return out


# ---------------------------------------------------------------------------
# Closed-form pictures

@dataclass(frozen=True)
class OneVarPicture:
    """Spectrum disk radius, essential circle radius, and inner Fredholm index."""

    radius: float
    essential_radius: float
    fredholm_index_inside: int = -1


def picture_1var(shift: UnilateralShift, check_terms: int = 64) -> OneVarPicture:
    """Closed disk + circle picture of a hyponormal one-variable shift."""
    if not is_hyponormal_1d(shift, check_terms):
        raise ValueError("closed-form one-variable picture requires a hyponormal shift")
    r = norm(shift)
    return OneVarPicture(radius=r, essential_radius=r)


def picture_thm_compactper(d: WeightDiagram2D) -> PictureSet:
    """Pictures of a distinguished-row diagram with norm gap.

    Requires ||row_j|| = ||row_1|| < ||row_0|| (rows j >= 1 coincide by
    construction; the strict gap is checked and refused with a diagnostic).
    """
    if d.family.rows_equal_from != 1:
        raise NormGapError(f"family {d.family.tag} lacks the distinguished-row structure")
    a0 = norm(horizontal_slice(d, 0))
    a1 = norm(horizontal_slice(d, 1))
    if not a1 < a0 - 1e-12:
        raise NormGapError(
            f"hypothesis ||row_1|| < ||row_0|| fails: {a1:.12g} !< {a0:.12g}"
        )
    c = d.col0.declared_sup
    sigma_t = SpectralPicture(
        "sigma_T",
        (
            (interval(0.0, a1), interval(0.0, c)),
            (interval(0.0, a0), Point(0.0)),
        ),
    ).normal_form()
    sigma_te = SpectralPicture(
        "sigma_Te",
        (
            (interval(0.0, a1), Point(c)),
            (Point(a1), interval(0.0, c)),
            (Point(a0), Point(0.0)),
        ),
    ).normal_form()
    return PictureSet(
        sigma_t,
        sigma_te,
        others=(
            ("sigma_r", SpectralPicture("sigma_r", sigma_t.primitives)),
            ("sigma_re", SpectralPicture("sigma_re", sigma_te.primitives)),
        ),
    )


def picture_thm_khypo(kappa: float) -> PictureSet:
    """Unit square plus axis stub of length sqrt(kappa); essential: L-shape plus dot."""
    if not kappa > 1:
        raise ValueError(f"kappa must be > 1, got {kappa}")
    rk = math.sqrt(kappa)
    sigma_t = SpectralPicture(
        "sigma_T",
        (
            (interval(0.0, 1.0), interval(0.0, 1.0)),
            (interval(0.0, rk), Point(0.0)),
        ),
    ).normal_form()
    sigma_te = SpectralPicture(
        "sigma_Te",
        (
            (Point(rk), Point(0.0)),
            (Point(1.0), interval(0.0, 1.0)),
            (interval(0.0, 1.0), Point(1.0)),
        ),
    ).normal_form()
    return PictureSet(
        sigma_t,
        sigma_te,
        others=(
            ("sigma_r", SpectralPicture("sigma_r", sigma_t.primitives)),
            ("sigma_re", SpectralPicture("sigma_re", sigma_te.primitives)),
        ),
    )


def picture_thm_important(ells, c: float) -> PictureSet:
    """Rectangle of height c plus axis stub to sqrt(max ell); essential spectrum
    carries one circle radius per distinct Bergman-like row index."""
    ells = tuple(int(l) for l in ells)
    if not ells or any(l < 1 for l in ells):
        raise ValueError(f"ells must be integers >= 1, got {ells}")
    if not c > 0:
        raise ValueError("column norm c must be positive")
    b0 = math.sqrt(max(ells))
    sigma_t = SpectralPicture(
        "sigma_T",
        (
            (interval(0.0, 1.0), interval(0.0, c)),
            (interval(0.0, b0), Point(0.0)),
        ),
    ).normal_form()
    prims: list[Product] = [
        (interval(0.0, 1.0), Point(c)),
        (Point(1.0), interval(0.0, c)),
    ]
    prims += [(Point(math.sqrt(l)), Point(0.0)) for l in ells]
    sigma_te = SpectralPicture("sigma_Te", tuple(prims)).normal_form()
    return PictureSet(sigma_t, sigma_te)


def picture_example_exof1atom(alpha: float, beta: float) -> PictureSet:
    """Axis cross with empty interior; essential spectrum is two geometric circle
    families accumulating at the origin."""
    if not (0.0 < alpha < beta <= 1.0):
        raise ValueError(f"parameters must satisfy 0 < alpha < beta <= 1, got {alpha}, {beta}")
    sigma_t = SpectralPicture(
        "sigma_T",
        (
            (interval(0.0, 1.0), Point(0.0)),
            (Point(0.0), interval(0.0, beta)),
        ),
    ).normal_form()
    sigma_te = SpectralPicture(
        "sigma_Te",
        (
            (Point(0.0), Point(0.0)),
            (GeometricFamily(1.0, alpha), Point(0.0)),
            (Point(0.0), GeometricFamily(beta, alpha)),
        ),
    ).normal_form()
    others = (
        ("sigma_r", SpectralPicture("sigma_r", sigma_t.primitives)),
        ("sigma_l", SpectralPicture("sigma_l", sigma_te.primitives)),
        ("sigma_le", SpectralPicture("sigma_le", sigma_te.primitives)),
        ("sigma_re", SpectralPicture("sigma_re", sigma_te.primitives)),
    )
    return PictureSet(sigma_t, sigma_te, others)


def picture_for(d: WeightDiagram2D) -> PictureSet:
    """Closed-form pictures dispatched on the family tag."""
    tag = d.family.tag
    p = d.family.params
    if tag == "thm-khypo":
        return picture_thm_khypo(p["kappa"])
    if tag == "thm-important":
        return picture_thm_important(p["ells"], d.col0.declared_sup)
    if tag == "exof1atom":
        return picture_example_exof1atom(p["alpha"], p["beta"])
    if d.family.rows_equal_from == 1:
        return picture_thm_compactper(d)
    raise NormGapError(f"no closed-form picture registered for family {tag}")


# ---------------------------------------------------------------------------
# Arrangement: outer boundary and connected components

def _axis_breakpoints(picture: SpectralPicture, axis: int) -> list[float]:
    pts = {0.0}
    for prim in picture.primitives:
        pts.update(prim[axis].breakpoints())
    mx = max(pts)
    pts.add(mx * 1.25 + 1.0)  # sentinel: everything beyond is unbounded territory
    out = sorted(pts)
    merged = [out[0]]
    for x in out[1:]:
        if x - merged[-1] > GEOM_TOL:
            merged.append(x)
    return merged


def _cell_coords(breaks: list[float]):
    """Alternating 0-cells (breakpoints) and open 1-cells (gaps): 2n-1 flags."""
    coords = []
    for i, b in enumerate(breaks):
        coords.append(("pt", b))
        if i + 1 < len(breaks):
            coords.append(("gap", 0.5 * (b + breaks[i + 1])))
    return coords


def _boundary_picture(picture: SpectralPicture) -> SpectralPicture:
    """Outer boundary on the cell arrangement of a finite-product picture.

    GeometricFamily coordinates are replaced by their closure's extremes (the
    maximum element and the accumulation point), per the documented convention.
    """
    prims = []
    for p, q in picture.normal_form().primitives:
        for pp in _geom_closure(p):
            for qq in _geom_closure(q):
                prims.append((pp, qq))
    flat = SpectralPicture(picture.label, tuple(prims)).normal_form()
    xs = _axis_breakpoints(flat, 0)
    ys = _axis_breakpoints(flat, 1)
    cx = _cell_coords(xs)
    cy = _cell_coords(ys)
    nx, ny = len(cx), len(cy)
    in_l = [
        [flat.contains((cx[i][1], cy[j][1]), tol=GEOM_TOL * 0.5) for j in range(ny)]
        for i in range(nx)
    ]
    # flood the complement from the top-right open cell (certainly unbounded)
    in_u = [[False] * ny for _ in range(nx)]
    stack = [(nx - 1, ny - 1)]
    while stack:
        i, j = stack.pop()
        if i < 0 or j < 0 or i >= nx or j >= ny or in_u[i][j] or in_l[i][j]:
            continue
        in_u[i][j] = True
        stack.extend([(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)])
    # boundary cells: set cells that are faces of a U cell
    boundary = [
        [
            in_l[i][j]
            and any(
                0 <= i + di < nx and 0 <= j + dj < ny and in_u[i + di][j + dj]
                for di in (-1, 0, 1)
                for dj in (-1, 0, 1)
                if _is_face((i, j), (i + di, j + dj), cx, cy)
            )
            for j in range(ny)
        ]
        for i in range(nx)
    ]
    return SpectralPicture(
        f"outer_boundary({picture.label})", _cells_to_primitives(boundary, cx, cy, xs, ys)
    ).normal_form()


def _geom_closure(r: RadialSet):
    if isinstance(r, GeometricFamily):
        return (Point(r.r0), Point(0.0))
    return (r,)


def _is_face(cell, other, cx, cy) -> bool:
    """cell is a (proper) face of other in the flags grid."""
    (i, j), (a, b) = cell, other
    di, dj = abs(i - a), abs(j - b)
    if di + dj == 1:
        if i != a:
            lower = cx[i][0] == "pt" and cx[a][0] == "gap"
            return lower and cy[j][0] == cy[b][0]
        lower = cy[j][0] == "pt" and cy[b][0] == "gap"
        return lower and cx[i][0] == cx[a][0]
    if di == 1 and dj == 1:
        # corner of an open 2-cell
        return (
            cx[i][0] == "pt"
            and cy[j][0] == "pt"
            and cx[a][0] == "gap"
            and cy[b][0] == "gap"
        )
    return False


def _cells_to_primitives(mask, cx, cy, xs, ys):
    """Merge boundary cells into maximal horizontal/vertical segments and points."""
    nx, ny = len(cx), len(cy)
    prims: list[Product] = []
    used = [[False] * ny for _ in range(nx)]
    # horizontal runs along each 0-cell row of y
    for j in range(0, ny, 2):
        y = cy[j][1]
        i = 0
        while i < nx:
            if mask[i][j] and not (cx[i][0] == "pt" and _run_len(mask, i, j, nx) == 1):
                start = i
                while i < nx and mask[i][j]:
                    used[i][j] = True
                    i += 1
                x_lo = cx[start][1] if cx[start][0] == "pt" else xs[start // 2]
                x_hi = cx[i - 1][1] if cx[i - 1][0] == "pt" else xs[i // 2]
                prims.append((interval(x_lo, x_hi), Point(y)))
            else:
                i += 1
    # vertical runs along each 0-cell column of x
    for i in range(0, nx, 2):
        x = cx[i][1]
        j = 0
        while j < ny:
            if mask[i][j] and not (cy[j][0] == "pt" and _run_len_col(mask, i, j, ny) == 1):
                start = j
                while j < ny and mask[i][j]:
                    used[i][j] = True
                    j += 1
                y_lo = cy[start][1] if cy[start][0] == "pt" else ys[start // 2]
                y_hi = cy[j - 1][1] if cy[j - 1][0] == "pt" else ys[j // 2]
                prims.append((Point(x), interval(y_lo, y_hi)))
            else:
                j += 1
    # isolated 0-cells not swept into any run
    for i in range(0, nx, 2):
        for j in range(0, ny, 2):
            if mask[i][j] and not used[i][j]:
                prims.append((Point(cx[i][1]), Point(cy[j][1])))
    return tuple(prims)


def _run_len(mask, i, j, nx) -> int:
    n = 0
    while i + n < nx and mask[i + n][j]:
        n += 1
    return n


def _run_len_col(mask, i, j, ny) -> int:
    n = 0
    while j + n < ny and mask[i][j + n]:
        n += 1
    return n


def outer_boundary(picture: SpectralPicture) -> SpectralPicture:
    """Boundary of the unbounded component of the quadrant complement."""
    return _boundary_picture(picture)


def component_count(picture: SpectralPicture):
    """Connected components of the modulus-plane set.

    Each geometric family contributes countably many circles; those not
    eventually absorbed by another primitive make the count infinite
    (returned as math.inf).  The accumulation slice through 0 always belongs
    to the set, so it merges with anything containing it.
    """
    prims = list(picture.normal_form().primitives)
    if not prims:
        return 0
    expanded: list[Product] = []
    infinite_tails = 0
    for p, q in prims:
        gp, gq = isinstance(p, GeometricFamily), isinstance(q, GeometricFamily)
        if not gp and not gq:
            expanded.append((p, q))
            continue
        fam, other, fam_axis = (p, q, 0) if gp else (q, p, 1)
        others = [pr for pr in prims if pr != (p, q)]
        absorbed = any(
            _tail_absorbs(pr[fam_axis]) and radial_contains_set(pr[1 - fam_axis], other)
            for pr in others
        )
        if not absorbed:
            infinite_tails += 1
        # representative members keep finite adjacency honest near the head
        for r in fam.members(12) + [0.0]:
            pt = Point(r)
            expanded.append((pt, other) if fam_axis == 0 else (other, pt))
    if infinite_tails:
        return math.inf
    n = len(expanded)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if radial_intersects(expanded[i][0], expanded[j][0]) and radial_intersects(
                expanded[i][1], expanded[j][1]
            ):
                parent[find(i)] = find(j)
    return len({find(i) for i in range(n)})


def _tail_absorbs(r: RadialSet) -> bool:
    """Can this radial set contain a full tail r0*q^k -> 0 of a geometric family?"""
    return isinstance(r, Interval) and r.lo <= GEOM_TOL and r.hi > GEOM_TOL


# ---------------------------------------------------------------------------
# Necessary conditions and probes

@dataclass(frozen=True)
class SliceNormVerdict:
    passed: bool
    row_norms: tuple[float, ...]
    col_norms: tuple[float, ...]
    tol: float

    def __bool__(self) -> bool:
        return self.passed


def slice_norm_necessary_check(d: WeightDiagram2D, j_max: int) -> SliceNormVerdict:
    """Norms of slices 1..j_max must all agree in each direction.

    A FAIL certifies the diagram is not subnormal; a PASS is merely consistent
    with subnormality.
    """
    if j_max < 2:
        raise ValueError("need at least two slices to compare")
    rows = tuple(norm(horizontal_slice(d, j)) for j in range(1, j_max + 1))
    cols = tuple(norm(vertical_slice(d, i)) for i in range(1, j_max + 1))
    ok = all(abs(r - rows[0]) <= NORM_EQ_TOL for r in rows) and all(
        abs(c - cols[0]) <= NORM_EQ_TOL for c in cols
    )
    return SliceNormVerdict(ok, rows, cols, NORM_EQ_TOL)


def kernel_convergence_probe(
    d: WeightDiagram2D, point, terms: int = 60, delta: float = 0.02
):
    """Root-test classification of the reproducing-kernel series at (r1, r2).

    Terms are r1^(2 m1) * r2^(2 m2) / gamma_m over the triangle |m| <= terms.
    CONVERGES when the sup over the deeper diagonals of the root statistic
    stays below 1 - delta; DIVERGES when some axis-parallel or diagonal lattice
    ray shows a root statistic above 1 + delta; UNDECIDED otherwise (root
    tests cannot resolve boundary behavior).
    """
    r1, r2 = point
    if r1 < 0 or r2 < 0:
        raise ValueError("modulus coordinates must be >= 0")
    if r1 == 0 and r2 == 0:
        return CONVERGES
    n = terms

    def log_term(m1: int, m2: int):
        if (r1 == 0 and m1 > 0) or (r2 == 0 and m2 > 0):
            return None  # term is exactly 0
        lt = -math.log(d.gamma((m1, m2)))
        if m1 > 0:
            lt += 2 * m1 * math.log(r1)
        if m2 > 0:
            lt += 2 * m2 * math.log(r2)
        return lt

    # diagonal sup over the deeper half
    diag_stat = -math.inf
    for deg in range(max(2, n // 2), n + 1):
        best = max(
            (lt for m1 in range(deg + 1) if (lt := log_term(m1, deg - m1)) is not None),
            default=None,
        )
        if best is not None:
            diag_stat = max(diag_stat, best / deg)
    # rays: horizontal at small heights, vertical at small offsets, main diagonal
    ray_stat = -math.inf
    rays = [((1, 0), (0, c)) for c in range(0, 6)]
    rays += [((0, 1), (c, 0)) for c in range(0, 6)]
    rays += [((1, 1), (0, 0))]
    for (d1, d2), (b1, b2) in rays:
        steps = (n - b1 - b2) // (d1 + d2)
        if steps < 8:
            continue
        m1, m2 = b1 + d1 * steps, b2 + d2 * steps
        lt = log_term(m1, m2)
        if lt is not None:
            ray_stat = max(ray_stat, lt / steps)
    if ray_stat > math.log1p(delta):
        return DIVERGES
    if diag_stat < math.log(1.0 - delta):
        return CONVERGES
    return UNDECIDED


@dataclass(frozen=True)
class IdentityCheck:
    lhs: float  # canonical left-inverse norm at the requested resolution
    rhs: float  # reciprocal distance to the closed-form left spectrum
    equal: bool


def left_identity_check(shift: UnilateralShift, lam: complex, n: int) -> IdentityCheck:
    """Compare the canonical left-inverse norm with 1/dist(lambda, sigma_l).

    Only for shifts of the form (a, ..., a, 1, 1, ...) with 0 < a <= 1: there
    the left spectrum is exactly the unit circle (the shift is injective and
    bounded below inside the disk, with Fredholm index -1), so the right-hand
    side has a closed form.  The identity is a theorem for the full spectrum
    but can fail for the left spectrum; this check quantifies the failure.
    """
    seq = shift.weights
    if not isinstance(seq.tail, ConstantTail) or abs(seq.tail.value - 1.0) > 1e-12:
        raise ValueError("identity check requires an eventually-unit-weight shift")
    head = seq.head
    if head and (max(head) > 1.0 + 1e-12 or any(abs(w - head[0]) > 1e-12 for w in head)):
        raise ValueError("identity check requires leading weights equal and <= 1")
    if abs(abs(lam) - 1.0) <= 1e-9:
        raise ValueError("lambda on the unit circle is in the left spectrum")
    if abs(lam) > 1.0:
        raise ValueError("lambda must lie inside the unit disk")
    lhs = canonical_left_inverse_norm(shift, lam, n)
    rhs = 1.0 / (1.0 - abs(lam))
    return IdentityCheck(lhs, rhs, abs(lhs - rhs) <= 1e-6 * max(1.0, rhs))
