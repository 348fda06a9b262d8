"""Level-set extraction for complex functions over rectangles.

An "x-ray" draws the curves Im f = 0 (thick) and Re f = 0 (thin).  The two
families meet exactly at zeros and poles; same-family lines meet where the
derivative vanishes (saddles).  This module samples a sign grid, runs
marching squares with center-sample subdivision of ambiguous cells, Newton
projects the vertices onto the true level set, links segments into
polylines, numbers the lines by their crossings of sigma = -1, finds and
classifies singular points, and follows thick lines from Gram points to
their paired zeros.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import gram as _gram
from .engine import ConvergenceError, DomainError
from .gallery import get_oracle

__all__ = [
    "Rectangle",
    "GridSpec",
    "CurvePolyline",
    "Singularity",
    "Sheet",
    "SampleGrid",
    "XRayResult",
    "sample_grid",
    "extract_curves",
    "classify_and_number",
    "detect_singularities",
    "trace_rectangle",
    "winding_number",
    "monotonicity_check",
    "trace_sheet",
    "sheet_permutation",
    "curve_crossings",
    "THIN_SIGMA_MAX",
]

# largest real part at which Re zeta can vanish off the real axis
THIN_SIGMA_MAX = 1.6363


@dataclass(frozen=True)
class Rectangle:
    sigma_min: float
    sigma_max: float
    t_min: float
    t_max: float

    def __post_init__(self):
        if not (self.sigma_min < self.sigma_max and self.t_min < self.t_max):
            raise DomainError("Rectangle: need sigma_min < sigma_max and t_min < t_max")

    @property
    def width(self):
        return self.sigma_max - self.sigma_min

    @property
    def height(self):
        return self.t_max - self.t_min

    def as_tuple(self):
        return (self.sigma_min, self.sigma_max, self.t_min, self.t_max)

    def contains(self, z, pad=0.0):
        return (self.sigma_min - pad <= z.real <= self.sigma_max + pad
                and self.t_min - pad <= z.imag <= self.t_max + pad)


@dataclass(frozen=True)
class GridSpec:
    nx: int
    ny: int
    max_refinement_depth: int = 5

    def __post_init__(self):
        if self.nx < 8 or self.ny < 8:
            raise DomainError("GridSpec: nx and ny must be >= 8")
        if not 0 <= self.max_refinement_depth <= 8:
            raise DomainError("GridSpec: max_refinement_depth must be in [0, 8]")

    @classmethod
    def for_rect(cls, rect, cells_per_unit=8, depth=5):
        nx = max(8, int(math.ceil(rect.width * cells_per_unit)))
        ny = max(8, int(math.ceil(rect.height * cells_per_unit)))
        return cls(nx=nx, ny=ny, max_refinement_depth=depth)


@dataclass
class CurvePolyline:
    kind: str  # "thick" (Im f = 0) or "thin" (Re f = 0)
    points: list
    closed: bool = False
    line_number: int = None
    crossing_numbers: list = field(default_factory=list)
    attached_singularities: list = field(default_factory=list)
    flags: tuple = ()

    def __post_init__(self):
        if self.kind not in ("thick", "thin"):
            raise ValueError("CurvePolyline: kind must be thick or thin")
        if len(self.points) < 2:
            raise ValueError("CurvePolyline: needs at least two points")


@dataclass
class Singularity:
    point: complex
    type: str  # "zero", "pole", "saddle"
    multiplicity: int = 1
    flags: tuple = ()


@dataclass
class Sheet:
    gram_point_index: int
    zero: complex
    curve: CurvePolyline
    line_numbers: tuple = None
    degenerate: bool = False  # Gram point on a zero-free parallel
    flags: tuple = ()


@dataclass
class SampleGrid:
    rect: Rectangle
    grid: GridSpec
    ss: np.ndarray  # sample coordinates, (ny+1, nx+1), possibly nudged
    values: np.ndarray
    errors: np.ndarray
    invalid: np.ndarray
    nudged: np.ndarray
    warnings: list

    @property
    def dx(self):
        return self.rect.width / self.grid.nx

    @property
    def dy(self):
        return self.rect.height / self.grid.ny

    @property
    def sign_re(self):
        return np.where(self.values.real >= 0, 1, -1).astype(np.int8)

    @property
    def sign_im(self):
        return np.where(self.values.imag >= 0, 1, -1).astype(np.int8)


@dataclass
class XRayResult:
    rect: Rectangle
    grid: GridSpec
    curves: list
    singularities: list
    warnings: list


def _fval(oracle, z):
    try:
        r = oracle(z)
    except (ValueError, ArithmeticError):
        return complex("nan")
    return r.value if hasattr(r, "value") else complex(r)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def sample_grid(oracle, rect, grid):
    """Evaluate the oracle on the grid nodes, nudging exact zeros and poles.

    Nodes landing exactly on a declared pole, or where either component of
    the value is exactly zero, are shifted by ~1e-9 cell widths and flagged;
    nodes whose evaluation is not finite are marked invalid.
    """
    xs = np.linspace(rect.sigma_min, rect.sigma_max, grid.nx + 1)
    ys = np.linspace(rect.t_min, rect.t_max, grid.ny + 1)
    ss = (xs[None, :] + 1j * ys[:, None]).astype(np.complex128)
    dx = rect.width / grid.nx
    dy = rect.height / grid.ny
    nudge = 1e-9 * min(dx, dy)
    nudged = np.zeros(ss.shape, dtype=bool)
    for p in oracle.poles_in(rect.as_tuple()):
        hit = np.abs(ss - p) < 0.5 * nudge
        if hit.any():
            ss[hit] += nudge * (1.0 + 1.0j)
            nudged |= hit
    vals, errs = oracle.eval_array(ss.ravel())
    vals = vals.reshape(ss.shape).copy()
    errs = np.asarray(errs).reshape(ss.shape).copy()
    exact = ((vals.real == 0.0) | (vals.imag == 0.0)) & np.isfinite(vals)
    if exact.any():
        ss[exact] += nudge * (1.0 + 1.0j)
        nudged |= exact
        v2, e2 = oracle.eval_array(ss[exact])
        vals[exact] = v2
        errs[exact] = e2
    invalid = ~(np.isfinite(vals) & np.isfinite(ss))
    warnings = []
    n_bad = int(invalid.sum())
    if n_bad:
        warnings.append("%d grid nodes failed to evaluate; incident cells skipped" % n_bad)
    return SampleGrid(rect=rect, grid=grid, ss=ss, values=vals, errors=errs,
                      invalid=invalid, nudged=nudged, warnings=warnings)


# ---------------------------------------------------------------------------
# marching squares with center-sample subdivision
# ---------------------------------------------------------------------------

# segment endpoints per sign case, as pairs of edge ids
# edges: 0 bottom (c0-c1), 1 right (c1-c2), 2 top (c3-c2), 3 left (c0-c3)
_CASE_EDGES = {
    1: ((3, 0),), 2: ((0, 1),), 3: ((3, 1),), 4: ((1, 2),),
    6: ((0, 2),), 7: ((3, 2),), 8: ((3, 2),), 9: ((0, 2),),
    11: ((1, 2),), 12: ((3, 1),), 13: ((0, 1),), 14: ((3, 0),),
}
_AMBIG = (5, 10)


def _edge_point(ea, eb, za, zb, fa, fb):
    d = fa - fb
    tau = fa / d if d != 0.0 else 0.5
    tau = min(max(tau, 1e-12), 1.0 - 1e-12)
    return za + tau * (zb - za)


def _march_cell(oracle, comp_index, z00, z10, z11, z01, f00, f10, f11, f01,
                depth, allowance, segments, flagged):
    """Emit level-set segments for one (sub)cell; recurse on ambiguity.

    comp_index 0 traces Re f = 0, 1 traces Im f = 0.  Corner order is
    counterclockwise from the lower left.  flagged collects the bounding
    boxes of cells left unresolved at the depth allowance.
    """
    g00 = f00.real if comp_index == 0 else f00.imag
    g10 = f10.real if comp_index == 0 else f10.imag
    g11 = f11.real if comp_index == 0 else f11.imag
    g01 = f01.real if comp_index == 0 else f01.imag
    if not (math.isfinite(g00) and math.isfinite(g10)
            and math.isfinite(g11) and math.isfinite(g01)):
        flagged.append((min(z00.real, z11.real), max(z00.real, z11.real),
                        min(z00.imag, z11.imag), max(z00.imag, z11.imag)))
        return
    case = ((1 if g00 >= 0 else 0) | (2 if g10 >= 0 else 0)
            | (4 if g11 >= 0 else 0) | (8 if g01 >= 0 else 0))
    if case in (0, 15):
        return
    scale = max(abs(f00), abs(f10), abs(f11), abs(f01), 1e-300)
    if case in _AMBIG:
        if depth >= allowance:
            flagged.append((min(z00.real, z11.real), max(z00.real, z11.real),
                            min(z00.imag, z11.imag), max(z00.imag, z11.imag)))
            return
        zb = 0.5 * (z00 + z10)
        zr = 0.5 * (z10 + z11)
        zt = 0.5 * (z01 + z11)
        zl = 0.5 * (z00 + z01)
        zc = 0.25 * (z00 + z10 + z11 + z01)
        fb = _fval(oracle, zb)
        fr = _fval(oracle, zr)
        ft = _fval(oracle, zt)
        fl = _fval(oracle, zl)
        fc = _fval(oracle, zc)
        _march_cell(oracle, comp_index, z00, zb, zc, zl, f00, fb, fc, fl,
                    depth + 1, allowance, segments, flagged)
        _march_cell(oracle, comp_index, zb, z10, zr, zc, fb, f10, fr, fc,
                    depth + 1, allowance, segments, flagged)
        _march_cell(oracle, comp_index, zc, zr, z11, zt, fc, fr, f11, ft,
                    depth + 1, allowance, segments, flagged)
        _march_cell(oracle, comp_index, zl, zc, zt, z01, fl, fc, ft, f01,
                    depth + 1, allowance, segments, flagged)
        return
    corners = (z00, z10, z11, z01)
    gvals = (g00, g10, g11, g01)
    edge_corner = ((0, 1), (1, 2), (3, 2), (0, 3))
    for ea, eb in _CASE_EDGES[case]:
        ca, cb = edge_corner[ea]
        pa = _edge_point(ea, eb, corners[ca], corners[cb], gvals[ca], gvals[cb])
        ca2, cb2 = edge_corner[eb]
        pb = _edge_point(ea, eb, corners[ca2], corners[cb2], gvals[ca2], gvals[cb2])
        if pa != pb:
            segments.append((pa, pb, scale))


def extract_curves(sgrid, oracle, kinds=("thick", "thin")):
    """Marching-squares extraction of the requested level-set families.

    Vertices are Newton-projected onto the level set to |component| below
    1e-9 times the local value scale; segments are linked into polylines.
    Ambiguous cells unresolved at max depth truncate curves (never joined).
    Returns (curves, warnings).
    """
    rect, grid = sgrid.rect, sgrid.grid
    vals = sgrid.values
    ss = sgrid.ss
    dx, dy = sgrid.dx, sgrid.dy
    pole_cells = set()
    for p in oracle.poles_in(rect.as_tuple()):
        j = int((p.real - rect.sigma_min) / dx)
        i = int((p.imag - rect.t_min) / dy)
        if 0 <= i < grid.ny and 0 <= j < grid.nx:
            pole_cells.add((i, j))
    ok = ~sgrid.invalid
    cell_ok = ok[:-1, :-1] & ok[:-1, 1:] & ok[1:, 1:] & ok[1:, :-1]
    curves = []
    warnings = list(sgrid.warnings)
    for kind in kinds:
        ci = 1 if kind == "thick" else 0
        comp = vals.imag if ci == 1 else vals.real
        sgn = comp >= 0
        mixed = ((sgn[:-1, :-1] != sgn[:-1, 1:]) | (sgn[:-1, :-1] != sgn[1:, 1:])
                 | (sgn[:-1, :-1] != sgn[1:, :-1]))
        active = np.argwhere(mixed & cell_ok)
        segments = []
        flagged = []
        for i, j in active:
            allowance = grid.max_refinement_depth + (1 if (i, j) in pole_cells else 0)
            _march_cell(oracle, ci,
                        ss[i, j], ss[i, j + 1], ss[i + 1, j + 1], ss[i + 1, j],
                        vals[i, j], vals[i, j + 1], vals[i + 1, j + 1], vals[i + 1, j],
                        0, allowance, segments, flagged)
        if flagged:
            warnings.append("%s: %d cells unresolved at max refinement depth" % (kind, len(flagged)))
        segments = _project_segments(oracle, segments, ci, min(dx, dy))
        chains = _link_segments(segments, 0.35 * min(dx, dy))
        for pts, closed in chains:
            if len(pts) < 2:
                continue
            flags = ()
            for box in flagged:
                for endpoint in (pts[0], pts[-1]):
                    if (box[0] - dx <= endpoint.real <= box[1] + dx
                            and box[2] - dy <= endpoint.imag <= box[3] + dy):
                        flags = ("truncated-at-ambiguity",)
            curves.append(CurvePolyline(kind=kind, points=pts, closed=closed, flags=flags))
    return curves, warnings


def _project_segments(oracle, segments, comp_index, cell):
    """Newton-chord projection of segment endpoints onto the level set."""
    if not segments:
        return []
    uniq = {}
    for pa, pb, scale in segments:
        for p in (pa, pb):
            if p not in uniq or uniq[p] < scale:
                uniq[p] = scale
    pts = np.array(list(uniq.keys()), dtype=np.complex128)
    scales = np.array([uniq[p] for p in uniq])
    z = pts.copy()
    fp = oracle.derivative_array(z)
    mag2 = np.abs(fp) ** 2
    bad = mag2 < 1e-60
    mag2[bad] = 1.0
    direction = np.conj(fp) / mag2 if comp_index == 0 else 1j * np.conj(fp) / mag2
    tol = 1e-9 * np.maximum(scales, 1e-30)
    live = ~bad
    for _ in range(6):
        if not live.any():
            break
        v, _ = oracle.eval_array(z[live])
        g = v.real if comp_index == 0 else v.imag
        done = np.abs(g) <= tol[live]
        idx = np.nonzero(live)[0]
        move = g * direction[idx]
        znew = z[idx] - np.where(done, 0.0, move)
        drift = np.abs(znew - pts[idx]) > 0.75 * cell
        znew[drift] = pts[idx][drift]
        z[idx] = znew
        nl = live.copy()
        nl[idx[done | drift]] = False
        live = nl
    moved = dict(zip(pts.tolist(), z.tolist()))
    return [(moved[pa], moved[pb], s) for pa, pb, s in segments if moved[pa] != moved[pb]]


class _DSU:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, a):
        while self.p[a] != a:
            self.p[a] = self.p[self.p[a]]
            a = self.p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.p[rb] = ra


def _link_segments(segments, link_tol):
    """Join segments into chains; endpoint gaps under link_tol are merged.

    Only degree-<=1 nodes merge by proximity, so resolved saddle branches
    are never glued together.  Returns [(points, closed)] deterministically.
    """
    if not segments:
        return []
    node_id = {}
    coords = []
    edges = []
    for pa, pb, _ in segments:
        ids = []
        for p in (pa, pb):
            if p not in node_id:
                node_id[p] = len(coords)
                coords.append(p)
            ids.append(node_id[p])
        if ids[0] != ids[1]:
            edges.append((ids[0], ids[1]))
    deg = [0] * len(coords)
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    dsu = _DSU(len(coords))
    binsize = max(link_tol, 1e-300)
    bins = {}
    for i, p in enumerate(coords):
        bins.setdefault((int(p.real // binsize), int(p.imag // binsize)), []).append(i)
    order = sorted(range(len(coords)), key=lambda i: (coords[i].real, coords[i].imag))
    for i in order:
        if deg[i] > 1:
            continue
        p = coords[i]
        bx, by = int(p.real // binsize), int(p.imag // binsize)
        best = None
        for ox in (-1, 0, 1):
            for oy in (-1, 0, 1):
                for j in bins.get((bx + ox, by + oy), ()):
                    if j == i or deg[j] > 1:
                        continue
                    if dsu.find(j) == dsu.find(i):
                        continue
                    d = abs(coords[j] - p)
                    if d <= link_tol and (best is None or d < best[0] or (d == best[0] and j < best[1])):
                        best = (d, j)
        if best is not None:
            dsu.union(i, best[1])
            deg[i] += 1
            deg[best[1]] += 1
    adj = {}
    for ei, (a, b) in enumerate(edges):
        ra, rb = dsu.find(a), dsu.find(b)
        if ra == rb:
            continue
        adj.setdefault(ra, []).append((rb, ei, a, b))
        adj.setdefault(rb, []).append((ra, ei, b, a))
    for k in adj:
        adj[k].sort(key=lambda e: e[1])
    degree = {k: len(v) for k, v in adj.items()}
    used = [False] * len(edges)
    chains = []

    def walk(start):
        pts = []
        cur = start
        while True:
            nxt = None
            for rb, ei, a_orig, b_orig in adj.get(cur, ()):
                if not used[ei]:
                    nxt = (rb, ei, a_orig, b_orig)
                    break
            if nxt is None:
                break
            rb, ei, a_orig, b_orig = nxt
            used[ei] = True
            if not pts:
                pts.append(coords[a_orig])
            pts.append(coords[b_orig])
            cur = rb
            if degree.get(cur, 0) != 2:
                break
        return pts, cur

    def keyfun(r):
        return (coords[r].real, coords[r].imag)

    terminals = sorted([r for r, d in degree.items() if d != 2], key=keyfun)
    for r in terminals:
        while any(not used[ei] for _, ei, _, _ in adj.get(r, ())):
            pts, end = walk(r)
            if len(pts) >= 2:
                chains.append((pts, False))
    rest = sorted([r for r in adj if any(not used[ei] for _, ei, _, _ in adj[r])], key=keyfun)
    for r in rest:
        while any(not used[ei] for _, ei, _, _ in adj.get(r, ())):
            pts, end = walk(r)
            if len(pts) >= 2:
                chains.append((pts, end == r and len(pts) > 3))
    return chains


# ---------------------------------------------------------------------------
# numbering and singularities
# ---------------------------------------------------------------------------


def curve_crossings(curve, sigma):
    """Heights where the polyline crosses the vertical line Re s = sigma."""
    ts = []
    pts = curve.points
    rng = range(len(pts) - 1) if not curve.closed else range(len(pts))
    for i in rng:
        a = pts[i]
        b = pts[(i + 1) % len(pts)]
        if (a.real - sigma) * (b.real - sigma) < 0:
            tau = (sigma - a.real) / (b.real - a.real)
            ts.append(a.imag + tau * (b.imag - a.imag))
    return sorted(ts)


def classify_and_number(curves, rect):
    """Assign line numbers at sigma = -1 crossings with t > 5.

    Thick lines must receive odd numbers and thin lines even ones; parity
    mismatches withhold the number and flag the curve.  Skipped entirely
    when the rectangle does not span sigma = -1.
    """
    if not (rect.sigma_min < -1.0 < rect.sigma_max):
        return curves
    for c in curves:
        nums = []
        ok = True
        for t in curve_crossings(c, -1.0):
            if t <= 5.0:
                continue
            n = _gram.line_number(t)
            want_odd = c.kind == "thick"
            if n % 2 == (1 if want_odd else 0):
                nums.append(n)
            else:
                ok = False
        c.crossing_numbers = nums
        if nums and ok:
            c.line_number = nums[0]
        elif not ok:
            c.flags = c.flags + ("parity-mismatch",)
    return curves


def _winding_on_circle(oracle, center, r, n=96):
    ang = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    zz = center + r * np.exp(1j * ang)
    v, e = oracle.eval_array(zz)
    if not np.isfinite(v).all() or (np.abs(v) <= 3.0 * np.asarray(e)).any():
        return None
    ph = np.angle(v)
    d = np.diff(np.concatenate([ph, ph[:1]]))
    d = (d + math.pi) % (2.0 * math.pi) - math.pi
    return int(round(float(d.sum()) / (2.0 * math.pi)))


def _seg_intersect(p1, p2, p3, p4):
    d1 = p2 - p1
    d2 = p4 - p3
    den = d1.real * d2.imag - d1.imag * d2.real
    if den == 0.0:
        return None
    w = p3 - p1
    s = (w.real * d2.imag - w.imag * d2.real) / den
    u = (w.real * d1.imag - w.imag * d1.real) / den
    if -1e-9 <= s <= 1 + 1e-9 and -1e-9 <= u <= 1 + 1e-9:
        return p1 + s * d1
    return None


def _newton_zero(oracle, z0, scale, cell, max_iter=15):
    z = z0
    for _ in range(max_iter):
        f = _fval(oracle, z)
        if abs(f) <= 1e-9 * max(scale, 1e-30):
            return z, True
        fp = oracle.derivative(z, h=1e-7 * max(1.0, abs(z)))
        if fp == 0 or not math.isfinite(abs(fp)):
            return z, False
        step = f / fp
        if abs(step) > 2.0 * cell:
            step *= 2.0 * cell / abs(step)
        z = z - step
        if abs(z - z0) > 4.0 * cell:
            return z0, False
    return z, abs(_fval(oracle, z)) <= 1e-6 * max(scale, 1e-30)


def _newton_saddle(oracle, z0, cell, max_iter=15):
    h = 1e-6 * max(1.0, abs(z0))

    def dfun(z):
        return (_fval(oracle, z + h) - _fval(oracle, z - h)) / (2.0 * h)

    z = z0
    for _ in range(max_iter):
        g = dfun(z)
        g2 = (dfun(z + h) - dfun(z - h)) / (2.0 * h)
        if g2 == 0 or not math.isfinite(abs(g2)):
            return z, False
        step = g / g2
        if abs(step) > 2.0 * cell:
            step *= 2.0 * cell / abs(step)
        z = z - step
        if abs(z - z0) > 4.0 * cell:
            return z0, False
        if abs(step) < 1e-11 * max(1.0, abs(z)):
            return z, True
    return z, False


def detect_singularities(curves, oracle, sgrid):
    """Find zeros/poles (thick-thin crossings) and saddles (derivative zeros).

    Zeros come from literal intersections of extracted thick and thin
    polylines, then complex Newton refinement; a crossing near a declared
    pole is recorded as that pole.  Saddles are found by Newton on f' = 0
    seeded from sign changes of a finite-difference derivative grid, since
    resolved same-kind branches avoid touching in the extracted curves.
    Each singularity is attached to every curve passing within a cell.
    """
    cell = min(sgrid.dx, sgrid.dy)
    rect = sgrid.rect
    poles = [complex(p) for p in oracle.poles_in(rect.as_tuple())]
    # thick x thin literal crossings
    cands = []
    binsize = max(sgrid.dx, sgrid.dy)
    thin_bins = {}
    for c in curves:
        if c.kind != "thin":
            continue
        pts = c.points
        n = len(pts) - 1 if not c.closed else len(pts)
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % len(pts)]
            key = (int(((a.real + b.real) / 2) // binsize), int(((a.imag + b.imag) / 2) // binsize))
            for ox in (-1, 0, 1):
                for oy in (-1, 0, 1):
                    thin_bins.setdefault((key[0] + ox, key[1] + oy), []).append((a, b))
    for c in curves:
        if c.kind != "thick":
            continue
        pts = c.points
        n = len(pts) - 1 if not c.closed else len(pts)
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % len(pts)]
            key = (int(((a.real + b.real) / 2) // binsize), int(((a.imag + b.imag) / 2) // binsize))
            for p3, p4 in thin_bins.get(key, ()):
                hit = _seg_intersect(a, b, p3, p4)
                if hit is not None:
                    cands.append(hit)
    cands.sort(key=lambda z: (z.real, z.imag))
    merged = []
    for z in cands:
        if all(abs(z - m) > 0.5 * cell for m in merged):
            merged.append(z)
    sings = []
    for p in poles:
        if rect.contains(p):
            m = _winding_on_circle(oracle, p, 0.4 * cell)
            sings.append(Singularity(point=complex(p), type="pole",
                                     multiplicity=abs(m) if m else 1))
    refined = []
    for z0 in merged:
        if any(abs(z0 - p) < 0.9 * cell for p in poles):
            continue
        scale = _local_scale(sgrid, z0)
        z, okflag = _newton_zero(oracle, z0, scale, cell)
        refined.append((complex(z), okflag, abs(_fval(oracle, z))))
    # a high-order zero attracts many crossings; cluster before winding
    clusters = []
    for rec in sorted(refined, key=lambda r: (r[0].real, r[0].imag)):
        for cl in clusters:
            if abs(rec[0] - cl[0][0]) <= 1.0 * cell:
                cl.append(rec)
                break
        else:
            clusters.append([rec])
    for cl in clusters:
        rep = min(cl, key=lambda r: r[2])
        spread = max(abs(r[0] - rep[0]) for r in cl)
        m = _winding_on_circle(oracle, rep[0], max(0.4 * cell, 1.6 * spread))
        if m is not None and m == 0:
            # not an actual zero (grazing near-crossing)
            continue
        flags = () if rep[1] else ("newton-diverged",)
        if m is None:
            m = 1
            flags = flags + ("multiplicity-unresolved",)
        sings.append(Singularity(point=rep[0], type="zero", multiplicity=max(1, m), flags=flags))
    # saddles: sign changes of the finite-difference derivative grid
    vals = sgrid.values
    fp = (vals[:, 2:] - vals[:, :-2]) / (2.0 * sgrid.dx)
    okn = ~sgrid.invalid
    okp = okn[:, 2:] & okn[:, :-2]
    sr = fp.real >= 0
    si = fp.imag >= 0
    both = ((sr[:-1, :-1] != sr[:-1, 1:]) | (sr[:-1, :-1] != sr[1:, 1:]) | (sr[:-1, :-1] != sr[1:, :-1])) \
        & ((si[:-1, :-1] != si[:-1, 1:]) | (si[:-1, :-1] != si[1:, 1:]) | (si[:-1, :-1] != si[1:, :-1])) \
        & okp[:-1, :-1] & okp[:-1, 1:] & okp[1:, 1:] & okp[1:, :-1]
    seeds = []
    for i, j in np.argwhere(both):
        seeds.append(0.25 * (sgrid.ss[i, j + 1] + sgrid.ss[i, j + 2]
                             + sgrid.ss[i + 1, j + 1] + sgrid.ss[i + 1, j + 2]))
    saddles = []
    for z0 in seeds:
        z, ok2 = _newton_saddle(oracle, z0, cell)
        if not ok2 or not rect.contains(z, pad=0.25 * cell):
            continue
        if any(abs(z - p) < cell for p in poles):
            continue
        if any(abs(z - s.point) < 0.5 * cell for s in sings if s.type == "zero"):
            continue
        if all(abs(z - s) > 0.5 * cell for s in saddles):
            saddles.append(z)
    for z in sorted(saddles, key=lambda w: (w.real, w.imag)):
        sings.append(Singularity(point=complex(z), type="saddle"))
    # attach to curves
    for c in curves:
        pts = np.array(c.points)
        c.attached_singularities = []
        for s in sings:
            if np.abs(pts - s.point).min() < 0.85 * cell:
                c.attached_singularities.append({"point": s.point, "type": s.type})
    return sings


def _local_scale(sgrid, z):
    j = int((z.real - sgrid.rect.sigma_min) / sgrid.dx)
    i = int((z.imag - sgrid.rect.t_min) / sgrid.dy)
    i = min(max(i, 0), sgrid.grid.ny - 1)
    j = min(max(j, 0), sgrid.grid.nx - 1)
    block = sgrid.values[i:i + 2, j:j + 2]
    good = np.isfinite(block)
    return float(np.abs(block[good]).max()) if good.any() else 1.0


def trace_rectangle(oracle, rect, grid=None, number_lines=True, find_singularities=True):
    """Full pipeline: sample, extract, number, and annotate singularities."""
    if grid is None:
        grid = GridSpec.for_rect(rect)
    sg = sample_grid(oracle, rect, grid)
    curves, warnings = extract_curves(sg, oracle)
    if number_lines:
        classify_and_number(curves, rect)
    sings = detect_singularities(curves, oracle, sg) if find_singularities else []
    return XRayResult(rect=rect, grid=grid, curves=curves, singularities=sings,
                      warnings=warnings)


# ---------------------------------------------------------------------------
# argument-principle winding over a rectangle boundary
# ---------------------------------------------------------------------------


def winding_number(oracle, rect, base_per_unit=4.0):
    """Winding of f around the rectangle boundary: zeros minus poles inside.

    The boundary is walked with adaptive refinement; a segment is split
    until consecutive phase jumps stay under pi/2.  Raises ConvergenceError
    when the boundary passes through (numerically) a zero.
    """
    corners = [complex(rect.sigma_min, rect.t_min), complex(rect.sigma_max, rect.t_min),
               complex(rect.sigma_max, rect.t_max), complex(rect.sigma_min, rect.t_max),
               complex(rect.sigma_min, rect.t_min)]
    total = 0.0
    for a, b in zip(corners[:-1], corners[1:]):
        n = max(4, int(abs(b - a) * base_per_unit))
        zz = [a + (b - a) * k / n for k in range(n + 1)]
        stack = list(zip(zz[:-1], zz[1:]))
        vcache = {}

        def val(z):
            if z not in vcache:
                r = oracle(z)
                v = r.value if hasattr(r, "value") else complex(r)
                e = r.error_bound if hasattr(r, "error_bound") else 0.0
                if not np.isfinite(v) or abs(v) <= 3.0 * e or v == 0:
                    raise ConvergenceError("winding_number: |f| at noise level on the boundary")
                vcache[z] = v
            return vcache[z]

        while stack:
            za, zb = stack.pop()
            wa, wb = val(za), val(zb)
            r = wb / wa
            d = math.atan2(r.imag, r.real)
            if abs(d) > 0.5 * math.pi or abs(math.log(abs(r))) > 1.5:
                if abs(zb - za) < 1e-12 * max(1.0, abs(za)):
                    raise ConvergenceError("winding_number: refinement underflow on boundary")
                zm = 0.5 * (za + zb)
                stack.append((za, zm))
                stack.append((zm, zb))
            else:
                total += d
    return int(round(total / (2.0 * math.pi)))


# ---------------------------------------------------------------------------
# monotonicity along curves
# ---------------------------------------------------------------------------


def monotonicity_check(curve, oracle):
    """Check strict monotonicity of the non-vanishing component along a curve.

    On thick curves Re f must be strictly monotone between consecutive
    attached saddles (Im f vanishes along the curve); on thin curves the
    roles swap.  Returns (ok, violation_points).
    """
    pts = np.array(curve.points)
    v, e = oracle.eval_array(pts)
    g = v.real if curve.kind == "thick" else v.imag
    saddle_pos = [s["point"] for s in curve.attached_singularities if s["type"] == "saddle"]
    cut = [0]
    for sp in saddle_pos:
        cut.append(int(np.abs(pts - sp).argmin()))
    cut.append(len(pts) - 1)
    cut = sorted(set(cut))
    violations = []
    for a, b in zip(cut[:-1], cut[1:]):
        seg = g[a:b + 1]
        err = np.asarray(e)[a:b + 1]
        d = np.diff(seg)
        tol = err[:-1] + err[1:]
        rising = d > tol
        falling = d < -tol
        if rising.any() and falling.any():
            flips = np.nonzero(rising[:-1] & falling[1:] | (falling[:-1] & rising[1:]))[0]
            for i in flips:
                violations.append(complex(pts[a + i + 1]))
    return len(violations) == 0, violations


# ---------------------------------------------------------------------------
# sheet tracing: Gram point to its zero along the thick line
# ---------------------------------------------------------------------------


def _project_thick(oracle, z, scale, max_iter=8):
    """Newton projection onto Im f = 0; returns (point, iterations used)."""
    for k in range(max_iter):
        f = _fval(oracle, z)
        if abs(f.imag) <= 1e-10 * max(scale, abs(f), 1e-30):
            return z, k
        fp = oracle.derivative(z)
        if fp == 0:
            return z, max_iter
        z = z - f.imag * (1j * fp.conjugate()) / (abs(fp) ** 2)
    return z, max_iter


def _tangent_thick(oracle, z, prev=None, eastward=None):
    fp = oracle.derivative(z)
    if fp == 0:
        return None
    t = fp.conjugate() / abs(fp)
    if prev is not None:
        if (t.real * prev.real + t.imag * prev.imag) < 0:
            t = -t
    elif eastward is not None:
        if (t.real > 0) != eastward:
            t = -t
    return t


def _zero_on_segment(oracle, za, zb, scale):
    """Bisect along the thick curve for the Re f sign change in [za, zb]."""
    ua = _fval(oracle, za).real
    for _ in range(80):
        if abs(zb - za) < 1e-10 * max(1.0, abs(za)):
            break
        zm, _ = _project_thick(oracle, 0.5 * (za + zb), scale)
        um = _fval(oracle, zm).real
        if (um >= 0) == (ua >= 0):
            za, ua = zm, um
        else:
            zb = zm
    z = 0.5 * (za + zb)
    for _ in range(4):
        fp = oracle.derivative(z)
        if fp == 0:
            break
        z = z - _fval(oracle, z) / fp
    return z


def _trace_thick_line(oracle, z0, eastward, watch_zero=True,
                      sigma_stop_west=-1.8, sigma_stop_east=9.0,
                      h0=0.05, hmax=0.2, max_steps=6000):
    """Predictor-corrector walk along Im f = 0 starting at z0.

    Returns (points, zero_or_None, exit_reason).  exit_reason is one of
    'west', 'east', 'zero', 'stuck', 'steps'.
    """
    scale = max(abs(_fval(oracle, z0)), 1.0)
    z, _ = _project_thick(oracle, z0, scale)
    pts = [z]
    tan = _tangent_thick(oracle, z, eastward=eastward)
    if tan is None:
        return pts, None, "stuck"
    h = h0
    u_prev = _fval(oracle, z).real
    for _ in range(max_steps):
        zp = z + h * tan
        z2, iters = _project_thick(oracle, zp, scale)
        if iters > 4 or abs(z2 - z) > 2.5 * h:
            h *= 0.5
            if h < 1e-9:
                return pts, None, "stuck"
            continue
        t2 = _tangent_thick(oracle, z2, prev=tan)
        if t2 is None:
            return pts, None, "stuck"
        u2 = _fval(oracle, z2).real
        if watch_zero and (u2 >= 0) != (u_prev >= 0):
            zz = _zero_on_segment(oracle, z, z2, scale)
            pts.append(zz)
            return pts, zz, "zero"
        z, tan, u_prev = z2, t2, u2
        pts.append(z)
        if iters <= 1:
            h = min(h * 2.0, hmax)
        if z.real <= sigma_stop_west:
            return pts, None, "west"
        if z.real >= sigma_stop_east:
            return pts, None, "east"
    return pts, None, "steps"


def _next_thick_above(oracle, sigma, t_from, t_span=6.0, samples=400):
    """First Im f = 0 crossing above t_from on the vertical line at sigma."""
    ts = np.linspace(t_from + 1e-3, t_from + t_span, samples)
    v, _ = oracle.eval_array(sigma + 1j * ts)
    sg = v.imag >= 0
    flips = np.nonzero(sg[:-1] != sg[1:])[0]
    if flips.size == 0:
        return None
    a, b = ts[flips[0]], ts[flips[0] + 1]
    for _ in range(60):
        m = 0.5 * (a + b)
        vm = _fval(oracle, sigma + 1j * m).imag
        va = _fval(oracle, sigma + 1j * a).imag
        if (vm >= 0) == (va >= 0):
            a = m
        else:
            b = m
    return complex(sigma, 0.5 * (a + b))


def trace_sheet(gram_index, oracle=None):
    """Follow the thick line through a Gram point to its paired zero.

    Traces eastward first: an ordinary sheet bends back west and crosses
    its zero; a Gram point sitting on a zero-free parallel escapes east
    instead, in which case the zero-carrying companion parallel immediately
    above is picked up at sigma = 8.5 and traced westward.  Line numbers
    are collected where the walk crosses sigma = -1.
    """
    if oracle is None:
        oracle = get_oracle("zeta")
    g = _gram.gram_point(int(gram_index))
    z0 = complex(0.5, g.t)
    pts_e, zero, reason = _trace_thick_line(oracle, z0, eastward=True)
    degenerate = False
    flags = ()
    all_pts = list(pts_e)
    if zero is None and reason == "east":
        degenerate = True
        # scan upward from this parallel's own height at sigma = 8.5, not
        # from the walk endpoint, so a down-sloping line is not re-found
        own_h = pts_e[-1].imag
        for a, b in zip(pts_e[:-1], pts_e[1:]):
            if (a.real - 8.5) * (b.real - 8.5) < 0:
                tau = (8.5 - a.real) / (b.real - a.real)
                own_h = a.imag + tau * (b.imag - a.imag)
        start2 = _next_thick_above(oracle, 8.5, own_h)
        if start2 is None:
            return Sheet(gram_point_index=g.index, zero=None, curve=None,
                         degenerate=True, flags=("companion-not-found",))
        pts_w, zero, reason2 = _trace_thick_line(oracle, start2, eastward=False)
        all_pts = list(pts_e) + list(pts_w)
        if zero is None:
            flags = ("unpaired-sheet",)
    elif zero is None:
        flags = ("unpaired-sheet",)
    # continue west past the zero, and west from the start, for line numbers
    nums = []
    if zero is not None:
        tail, _, _ = _trace_thick_line(oracle, zero, eastward=False, watch_zero=False)
        back, _, _ = _trace_thick_line(oracle, z0 if not degenerate else all_pts[0],
                                       eastward=False, watch_zero=False)
        all_pts = list(reversed(back)) + all_pts + tail
        for seq in (back, tail):
            for a, b in zip(seq[:-1], seq[1:]):
                if (a.real + 1.0) * (b.real + 1.0) < 0:
                    tau = (-1.0 - a.real) / (b.real - a.real)
                    tc = a.imag + tau * (b.imag - a.imag)
                    if tc > 5.0:
                        nums.append(_gram.line_number(tc))
    curve = CurvePolyline(kind="thick", points=all_pts) if len(all_pts) >= 2 else None
    # a sheet's own two lines carry consecutive odd numbers; a degenerate
    # trace records crossings from two different sheets, so no pair then
    uniq = sorted(set(nums))
    line_numbers = tuple(uniq) if len(uniq) == 2 and uniq[1] - uniq[0] == 2 else None
    return Sheet(gram_point_index=g.index, zero=zero, curve=curve,
                 line_numbers=line_numbers, degenerate=degenerate, flags=flags)


def sheet_permutation(count=20, start=-1, oracle=None):
    """Zero ordinals in Gram order: sheet k pairs g_{start+k} with a zero.

    Returns (permutation, sheets); permutation[k] is the 1-based height rank
    of the zero paired with Gram point start+k.
    """
    if oracle is None:
        oracle = get_oracle("zeta")
    sheets = [trace_sheet(start + k, oracle) for k in range(count)]
    tmax = max(s.zero.imag for s in sheets if s.zero is not None) + 3.0
    census = _gram.find_zeros(10.0, tmax, verify=True)
    perm = []
    for s in sheets:
        if s.zero is None:
            perm.append(None)
            continue
        diffs = [abs(z.t - s.zero.imag) for z in census]
        k = int(np.argmin(diffs))
        if diffs[k] > 1e-3:
            perm.append(None)
        else:
            perm.append(k + 1)
    return perm, sheets
