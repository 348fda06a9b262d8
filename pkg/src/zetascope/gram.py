"""Gram points, critical-line zeros, zero counting, and law audits.

Gram point indices follow the convention that starts at n = -1 (ordinate
about 9.667).  A Gram point is "good" when (-1)^n Z(g_n) > 0; a maximal run
of bad points fenced by two good ones is a Gram block.  Gram's law expects
one zero per Gram interval, Rosser's rule expects a block to hold exactly
as many zeros as it has intervals; both fail eventually, and the audit
machinery here finds and annotates those failures.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .engine import (
    EM_N_CAP,
    RS_T_CROSS,
    ConvergenceError,
    DomainError,
    RangeError,
    em_cutoff,
    em_feasible,
    theta,
    theta_deriv,
    theta_minus_npi,
)

__all__ = [
    "GramPoint",
    "ZeroRecord",
    "ZeroScan",
    "GramBlock",
    "SReport",
    "SExtremum",
    "AuditReport",
    "gram_point",
    "gram_points",
    "z_values",
    "find_zeros",
    "count_N",
    "s_of_t",
    "s_extrema",
    "classify_gram_range",
    "audit_laws",
    "line_number",
    "count_below_zero_free",
    "count_below_zero_carrying",
    "main_term_count",
    "van_de_lune_sigma0",
]

_EPS = 2.220446049250313e-16
_LNPI = math.log(math.pi)
_TWO_PI = 2.0 * math.pi
MAX_PANELS = 64
GRAM_RESIDUAL_TOL = 1e-10  # stop rule; true residual stays below 1e-9


def _em_cutoff_fast(t):
    """Reduced Euler-Maclaurin cutoff for sign tests and argument walks.

    N = 0.3 t keeps the correction-term ratio near (t / 2 pi N)^2 = 0.28,
    reaching ~1e-14 truncation within the 30-term cap at a quarter of the
    full-precision cost.  Full-precision evaluation stays at 1.3 t.
    """
    return max(60, int(0.3 * t) + 20)


# ---------------------------------------------------------------------------
# record types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GramPoint:
    """Gram point g_n: theta(g_n) = n pi."""

    index: int
    t: float
    z_value: float
    quality: str  # "good" or "bad"

    @property
    def good(self):
        return self.quality == "good"


@dataclass(frozen=True)
class ZeroRecord:
    """A located critical-line zero with its refined bracket."""

    ordinal: int
    bracket: tuple
    t: float
    refinement_width: float

    def __post_init__(self):
        a, b = self.bracket
        if not (a < self.t < b):
            raise ValueError("ZeroRecord: t must lie inside its bracket")
        if self.refinement_width > 1e-6 * (1.0 + 1e-9):
            raise ValueError("ZeroRecord: bracket not refined to 1e-6")


class ZeroScan(list):
    """List of ZeroRecord plus census warnings from the completeness check."""

    def __init__(self, records=(), warnings=(), expected=None):
        super().__init__(records)
        self.warnings = list(warnings)
        self.expected = expected


@dataclass(frozen=True)
class GramBlock:
    """Bad Gram points fenced by good ones; zero_count from the census."""

    start_index: int
    end_index: int
    interval_count: int
    zero_count: int

    def __post_init__(self):
        if self.interval_count != self.end_index - self.start_index:
            raise ValueError("GramBlock: interval_count must equal end - start")
        if self.interval_count < 1:
            raise ValueError("GramBlock: needs at least one interval")


@dataclass(frozen=True)
class SReport:
    """N(T) and S(T) tied by N(T) = theta(T)/pi + 1 + S(T)."""

    T: float
    n_of_t: int
    s_value: float


@dataclass(frozen=True)
class SExtremum:
    """One-sided limits of S at a zero ordinate (S jumps by +1 there)."""

    t: float
    s_before: float
    s_after: float


@dataclass
class AuditReport:
    """Gram's-law and Rosser's-rule audit over a Gram index range."""

    n_lo: int
    n_hi: int
    points: list
    blocks: list
    interval_counts: dict  # n -> zeros in (g_n, g_{n+1})
    gram_violations: list  # dicts: interval, count, note
    rosser_violations: list  # dicts: block, note
    warnings: list = field(default_factory=list)

    def block_of(self, n):
        for i, b in enumerate(self.blocks):
            if b.start_index <= n < b.end_index:
                return i
        return None

    def table_rows(self):
        """One row per Gram point: index, t, Z, quality, block id."""
        rows = []
        for p in self.points:
            blk = self.block_of(p.index)
            rows.append((p.index, p.t, p.z_value, p.quality, "-" if blk is None else str(blk)))
        return rows


# ---------------------------------------------------------------------------
# Gram points
# ---------------------------------------------------------------------------

_INV_E = 0.36787944117144233


def _lambert_w0(y):
    # principal branch, y >= -1/e; Newton from a two-piece seed
    if y < -_INV_E:
        y = -_INV_E
    if y > -0.2:
        w = math.log1p(y)
    else:
        w = -1.0 + math.sqrt(max(0.0, 2.0 * (1.0 + math.e * y)))
    for _ in range(80):
        ew = math.exp(w)
        f = w * ew - y
        d = ew * (w + 1.0)
        if d == 0.0:
            break
        dw = f / d
        w -= dw
        if abs(dw) <= 1e-14 * max(1.0, abs(w)):
            break
    return w


def _gram_seed(n):
    # invert theta ~ (t/2) log(t/2 pi e) - pi/8 through the Lambert function
    return _TWO_PI * math.exp(1.0 + _lambert_w0((n + 0.125) / math.e))


def _gram_t(n):
    """Ordinate of g_n by Newton on the residual theta(t) - n pi.

    The theoretical residual floor is one spacing of theta over adjacent
    double ordinates, about theta'(t) * ulp(t); the stop tolerance is the
    larger of that and GRAM_RESIDUAL_TOL.  Below t ~ 1e5 the true residual
    ends up under 1e-9; at t ~ 7e6 the floor itself is ~7e-9.
    """
    t = _gram_seed(n)
    best_t, best_r = t, math.inf
    for _ in range(50):
        r = theta_minus_npi(t, n)
        if abs(r) < abs(best_r):
            best_t, best_r = t, abs(r)
        if abs(r) <= max(GRAM_RESIDUAL_TOL, 2.0 * theta_deriv(t) * math.ulp(t)):
            return t
        t -= r / theta_deriv(t)
    if best_r <= 8.0 * max(GRAM_RESIDUAL_TOL, 2.0 * theta_deriv(best_t) * math.ulp(best_t)):
        return best_t
    raise ConvergenceError("gram_point: Newton did not converge for n = %d" % n)


def gram_point(n):
    """Gram point g_n with its Z value and good/bad quality. Needs n >= -1."""
    n = int(n)
    if n < -1:
        raise DomainError("gram_point: index must be >= -1, got %d" % n)
    t = _gram_t(n)
    z, _ = z_values(np.array([t]))
    zv = float(z[0])
    good = zv > 0.0 if n % 2 == 0 else zv < 0.0
    return GramPoint(index=n, t=t, z_value=zv, quality="good" if good else "bad")


def gram_points(n_lo, n_hi, progress=None):
    """Gram points for n in [n_lo, n_hi); one vectorized Z pass over all."""
    n_lo, n_hi = int(n_lo), int(n_hi)
    if n_lo < -1 or n_lo >= n_hi:
        raise DomainError("gram_points: need -1 <= n_lo < n_hi")
    ts = np.empty(n_hi - n_lo)
    for i, n in enumerate(range(n_lo, n_hi)):
        ts[i] = _gram_t(n)
        if progress is not None and (i + 1) % 1000 == 0:
            progress(i + 1)
    zs, _ = z_values(ts)
    out = []
    for i, n in enumerate(range(n_lo, n_hi)):
        zv = float(zs[i])
        good = zv > 0.0 if n % 2 == 0 else zv < 0.0
        out.append(GramPoint(n, float(ts[i]), zv, "good" if good else "bad"))
    return out


# ---------------------------------------------------------------------------
# vectorized Z with sign-safe upgrades
# ---------------------------------------------------------------------------


def _theta_vec(ts):
    lg = kernels.loggamma_batch(0.25 + 0.5j * np.asarray(ts, dtype=np.float64))
    return lg.imag - 0.5 * np.asarray(ts) * _LNPI


def z_values(ts, upgrade=True):
    """Hardy Z on an array of ordinates; returns (values, error_bounds).

    Riemann-Siegel above the crossover, Euler-Maclaurin below; entries whose
    |Z| falls under 1.5x their own bound are re-evaluated by Euler-Maclaurin
    when the cutoff is affordable, so returned signs can be trusted.
    """
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    z = np.empty(ts.shape)
    er = np.empty(ts.shape)
    small = ts < RS_T_CROSS
    if small.any():
        tt = ts[small]
        if not (tt > 0).all():
            raise DomainError("z_values: ordinates must be positive")
        n = em_cutoff(float(tt.max()))
        v, e, _ = kernels.em_batch(0.5 + 1j * tt, n, 1e-12)
        th = _theta_vec(tt)
        w = np.exp(1j * th) * v
        z[small] = w.real
        er[small] = e + np.abs(w) * (4.0 * _EPS * np.maximum(np.abs(th), 1.0))
    big = ~small
    if big.any():
        zs, es, _, _, _ = kernels.rs_batch(ts[big])
        z[big] = zs
        er[big] = es
    if upgrade:
        need = np.nonzero(big & (np.abs(z) < 1.5 * er) & (ts <= (EM_N_CAP - 10) / 1.3))[0]
        if need.size:
            tt = ts[need]
            n = _em_cutoff_fast(float(tt.max()))
            v, e, _ = kernels.em_batch(0.5 + 1j * tt, n, 1e-12)
            th = _theta_vec(tt)
            w = np.exp(1j * th) * v
            z[need] = w.real
            er[need] = e + np.abs(w) * (4.0 * _EPS * np.maximum(np.abs(th), 1.0))
    return z, er


def _safe_signs(ts, z, er):
    """Signs of Z with ambiguous samples nudged off suspected zeros."""
    ts = ts.copy()
    z = z.copy()
    er = er.copy()
    amb = np.abs(z) <= er
    tries = 0
    while amb.any() and tries < 6:
        ts[amb] = ts[amb] + 10.0 ** (-7 + tries)
        z2, e2 = z_values(ts[amb])
        z[amb] = z2
        er[amb] = e2
        amb = np.abs(z) <= er
        tries += 1
    return ts, np.where(z >= 0.0, 1.0, -1.0), z


# ---------------------------------------------------------------------------
# zero location
# ---------------------------------------------------------------------------


def _brackets_from_samples(ts, sg):
    idx = np.nonzero(sg[:-1] * sg[1:] < 0)[0]
    return [(float(ts[i]), float(ts[i + 1])) for i in idx]


def _refine_intervals(edges_t, edges_sign, deep, panels):
    """Per-interval census; intervals flagged deep get panel subdivision.

    Returns (counts per interval, list of sign-change brackets in order).
    """
    counts = []
    brackets = []
    deep_set = set(int(i) for i in deep)
    sub_ts = []
    sub_slices = []
    for i in deep_set:
        a, b = edges_t[i], edges_t[i + 1]
        grid = np.linspace(a, b, panels + 1)[1:-1]
        sub_slices.append((i, len(sub_ts), len(sub_ts) + len(grid)))
        sub_ts.extend(grid)
    sub_signs = {}
    if sub_ts:
        arr = np.array(sub_ts)
        z, e = z_values(arr)
        arr2, sg, _ = _safe_signs(arr, z, e)
        for i, lo, hi in sub_slices:
            sub_signs[i] = (arr2[lo:hi], sg[lo:hi])
    for i in range(len(edges_t) - 1):
        if i in sub_signs:
            its, isg = sub_signs[i]
            full_t = np.concatenate(([edges_t[i]], its, [edges_t[i + 1]]))
            full_s = np.concatenate(([edges_sign[i]], isg, [edges_sign[i + 1]]))
        else:
            full_t = np.array([edges_t[i], edges_t[i + 1]])
            full_s = np.array([edges_sign[i], edges_sign[i + 1]])
        br = _brackets_from_samples(full_t, full_s)
        counts.append(len(br))
        brackets.extend(br)
    return counts, brackets


def _bisect_brackets(brackets, width=1e-6):
    """Shrink each sign-change bracket below the width by vector bisection."""
    if not brackets:
        return []
    lo = np.array([a for a, _ in brackets])
    hi = np.array([b for _, b in brackets])
    zlo, elo = z_values(lo)
    slo = np.where(zlo >= 0, 1.0, -1.0)
    while float((hi - lo).max()) > width:
        mid = 0.5 * (lo + hi)
        zm, _ = z_values(mid)
        sm = np.where(zm >= 0, 1.0, -1.0)
        left = sm == slo
        lo = np.where(left, mid, lo)
        hi = np.where(left, hi, mid)
    return [(float(a), float(b)) for a, b in zip(lo, hi)]


def _gram_fences(t_lo, t_hi):
    """Ordinates of the Gram points strictly inside (t_lo, t_hi)."""
    n_first = int(math.floor(theta(t_lo) / math.pi)) + 1
    n_last = int(math.ceil(theta(t_hi) / math.pi)) - 1
    out = []
    for n in range(n_first, n_last + 1):
        t = _gram_t(n)
        if t_lo < t < t_hi:
            out.append((n, t))
    return out


def find_zeros(t_lo, t_hi, verify=True, progress=None):
    """Locate critical-line zeros with t in (t_lo, t_hi).

    Scans Gram intervals for sign changes of Z; intervals showing no change
    are subdivided (up to 64 panels) to hunt hidden pairs.  Each bracket is
    bisected to width <= 1e-6.  With verify=True the census is cross-checked
    against count_N at both ends; a mismatch triggers a full subdivision
    round and, if unresolved, an incompleteness warning on the result.
    """
    t_lo, t_hi = float(t_lo), float(t_hi)
    if not (10.0 <= t_lo < t_hi):
        raise DomainError("find_zeros: need 10 <= t_lo < t_hi")
    fences = _gram_fences(t_lo, t_hi)
    edges = np.array([t_lo] + [t for _, t in fences] + [t_hi])
    z, e = z_values(edges)
    edges, sg, _ = _safe_signs(edges, z, e)
    # primary: hunt pairs inside change-free intervals
    counts0, _ = _refine_intervals(edges, sg, deep=(), panels=1)
    deep = [i for i, c in enumerate(counts0) if c == 0]
    counts, brackets = _refine_intervals(edges, sg, deep, MAX_PANELS)
    warnings = []
    expected = None
    if verify:
        expected = _count_n_robust(t_hi) - _count_n_robust(t_lo)
        if len(brackets) != expected:
            counts, brackets = _refine_intervals(edges, sg, range(len(edges) - 1), MAX_PANELS)
        if len(brackets) != expected:
            warnings.append(
                "census mismatch: found %d zeros, counting identity expects %d "
                "(possible close pair or off-line zero)" % (len(brackets), expected)
            )
    refined = _bisect_brackets(brackets)
    recs = []
    for k, (a, b) in enumerate(sorted(refined)):
        recs.append(ZeroRecord(ordinal=k + 1, bracket=(a, b), t=0.5 * (a + b),
                               refinement_width=b - a))
    return ZeroScan(recs, warnings, expected)


# ---------------------------------------------------------------------------
# S(T) by argument continuation, and N(T)
# ---------------------------------------------------------------------------


def _walk_tables(T):
    n_cut = _em_cutoff_fast(T)
    if n_cut > EM_N_CAP:
        raise RangeError("s_of_t: Euler-Maclaurin cutoff %d exceeds cap" % n_cut)
    lnn = np.log(np.arange(1, n_cut, dtype=np.float64))
    ph = T * lnn
    return lnn, np.cos(ph), np.sin(ph)


def s_of_t(T, sigma_start=10.0):
    """S(T) by tracking arg zeta(sigma + iT) from sigma = 10 down to 1/2.

    The step halves whenever the phase jump exceeds pi/4 (or the modulus
    jumps by a factor e^0.7) and grows after calm steps.  Step underflow
    below 1e-9 means the segment passes essentially through a zero.
    """
    T = float(T)
    if not T >= 10.0:
        raise DomainError("s_of_t: requires T >= 10")
    lnn, cosv, sinv = _walk_tables(T)
    target = 1e-12
    w = kernels.profile_eval(sigma_start, T, lnn, cosv, sinv, target)[0]
    total = math.atan2(w.imag, w.real)  # |arg| < 2e-3 at sigma = 10
    sig = sigma_start
    prev = w
    step = 0.25
    for _ in range(200000):
        if sig <= 0.5:
            break
        step = min(step, sig - 0.5)
        cand = sig - step
        w2 = kernels.profile_eval(cand, T, lnn, cosv, sinv, target)[0]
        ratio = w2 / prev if prev != 0 else 0.0
        dphi = math.atan2(ratio.imag, ratio.real)
        grow = abs(ratio)
        if ratio == 0 or abs(dphi) > 0.25 * math.pi or abs(math.log(max(grow, 1e-300))) > 0.7:
            step *= 0.5
            if step < 1e-9:
                raise ConvergenceError(
                    "s_of_t: step underflow at sigma = %.6f (T = %.6f passes too "
                    "close to a zero)" % (sig, T)
                )
            continue
        total += dphi
        sig = cand
        prev = w2
        if abs(dphi) < math.pi / 16.0 and abs(math.log(grow)) < 0.35:
            step = min(step * 1.5, 0.5)
    else:
        raise ConvergenceError("s_of_t: walk failed to terminate")
    s_walk = total / math.pi
    thpi = theta_minus_npi(T, 0) / math.pi
    n = int(round(thpi + 1.0 + s_walk))
    return SReport(T=T, n_of_t=n, s_value=n - thpi - 1.0)


def count_N(T):
    """Number of critical-strip zeros with 0 < t < T, from the S(T) identity."""
    T = float(T)
    if not T >= 10.0:
        raise DomainError("count_N: requires T >= 10")
    z, e = z_values(np.array([T]))
    if abs(float(z[0])) < theta_deriv(T) * 1e-6:
        raise DomainError("count_N: T = %g is within ~1e-6 of a zero ordinate; perturb T" % T)
    return s_of_t(T).n_of_t


def _count_n_robust(T, tries=5):
    for k in range(tries):
        try:
            return count_N(T + k * 1.7e-4)
        except (DomainError, ConvergenceError):
            continue
    raise ConvergenceError("count_N: no safe ordinate found near T = %g" % T)


def s_extrema(t_lo, t_hi):
    """One-sided S limits at each zero in (t_lo, t_hi) via the census.

    Between zeros S(t) = N(t) - theta(t)/pi - 1 decreases continuously and
    jumps by +1 at each zero, so its local extrema sit at the zeros.
    """
    scan = find_zeros(t_lo, t_hi, verify=True)
    n0 = _count_n_robust(t_lo)
    out = []
    for i, zr in enumerate(scan):
        thpi = theta_minus_npi(zr.t, 0) / math.pi
        before = n0 + i - thpi - 1.0
        out.append(SExtremum(t=zr.t, s_before=before, s_after=before + 1.0))
    return out


# ---------------------------------------------------------------------------
# classification and audits
# ---------------------------------------------------------------------------


def classify_gram_range(n_lo, n_hi, progress=None):
    """Gram points for n in [n_lo, n_hi) plus the Gram blocks touching them.

    Runs of bad points are fenced by extending beyond the range ends when
    needed (up to 60 extra points each way).  Block zero counts come from a
    64-panel census over the block span.  Returns (points, blocks, warnings).
    """
    n_lo, n_hi = int(n_lo), int(n_hi)
    if n_lo < -1 or n_lo >= n_hi:
        raise DomainError("classify_gram_range: need -1 <= n_lo < n_hi")
    pts = gram_points(n_lo, n_hi, progress=progress)
    warnings = []
    for _ in range(60):
        if pts[0].good or pts[0].index == -1:
            break
        pts.insert(0, gram_point(pts[0].index - 1))
    for _ in range(60):
        if pts[-1].good:
            break
        pts.append(gram_point(pts[-1].index + 1))
    if not pts[-1].good or not (pts[0].good or pts[0].index == -1):
        warnings.append("unfenced bad run at range edge after 60-point extension")
    blocks = []
    i = 0
    while i < len(pts):
        if not pts[i].good and i > 0 and pts[i - 1].good:
            j = i
            while j < len(pts) and not pts[j].good:
                j += 1
            if j < len(pts):
                left, right = pts[i - 1], pts[j]
                zc = _block_zero_count(left.t, right.t)
                blocks.append(GramBlock(
                    start_index=left.index, end_index=right.index,
                    interval_count=right.index - left.index, zero_count=zc,
                ))
            i = j
        else:
            i += 1
    return pts, blocks, warnings


def _block_zero_count(t_a, t_b):
    fences = _gram_fences(t_a, t_b)
    edges = np.array([t_a] + [t for _, t in fences] + [t_b])
    z, e = z_values(edges)
    edges, sg, _ = _safe_signs(edges, z, e)
    _, brackets = _refine_intervals(edges, sg, range(len(edges) - 1), MAX_PANELS)
    return len(brackets)


def audit_laws(n_lo, n_hi, progress=None):
    """Audit Gram's law and Rosser's rule over Gram indices [n_lo, n_hi).

    Gram-law violations are Gram intervals holding a zero count other than
    one; Rosser violations are blocks whose census disagrees with their
    interval count.  Violations carry compensating-interval annotations.
    """
    pts, blocks, warnings = classify_gram_range(n_lo, n_hi, progress=progress)
    edges = np.array([p.t for p in pts])
    sg = np.array([1.0 if p.z_value >= 0 else -1.0 for p in pts])
    # every interval gets the full panel census: compensating zeros hide as
    # close pairs in intervals that already show one sign change
    counts, _ = _refine_intervals(edges, sg, range(len(pts) - 1), MAX_PANELS)
    interval_counts = {pts[i].index: counts[i] for i in range(len(counts))}
    gram_violations = []
    for i, c in enumerate(counts):
        n = pts[i].index
        if not n_lo <= n < n_hi - 1:
            continue
        if c != 1:
            blk = None
            for k, b in enumerate(blocks):
                if b.start_index <= n < b.end_index:
                    blk = (k, b)
                    break
            if blk is not None and blk[1].zero_count == blk[1].interval_count:
                note = "balanced inside Gram block %d..%d" % (
                    blk[1].start_index, blk[1].end_index)
            else:
                note = _compensation_note(pts, counts, i)
            gram_violations.append({"interval": (n, n + 1), "count": c, "note": note})
    rosser_violations = []
    for b in blocks:
        if b.zero_count != b.interval_count:
            i_end = next((i for i, p in enumerate(pts) if p.index == b.end_index), None)
            note = "Rosser's rule fails: %d zeros in %d intervals" % (
                b.zero_count, b.interval_count)
            if i_end is not None:
                note += "; " + _compensation_note(pts, counts, i_end, forward_only=True,
                                                  include_self=True)
            rosser_violations.append({"block": b, "note": note})
    return AuditReport(
        n_lo=n_lo, n_hi=n_hi, points=pts, blocks=blocks,
        interval_counts=interval_counts, gram_violations=gram_violations,
        rosser_violations=rosser_violations, warnings=warnings,
    )


def _compensation_note(pts, counts, i, forward_only=False, include_self=False):
    """Find nearby intervals whose surplus offsets the deficit at i."""
    deficit = 1 - counts[i] if i < len(counts) else 0
    lo = i if forward_only else max(0, i - 3)
    for j in range(lo, min(len(counts), i + 4)):
        if (include_self or j != i) and counts[j] >= 2:
            return "compensated by interval (%d, %d) holding %d zeros" % (
                pts[j].index, pts[j].index + 1, counts[j])
    if deficit == 0:
        return "surplus interval"
    return "no compensating interval within 3 steps"


# ---------------------------------------------------------------------------
# line numbering (x-ray thick/thin line indices at sigma = -1)
# ---------------------------------------------------------------------------


def line_number(t):
    """Number of the level line crossing sigma = -1 at height t (t > 5)."""
    t = float(t)
    if not t > 5.0:
        raise RangeError("line_number: requires t > 5")
    x = t / _TWO_PI
    return int(round((2.0 * t / math.pi) * (math.log(x) - 1.0) + 0.5))


def count_below_zero_free(N):
    """Zeros below a zero-free horizontal line numbered N (N = 1 mod 4)."""
    return (N + 3) // 4


def count_below_zero_carrying(N):
    """Zeros below-or-on a zero-carrying line numbered N (N = 3 mod 4)."""
    return (N + 5) // 4


def main_term_count(t, inclusive=False):
    """Nearest integer to the smooth zero-counting term at height t."""
    x = t / _TWO_PI
    c = 0.875 if not inclusive else 1.375
    return int(round(x * (math.log(x) - 1.0) + c))


# ---------------------------------------------------------------------------
# van de Lune's sigma_0
# ---------------------------------------------------------------------------


def _primes_upto(n):
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


_P100 = _primes_upto(100)


def _moebius_upto(n):
    mu = np.ones(n + 1, dtype=np.int64)
    prime = np.ones(n + 1, dtype=bool)
    prime[:2] = False
    for p in range(2, n + 1):
        if prime[p]:
            prime[2 * p:: p] = False
            mu[p:: p] *= -1
            mu[p * p:: p * p] = 0
    return mu


def _zeta_real(x):
    v, _, _ = kernels.em_scalar(complex(x, 0.0), 12, 1e-16)
    return v.real


def _prime_zeta(s):
    """P(s) = sum over primes p of p^{-s}, for real s > 1."""
    kmax = max(1, int(70.0 / s))
    mu = _moebius_upto(kmax)
    total = 0.0
    for k in range(1, kmax + 1):
        if mu[k] == 0:
            continue
        total += mu[k] / k * math.log(_zeta_real(k * s))
    return total


def _arcsin_sum_exact(sigma):
    """F(sigma) = sum over all primes of arcsin(p^-sigma).

    Primes up to 100 enter directly; the rest through the arcsin Taylor
    series, whose p-sums are prime-zeta values at odd multiples of sigma.
    """
    total = sum(math.asin(p ** -sigma) for p in _P100)
    j = 0
    while True:
        e = (2 * j + 1) * sigma
        if e > 70.0:
            break
        cj = math.comb(2 * j, j) / (4 ** j * (2 * j + 1))
        tail = _prime_zeta(e) - sum(p ** -e for p in _P100)
        total += cj * tail
        if cj * abs(tail) < 1e-19 and j > 3:
            break
        j += 1
    return total


def van_de_lune_sigma0(digits=14):
    """The unique sigma > 1 with sum over primes of arcsin(p^-sigma) = pi/2."""
    digits = int(digits)
    if not 1 <= digits <= 14:
        raise RangeError("van_de_lune_sigma0: digits must be in [1, 14]")
    lo, hi = 1.05, 1.5
    flo = _arcsin_sum_exact(lo) - 0.5 * math.pi
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        fm = _arcsin_sum_exact(mid) - 0.5 * math.pi
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    return 0.5 * (lo + hi)
