"""Topology of Gauss curves on S^2.

Simplicity, winding numbers, the pole indices ``I+`` / ``I-`` (number of
poles to the left / right of the curve) and the areas ``A+`` / ``A-`` of the
left and right regions.  Areas are computed by an independent membership
oracle: a point is on the left when the winding number of the projected
curve around it matches the traversal orientation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import NotSimple, PointOnCurve, PoleHit
from .motion import SampledPath
from .phase import geometric_phase
from .regularize import clamp
from .tolerances import AREA_STABILITY, DEFAULT_EPS_LADDER, ON_CURVE, POLE_HIT, SEGMENT_CROSS_TOL


class CurveTopology(NamedTuple):
    simple: bool
    n_winding: int
    I_plus: int
    I_minus: int
    A_plus: float
    A_minus: float


# --------------------------------------------------------------------------
# planar helpers

def stereographic(curve, chart: str = "north"):
    """Project points of S^2 to the plane.

    ``chart="north"`` is ``g1 = (a - ib)/(1 + c)`` (north pole to 0),
    ``chart="south"`` is ``g2 = (a + ib)/(1 - c)`` (south pole to 0).

    Raises
    ------
    PoleHit
        If a point lies within 1e-9 of the excluded pole.
    """
    x = np.asarray(curve, dtype=float)
    a, b, c = x[..., 0], x[..., 1], x[..., 2]
    if chart == "north":
        den, im = 1 + c, -b
    elif chart == "south":
        den, im = 1 - c, b
    else:
        raise ValueError(f"chart must be 'north' or 'south', got {chart!r}")
    if np.any(den < POLE_HIT):
        raise PoleHit(f"curve touches the excluded pole of the {chart} chart")
    return (a + 1j * im) / den


def _closed(z):
    """Drop repeated consecutive points and the closing duplicate."""
    z = np.asarray(z, dtype=complex).ravel()
    scale = max(1.0, float(np.max(np.abs(z)))) if z.size else 1.0
    keep = np.ones(z.size, dtype=bool)
    keep[1:] = np.abs(np.diff(z)) > 1e-15 * scale
    z = z[keep]
    while z.size > 1 and abs(z[-1] - z[0]) <= 1e-15 * scale:
        z = z[:-1]
    return z


def signed_area(z) -> float:
    """Shoelace area of a closed polyline (positive when counterclockwise)."""
    z = _closed(z)
    w = np.roll(z, -1)
    return 0.5 * float(np.sum(z.real * w.imag - w.real * z.imag))


def _segment_distance(z, w, p):
    """Distance from each point ``p[k]`` to the closed polyline (shape of p)."""
    p = np.atleast_1d(p)[:, None]
    d = w - z
    L2 = np.abs(d) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.clip(np.real((p - z) * np.conj(d)) / L2, 0.0, 1.0)
    s = np.where(L2 > 0, s, 0.0)
    return np.min(np.abs(z + s * d - p), axis=1)


def winding_number(curve, point, check: bool = True):
    """Winding number of a closed planar polyline around ``point``.

    ``point`` may be an array; the result then has the same shape.

    Raises
    ------
    PointOnCurve
        If a point lies within 1e-9 of the polyline.

    Examples
    --------
    >>> circle = np.exp(2j * np.pi * np.arange(64) / 64)
    >>> int(winding_number(circle, 0)), int(winding_number(circle, 3))
    (1, 0)
    """
    z = _closed(curve)
    w = np.roll(z, -1)
    pts = np.asarray(point, dtype=complex)
    flat = np.atleast_1d(pts).ravel()
    if check and flat.size:
        dist = _segment_distance(z, w, flat)
        if np.any(dist < ON_CURVE):
            raise PointOnCurve(f"point within {ON_CURVE:g} of the curve")
    out = np.empty(flat.size, dtype=np.int64)
    # chunk so the (points x vertices) work array stays small
    step = max(1, 2_000_000 // max(z.size, 1))
    for i in range(0, flat.size, step):
        q = flat[i:i + step, None]
        turn = np.angle((w - q) / (z - q))
        out[i:i + step] = np.rint(np.sum(turn, axis=1) / (2 * math.pi)).astype(np.int64)
    return out.reshape(pts.shape) if pts.ndim else int(out[0])


def _orient(a, b, c):
    return (b.real - a.real) * (c.imag - a.imag) - (b.imag - a.imag) * (c.real - a.real)


def _on_segment(a, b, p, pad):
    return ((np.minimum(a.real, b.real) - pad <= p.real) & (p.real <= np.maximum(a.real, b.real) + pad)
            & (np.minimum(a.imag, b.imag) - pad <= p.imag) & (p.imag <= np.maximum(a.imag, b.imag) + pad))


def _candidate_pairs(a, b):
    """Segment pairs whose bounding boxes share a cell of a uniform grid."""
    M = a.size
    lo = np.minimum(a.real, b.real), np.minimum(a.imag, b.imag)
    hi = np.maximum(a.real, b.real), np.maximum(a.imag, b.imag)
    x0, y0 = lo[0].min(), lo[1].min()
    extent = max(hi[0].max() - x0, hi[1].max() - y0, 1e-300)
    cell = max(float(np.mean(np.abs(b - a))) * 2.0, extent / 4096)
    while True:
        ix0 = ((lo[0] - x0) // cell).astype(np.int64)
        ix1 = ((hi[0] - x0) // cell).astype(np.int64)
        iy0 = ((lo[1] - y0) // cell).astype(np.int64)
        iy1 = ((hi[1] - y0) // cell).astype(np.int64)
        nx, ny = ix1 - ix0 + 1, iy1 - iy0 + 1
        count = nx * ny
        if count.sum() <= 64 * M + 1024:
            break
        cell *= 2.0
    seg = np.repeat(np.arange(M), count)
    offs = np.arange(count.sum()) - np.repeat(np.cumsum(count) - count, count)
    cx = ix0[seg] + offs % nx[seg]
    cy = iy0[seg] + offs // nx[seg]
    key = cx * (int(cy.max()) + 1) + cy
    order = np.lexsort((seg, key))
    key, seg = key[order], seg[order]
    pairs = []
    d = 1
    while d < key.size:
        same = key[d:] == key[:-d]
        if not same.any():
            break
        pairs.append(np.stack([seg[:-d][same], seg[d:][same]], axis=1))
        d += 1
    if not pairs:
        return np.empty((0, 2), dtype=np.int64)
    p = np.concatenate(pairs)
    p = np.sort(p, axis=1)
    p = p[p[:, 0] != p[:, 1]]
    return np.unique(p, axis=0)


def find_self_intersection(curve, tol: float = SEGMENT_CROSS_TOL) -> Optional[tuple]:
    """First pair of intersecting segments ``(i, j)`` of a closed polyline, or None.

    Orientation tests treat cross products below ``tol`` (relative to the
    segment lengths) as zero, so touching and collinear overlap both count.
    Adjacent segments only intersect when the second folds back on the first.
    """
    z = _closed(curve)
    M = z.size
    if M < 3:
        return (0, 0)
    a, b = z, np.roll(z, -1)
    d = b - a
    L = np.abs(d)
    # adjacent fold-back: collinear with reversed direction
    dn = np.roll(d, -1)
    cr = d.real * dn.imag - d.imag * dn.real
    dt = d.real * dn.real + d.imag * dn.imag
    fold = (np.abs(cr) <= tol * L * np.roll(L, -1)) & (dt < 0)
    if fold.any():
        i = int(np.argmax(fold))
        return (i, (i + 1) % M)
    pairs = _candidate_pairs(a, b)
    if pairs.size == 0:
        return None
    i, j = pairs[:, 0], pairs[:, 1]
    gap = j - i
    pairs = pairs[(gap != 1) & (gap != M - 1)]
    if pairs.size == 0:
        return None
    i, j = pairs[:, 0], pairs[:, 1]
    p1, p2, q1, q2 = a[i], b[i], a[j], b[j]
    scale = L[i] * L[j]
    o1, o2 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    o3, o4 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    s1, s2, s3, s4 = (np.where(np.abs(o) <= tol * scale, 0, np.sign(o)) for o in (o1, o2, o3, o4))
    pad = tol * np.maximum(L[i], L[j])
    hit = (s1 * s2 < 0) & (s3 * s4 < 0)
    hit |= (s1 == 0) & _on_segment(p1, p2, q1, pad)
    hit |= (s2 == 0) & _on_segment(p1, p2, q2, pad)
    hit |= (s3 == 0) & _on_segment(q1, q2, p1, pad)
    hit |= (s4 == 0) & _on_segment(q1, q2, p2, pad)
    if not hit.any():
        return None
    k = int(np.argmax(hit))
    return int(i[k]), int(j[k])


def is_simple(curve) -> bool:
    """True iff no two non-adjacent segments of the closed polyline meet."""
    return find_self_intersection(curve) is None


# --------------------------------------------------------------------------
# curves on the sphere

def _fibonacci(n: int):
    k = np.arange(n) + 0.5
    z = 1 - 2 * k / n
    phi = math.pi * (1 + math.sqrt(5)) * k
    r = np.sqrt(1 - z * z)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


class ChartedCurve:
    """A closed curve on S^2 with an orientation-preserving chart centred away from it.

    The chart sends ``p0`` to 0 and its antipode, chosen as far from the
    curve as a set of candidates allows, to infinity:
    ``q -> (q.u + i q.v) / (1 + q.p0)`` with ``u x v = p0``.
    """

    def __init__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 3:
            raise ValueError("curve must be an (M, 3) array of sphere points, M >= 3")
        if np.allclose(pts[0], pts[-1], atol=1e-12, rtol=0):
            pts = pts[:-1]
        self.points = pts
        sub = pts[:: max(1, pts.shape[0] // 2048)]
        cand = _fibonacci(512)
        dmin = np.min(np.linalg.norm(cand[:, None, :] - sub[None, :, :], axis=-1), axis=1)
        q0 = cand[int(np.argmax(dmin))]
        self.clearance = float(dmin.max())
        p0 = -q0
        helper = np.array([1.0, 0.0, 0.0]) if abs(p0[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        u = helper - np.dot(helper, p0) * p0
        u /= np.linalg.norm(u)
        v = np.cross(p0, u)
        self.p0, self.u, self.v = p0, u, v
        self.plane = self.project(pts)
        self.orientation = 1 if signed_area(self.plane) > 0 else -1

    def project(self, q):
        q = np.asarray(q, dtype=float)
        return (q @ self.u + 1j * (q @ self.v)) / (1 + q @ self.p0)

    def is_simple(self) -> bool:
        return is_simple(self.plane)

    def left(self, q):
        """Membership of sphere points in the region left of the curve."""
        # test points of sliver intervals may sit arbitrarily close to the
        # curve; their width is negligible, so skip the on-curve guard
        W = winding_number(self.plane, self.project(q), check=False)
        return W == 1 if self.orientation > 0 else W == 0


def _row_lengths(cc: ChartedCurve, zs):
    """Longitude measure of the left region on each latitude row ``z``."""
    P = cc.points
    Q = np.roll(P, -1, axis=0)
    za, zb = P[:, 2], Q[:, 2]
    out = np.empty(len(zs))
    tests, owners, widths = [], [], []
    for r, z in enumerate(zs):
        cross = ((za <= z) & (z < zb)) | ((zb <= z) & (z < za))
        idx = np.nonzero(cross)[0]
        rad = math.sqrt(max(0.0, 1 - z * z))
        if idx.size == 0:
            mids, w = np.array([0.0]), np.array([2 * math.pi])
        else:
            lam = (z - za[idx]) / (zb[idx] - za[idx])
            X = P[idx] + lam[:, None] * (Q[idx] - P[idx])
            lon = np.sort(np.arctan2(X[:, 1], X[:, 0]))
            nxt = np.append(lon[1:], lon[0] + 2 * math.pi)
            w = nxt - lon
            mids = lon + 0.5 * w
            keep = w > 0
            mids, w = mids[keep], w[keep]
        tests.append(np.stack([rad * np.cos(mids), rad * np.sin(mids), np.full(mids.size, z)], axis=1))
        owners.append(np.full(mids.size, r))
        widths.append(w)
    pts, own, wid = np.concatenate(tests), np.concatenate(owners), np.concatenate(widths)
    inside = cc.left(pts)
    out[:] = np.bincount(own, weights=wid * inside, minlength=len(zs))
    return out


def _z_breaks(points):
    z = points[:, 2]
    prev, nxt = np.roll(z, 1), np.roll(z, -1)
    ext = z[(z - prev) * (nxt - z) <= 0]
    br = np.unique(np.concatenate([[-1.0, 1.0], np.clip(ext, -1, 1)]))
    keep = np.concatenate([[True], np.diff(br) > 1e-10])
    br = br[keep]
    br[-1] = 1.0
    return br


def _area_on(cc: ChartedCurve, breaks, nodes: int):
    x, w = np.polynomial.legendre.leggauss(nodes)
    u = 0.5 * (x + 1)
    a, b = breaks[:-1, None], breaks[1:, None]
    # cosine substitution clusters rows near the breakpoints
    zs = a + (b - a) * 0.5 * (1 - np.cos(math.pi * u))
    jac = (b - a) * 0.5 * math.pi * np.sin(math.pi * u) * 0.5 * w
    L = _row_lengths(cc, zs.ravel()).reshape(zs.shape)
    return float(np.sum(L * jac))


def _area_midpoint(cc: ChartedCurve, rows: int):
    zs = -1 + (np.arange(rows) + 0.5) * (2.0 / rows)
    return float(np.sum(_row_lengths(cc, zs)) * 2.0 / rows)


def enclosed_area(curve, side: str = "left", tol: float = 1e-7, check_simple: bool = True) -> float:
    """Spherical area of the region left (or right) of a simple closed curve.

    Parameters
    ----------
    curve : (M, 3) array
        Closed sequence of unit vectors, in traversal order.
    side : {"left", "right"}
    tol : float
        Target agreement between two successive quadrature refinements.

    Raises
    ------
    NotSimple
        If the curve intersects itself.

    Examples
    --------
    >>> t = 2 * np.pi * np.arange(400) / 400
    >>> cap = np.stack([np.sin(1.0) * np.cos(t), np.sin(1.0) * np.sin(t), np.full(400, np.cos(1.0))], 1)
    >>> round(float(enclosed_area(cap)) / (2 * math.pi * (1 - math.cos(1.0))), 9)
    1.0
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    cc = curve if isinstance(curve, ChartedCurve) else ChartedCurve(curve)
    if check_simple:
        hit = find_self_intersection(cc.plane)
        if hit is not None:
            raise NotSimple(f"curve crosses itself between segments {hit[0]} and {hit[1]}")
    breaks = _z_breaks(cc.points)
    if breaks.size > 200:
        prev = _area_midpoint(cc, 1024)
        area = _area_midpoint(cc, 2048)
        if abs(area - prev) > AREA_STABILITY:
            area = _area_midpoint(cc, 4096)
    else:
        nodes = 8
        prev = _area_on(cc, breaks, nodes)
        while True:
            nodes *= 2
            area = _area_on(cc, breaks, nodes)
            if abs(area - prev) < tol or nodes >= 256:
                break
            prev = area
    return area if side == "left" else 4 * math.pi - area


def pole_indices(curve):
    """Number of poles ``(I+, I-)`` left and right of a closed curve.

    The curve is projected with the orientation-preserving chart centred at
    the north pole, ``(a + ib)/(1 + c)``.  Winding ``+-1`` about the origin
    separates the poles (one on each side); winding 0 puts both on the same
    side, which is the left exactly when the projected curve runs clockwise.
    The south-centred chart must give the opposite winding.

    Raises
    ------
    PoleHit
        If the curve passes through a pole.
    """
    pts = np.asarray(curve, dtype=float)
    zn = np.conj(stereographic(pts, "north"))
    zs = np.conj(stereographic(pts, "south"))
    wn = winding_number(zn, 0.0)
    ws = winding_number(zs, 0.0)
    if wn != -ws:
        raise PointOnCurve(f"inconsistent pole windings {wn} and {ws}")
    if wn != 0:
        ip = 1
    else:
        ip = 0 if signed_area(zn) > 0 else 2
    return ip, 2 - ip


def _gauss_points(path) -> np.ndarray:
    return path.gauss()


def regularized_curve(path: SampledPath, epsilon: float) -> np.ndarray:
    """Sampled points of the clamped Gauss curve."""
    return clamp(path, epsilon).as_sampled().gauss()


def curve_topology(path: SampledPath, epsilon: float = DEFAULT_EPS_LADDER[-1]) -> CurveTopology:
    """Topological data of the regularized Gauss curve.

    Areas are only defined for simple curves; for others they are NaN.
    """
    pts = regularized_curve(path, epsilon)
    ip, im = pole_indices(pts)
    cc = ChartedCurve(pts)
    simple = cc.is_simple()
    if simple:
        ap = enclosed_area(cc, "left", check_simple=False)
        am = enclosed_area(cc, "right", check_simple=False)
    else:
        ap = am = float("nan")
    return CurveTopology(simple, path.turns, ip, im, ap, am)


@dataclass(frozen=True)
class MainTheoremResult:
    delta_g: float
    topology: CurveTopology
    residuals: tuple

    @property
    def max_residual(self) -> float:
        return max(self.residuals)


def main_theorem_check(path: SampledPath, epsilon: float = DEFAULT_EPS_LADDER[-1]) -> MainTheoremResult:
    """Residuals of ``delta_g = A+ - 2 pi I+ = -A- + 2 pi I- = (A+ - A-)/2 - pi (I+ - I-)``.

    Everything is evaluated on the curve clamped at ``epsilon``; the phase
    is the line integral along that same clamped curve.

    Raises
    ------
    NotSimple
        If the regularized curve intersects itself.
    """
    reg = clamp(path, epsilon).as_sampled()
    pts = reg.gauss()
    cc = ChartedCurve(pts)
    hit = find_self_intersection(cc.plane)
    if hit is not None:
        N = path.n_intervals
        raise NotSimple(f"Gauss curve crosses itself near t={hit[0] / N:.6f} and t={hit[1] / N:.6f}")
    ip, im = pole_indices(pts)
    ap = enclosed_area(cc, "left", check_simple=False)
    am = enclosed_area(cc, "right", check_simple=False)
    dg = geometric_phase(reg)
    topo = CurveTopology(True, path.turns, ip, im, ap, am)
    res = (abs(dg - (ap - 2 * math.pi * ip)),
           abs(dg - (-am + 2 * math.pi * im)),
           abs(dg - (0.5 * (ap - am) - math.pi * (ip - im))))
    return MainTheoremResult(dg, topo, res)
