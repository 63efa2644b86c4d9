"""Polygonal Jordan domains, internal (geodesic) distance, chord-arc ratios.

A PolygonDomain is a simple, positively oriented closed polygon.  The
internal distance between two boundary points is the length of the shortest
path joining them inside the closed domain; on polygons this geodesic is a
polyline whose interior corners occur only at reflex vertices, so it is
computed on a visibility graph over {endpoints} + {reflex vertices}.

The chord-arc constant max ell(w1,w2)/|w1-w2| and its internal variant
max ell(w1,w2)/lambda(w1,w2) are estimated by stratified pair sampling
(uniform + antipodal + pairs straddling reflex corners); both are lower
bounds for the true suprema.  The inward-cusp construction `cusp_domain`
(disk minus {0 <= x <= 1, |y| <= x^2}) separates the two: straddling pairs
drive the plain ratio like 1/t while the internal ratio stays near 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .errors import DomainError, InsufficientDataError, ValidationError

_EPS = 1e-12
_ON_BOUNDARY = 1e-9


def _cross(ux, uy, vx, vy):
    return ux * vy - uy * vx


@dataclass(frozen=True)
class BoundaryPoint:
    """A point on the polygon boundary: edge index + parameter in [0, 1]."""

    edge: int
    t: float
    x: float
    y: float
    s: float  # arc-length position along the boundary

    @property
    def coords(self) -> np.ndarray:
        return np.array([self.x, self.y])


class PolygonDomain:
    """Simple closed polygon with positive (counterclockwise) orientation."""

    def __init__(self, vertices):
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2 or len(verts) < 3:
            raise DomainError("polygon needs an (n, 2) array with n >= 3")
        if np.hypot(*(verts[0] - verts[-1])) < _EPS:
            verts = verts[:-1]
        self.vertices = verts
        self.n = len(verts)
        e = np.roll(verts, -1, axis=0) - verts
        self._edge_vec = e
        self.edge_lengths = np.hypot(e[:, 0], e[:, 1])
        if np.any(self.edge_lengths < _EPS):
            raise ValidationError("degenerate (zero-length) polygon edge")
        self.cum_lengths = np.concatenate([[0.0], np.cumsum(self.edge_lengths)])
        self.perimeter = float(self.cum_lengths[-1])
        area2 = float(np.sum(verts[:, 0] * np.roll(verts[:, 1], -1)
                             - np.roll(verts[:, 0], -1) * verts[:, 1]))
        if area2 <= _EPS:
            raise ValidationError("polygon must be counterclockwise (signed area > 0)")
        self.area = 0.5 * area2
        self._check_simple()

    def _check_simple(self) -> None:
        """Exact-orientation test that no two non-adjacent edges cross."""
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        n = self.n
        i, j = np.triu_indices(n, k=2)
        keep = ~((i == 0) & (j == n - 1))     # wrap-around adjacency
        i, j = i[keep], j[keep]
        a, b, c, d = v[i], w[i], v[j], w[j]
        d1 = _cross(b[:, 0] - a[:, 0], b[:, 1] - a[:, 1], c[:, 0] - a[:, 0], c[:, 1] - a[:, 1])
        d2 = _cross(b[:, 0] - a[:, 0], b[:, 1] - a[:, 1], d[:, 0] - a[:, 0], d[:, 1] - a[:, 1])
        d3 = _cross(d[:, 0] - c[:, 0], d[:, 1] - c[:, 1], a[:, 0] - c[:, 0], a[:, 1] - c[:, 1])
        d4 = _cross(d[:, 0] - c[:, 0], d[:, 1] - c[:, 1], b[:, 0] - c[:, 0], b[:, 1] - c[:, 1])
        crossing = (d1 * d2 < -_EPS) & (d3 * d4 < -_EPS)
        if np.any(crossing):
            k = int(np.argmax(crossing))
            raise ValidationError(
                f"polygon is not simple: edges {int(i[k])} and {int(j[k])} intersect")

    # -- boundary parametrization -----------------------------------------

    def boundary_point(self, edge: int, t: float) -> BoundaryPoint:
        if not 0 <= edge < self.n:
            raise DomainError(f"edge index {edge} out of range")
        if not 0.0 <= t <= 1.0:
            raise DomainError("edge parameter must lie in [0, 1]")
        p = self.vertices[edge] + t * self._edge_vec[edge]
        s = float(self.cum_lengths[edge] + t * self.edge_lengths[edge])
        return BoundaryPoint(edge=edge, t=float(t), x=float(p[0]), y=float(p[1]), s=s)

    def point_at_arclength(self, s: float) -> BoundaryPoint:
        s = float(s) % self.perimeter
        edge = int(np.searchsorted(self.cum_lengths, s, side="right") - 1)
        edge = min(edge, self.n - 1)
        t = (s - self.cum_lengths[edge]) / self.edge_lengths[edge]
        return self.boundary_point(edge, min(max(t, 0.0), 1.0))

    @cached_property
    def reflex_vertices(self) -> np.ndarray:
        """Indices of vertices with interior angle > pi (left-turn test)."""
        e_prev = np.roll(self._edge_vec, 1, axis=0)
        turn = _cross(e_prev[:, 0], e_prev[:, 1],
                      self._edge_vec[:, 0], self._edge_vec[:, 1])
        return np.nonzero(turn < -_EPS)[0]

    def contains(self, point, include_boundary: bool = True) -> bool:
        """Even-odd membership; points within 1e-9 of an edge count as boundary."""
        p = np.asarray(point, dtype=float)
        if self._distance_to_boundary(p[None, :])[0] < _ON_BOUNDARY:
            return include_boundary
        return bool(self._inside_mask(p[None, :])[0])

    def _inside_mask(self, pts: np.ndarray) -> np.ndarray:
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        y1, y2 = v[:, 1][None, :], w[:, 1][None, :]
        x1, x2 = v[:, 0][None, :], w[:, 0][None, :]
        py = pts[:, 1][:, None]
        px = pts[:, 0][:, None]
        straddle = (y1 > py) != (y2 > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xs = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
        hits = straddle & (px < xs)
        return (np.count_nonzero(hits, axis=1) % 2) == 1

    def _distance_to_boundary(self, pts: np.ndarray) -> np.ndarray:
        v = self.vertices[None, :, :]
        e = self._edge_vec[None, :, :]
        d = pts[:, None, :] - v
        tt = np.clip(np.sum(d * e, axis=2) / np.sum(e * e, axis=2), 0.0, 1.0)
        proj = v + tt[:, :, None] * e
        return np.min(np.hypot(*(pts[:, None, :] - proj).transpose(2, 0, 1)), axis=1)

    # -- visibility --------------------------------------------------------

    def _segments_admissible(self, starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
        """True where the open segment stays in the closed domain.

        A segment is admissible iff it properly crosses no edge and its
        midpoint is inside or on the boundary.
        """
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        ex, ey = (w - v)[:, 0][None, :], (w - v)[:, 1][None, :]
        vx, vy = v[:, 0][None, :], v[:, 1][None, :]
        sx, sy = starts[:, 0][:, None], starts[:, 1][:, None]
        tx, ty = ends[:, 0][:, None], ends[:, 1][:, None]
        d1 = _cross(ex, ey, sx - vx, sy - vy)
        d2 = _cross(ex, ey, tx - vx, ty - vy)
        gx, gy = tx - sx, ty - sy
        d3 = _cross(gx, gy, vx - sx, vy - sy)
        d4 = _cross(gx, gy, (w[:, 0][None, :]) - sx, (w[:, 1][None, :]) - sy)
        blocked = np.any((d1 * d2 < -_EPS) & (d3 * d4 < -_EPS), axis=1)
        mids = 0.5 * (starts + ends)
        on_bd = self._distance_to_boundary(mids) < _ON_BOUNDARY
        return ~blocked & (on_bd | self._inside_mask(mids))

    @cached_property
    def _reflex_graph(self) -> tuple[np.ndarray, np.ndarray]:
        """(reflex coordinates, pairwise geodesic-edge length matrix)."""
        idx = self.reflex_vertices
        pts = self.vertices[idx]
        m = len(pts)
        dist = np.zeros((m, m))
        if m > 1:
            ii, jj = np.triu_indices(m, k=1)
            adm = self._segments_admissible(pts[ii], pts[jj])
            d = np.where(adm, np.hypot(*(pts[ii] - pts[jj]).T), np.inf)
            dist[ii, jj] = d
            dist[jj, ii] = d
        return pts, dist

    # -- distances ----------------------------------------------------------

    def boundary_arc_length(self, w1: BoundaryPoint, w2: BoundaryPoint) -> float:
        """Length of the shorter of the two boundary arcs between w1, w2."""
        d = abs(w1.s - w2.s)
        return min(d, self.perimeter - d)

    def internal_distance(self, w1: BoundaryPoint, w2: BoundaryPoint) -> float:
        """Geodesic distance inside the closed polygon."""
        a, b = w1.coords, w2.coords
        chord = float(np.hypot(*(a - b)))
        if chord < _EPS:
            return 0.0
        if self._segments_admissible(a[None, :], b[None, :])[0]:
            return chord
        pts, core = self._reflex_graph
        m = len(pts)
        if m == 0:
            raise ValidationError(
                "blocked chord in a polygon with no reflex vertices")
        size = m + 2
        g = np.full((size, size), np.inf)
        g[2:, 2:] = core
        for slot, p in ((0, a), (1, b)):
            adm = self._segments_admissible(np.tile(p, (m, 1)), pts)
            d = np.where(adm, np.hypot(*(pts - p).T), np.inf)
            g[slot, 2:] = d
            g[2:, slot] = d
        g[np.isinf(g)] = 0.0
        sp = dijkstra(csr_matrix(g), directed=False, indices=0)
        out = float(sp[1])
        if not math.isfinite(out):
            raise ValidationError("no admissible path found between boundary points")
        return out


# -- pair sampling and constants ---------------------------------------------

@dataclass(frozen=True)
class PairSampler:
    """Stratified boundary-pair generator for sup-type ratio estimates.

    Uniform pairs explore globally; antipodal pairs (arc-length offset
    perimeter/2) pin down the convex optimum; straddling pairs bracket each
    reflex vertex at geometrically shrinking arc offsets, which is where
    chord-arc ratios degenerate.
    """

    n_uniform: int = 800
    n_antipodal: int = 256
    n_straddle: int = 24
    seed: int = 0
    min_offset_frac: float = 1e-4
    max_offset_frac: float = 0.05

    def pairs(self, P: PolygonDomain) -> list[tuple[BoundaryPoint, BoundaryPoint]]:
        rng = np.random.default_rng(self.seed)
        out: list[tuple[BoundaryPoint, BoundaryPoint]] = []
        per = P.perimeter
        s1 = rng.uniform(0, per, self.n_uniform)
        s2 = rng.uniform(0, per, self.n_uniform)
        for u, v in zip(s1, s2):
            out.append((P.point_at_arclength(u), P.point_at_arclength(v)))
        base = rng.uniform(0, per, self.n_antipodal)
        for u in base:
            out.append((P.point_at_arclength(u), P.point_at_arclength(u + per / 2)))
        offs = per * np.geomspace(self.min_offset_frac, self.max_offset_frac,
                                  self.n_straddle)
        for k in P.reflex_vertices:
            sv = float(P.cum_lengths[k])
            for d in offs:
                out.append((P.point_at_arclength(sv - d),
                            P.point_at_arclength(sv + d)))
        return out


def _ratio_max(P: PolygonDomain, sampler: PairSampler, internal: bool) -> float:
    pairs = sampler.pairs(P)
    best = 0.0
    usable = 0
    for w1, w2 in pairs:
        chord = float(np.hypot(w1.x - w2.x, w1.y - w2.y))
        if chord < 1e-9:
            continue
        usable += 1
        ell = P.boundary_arc_length(w1, w2)
        denom = P.internal_distance(w1, w2) if internal else chord
        if denom > 0:
            best = max(best, ell / denom)
    if usable < 1000:
        raise InsufficientDataError(
            f"sampler produced only {usable} usable pairs (need >= 1000)")
    return best


def chordarc_constant(P: PolygonDomain, sampler: PairSampler | None = None) -> float:
    """max over sampled pairs of arc length / chord; lower bound of the sup."""
    return _ratio_max(P, sampler or PairSampler(), internal=False)


def internal_chordarc_constant(P: PolygonDomain,
                               sampler: PairSampler | None = None) -> float:
    """max over sampled pairs of arc length / internal distance."""
    return _ratio_max(P, sampler or PairSampler(), internal=True)


# -- canonical domains --------------------------------------------------------

def regular_polygon(n: int, radius: float = 1.0) -> PolygonDomain:
    ang = 2.0 * math.pi * np.arange(n) / n
    return PolygonDomain(np.column_stack([radius * np.cos(ang),
                                          radius * np.sin(ang)]))


CUSP_JUNCTION_X = math.sqrt((math.sqrt(5.0) - 1.0) / 2.0)


def cusp_domain(resolution: int = 64) -> PolygonDomain:
    """Polygonal D \\ {(x,y): 0 <= x <= 1, |y| <= x^2} (inward cusp at 0).

    The parabola branches y = +-x^2 meet the unit circle where
    x^2 + x^4 = 1, i.e. x* = sqrt((sqrt 5 - 1)/2).  The circular arc is
    sampled uniformly at `resolution` points per unit length; the branch
    chains use vertex spacing proportional to x^2 (the local cusp width),
    realized as a harmonic progression in 1/x down to x = 1/resolution,
    then one terminal vertex at the tip itself.
    """
    if not isinstance(resolution, int) or resolution < 16:
        raise DomainError("cusp resolution must be an integer >= 16")
    xj = CUSP_JUNCTION_X
    yj = xj * xj
    theta_j = math.atan2(yj, xj)
    arc_span = 2.0 * math.pi - 2.0 * theta_j
    n_arc = max(8, int(math.ceil(arc_span * resolution)))
    ang = theta_j + arc_span * np.arange(n_arc + 1) / n_arc
    circle = np.column_stack([np.cos(ang), np.sin(ang)])

    x_switch = 1.0 / math.sqrt(resolution)       # where x^2 drops below 1/res
    uniform = np.arange(xj - 1.0 / resolution, x_switch, -1.0 / resolution)
    inv = np.arange(math.ceil(1.0 / x_switch), resolution + 1, 1.0)
    xs = np.concatenate([uniform, 1.0 / inv])    # descending toward the tip
    lower = np.column_stack([xs, -xs * xs])
    upper = np.column_stack([xs[::-1], xs[::-1] ** 2])
    tip = np.array([[0.0, 0.0]])
    verts = np.vstack([circle, lower, tip, upper])
    return PolygonDomain(verts)


# -- vertex-list text format --------------------------------------------------

def save_vertices(P: PolygonDomain, path) -> None:
    """One "x y" pair per line; the polygon closes implicitly."""
    with open(path, "w") as fh:
        for x, y in P.vertices:
            fh.write(f"{float(x)!r} {float(y)!r}\n")


def load_vertices(path) -> PolygonDomain:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValidationError(f"expected 'x y' per line, got {line!r}")
            rows.append((float(parts[0]), float(parts[1])))
    return PolygonDomain(np.asarray(rows))
