"""N-function machinery and a discrete Hardy-Littlewood maximal operator.

The central family is Phi(t) = t^2 log^lambda(e + t) for lambda > -1, with
density (derivative)

    phi_N(t) = 2 t log^lambda(e+t) + lambda t^2 log^{lambda-1}(e+t) / (e+t),

which is increasing with phi_N(0) = 0, so Phi is an N-function.  The
complementary function is built by monotone inversion of the density,
psi(t) = sup{s : phi_N(s) <= t}, and Psi(t) = int_0^t psi; the Legendre
identity Psi(t) = t psi(t) - Phi(psi(t)) serves as an independent oracle.

The maximal operator averages grid samples over disks whose cell membership
is decided by the cell-center rule; the radius list is finite (dyadic by
default), so the result is a lower bound for the continuous maximal
function.  `orlicz_maximal_test` reports the two sides of the Orlicz
maximal inequality without asserting it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, optimize, signal

from .errors import DomainError, NumericalError

_E = math.e
GRID_LO, GRID_HI = 1e-8, 1e8


def log_grid(n: int = 200, lo: float = GRID_LO, hi: float = GRID_HI) -> np.ndarray:
    """Log-spaced evaluation grid used by the Delta2 / doubling diagnostics."""
    if not (lo > 0 and hi > lo):
        raise DomainError("log grid needs 0 < lo < hi")
    return np.logspace(math.log10(lo), math.log10(hi), n)


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not lam > -1.0:
        raise DomainError(f"lambda must exceed -1, got {lam}")
    return lam


def phi_lambda(t, lam: float):
    """Phi(t) = t^2 log^lambda(e + t), elementwise on arrays."""
    lam = _check_lambda(lam)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("Phi is defined for t >= 0")
    out = t * t * np.log(_E + t) ** lam
    return float(out) if out.ndim == 0 else out


def phi_lambda_density(t, lam: float):
    """Derivative of phi_lambda in t; increasing with value 0 at t = 0."""
    lam = _check_lambda(lam)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("density is defined for t >= 0")
    lg = np.log(_E + t)
    out = 2.0 * t * lg ** lam + lam * t * t * lg ** (lam - 1.0) / (_E + t)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class NFunction:
    """Convex Phi with Phi(0)=0, Phi(t)/t -> 0 (t->0) and -> inf (t->inf)."""

    evaluate: Callable
    density: Callable
    lam: float | None = None
    name: str = "N-function"

    def __call__(self, t):
        return self.evaluate(t)


def log_weighted_square(lam: float) -> NFunction:
    """The package's canonical N-function t^2 log^lambda(e+t)."""
    lam = _check_lambda(lam)
    return NFunction(evaluate=lambda t: phi_lambda(t, lam),
                     density=lambda t: phi_lambda_density(t, lam),
                     lam=lam, name=f"t^2 log^{lam:g}(e+t)")


# -- complementary function ------------------------------------------------

@dataclass(frozen=True)
class ComplementaryPair:
    primal: NFunction

    def psi(self, t: float) -> float:
        """Generalized inverse sup{s : density(s) <= t} by bracketing + Brent."""
        t = float(t)
        if t < 0:
            raise DomainError("psi is defined for t >= 0")
        if t == 0.0:
            return 0.0
        dens = self.primal.density
        hi = 1.0
        while dens(hi) <= t:
            hi *= 2.0
            if hi > 1e300:
                raise NumericalError("density never exceeded the target level")
        if dens(hi / 2) > t:
            lo = 0.0
        else:
            lo = hi / 2
        return float(optimize.brentq(lambda s: dens(s) - t, lo, hi,
                                     xtol=1e-300, rtol=8.9e-16))

    def complementary(self, t: float) -> float:
        """Psi(t) = int_0^t psi(s) ds by adaptive quadrature, 1e-8 relative."""
        t = float(t)
        if t < 0:
            raise DomainError("Psi is defined for t >= 0")
        if t == 0.0:
            return 0.0
        val, err = integrate.quad(self.psi, 0.0, t, epsabs=0.0, epsrel=1e-10,
                                  limit=200)
        if not math.isfinite(val) or (val > 0 and err / val > 1e-8):
            raise NumericalError(
                f"complementary quadrature did not reach 1e-8 relative at t={t}")
        return val

    def legendre_residual(self, t: float) -> float:
        """|Psi(t) - (t psi(t) - Phi(psi(t)))| / max(1, Psi(t)); near 0."""
        s = self.psi(t)
        lhs = self.complementary(t)
        rhs = t * s - float(self.primal(s))
        return abs(lhs - rhs) / max(1.0, abs(lhs))

    def young_slack(self, s_grid, t_grid) -> float:
        """min over the grid of Phi(s) + Psi(t) - s t; >= -tol numerically."""
        worst = math.inf
        for t in np.asarray(t_grid, dtype=float):
            big_psi = self.complementary(t)
            phis = np.asarray(self.primal(np.asarray(s_grid, dtype=float)))
            worst = min(worst, float(np.min(phis + big_psi - np.asarray(s_grid) * t)))
        return worst


def complementary_pair(f: NFunction) -> ComplementaryPair:
    return ComplementaryPair(primal=f)


# -- doubling diagnostics ----------------------------------------------------

def delta2_constant(f: NFunction, grid=None) -> float:
    """max over the grid of Phi(2t)/Phi(t); 4 exactly when lambda = 0."""
    ts = log_grid() if grid is None else np.asarray(grid, dtype=float)
    ts = ts[ts > 0]
    if ts.size == 0:
        raise DomainError("delta2 grid has no positive points")
    ratios = np.asarray(f(2.0 * ts)) / np.asarray(f(ts))
    return float(np.max(ratios))


def doubling_window(f: NFunction, c: float, grid=None) -> tuple[float, float]:
    """(min, max) of Phi(c t)/Phi(t) over the grid; both finite and positive."""
    if c <= 0:
        raise DomainError("scale must be positive")
    ts = log_grid() if grid is None else np.asarray(grid, dtype=float)
    ts = ts[ts > 0]
    ratios = np.asarray(f(c * ts)) / np.asarray(f(ts))
    return float(np.min(ratios)), float(np.max(ratios))


def check_kr_criterion(f: NFunction, l: float, grid=None) -> bool:
    """Phi(t) <= (1/2l) Phi(l t) at every grid point.

    Passing certifies that the complementary function satisfies Delta2.
    For lambda >= 0 the choice l = 2 works; for -1 < lambda < 0 take
    l = 2^{1/(1+lambda)}.
    """
    if not l > 1.0:
        raise DomainError(f"the criterion needs l > 1, got {l}")
    ts = log_grid() if grid is None else np.asarray(grid, dtype=float)
    ts = ts[ts > 0]
    lhs = np.asarray(f(ts))
    rhs = np.asarray(f(l * ts)) / (2.0 * l)
    return bool(np.all(lhs <= rhs))


# -- discrete maximal operator ----------------------------------------------

@dataclass(frozen=True)
class GridField:
    """Nonnegative samples at cell centers of a square grid on [-extent, extent]^2."""

    values: np.ndarray
    extent: float = 1.25

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
            raise DomainError("grid field must be a square 2-D array")
        if not np.all(np.isfinite(vals)) or np.any(vals < 0):
            raise DomainError("grid field must be finite and nonnegative")
        if not self.extent > 0:
            raise DomainError("extent must be positive")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def cell_size(self) -> float:
        return 2.0 * self.extent / self.n

    @property
    def cell_area(self) -> float:
        return self.cell_size ** 2

    def centers(self) -> np.ndarray:
        return -self.extent + self.cell_size * (np.arange(self.n) + 0.5)


def dyadic_radii(extent: float = 1.25, m_max: int = 10) -> list[float]:
    """Radii extent * 2^-m, m = 0..m_max; the finite sup set of the operator."""
    return [extent * 2.0 ** -m for m in range(m_max + 1)]


def _validate_radii(field: GridField, radii: Sequence[float]) -> np.ndarray:
    rs = np.asarray(list(radii), dtype=float)
    if rs.size == 0 or np.any(rs <= 0):
        raise DomainError("radius list must be nonempty and positive")
    if np.any(rs > 2.0 * field.extent):
        raise DomainError("radii must be bounded by the grid extent")
    return rs


def maximal_on_grid(field: GridField, x: tuple[float, float],
                    radii: Sequence[float]) -> float:
    """max over radii of the average of samples with cell center in B(x, r)."""
    rs = _validate_radii(field, radii)
    px, py = float(x[0]), float(x[1])
    if max(abs(px), abs(py)) > field.extent:
        raise DomainError("query point lies outside the grid")
    cx = field.centers()
    d2 = (cx[None, :] - px) ** 2 + (cx[:, None] - py) ** 2
    best = -math.inf
    for r in rs:
        mask = d2 <= r * r
        cnt = int(np.count_nonzero(mask))
        if cnt == 0:
            if r == np.min(rs):
                raise DomainError(
                    f"disk of radius {r:g} captures no cell center at {x}")
            continue
        best = max(best, float(field.values[mask].sum() / cnt))
    return best


def maximal_field(field: GridField, radii: Sequence[float] | None = None) -> np.ndarray:
    """Discrete maximal values at all cell centers via FFT disk averages.

    Matches maximal_on_grid at every center; cells outside the grid never
    contribute, so averages near the edge divide by the in-grid count.
    """
    radii = dyadic_radii(field.extent) if radii is None else radii
    rs = _validate_radii(field, radii)
    vals = field.values
    ones = np.ones_like(vals)
    out = np.full_like(vals, -math.inf)
    h = field.cell_size
    for r in rs:
        k = int(math.floor(r / h))
        off = np.arange(-k, k + 1)
        kernel = (off[None, :] ** 2 + off[:, None] ** 2) * h * h <= r * r
        kernel = kernel.astype(float)
        num = signal.fftconvolve(vals, kernel, mode="same")
        cnt = np.rint(signal.fftconvolve(ones, kernel, mode="same"))
        cnt[cnt < 1] = 1
        np.maximum(out, num / cnt, out=out)
    return np.maximum(out, 0.0)


@dataclass(frozen=True)
class MaximalTestResult:
    lhs: float
    rhs: float
    b: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs > 0 else math.inf


def orlicz_maximal_test(field: GridField, f: NFunction, b: float,
                        radii: Sequence[float] | None = None) -> MaximalTestResult:
    """Evaluate (sum Phi(b M u) dA, sum Phi(u) dA); reported, never asserted."""
    if not b > 0:
        raise DomainError("b must be positive")
    mf = maximal_field(field, radii)
    area = field.cell_area
    lhs = float(np.sum(np.asarray(f(b * mf))) * area)
    rhs = float(np.sum(np.asarray(f(field.values))) * area)
    return MaximalTestResult(lhs=lhs, rhs=rhs, b=b)


def field_from_extension(ext, n: int = 512, extent: float = 1.25,
                         r_cap: float = 0.999) -> GridField:
    """|Dh| sampled at cell centers inside the disk (0 outside |z| <= r_cap)."""
    from .poisson import operator_norm

    if n < 8:
        raise DomainError("grid resolution must be at least 8")
    cx = -extent + 2.0 * extent * (np.arange(n) + 0.5) / n
    xx, yy = np.meshgrid(cx, cx, indexing="xy")
    zz = xx + 1j * yy
    mask = np.abs(zz) <= r_cap
    vals = np.zeros((n, n))
    if np.any(mask):
        hz, hzb = ext._derivative_batch(zz[mask])
        vals[mask] = operator_norm(hz, hzb)
    return GridField(values=vals, extent=extent)
