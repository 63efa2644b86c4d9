"""Poisson extension of a circle homeomorphism and its disk energies.

h(z) = (1/2pi) int_S (1-|z|^2)/|z-zeta|^2 phi(zeta) |d zeta| is evaluated by
the midpoint rule on N_b boundary nodes; the quadrature error is
O(N_b^-2 * (1-|z|)^-2) for rough boundary data and spectrally small for
smooth phi away from the boundary.  Differentiating the kernel in z gives
d/dz formula zeta/(z-zeta)^2; since the Poisson kernel is real, its d/dzbar
derivative is the conjugate kernel conj(zeta)/(zbar - conj(zeta))^2, applied
to the *unconjugated* boundary values.  Both are validated against central
finite differences of `extend`.

Energies (i) and (ii) integrate Phi(|Dh|) over Whitney cells with tensor
Gauss-Legendre quadrature in polar coordinates, |Dh| = |h_z| + |h_zbar|
(the single norm convention used everywhere in this package).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .circle_map import TWO_PI, CircleHomeomorphism
from .dyadic import whitney_cell
from .energy import EnergyReport, make_report
from .errors import DomainError, NumericalError, ResourceGuardError

BARRIER = 1.0 - 2.0 ** -20
DEFAULT_NODES = 2 ** 14
DEFAULT_GAUSS = 4
MAX_WHITNEY_J = 12
_CHUNK_ENTRIES = 4_000_000  # complex entries per kernel-matrix chunk


def operator_norm(h_z, h_zbar):
    """|Dh| = |h_z| + |h_zbar|; every module must use this definition."""
    return np.abs(h_z) + np.abs(h_zbar)


@dataclass(frozen=True)
class DerivativePair:
    h_z: complex
    h_zbar: complex

    @property
    def norm(self) -> float:
        return float(operator_norm(self.h_z, self.h_zbar))

    @property
    def jacobian(self) -> float:
        return abs(self.h_z) ** 2 - abs(self.h_zbar) ** 2


class HarmonicExtension:
    """Midpoint-quadrature Poisson extension of a boundary circle map."""

    def __init__(self, map_: CircleHomeomorphism, n_boundary: int = DEFAULT_NODES,
                 gauss_order: int = DEFAULT_GAUSS):
        if not 2 ** 8 <= n_boundary <= 2 ** 18:
            raise DomainError(f"n_boundary must be in [2^8, 2^18], got {n_boundary}")
        if not 2 <= gauss_order <= 12:
            raise DomainError(f"gauss_order must be in 2..12, got {gauss_order}")
        self.map = map_
        self.n_boundary = int(n_boundary)
        self.gauss_order = int(gauss_order)

        edges = TWO_PI * np.arange(self.n_boundary + 1) / self.n_boundary
        edges[-1] = TWO_PI
        theta = 0.5 * (edges[:-1] + edges[1:])
        lift = map_.lift_values(theta)
        self._zeta = np.exp(1j * theta)
        self._phi = map_.base_point_image * np.exp(1j * lift)
        self._dtheta = TWO_PI / self.n_boundary
        self._masses = np.diff(map_.lift_values(edges))  # Stieltjes cell masses
        self._field_cache: dict[tuple[int, int], dict] = {}

    # -- point evaluation ------------------------------------------------

    def _check_point(self, z: complex) -> complex:
        z = complex(z)
        if abs(z) > BARRIER:
            raise DomainError(
                f"|z|={abs(z):.9f} violates the boundary barrier 1-2^-20")
        return z

    def extend(self, z: complex) -> complex:
        """h(z) for |z| <= 1 - 2^-20."""
        z = self._check_point(z)
        ker = (1.0 - abs(z) ** 2) / np.abs(z - self._zeta) ** 2
        return complex(np.dot(ker, self._phi) * (self._dtheta / TWO_PI))

    def derivative(self, z: complex) -> DerivativePair:
        z = self._check_point(z)
        hz, hzb = self._derivative_batch(np.asarray([z], dtype=complex))
        return DerivativePair(complex(hz[0]), complex(hzb[0]))

    def derivative_bound(self, z: complex) -> float:
        """Stieltjes bound (1/2pi) int d mu_f(theta)/|z - e^{i theta}| >= |h_z|."""
        z = self._check_point(z)
        return float(np.dot(self._masses, 1.0 / np.abs(z - self._zeta)) / TWO_PI)

    # -- batched kernels ---------------------------------------------------

    def _batched(self, zs: np.ndarray, fn):
        chunk = max(1, _CHUNK_ENTRIES // self.n_boundary)
        outs = []
        for i in range(0, len(zs), chunk):
            outs.append(fn(zs[i:i + chunk]))
        return [np.concatenate(parts) for parts in zip(*outs)]

    def _extend_batch(self, zs: np.ndarray) -> np.ndarray:
        def block(zb):
            ker = (1.0 - np.abs(zb[:, None]) ** 2) / np.abs(zb[:, None] - self._zeta) ** 2
            return (ker @ self._phi * (self._dtheta / TWO_PI),)
        return self._batched(zs, block)[0]

    def _derivative_batch(self, zs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        scale = self._dtheta / TWO_PI
        cz = self._zeta * self._phi * scale
        czb = np.conj(self._zeta) * self._phi * scale

        def block(zb):
            dz = zb[:, None] - self._zeta
            inv2 = 1.0 / (dz * dz)
            hz = inv2 @ cz
            hzb = np.conj(inv2) @ czb
            return hz, hzb
        return self._batched(zs, block)

    # -- Whitney-grid derivative field ------------------------------------

    def _whitney_field(self, J: int) -> dict:
        """Gauss nodes, polar weights and |Dh| on all cells with level <= J."""
        if not isinstance(J, int) or J < 1:
            raise DomainError(f"J must be a positive integer, got {J!r}")
        if J > MAX_WHITNEY_J:
            raise ResourceGuardError(f"Whitney depth {J} exceeds guard {MAX_WHITNEY_J}")
        key = (J, self.gauss_order)
        if key in self._field_cache:
            return self._field_cache[key]
        deeper = [k for k in self._field_cache if k[1] == self.gauss_order and k[0] > J]
        if deeper:
            return self._field_cache[min(deeper)]

        gx, gw = np.polynomial.legendre.leggauss(self.gauss_order)
        levels = []
        for j in range(1, J + 1):
            c0 = whitney_cell(j, 1)
            r = 0.5 * (c0.r_outer + c0.r_inner) + 0.5 * (c0.r_outer - c0.r_inner) * gx
            wr = 0.5 * (c0.r_outer - c0.r_inner) * gw
            half = math.pi / 2 ** j
            t0 = half * (gx + 1.0)          # nodes in the first cell [0, 2*half]
            wt = half * gw
            offsets = TWO_PI * np.arange(2 ** j) / 2 ** j
            theta = (offsets[:, None] + t0[None, :]).ravel()
            # node layout: theta-major, r-minor -> shape (cells*g_t, g_r)
            z = r[None, :] * np.exp(1j * theta)[:, None]
            w = (np.tile(wt, 2 ** j)[:, None] * (wr * r)[None, :]).ravel()
            levels.append((j, z.ravel(), w))

        zs = np.concatenate([z for _, z, _ in levels])
        hz, hzb = self._derivative_batch(zs)
        field = {"levels": [], "radius": np.abs(zs), "norm": operator_norm(hz, hzb)}
        pos = 0
        for j, z, w in levels:
            field["levels"].append({"j": j, "slice": slice(pos, pos + z.size),
                                    "weights": w})
            pos += z.size
        self._field_cache[key] = field
        return field

    def _energy(self, condition: str, lam: float, J: int) -> EnergyReport:
        if not lam > -1.0:
            raise DomainError(f"lambda must exceed -1, got {lam}")
        field = self._whitney_field(J)
        norm = field["norm"]
        radius = field["radius"]
        per_level = []
        for lev in field["levels"]:
            if lev["j"] > J:
                break
            j, sl, w = lev["j"], lev["slice"], lev["weights"]
            nn = norm[sl]
            if condition == "i":
                weight = np.log(math.e + nn) ** lam
            else:
                logw = np.log(2.0 / (1.0 - radius[sl]))
                self._check_ii_weight(j, logw, lam)
                weight = logw ** lam
            vals = nn * nn * weight * w
            per_level.append(math.fsum(vals.tolist()))
        if not np.all(np.isfinite(per_level)):
            raise NumericalError(f"non-finite energy contributions at J={J}")
        return make_report(condition, lam, J, range(1, J + 1), per_level)

    @staticmethod
    def _check_ii_weight(j: int, logw: np.ndarray, lam: float) -> None:
        # log(2/(1-|z|)) must sit in [j ln 2, (j+1) ln 2] on cell nodes, which
        # makes the weight uniformly comparable to j^lam
        lo, hi = j * math.log(2.0), (j + 1) * math.log(2.0)
        if np.any(logw < lo - 1e-9) or np.any(logw > hi + 1e-9):
            raise NumericalError(
                f"(ii) weight escaped its comparability window at level {j}")

    def energy_i(self, lam: float, J: int = 10) -> EnergyReport:
        """int over Whitney cells of |Dh|^2 log^lambda(e + |Dh|)."""
        return self._energy("i", lam, J)

    def energy_ii(self, lam: float, J: int = 10) -> EnergyReport:
        """int over Whitney cells of |Dh|^2 log^lambda(2/(1-|z|))."""
        return self._energy("ii", lam, J)

    # -- diagnostics -------------------------------------------------------

    def fd_derivative(self, z: complex, step: float = 1e-5) -> DerivativePair:
        """Central finite-difference Wirtinger derivatives of extend."""
        z = self._check_point(z)
        dx = (self.extend(z + step) - self.extend(z - step)) / (2 * step)
        dy = (self.extend(z + 1j * step) - self.extend(z - 1j * step)) / (2 * step)
        return DerivativePair(0.5 * (dx - 1j * dy), 0.5 * (dx + 1j * dy))

    def laplacian_probe(self, z: complex, step: float = 1e-3) -> float:
        """5-point discrete Laplacian of Re/Im of h; near 0 for harmonic h."""
        z = self._check_point(z)
        vals = [self.extend(z + d) for d in (step, -step, 1j * step, -1j * step)]
        lap = (sum(vals) - 4.0 * self.extend(z)) / step ** 2
        return abs(lap)

    def dump_derivative_raster(self, path, radii, angles) -> None:
        """CSV raster of |h_z|, |h_zbar| on the polar grid radii x angles."""
        radii = np.asarray(radii, dtype=float)
        angles = np.asarray(angles, dtype=float)
        if np.any(radii > BARRIER) or np.any(radii < 0):
            raise DomainError("raster radii must lie in [0, 1 - 2^-20]")
        zs = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
        hz, hzb = self._derivative_batch(zs)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["r", "theta", "abs_h_z", "abs_h_zbar"])
            idx = 0
            for r in radii:
                for t in angles:
                    w.writerow([repr(float(r)), repr(float(t)),
                                repr(float(abs(hz[idx]))), repr(float(abs(hzb[idx])))])
                    idx += 1
