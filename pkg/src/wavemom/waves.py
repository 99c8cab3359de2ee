"""Separable wave families of the reduced wave equation and grid sampling.

Each family is identified by the eigenvalues of its conserved operators:
wavenumber k plus the cone angle theta for all three, then the azimuth phi
(plane waves), the topological charge n (circular waves built on Bessel
functions), or the order n together with the semi-focal distance f
(elliptic waves built on Mathieu functions).  All families share the
transverse wavenumber k_t = k sin(theta) and the axial phase rate
k cos(theta).
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import RangeError
from .specfun import (
    mathieu_ce,
    mathieu_ce_radial,
    mathieu_norm_constant,
    mathieu_se,
    mathieu_se_radial,
    radial_xi_max,
)

_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)  # i**n without pow() rounding


def _check_cone(k, theta):
    if not (k > 0.0 and math.isfinite(k)):
        raise RangeError(f"wavenumber k must be positive and finite, got {k}")
    if not (0.0 < theta < math.pi):
        raise RangeError(f"cone angle theta must lie in (0, pi), got {theta}")


@dataclass(frozen=True)
class PlaneWave:
    """Plane wave labelled by (k, theta, phi)."""

    k: float
    theta: float
    phi: float

    def __post_init__(self):
        _check_cone(self.k, self.theta)
        if not (-math.pi <= self.phi < math.pi):
            raise RangeError(f"azimuth phi must lie in [-pi, pi), got {self.phi}")

    @property
    def kt(self):
        return self.k * math.sin(self.theta)

    @property
    def kz(self):
        return self.k * math.cos(self.theta)


@dataclass(frozen=True)
class BesselWave:
    """Circular-cylindrical wave labelled by (k, theta, n)."""

    k: float
    theta: float
    n: int

    def __post_init__(self):
        _check_cone(self.k, self.theta)
        if self.n != int(self.n):
            raise RangeError(f"topological charge must be an integer, got {self.n}")

    @property
    def kt(self):
        return self.k * math.sin(self.theta)

    @property
    def kz(self):
        return self.k * math.cos(self.theta)


@dataclass(frozen=True)
class MathieuWave:
    """Elliptic-cylindrical wave labelled by (k, theta, n) on foci at +-f."""

    k: float
    theta: float
    n: int
    parity: str
    f: float

    def __post_init__(self):
        _check_cone(self.k, self.theta)
        if self.parity not in ("even", "odd"):
            raise RangeError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        nmin = 0 if self.parity == "even" else 1
        if self.n < nmin:
            raise RangeError(f"{self.parity} order must be >= {nmin}, got {self.n}")
        if not (self.f > 0.0 and math.isfinite(self.f)):
            raise RangeError(f"semi-focal distance f must be positive, got {self.f}")

    @property
    def kt(self):
        return self.k * math.sin(self.theta)

    @property
    def kz(self):
        return self.k * math.cos(self.theta)

    @property
    def q(self):
        """Separation parameter (f k sin(theta) / 2)^2."""
        return (self.f * self.kt / 2.0) ** 2


@dataclass(frozen=True)
class GridMeta:
    """Wave metadata carried by a sampled field."""

    k: float = None
    theta: float = None
    z_plane: float = 0.0
    description: str = ""


@dataclass
class FieldGrid:
    """Complex scalar field sampled on a uniform transverse grid.

    ``values`` has shape (ny, nx), row-major with the y index outermost;
    sample (i, j) sits at (x0 + j*dx, y0 + i*dy).
    """

    nx: int
    ny: int
    dx: float
    dy: float
    x0: float
    y0: float
    values: np.ndarray = field(repr=False)
    meta: GridMeta = field(default_factory=GridMeta)

    def __post_init__(self):
        if self.nx < 16 or self.ny < 16:
            raise RangeError(f"grid must be at least 16x16, got {self.nx}x{self.ny}")
        if not (self.dx > 0.0 and self.dy > 0.0):
            raise RangeError("grid spacings must be positive")
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.ny, self.nx):
            raise RangeError(
                f"values shape {vals.shape} does not match (ny, nx) = "
                f"({self.ny}, {self.nx})"
            )
        if not np.all(np.isfinite(vals.view(np.float64))):
            raise RangeError("field values must all be finite")
        self.values = vals

    def x(self):
        return self.x0 + self.dx * np.arange(self.nx)

    def y(self):
        return self.y0 + self.dy * np.arange(self.ny)


def elliptic_coords(x, y, f):
    """Map (x, y) to elliptic coordinates (xi, eta) for foci at (+-f, 0).

    Inverts x = f cosh(xi) cos(eta), y = f sinh(xi) sin(eta) with xi >= 0
    and eta in [-pi, pi); the sign of eta matches the sign of y, points on
    the inter-foci segment get xi = 0 and eta >= 0 (the origin maps to
    eta = pi/2), and the ray x <= -f, y = 0 maps to eta = -pi.
    """
    if not (f > 0.0):
        raise RangeError(f"semi-focal distance f must be positive, got {f}")
    z = (np.asarray(x, dtype=float) + 1j * np.asarray(y, dtype=float)) / f
    w = np.arccosh(z)
    xi = np.maximum(w.real, 0.0)
    eta = np.where(w.imag >= math.pi, -math.pi, w.imag)
    if np.ndim(x) == 0 and np.ndim(y) == 0:
        return float(xi), float(eta)
    return xi, eta


def _plane_field(label, x, y, z):
    kx = label.kt * math.cos(label.phi)
    ky = label.kt * math.sin(label.phi)
    phase = kx * x + ky * y + label.kz * z
    return math.sqrt(math.sin(label.theta)) * np.exp(1j * phase)


def _bessel_field(label, x, y, z):
    r = np.hypot(x, y)
    phi = np.arctan2(y, x)
    amp = _I_POW[label.n % 4] * math.sqrt(2.0 * math.pi * math.sin(label.theta))
    return amp * special.jv(label.n, label.kt * r) * np.exp(1j * (label.n * phi + label.kz * z))


def _mathieu_field(label, x, y, z):
    xi, eta = elliptic_coords(x, y, label.f)
    q = label.q
    if label.parity == "even":
        cn = mathieu_norm_constant("even", label.n, q)
        rad = mathieu_ce_radial(label.n, q, xi)
        ang = mathieu_ce(label.n, q, eta)
    else:
        cn = mathieu_norm_constant("odd", label.n, q)
        rad = mathieu_se_radial(label.n, q, xi)
        ang = mathieu_se(label.n, q, eta)
    carrier = np.exp(1j * label.kz * np.asarray(z, dtype=float))
    return math.sqrt(math.sin(label.theta)) * cn * rad * ang * carrier


def eval_plane_wave(label, point):
    """Evaluate a plane wave at (x, y, z); |value| = sqrt(sin theta)."""
    x, y, z = point
    return complex(_plane_field(label, float(x), float(y), float(z)))


def eval_bessel_wave(label, point):
    """Evaluate a circular wave at (x, y, z); zero on-axis unless n = 0."""
    x, y, z = point
    return complex(_bessel_field(label, float(x), float(y), float(z)))


def eval_mathieu_wave(label, point):
    """Evaluate an elliptic wave at (x, y, z).

    The point is mapped through :func:`elliptic_coords`; the result is
    continuous across the inter-foci segment because the angular and
    radial factors are jointly even (even parity) or jointly odd (odd
    parity) under the eta branch flip there.
    """
    x, y, z = point
    return complex(_mathieu_field(label, float(x), float(y), float(z)))


def sample_grid(label, nx, ny, dx, dy, x0=None, y0=None, z=0.0, description=None):
    """Sample a wave family member onto a FieldGrid.

    Samples sit at x0 + j*dx, y0 + i*dy; when x0/y0 are omitted the grid is
    centred on the origin.  For elliptic waves the grid must stay inside the
    supported radial range; the first offending sample index is reported
    otherwise.
    """
    nx, ny = int(nx), int(ny)
    if nx < 16 or ny < 16:
        raise RangeError(f"grid must be at least 16x16, got {nx}x{ny}")
    if x0 is None:
        x0 = -0.5 * (nx - 1) * dx
    if y0 is None:
        y0 = -0.5 * (ny - 1) * dy
    x = x0 + dx * np.arange(nx)
    y = y0 + dy * np.arange(ny)
    X, Y = np.meshgrid(x, y)

    if isinstance(label, PlaneWave):
        vals = _plane_field(label, X, Y, z)
        family = "plane"
    elif isinstance(label, BesselWave):
        vals = _bessel_field(label, X, Y, z)
        family = "bessel"
    elif isinstance(label, MathieuWave):
        xi, _ = elliptic_coords(X, Y, label.f)
        limit = radial_xi_max(label.q)
        if limit < 0.0:
            raise RangeError(
                f"elliptic waves cannot be sampled at q = {label.q:g}: the "
                "radial series loses all double-precision digits"
            )
        if np.any(xi > limit):
            i, j = np.unravel_index(int(np.argmax(xi)), xi.shape)
            raise RangeError(
                f"sample ({i}, {j}) at xi = {xi[i, j]:g} exceeds the supported "
                f"radial range {limit:g} for q = {label.q:g}; shrink the grid "
                "or increase f"
            )
        vals = _mathieu_field(label, X, Y, z)
        family = f"mathieu-{label.parity}"
    else:
        raise TypeError(f"unsupported wave label {type(label).__name__}")

    if description is None:
        description = f"{family} wave sample"
    meta = GridMeta(k=label.k, theta=label.theta, z_plane=float(z), description=description)
    return FieldGrid(nx, ny, float(dx), float(dy), float(x0), float(y0), vals, meta)
