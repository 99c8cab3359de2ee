"""Mean conserved momenta: spectral means, closed forms, and a grid oracle.

All means are ratios (normalised spectra or Rayleigh quotients), so the
divergent normalisation of ideal non-square-integrable waves cancels and
every result is invariant under scaling the field by a nonzero constant.
The routes are mutually independent and reported side by side, never
averaged: means over charge spectra, the closed-form coefficient sum for
elliptic waves, and direct finite-difference Rayleigh quotients on grids.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, RangeError, UndefinedMeanError
from .spectral import analytic_ft_plane, oam_spectrum, ring_spectrum_from_grid
from .specfun import mathieu_eigen

GRID_OPS = ("lz", "px", "py", "elliptic")


@dataclass
class MomentumReport:
    """Mean momenta of one field by one method.

    Linear momenta are reported in units of k; mean_pz always comes from
    the cone metadata (k cos theta over k) because a single transverse
    slice carries no axial derivative.
    """

    mean_lz: float
    mean_px: float
    mean_py: float
    mean_pz: float
    elliptic_invariant: float  # None unless computed on an elliptic-wave grid
    method: str
    norm_used: float
    window: str
    notes: str = ""

    def as_dict(self):
        return {
            "mean_lz": self.mean_lz,
            "mean_px": self.mean_px,
            "mean_py": self.mean_py,
            "mean_pz": self.mean_pz,
            "elliptic_invariant": self.elliptic_invariant,
            "method": self.method,
            "norm_used": self.norm_used,
            "window": self.window,
            "notes": self.notes,
        }


def mean_charge(spec):
    """Mean topological charge sum n |c_n|^2 / sum |c_n|^2."""
    power = np.abs(spec.coeffs) ** 2
    total = power.sum()
    if not total > 0.0:
        raise UndefinedMeanError("charge spectrum has zero norm; mean is undefined")
    return float((spec.charges() * power).sum() / total)


def oam_plane_wave(label, m=1024, n_half=40):
    """Mean charge of a plane wave via its regularised ring profile.

    All charge magnitudes of the azimuth delta are equal, so any symmetric
    charge window cancels exactly and the result is 0.
    """
    spec = oam_spectrum(analytic_ft_plane(label, m), -n_half, n_half)
    return mean_charge(spec)


def oam_mathieu_paper(parity, n, q):
    """Closed-form mean charge of an elliptic wave from its coefficients.

    Implements the one-sided sum  sum_m [m + (n mod 2)/2] |coeff_{2m + n mod 2}|^2
    normalised by the total coefficient power (the squared delta
    normalisations cancel in the ratio).  The weight of the coefficient at
    harmonic j is j/2 in every symmetry class, so the q -> 0 limit (a unit
    coefficient vector at harmonic n) is n/2.  Note the two-sided spectral
    mean of the same (real) profile is 0 by conjugation symmetry — both
    numbers are physical outputs of different conventions and are reported
    separately, not reconciled.
    """
    eig = mathieu_eigen(parity, n, q)
    weights = eig.harmonics / 2.0
    power = eig.coeffs ** 2
    return float((weights * power).sum() / power.sum())


def _interior(values, border):
    return values[border:-border, border:-border]


def _d_dx(values, dx):
    return (values[:, 2:] - values[:, :-2]) / (2.0 * dx)


def _d_dy(values, dy):
    return (values[2:, :] - values[:-2, :]) / (2.0 * dy)


def _apply_lz(values, x, y, dx, dy):
    """-i (x d/dy - y d/dx) on the one-cell-shrunk interior."""
    vx = _d_dx(values, dx)[1:-1, :]
    vy = _d_dy(values, dy)[:, 1:-1]
    xs = x[1:-1][None, :]
    ys = y[1:-1][:, None]
    return -1j * (xs * vy - ys * vx)


def _apply_px(values, dx):
    return -1j * _d_dx(values, dx)[1:-1, :]


def _apply_py(values, dy):
    return -1j * _d_dy(values, dy)[:, 1:-1]


def grid_mean(fieldgrid, op, f=None):
    """Rayleigh quotient of a momentum operator on a sampled field.

    Derivatives use centred second-order differences; the composed
    operator lz^2 + f^2 px^2 applies the first-order stencils twice, so
    its quadrature region loses two border cells instead of one.  The
    imaginary part of the quotient must stay below 1e-6 relative, else a
    NumericalError is raised; the real part is returned (raw operator
    units: lz dimensionless, px/py in rad/length).
    """
    if op not in GRID_OPS:
        raise RangeError(f"unknown grid operator {op!r}; choose from {GRID_OPS}")
    border = 2 if op == "elliptic" else 1
    if fieldgrid.nx - 2 * border < 8 or fieldgrid.ny - 2 * border < 8:
        raise RangeError("grid interior must keep at least 8 cells per direction")
    v = fieldgrid.values
    x = fieldgrid.x()
    y = fieldgrid.y()
    dx, dy = fieldgrid.dx, fieldgrid.dy

    if op == "lz":
        applied = _apply_lz(v, x, y, dx, dy)
    elif op == "px":
        applied = _apply_px(v, dx)
    elif op == "py":
        applied = _apply_py(v, dy)
    else:
        if f is None or not f > 0.0:
            raise RangeError("the elliptic operator needs a positive semi-focal distance f")
        inner = _apply_lz(v, x, y, dx, dy)
        lz2 = _apply_lz(inner, x[1:-1], y[1:-1], dx, dy)
        # compose the first-derivative stencil twice for px^2
        px2 = -_d_dx(_d_dx(v, dx), dx)[2:-2, :]
        applied = lz2 + f * f * px2

    core = _interior(v, border)
    denom = np.vdot(core, core)
    quot = np.vdot(core, applied) / denom
    scale = max(1.0, abs(quot))
    if abs(quot.imag) > 1e-6 * scale:
        raise NumericalError(
            f"grid mean of {op} has imaginary residue {quot.imag:.3e} "
            f"(relative to {scale:.3e}); field sampling is inconsistent"
        )
    return float(quot.real)


def ring_transverse_means(ring):
    """(mean px, mean py) in units of k from a ring profile's power."""
    power = np.abs(ring.samples) ** 2
    total = power.sum()
    if not total > 0.0:
        raise UndefinedMeanError("ring profile has zero norm; means are undefined")
    phi = ring.azimuths()
    s = math.sin(ring.theta)
    return (
        float(s * (power * np.cos(phi)).sum() / total),
        float(s * (power * np.sin(phi)).sum() / total),
    )


def _elliptic_notes(measured, parity, n, q):
    eig = mathieu_eigen(parity, n, q)
    cands = {
        "char": eig.char_value,
        "char+2q": eig.char_value + 2.0 * q,
        "char-2q": eig.char_value - 2.0 * q,
    }
    best = min(cands, key=lambda name: abs(cands[name] - measured))
    listing = ", ".join(f"{name}={val:.9g}" for name, val in cands.items())
    return (
        f"elliptic invariant {measured:.9g} vs candidates {listing}; "
        f"closest: {best}"
    )


def report(fieldgrid, methods=("spectral", "grid"), m=1024, n_min=-40, n_max=40,
           window="none", f=None, parity=None, n=None, q=None):
    """Momentum reports for a sampled field, one entry per requested method.

    Methods: "spectral" (ring + charge spectrum means), "grid"
    (finite-difference Rayleigh quotients), "paper" (closed-form elliptic
    mean charge; needs parity and n, with q given or derived from f and the
    cone metadata).  Results are reported side by side, never averaged.
    """
    meta = fieldgrid.meta
    if meta.k is None or meta.theta is None:
        raise RangeError("field metadata must carry k and theta to build reports")
    mean_pz = math.cos(meta.theta)
    if q is None and f is not None:
        q = (f * meta.k * math.sin(meta.theta) / 2.0) ** 2

    out = []
    for method in methods:
        if method == "spectral":
            ring = ring_spectrum_from_grid(fieldgrid, m, window)
            spec = oam_spectrum(ring, n_min, n_max)
            px, py = ring_transverse_means(ring)
            out.append(MomentumReport(
                mean_lz=mean_charge(spec),
                mean_px=px, mean_py=py, mean_pz=mean_pz,
                elliptic_invariant=None,
                method="spectral", norm_used=spec.norm, window=window,
                notes=f"charge window [{n_min}, {n_max}]; pz from cone metadata",
            ))
        elif method == "grid":
            k = meta.k
            lz = grid_mean(fieldgrid, "lz")
            px = grid_mean(fieldgrid, "px") / k
            py = grid_mean(fieldgrid, "py") / k
            inv = None
            notes = "pz from cone metadata"
            if f is not None:
                inv = grid_mean(fieldgrid, "elliptic", f=f)
                if parity is not None and n is not None and q is not None:
                    notes = _elliptic_notes(inv, parity, n, q) + "; pz from cone metadata"
            norm = float(np.sum(np.abs(fieldgrid.values) ** 2) * fieldgrid.dx * fieldgrid.dy)
            out.append(MomentumReport(
                mean_lz=lz, mean_px=px, mean_py=py, mean_pz=mean_pz,
                elliptic_invariant=inv,
                method="grid-oracle", norm_used=norm, window="none",
                notes=notes,
            ))
        elif method == "paper":
            if parity is None or n is None:
                raise RangeError("the closed-form method needs parity and n")
            if q is None:
                raise RangeError("the closed-form method needs q, or f plus cone metadata")
            eig = mathieu_eigen(parity, n, q)
            out.append(MomentumReport(
                mean_lz=oam_mathieu_paper(parity, n, q),
                mean_px=0.0, mean_py=0.0, mean_pz=mean_pz,
                elliptic_invariant=None,
                method="paper-formula",
                norm_used=float(np.sum(eig.coeffs ** 2)),
                window="none",
                notes=(
                    "one-sided coefficient sum; the two-sided spectral mean of the "
                    "same real profile is 0 by conjugation symmetry"
                ),
            ))
        else:
            raise RangeError(f"unknown method {method!r}")
    return out
