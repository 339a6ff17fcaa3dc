"""Circle and disk integrals of rational functions and the bound report.

All circle integrals use the normalized measure dm = |dz| / (2 pi) and all disk
integrals use dm2 = du dv / pi, so the boundary length of z**n is n and the
disk energy of z**n is n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numerics import circle_mean, panel_integral, polish_circle_extremum
from .core import CircleGrid
from .errors import PoleInDisk, PoleProximity, SingularityOnContour

DEFAULT_GRID = CircleGrid()
DYNKIN_CUTOFF = 1.0 - 1e-6
SUP_NORM_NODES = 4096


def _guarded(g):
    def wrapped(z):
        try:
            v = g(z)
        except PoleProximity as exc:
            raise SingularityOnContour(str(exc)) from exc
        if not np.all(np.isfinite(v)):
            raise SingularityOnContour("non-finite value on the contour")
        return v

    return wrapped


def circle_average(g, r, grid=DEFAULT_GRID, atol=0.0):
    """Adaptive trapezoid mean of ``g`` over |z| = r (r may be an array)."""
    value, _ = circle_mean(
        _guarded(g), grid.nodes, r, grid.rtol, grid.max_doublings, atol=atol
    )
    return value


def circle_integral_means(f, t, r, grid=DEFAULT_GRID):
    """M_t[f'](r): the angular mean of |f'|**t on the circle of radius r."""
    return float(circle_average(lambda z: np.abs(f.derivative(z)) ** t, r, grid))


def boundary_length(R, grid=DEFAULT_GRID):
    """Normalized boundary length: the mean of |R'| over the unit circle."""
    return float(circle_average(lambda z: np.abs(R.derivative(z)), 1.0, grid))


def sup_norm_circle(f, grid=DEFAULT_GRID):
    """Maximum of |f| on the unit circle: grid scan plus golden-section polish."""
    m = max(grid.nodes, SUP_NORM_NODES)
    thetas = 2.0 * np.pi * np.arange(m) / m
    vals = np.abs(_guarded(f)(np.exp(1j * thetas)))
    _, best = polish_circle_extremum(lambda t: abs(complex(f(np.exp(1j * t)))), thetas, vals)
    return float(best)


def has_poles_in_closed_disk(R):
    return R.count_poles_in_disk(1.0) > 0


def disk_energy(R, grid=DEFAULT_GRID):
    """Integral of |R'|**2 over the disk against dm2 = du dv / pi."""
    if has_poles_in_closed_disk(R):
        raise PoleInDisk("disk energy needs a function without poles in the closed disk")

    def ring(rho):
        means = circle_average(lambda z: np.abs(R.derivative(z)) ** 2, rho, grid)
        return 2.0 * rho * means

    return panel_integral(ring, 0.0, 1.0)


DYNKIN_GRID = CircleGrid(nodes=64, rtol=1e-8, max_doublings=14)


def dynkin_L(B, r, grid=DYNKIN_GRID, cutoff=DYNKIN_CUTOFF, rtol=1e-7):
    """Integral over |w| < r of ((1 - |B(w)|) / (1 - |w|))**2 dm2(w).

    The integrand stays bounded as |w| -> 1; beyond ``cutoff`` the last ring
    average is extended flat to the edge. |B| has a conical kink at each zero,
    so both quadratures converge only algebraically there; the default
    tolerances are looser than for the smooth integrals.
    """
    top = min(r, cutoff)

    def ring_mean(rho):
        return circle_average(lambda w: B.one_minus_modulus_ratio(w) ** 2, rho, grid)

    body = panel_integral(
        lambda rho: 2.0 * rho * ring_mean(rho), 0.0, top, rtol=rtol, atol=rtol
    )
    if r > cutoff:
        body += float(ring_mean(cutoff)) * (r * r - cutoff * cutoff)
    return body


@dataclass(frozen=True)
class BoundReport:
    degree: int
    boundary_length: float
    sup_norm_circle: float
    disk_energy: float | None
    dolzhenko_ratio: float
    prop1_ratio: float | None
    univalent_upper_ratio: float | None
    univalence_certified: bool
    # E / ||R||^2 (<= 1 for univalent R with dm2 = du dv / pi) and the same
    # quantity divided by pi**2, i.e. the two readings of the area step
    area_ratio_literal: float | None = None
    area_ratio_pi2: float | None = None

    CSV_HEADER = "degree,length,sup_norm,energy,dolzhenko_ratio,prop1_ratio,upper_ratio,univalent"

    def csv_row(self):
        return ",".join(
            [
                str(self.degree),
                _fmt(self.boundary_length),
                _fmt(self.sup_norm_circle),
                _fmt(self.disk_energy),
                _fmt(self.dolzhenko_ratio),
                _fmt(self.prop1_ratio),
                _fmt(self.univalent_upper_ratio),
                "1" if self.univalence_certified else "0",
            ]
        )


def _fmt(x):
    return "" if x is None else repr(float(x))


def _ratio(num, den):
    return 0.0 if num == 0.0 else num / den


def verify_bounds(R, univalence_certificate=None, grid=DEFAULT_GRID):
    """Measure R against the Dolzhenko, energy and univalent upper bounds."""
    n = R.degree
    length = boundary_length(R, grid)
    sup = sup_norm_circle(R, grid)
    dolzhenko = _ratio(length, n * sup)
    energy = prop1 = None
    literal = pi2 = None
    if not has_poles_in_closed_disk(R):
        energy = disk_energy(R, grid)
        prop1 = _ratio(length, 6.0 * math.sqrt(n) * math.sqrt(energy))
        if sup > 0:
            literal = energy / sup**2
            pi2 = literal / math.pi**2
    certified = bool(univalence_certificate) and bool(
        getattr(univalence_certificate, "passed", univalence_certificate)
    )
    upper = None
    if certified and sup <= 1.0 + 1e-12:
        upper = _ratio(length, 6.0 * math.pi * math.sqrt(n))
    return BoundReport(
        degree=n,
        boundary_length=length,
        sup_norm_circle=sup,
        disk_energy=energy,
        dolzhenko_ratio=dolzhenko,
        prop1_ratio=prop1,
        univalent_upper_ratio=upper,
        univalence_certified=certified,
        area_ratio_literal=literal,
        area_ratio_pi2=pi2,
    )
