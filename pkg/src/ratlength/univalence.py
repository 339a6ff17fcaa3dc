"""Numerical univalence certificates.

Two routes: the sufficient condition Re R' > 0 on a disk, and simplicity of the
boundary curve R(T) together with winding number 1 about R(0). The second is
backed by the argument principle, which ``count_preimages`` evaluates
directly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from ._numerics import circle_mean
from .core import CircleGrid
from .errors import (
    DegenerateImage,
    NonIntegerWinding,
    PoleInDisk,
    PoleProximity,
    SingularityOnContour,
    ValueOnBoundary,
)

COLLINEAR_TOL = 1e-12


@dataclass(frozen=True)
class UnivalenceCertificate:
    method: str
    passed: bool
    status: str
    resolution: int
    winding: int | None = None
    min_re: float | None = None
    location: complex | None = None
    intersection: tuple | None = None

    def __bool__(self):
        return self.passed

    CSV_HEADER = "method,passed,winding,min_re,resolution"

    def csv_row(self):
        w = "" if self.winding is None else str(self.winding)
        mr = "" if self.min_re is None else repr(float(self.min_re))
        return f"{self.method},{int(self.passed)},{w},{mr},{self.resolution}"


def _check_disk(R, radius):
    try:
        inside = R.count_poles_in_disk(radius)
    except NotImplementedError:
        inside = 0
    if inside:
        raise PoleInDisk(f"R has a pole in |z| <= {radius}")


def min_re_derivative(R, rho, grid_density=64):
    """Minimum of Re R' over |z| <= rho; returns (value, location)."""
    if not 0.0 < rho < 1.0:
        raise ValueError("rho must lie in (0, 1)")
    _check_disk(R, rho)
    radii = rho * np.arange(1, grid_density + 1) / grid_density
    thetas = 2.0 * np.pi * np.arange(grid_density) / grid_density
    z = radii[:, None] * np.exp(1j * thetas)[None, :]
    vals = np.real(R.derivative(z))
    i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
    best, where = float(vals[i, j]), complex(z[i, j])

    def objective(x):
        return float(np.real(R.derivative(complex(x[0] * np.exp(1j * x[1])))))

    res = minimize(
        objective,
        x0=[radii[i], thetas[j]],
        method="L-BFGS-B",
        bounds=[(0.0, rho), (thetas[j] - np.pi / 8, thetas[j] + np.pi / 8)],
    )
    if res.fun < best:
        best, where = float(res.fun), complex(res.x[0] * np.exp(1j * res.x[1]))
    return best, where


def certify_re_derivative(R, rho=0.999, grid_density=64):
    value, where = min_re_derivative(R, rho, grid_density)
    passed = value > 0
    return UnivalenceCertificate(
        method="re-derivative",
        passed=passed,
        status="pass" if passed else "fail",
        resolution=grid_density,
        min_re=value,
        location=where,
    )


def default_resolution(degree):
    return 4096 if degree <= 64 else 64 * degree


def _orient(a, b, c):
    return (b.real - a.real) * (c.imag - a.imag) - (b.imag - a.imag) * (c.real - a.real)


def self_intersections(vertices, closed=True, tol=COLLINEAR_TOL, chunk=1 << 18):
    """Pairs of crossing segments of a polyline.

    Sort-and-sweep on the x-extent of every segment, then orientation tests on
    the candidate pairs. Returns (crossing pairs, near-degenerate pairs), each a
    sorted list of (i, j) segment indices with i < j.
    """
    p = np.asarray(vertices, dtype=complex)
    a = p
    b = np.roll(p, -1) if closed else p[1:]
    if not closed:
        a = p[:-1]
    nseg = a.size
    scale = max(float(np.max(np.abs(p - p.mean()))), 1e-300)
    eps = tol * scale * scale
    xlo, xhi = np.minimum(a.real, b.real), np.maximum(a.real, b.real)
    ylo, yhi = np.minimum(a.imag, b.imag), np.maximum(a.imag, b.imag)
    order = np.argsort(xlo, kind="stable")
    xlo_s = xlo[order]
    reach = np.searchsorted(xlo_s, xhi[order], side="right")
    counts = np.maximum(reach - np.arange(nseg) - 1, 0)
    crossings, touches = [], []
    starts = np.cumsum(counts) - counts
    total = int(counts.sum())
    pos = 0
    while pos < total:
        stop = min(total, pos + chunk)
        # expand the (sorted index, offset) pairs covering flat positions pos..stop
        k = np.arange(pos, stop)
        si = np.searchsorted(starts, k, side="right") - 1
        sj = si + 1 + (k - starts[si])
        i, j = order[si], order[sj]
        i, j = np.minimum(i, j), np.maximum(i, j)
        adjacent = (j - i == 1) | (closed & (i == 0) & (j == nseg - 1))
        overlap = (ylo[i] <= yhi[j]) & (ylo[j] <= yhi[i]) & ~adjacent
        i, j = i[overlap], j[overlap]
        o1 = _orient(a[i], b[i], a[j])
        o2 = _orient(a[i], b[i], b[j])
        o3 = _orient(a[j], b[j], a[i])
        o4 = _orient(a[j], b[j], b[i])
        proper = (o1 * o2 < 0) & (o3 * o4 < 0)
        near = (
            (np.abs(o1) <= eps) | (np.abs(o2) <= eps) | (np.abs(o3) <= eps) | (np.abs(o4) <= eps)
        )
        maybe = (o1 * o2 <= 0) & (o3 * o4 <= 0)
        firm = proper & ~near
        crossings.extend(zip(i[firm].tolist(), j[firm].tolist()))
        soft = maybe & near
        touches.extend(zip(i[soft].tolist(), j[soft].tolist()))
        pos = stop
    return sorted(crossings), sorted(touches)


def polyline_winding(vertices, w):
    """Winding number of the closed polyline about w."""
    d = np.asarray(vertices, dtype=complex) - w
    turns = np.sum(np.angle(np.roll(d, -1) / d)) / (2.0 * np.pi)
    return int(round(turns))


def boundary_simple(R, M=None):
    """Certify univalence from the sampled boundary curve R(T)."""
    M = default_resolution(R.degree) if M is None else M
    if M < 64:
        raise ValueError("boundary resolution must be at least 64")
    thetas = 2.0 * np.pi * np.arange(M) / M
    try:
        p = np.asarray(R(np.exp(1j * thetas)), dtype=complex)
        center = complex(R(0.0))
    except PoleProximity as exc:
        raise SingularityOnContour(str(exc)) from exc
    span = max(np.ptp(p.real), np.ptp(p.imag))
    if span < 1e-12:
        raise DegenerateImage("image curve diameter below 1e-12")
    winding = polyline_winding(p, center)
    crossings, touches = self_intersections(p)
    first = None
    if crossings:
        i, j = crossings[0]
        first = (float(thetas[i]), float(thetas[j]))
    if winding != 1 or crossings:
        status = "fail"
    elif touches:
        status = "indeterminate"
    else:
        status = "pass"
    return UnivalenceCertificate(
        method="boundary-simple",
        passed=status == "pass",
        status=status,
        resolution=M,
        winding=winding,
        intersection=first,
    )


def count_preimages(R, w, grid=CircleGrid(), boundary_gap=1e-6):
    """Number of solutions of R(z) = w in the disk, by the argument principle."""
    _check_disk(R, 1.0)
    probe = np.exp(2j * np.pi * np.arange(4096) / 4096)
    curve = R(probe)
    seg_a, seg_b = curve, np.roll(curve, -1)
    d = seg_b - seg_a
    t = np.clip(np.real((w - seg_a) * np.conj(d)) / np.maximum(np.abs(d) ** 2, 1e-300), 0, 1)
    gap = float(np.min(np.abs(seg_a + t * d - w)))
    if gap < boundary_gap:
        raise ValueOnBoundary(f"w lies within {gap:.3e} of R(T)")

    def integrand(z):
        return R.derivative(z) * z / (R(z) - w)

    value, _ = circle_mean(integrand, grid.nodes, 1.0, grid.rtol, grid.max_doublings, atol=1e-12)
    value = complex(value)
    nearest = round(value.real)
    if abs(value - nearest) > 0.1:
        raise NonIntegerWinding(f"argument-principle integral {value} is not near an integer")
    return int(nearest)
