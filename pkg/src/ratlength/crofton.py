"""Curve length from line-crossing counts (Cauchy-Crofton).

Lines are oriented and parametrized as ``x cos(theta) + y sin(theta) + b = 0``
with theta in [0, 2 pi) and measure db dtheta, so that

    length = 1/4 * integral of #(line ∩ curve) db dtheta.

Lengths here are plain arc lengths; divide by 2 pi to compare with the
normalized boundary length of the quadrature module.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientCoverage, SingularityOnContour, PoleProximity

TANGENT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Polyline:
    vertices: np.ndarray
    closed: bool = False
    degenerate: bool = False

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=complex).reshape(-1)
        if v.size < 2 and not self.degenerate:
            raise ValueError("a polyline needs at least two vertices")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_points(cls, points, closed=False, tol=1e-14):
        """Build a polyline, dropping consecutive duplicate vertices."""
        p = np.asarray(points, dtype=complex).reshape(-1)
        keep = np.ones(p.size, dtype=bool)
        keep[1:] = np.abs(np.diff(p)) > tol
        q = p[keep]
        if closed and q.size > 1 and abs(q[-1] - q[0]) <= tol:
            q = q[:-1]
        if q.size < 2:
            return cls(p[:1].repeat(2), closed=closed, degenerate=True)
        return cls(q, closed=closed)

    def segments(self):
        """Start and end points of every segment."""
        v = self.vertices
        if self.degenerate:
            return v[:0], v[:0]
        if self.closed:
            return v, np.roll(v, -1)
        return v[:-1], v[1:]

    @property
    def length(self):
        a, b = self.segments()
        return float(np.sum(np.abs(b - a)))

    def scaled(self, s):
        return Polyline(self.vertices * s, self.closed, self.degenerate)


@dataclass(frozen=True)
class ArcSet:
    """Disjoint angular intervals [start, end) on the unit circle."""

    intervals: tuple

    def __post_init__(self):
        norm = []
        for a, b in self.intervals:
            if b <= a:
                raise ValueError("arc end must exceed its start")
            if b - a >= 2 * np.pi:
                norm = [(0.0, 2 * np.pi)]
                break
            a0 = a % (2 * np.pi)
            norm.append((a0, a0 + (b - a)))
        norm.sort()
        for (a1, b1), (a2, _) in zip(norm, norm[1:]):
            if a2 < b1:
                raise ValueError("arcs overlap")
        if len(norm) > 1 and norm[-1][1] > norm[0][0] + 2 * np.pi:
            raise ValueError("arcs overlap across 0")
        object.__setattr__(self, "intervals", tuple(norm))

    @classmethod
    def full(cls):
        return cls(((0.0, 2 * np.pi),))

    @property
    def measure(self):
        return float(sum(b - a for a, b in self.intervals))

    @property
    def is_full(self):
        return self.measure >= 2 * np.pi - 1e-15


@dataclass(frozen=True)
class CroftonSampler:
    theta_count: int = 720
    b_count: int = 720
    b_max: float = 1.0
    mode: str = "grid"
    seed: int = 0

    def __post_init__(self):
        if self.theta_count < 8 or self.b_count < 8:
            raise ValueError("need at least 8 angles and 8 offsets")
        if self.b_max <= 0:
            raise ValueError("b_max must be positive")
        if self.mode not in ("grid", "monte-carlo"):
            raise ValueError(f"unknown sampler mode {self.mode!r}")

    @property
    def lines(self):
        return self.theta_count * self.b_count


@dataclass(frozen=True)
class CroftonEstimate:
    raw_length: float
    max_crossings: int
    lines_sampled: int

    @property
    def normalized_length(self):
        return self.raw_length / (2 * np.pi)

    CSV_HEADER = "raw_length,normalized_length,max_crossings,lines_sampled"

    def csv_row(self):
        return (
            f"{self.raw_length!r},{self.normalized_length!r},"
            f"{self.max_crossings},{self.lines_sampled}"
        )


def image_polyline(f, E, M):
    """Sample f on each arc of E with M points; closed when E is the whole circle."""
    if M < 2:
        raise ValueError("need at least two points per arc")
    try:
        if E.is_full:
            z = np.exp(2j * np.pi * np.arange(M) / M)
            return Polyline.from_points(f(z), closed=True)
        arcs = []
        for a, b in E.intervals:
            z = np.exp(1j * np.linspace(a, b, M))
            arcs.append(Polyline.from_points(f(z)))
    except PoleProximity as exc:
        raise SingularityOnContour(str(exc)) from exc
    if len(arcs) == 1:
        return arcs[0]
    return arcs


def _projections(p, theta):
    a, b = p.segments()
    c, s = np.cos(theta), np.sin(theta)
    return a.real * c + a.imag * s, b.real * c + b.imag * s


class _SortedSegments:
    """Segment projections split by direction and sorted for counting.

    A segment owns its start vertex and not its end, so a line through a shared
    vertex is counted once; segments parallel to the line count zero.
    """

    def __init__(self, s0, s1, scale):
        tol = TANGENT_TOL * max(scale, 1e-300)
        up = s1 - s0 > tol
        down = s0 - s1 > tol
        self.up_lo = np.sort(s0[up])
        self.up_hi = np.sort(s1[up])
        self.down_lo = np.sort(s1[down])
        self.down_hi = np.sort(s0[down])

    def count(self, c):
        # rising segments: s0 <= c < s1; falling segments: s1 < c <= s0
        n_up = np.searchsorted(self.up_lo, c, "right") - np.searchsorted(self.up_hi, c, "right")
        n_down = np.searchsorted(self.down_lo, c, "left") - np.searchsorted(self.down_hi, c, "left")
        return n_up + n_down


def _scale(p):
    return float(np.max(np.abs(p.vertices))) if p.vertices.size else 0.0


def line_crossings(p, theta, b):
    """Number of crossings of the line x cos(theta) + y sin(theta) + b = 0 with p."""
    s0, s1 = _projections(p, theta)
    tol = TANGENT_TOL * max(_scale(p), 1e-300)
    c = -b
    up = (s1 - s0 > tol) & (s0 <= c) & (c < s1)
    down = (s0 - s1 > tol) & (s1 < c) & (c <= s0)
    return int(np.count_nonzero(up) + np.count_nonzero(down))


def _direct_counts(p, thetas, offsets, scale, budget=1 << 22):
    """line_crossings for many lines at once, in memory-bounded chunks."""
    a, b = p.segments()
    tol = TANGENT_TOL * max(scale, 1e-300)
    out = np.empty(thetas.size)
    step = max(1, budget // max(a.size, 1))
    for k in range(0, thetas.size, step):
        c_, s_ = np.cos(thetas[k : k + step])[:, None], np.sin(thetas[k : k + step])[:, None]
        s0 = a.real * c_ + a.imag * s_
        s1 = b.real * c_ + b.imag * s_
        c = -offsets[k : k + step, None]
        up = (s1 - s0 > tol) & (s0 <= c) & (c < s1)
        down = (s0 - s1 > tol) & (s1 < c) & (c <= s0)
        out[k : k + step] = np.count_nonzero(up, axis=1) + np.count_nonzero(down, axis=1)
    return out


def crofton_estimate(p, sampler):
    """Crofton length estimate together with crossing statistics."""
    reach = _scale(p)
    if sampler.b_max * (1.0 + 1e-12) < reach:
        raise InsufficientCoverage(f"b_max={sampler.b_max} < max |vertex| = {reach}")
    if p.degenerate:
        return CroftonEstimate(0.0, 0, sampler.lines)
    area = 2 * np.pi * 2 * sampler.b_max
    if sampler.mode == "grid":
        thetas = (np.arange(sampler.theta_count) + 0.5) * (2 * np.pi / sampler.theta_count)
        offsets = -sampler.b_max + (np.arange(sampler.b_count) + 0.5) * (
            2 * sampler.b_max / sampler.b_count
        )
        per_theta = np.empty(sampler.theta_count)
        worst = 0
        for i, th in enumerate(thetas):
            s0, s1 = _projections(p, th)
            counts = _SortedSegments(s0, s1, reach).count(-offsets)
            per_theta[i] = np.sum(counts)
            worst = max(worst, int(counts.max()))
        total = np.sum(per_theta) / sampler.lines
    else:
        rng = np.random.default_rng(sampler.seed)
        thetas = rng.uniform(0.0, 2 * np.pi, sampler.lines)
        offsets = rng.uniform(-sampler.b_max, sampler.b_max, sampler.lines)
        counts = _direct_counts(p, thetas, offsets, reach)
        total = np.sum(counts) / sampler.lines
        worst = int(counts.max())
    return CroftonEstimate(float(0.25 * total * area), worst, sampler.lines)


def crofton_length(p, sampler):
    """Arc length of p from line crossings (not normalized by 2 pi)."""
    return crofton_estimate(p, sampler).raw_length
