"""Small numerical kernels shared across modules."""
from __future__ import annotations

import math

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import NoConvergence

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_maximize(g, a, b, xtol=1e-12, max_iter=200):
    """Maximize a unimodal scalar function on [a, b]; returns (x, g(x))."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(max_iter):
        if abs(b - a) <= xtol * max(1.0, abs(a) + abs(b)):
            break
        if gc >= gd:
            b, d, gd = d, c, gc
            c = b - _INVPHI * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + _INVPHI * (b - a)
            gd = g(d)
    return (c, gc) if gc >= gd else (d, gd)


def polish_circle_extremum(g, thetas, values, n_peaks=8, sign=1.0):
    """Refine the largest local maxima of ``sign * g`` sampled on a uniform
    angular grid. ``g`` maps an angle to a real number."""
    s = sign * np.asarray(values)
    n = len(s)
    left, right = np.roll(s, 1), np.roll(s, -1)
    peaks = np.flatnonzero((s >= left) & (s >= right))
    if len(peaks) == 0:
        peaks = np.array([int(np.argmax(s))])
    peaks = peaks[np.argsort(-s[peaks], kind="stable")][:n_peaks]
    step = 2.0 * np.pi / n
    best = float(s.max())
    best_theta = float(thetas[int(np.argmax(s))])
    for j in peaks:
        t0 = float(thetas[j])
        x, v = golden_maximize(lambda t: sign * g(t), t0 - step, t0 + step)
        if v > best:
            best, best_theta = v, x
    return best_theta, sign * best


def circle_mean(g, nodes, radius=1.0, rtol=1e-10, max_doublings=14, atol=0.0):
    """Adaptive trapezoid mean of ``g`` over the circle |z| = radius.

    ``g`` takes an array of points and returns real or complex values of the
    same shape. ``radius`` may be an array, in which case all circles are
    refined together and an array of means is returned. The node count doubles
    until two consecutive refinements agree to ``rtol`` (relative) or ``atol``
    on every circle. Returns (mean, final node count).
    """
    radii = np.asarray(radius, dtype=float)
    r = radii.reshape(-1, 1)
    total = np.sum(g(r * np.exp(2j * np.pi * np.arange(nodes) / nodes)), axis=1)
    estimate = total / nodes
    hits = 0
    m = nodes
    change = np.inf
    for _ in range(max_doublings):
        theta = 2.0 * np.pi * (2 * np.arange(m) + 1) / (2 * m)
        total = total + np.sum(g(r * np.exp(1j * theta)), axis=1)
        m *= 2
        new = total / m
        change = np.abs(new - estimate)
        if np.all(change <= np.maximum(rtol * np.abs(new), atol)):
            hits += 1
            if hits == 2:
                return new.reshape(radii.shape), m
        else:
            hits = 0
        estimate = new
    raise NoConvergence(
        f"circle quadrature did not converge with {m} nodes "
        f"(largest change {np.max(change):.3e})"
    )


_GL = {q: leggauss(q) for q in (10, 20)}


def panel_integral(h, a, b, rtol=1e-11, atol=1e-15, max_depth=40, geometric=True):
    """Adaptive Gauss-Legendre integration of a function on [a, b].

    ``h`` is vectorized: it receives an array of abscissae. Each panel compares
    10- and 20-point rules and is bisected until they agree. With
    ``geometric`` the initial panels shrink toward ``b``.
    """
    if b <= a:
        return 0.0
    edges = [a]
    if geometric:
        gap = b - a
        while gap > 1e-3 * (b - a) and len(edges) < 12:
            gap /= 2.0
            edges.append(b - gap)
    edges.append(b)
    x10, w10 = _GL[10]
    x20, w20 = _GL[20]
    xs = np.concatenate([x10, x20])
    stack = [(lo, hi, 0) for lo, hi in zip(edges[:-1], edges[1:])][::-1]
    pieces = []
    while stack:
        lo, hi, depth = stack.pop()
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        vals = np.asarray(h(mid + half * xs))
        coarse = half * math.fsum(w10 * vals[:10])
        fine = half * math.fsum(w20 * vals[10:])
        if abs(fine - coarse) <= max(rtol * abs(fine), atol * (hi - lo)):
            pieces.append(fine)
            continue
        if depth >= max_depth:
            raise NoConvergence(f"radial quadrature unresolved on [{lo}, {hi}]")
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))
    return math.fsum(pieces)
