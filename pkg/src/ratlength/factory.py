"""Constructions of univalent rational functions.

* ``construct_from_poles``: prescribed poles outside the closed disk, with
  Malmquist-Takenaka coefficients kept inside a budget that forces
  Re R' > 0 in the disk.
* ``kayumov_truncate``: dilated Taylor sections of a univalent function.
* ``runge_approximate``: arc-wise Cauchy-kernel expansion on a slightly larger
  circle, giving poles of order m + 1 at N points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .core import PartialFraction, PoleBasis, TaylorPoly, rescaled
from .errors import (
    BudgetUnderflow,
    ContourEvaluationFailure,
    CriterionInapplicable,
    QuadratureUnderResolved,
    SubcriticalDegree,
    TooFewCoefficients,
)

POLICIES = ("equal-split", "geometric-decay")


@dataclass(frozen=True)
class PolePrescription:
    poles: tuple
    coefficient_policy: str = "equal-split"
    budget_fraction: float = 0.9

    def __post_init__(self):
        poles = tuple(complex(b) for b in self.poles)
        if not poles:
            raise ValueError("at least one pole is required")
        if any(abs(b) <= 1.0 for b in poles):
            raise ValueError("poles must lie outside the closed unit disk")
        if self.coefficient_policy not in POLICIES:
            raise ValueError(f"unknown coefficient policy {self.coefficient_policy!r}")
        if not 0.0 < self.budget_fraction <= 1.0:
            raise ValueError("budget_fraction must lie in (0, 1]")
        object.__setattr__(self, "poles", poles)

    def basis_points(self):
        """a_j = 1 / conj(b_j), sorted by modulus (stable)."""
        a = 1.0 / np.conj(np.array(self.poles))
        return a[np.argsort(np.abs(a), kind="stable")]

    @property
    def rotation(self):
        """Angle that turns the smallest basis point onto the positive axis."""
        return float(np.angle(self.basis_points()[0]))


def budget_rhs(a1):
    """Right-hand side of the coefficient budget for the leading point a1 in (0, 1/sqrt 2)."""
    return a1 * math.sqrt(1.0 - a1 * a1) * (1.0 - 2.0 * a1 * a1) / (1.0 + a1) ** 4


def budget_weights(moduli):
    """Weight multiplying |c_k| (k >= 2) in the budget sum."""
    s = np.asarray(moduli, dtype=float)
    ratio = (1.0 + s) / (1.0 - s)
    return np.sqrt(ratio) * np.cumsum(ratio)


def construct_from_poles(p):
    """Univalent pole-basis function with poles exactly at ``p.poles``."""
    a = p.basis_points()
    mods = np.abs(a)
    a1 = mods[0]
    if a1 >= 1.0 / math.sqrt(2.0):
        raise CriterionInapplicable(f"|a_1| = {a1:.6f} >= 1/sqrt(2)")
    m = a.size
    mags = np.ones(m)
    if m > 1:
        budget = p.budget_fraction * budget_rhs(a1)
        if p.coefficient_policy == "equal-split":
            shares = np.full(m - 1, budget / (m - 1))
        else:
            shares = 0.5 ** np.arange(m - 1)
            shares *= budget / shares.sum()
        mags[1:] = shares / budget_weights(mods)[1:]
        if np.any(mags[1:] < 1e-15):
            raise BudgetUnderflow("coefficient budget leaves |c_k| below 1e-15")
    # rotating z by -phi puts a_1 on the positive axis; R = e^{i phi} S(e^{-i phi} z)
    # keeps the same basis points and multiplies every coefficient by e^{i phi}
    phase = np.exp(1j * p.rotation)
    return PoleBasis(0.0, a, phase * mags)


@dataclass(frozen=True)
class KayumovConfig:
    n: int
    r: float | None = None
    log: object = math.log

    def __post_init__(self):
        if self.n < 13:
            raise SubcriticalDegree(f"n = {self.n} < 13 gives a non-positive radius")
        if self.r is None:
            object.__setattr__(self, "r", kayumov_radius(self.n, self.log))
        if not 0.0 < self.r < 1.0:
            raise SubcriticalDegree(f"radius {self.r} outside (0, 1)")


def kayumov_radius(n, log=math.log):
    return 1.0 - 5.0 * log(n) / n


def kayumov_truncate(taylor_coeffs, cfg, normalize=False):
    """sum_{j=1}^n a_j r^j z^j from coefficients a_1, a_2, ...

    With ``normalize`` the polynomial is divided by its measured sup norm on
    the unit circle.
    """
    a = np.asarray(taylor_coeffs, dtype=complex).reshape(-1)
    if a.size < cfg.n:
        raise TooFewCoefficients(f"need {cfg.n} coefficients, got {a.size}")
    powers = cfg.r ** np.arange(1, cfg.n + 1)
    P = TaylorPoly(np.concatenate([[0.0], a[: cfg.n] * powers]))
    if normalize:
        from .quadrature import sup_norm_circle

        return P.scaled(1.0 / sup_norm_circle(P))
    return P


@dataclass(frozen=True)
class RungeConfig:
    delta: float
    order: int = 1
    arcs: int | None = None
    epsilon: float | None = None
    arc_quadrature_nodes: int = 16
    anchor: str = "start"

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if self.arc_quadrature_nodes < 8:
            raise ValueError("need at least 8 quadrature nodes per arc")
        if self.anchor not in ("start", "midpoint"):
            raise ValueError(f"unknown anchor {self.anchor!r}")
        if self.arcs is None:
            if self.epsilon is None or self.epsilon <= 0:
                raise ValueError("give arcs, or a positive epsilon for the automatic rule")
            object.__setattr__(self, "arcs", auto_arcs(self.delta, self.order, self.epsilon))
        if self.arcs < 1:
            raise ValueError("arcs must be >= 1")

    @property
    def contour_radius(self):
        return 1.0 + 2.0 * self.delta

    @property
    def degree(self):
        return self.arcs * (self.order + 1)


def auto_arcs(delta, m, eps):
    """N = [delta^(-(m+4)/(m+1) - eps)] + 1."""
    return int(math.floor(delta ** (-(m + 4) / (m + 1) - eps))) + 1


def lemma_rescale(f, delta):
    """f(r z) with 1 + 4 delta = 1/r, so the result lives on the disk of radius 1 + 4 delta."""
    r = 1.0 / (1.0 + 4.0 * delta)
    return rescaled(f, r), r


def _arc_moments(f, cfg, q):
    n, m, rho = cfg.arcs, cfg.order, cfg.contour_radius
    x, w = leggauss(q)
    edges = 2.0 * np.pi * np.arange(n) / n
    half = np.pi / n
    t = edges[:, None] + half * (x[None, :] + 1.0)
    zeta = rho * np.exp(1j * t)
    dzeta = 1j * zeta * (half * w)[None, :]
    try:
        fv = np.asarray(f(zeta), dtype=complex)
    except Exception as exc:
        raise ContourEvaluationFailure(str(exc)) from exc
    if not np.all(np.isfinite(fv)):
        raise ContourEvaluationFailure("target is not finite on the contour")
    t0 = edges if cfg.anchor == "start" else edges + half
    anchors = rho * np.exp(1j * t0)
    diff = anchors[:, None] - zeta
    moments = np.empty((n, m + 1), dtype=complex)
    pw = np.ones_like(diff)
    for l in range(m + 1):
        moments[:, l] = np.sum(pw * fv * dzeta, axis=1) / (2j * np.pi)
        pw = pw * diff
    return anchors, moments, float(np.max(np.abs(fv)))


def runge_approximate(f, cfg):
    """Rational approximant with poles of order m + 1 at N points of |z| = 1 + 2 delta."""
    q = cfg.arc_quadrature_nodes
    anchors, coarse, fmax = _arc_moments(f, cfg, q)
    _, fine, _ = _arc_moments(f, cfg, 2 * q)
    h = cfg.contour_radius * 2.0 * np.pi / cfg.arcs
    natural = fmax * h ** (np.arange(cfg.order + 1) + 1.0) / (2.0 * np.pi)
    err = np.abs(fine - coarse)
    if np.any(err > 1e-12 * (np.abs(fine) + natural[None, :])):
        raise QuadratureUnderResolved("arc moments changed by more than 1e-12 on doubling")
    return PartialFraction(0.0, anchors, fine)
