"""Structured rational functions on the unit disk.

Every function here evaluates itself and its derivative analytically from the
structured data it stores; nothing is finite-differenced. All evaluation entry
points accept scalars or numpy arrays.

Forms
-----
``PoleBasis``
    ``a + sum_k c_k e_k(z)`` in the Malmquist-Takenaka basis
    ``e_k(z) = sqrt(1-|a_k|^2) B_{k-1}(z) / (1 - conj(a_k) z)``.
``PolyRatio``
    ``P(z) / Q(z)`` with ascending coefficient lists.
``TaylorPoly``
    a polynomial (``Q == 1``).
``PartialFraction``
    ``a + sum_j sum_l C_{j,l} / (p_j - z)^(l+1)``, used for Runge output.
``BlaschkeProduct``
    finite Blaschke product from its zeros.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from ._numerics import golden_maximize
from .errors import (
    DegenerateDenominator,
    IndexOutOfRange,
    MalformedFunction,
    PoleProximity,
)

POLE_TOL = 1e-13
CONVERSION_RTOL = 1e-10


def _frozen(values, dtype=complex):
    arr = np.array(values, dtype=dtype).reshape(-1)
    arr.setflags(write=False)
    return arr


def _scalar_or_array(z, out):
    return complex(out) if np.ndim(z) == 0 else out


def mobius_factor(a, z):
    """One Blaschke factor and its derivative at z.

    For ``a != 0`` the factor is ``(conj(a)/|a|) (z - a) / (conj(a) z - 1)``;
    a zero at the origin contributes the factor ``z``.
    """
    if a == 0:
        return z, np.ones_like(z)
    ac = np.conj(a)
    u = ac / abs(a)
    den = ac * z - 1.0
    return u * (z - a) / den, u * (abs(a) ** 2 - 1.0) / den**2


@dataclass(frozen=True, eq=False)
class CircleGrid:
    """Uniform angular sampling plan for circle quadratures."""

    nodes: int = 64
    radius: float = 1.0
    max_doublings: int = 14
    rtol: float = 1e-10

    def __post_init__(self):
        if self.nodes < 16 or self.nodes & (self.nodes - 1):
            raise ValueError("CircleGrid.nodes must be a power of two >= 16")
        if not 0.0 < self.radius <= 1.0:
            raise ValueError("CircleGrid.radius must lie in (0, 1]")

    def points(self, nodes=None, radius=None):
        m = self.nodes if nodes is None else nodes
        r = self.radius if radius is None else radius
        return r * np.exp(2j * np.pi * np.arange(m) / m)


class Analytic:
    """Wrapper for an analytic function given by value and derivative callables."""

    def __init__(self, value, derivative, name="analytic"):
        self._value = value
        self._derivative = derivative
        self.name = name

    def __call__(self, z):
        return self._value(np.asarray(z, dtype=complex))

    def derivative(self, z):
        return self._derivative(np.asarray(z, dtype=complex))

    def __repr__(self):
        return f"Analytic({self.name})"


def koebe():
    """The Koebe function z/(1-z)^2."""
    return Analytic(
        lambda z: z / (1.0 - z) ** 2,
        lambda z: (1.0 + z) / (1.0 - z) ** 3,
        name="koebe",
    )


def rescaled(f, r):
    """z -> f(r z); used to make a disk-univalent map analytic past the circle."""
    return Analytic(
        lambda z: f(r * z), lambda z: r * f.derivative(r * z), name=f"{f!r}(r={r})"
    )


class RationalFunction:
    """Common behaviour of the structured rational forms."""

    form = "abstract"

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        self._check_poles(z)
        return self._value(z)

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        self._check_poles(z)
        return self._derivative(z)

    @property
    def degree(self):
        raise NotImplementedError

    def poles(self):
        """Finite poles, when the form stores them explicitly."""
        raise NotImplementedError

    def count_poles_in_disk(self, radius=1.0):
        return int(np.sum(np.abs(self.poles()) <= radius))

    def scaled(self, lam):
        raise NotImplementedError

    def to_poly_ratio(self, verify=True):
        num, den = self._expand()
        out = PolyRatio(num, den, check_circle=False)
        if verify:
            check_agreement(self, out)
        return out

    def _check_poles(self, z):
        p = self.poles()
        if p.size == 0 or z.size == 0:
            return
        d = np.abs(z.reshape(-1, 1) - p.reshape(1, -1))
        if np.any(d <= POLE_TOL):
            raise PoleProximity("evaluation point within 1e-13 of a pole")


def check_agreement(f, g, count=64, seed=20240101, rtol=CONVERSION_RTOL):
    """Compare two representations at random circle points."""
    rng = np.random.default_rng(seed)
    z = np.exp(2j * np.pi * rng.random(count))
    fv, gv = f(z), g(z)
    scale = max(np.max(np.abs(fv)), 1e-300)
    err = np.max(np.abs(fv - gv)) / scale
    if err > rtol:
        raise MalformedFunction(f"form conversion mismatch: relative error {err:.3e}")
    return err


@dataclass(frozen=True, eq=False)
class PolyRatio(RationalFunction):
    numerator: np.ndarray
    denominator: np.ndarray
    check_circle: bool = field(default=True, repr=False, compare=False)

    form = "poly_ratio"

    def __post_init__(self):
        num = np.trim_zeros(_frozen(self.numerator), "b")
        den = np.trim_zeros(_frozen(self.denominator), "b")
        if den.size == 0:
            raise MalformedFunction("denominator is identically zero")
        if num.size == 0:
            num = np.zeros(1, dtype=complex)
        num.setflags(write=False)
        den.setflags(write=False)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)
        if self.check_circle and den.size > 1:
            if _min_modulus_on_circle(den) <= 1e-12 * np.sum(np.abs(den)):
                raise MalformedFunction("denominator vanishes on the unit circle")

    @property
    def degree(self):
        return max(self.numerator.size, self.denominator.size) - 1

    def poles(self):
        raise NotImplementedError("poly_ratio poles are not computed (no root-finding)")

    def count_poles_in_disk(self, radius=1.0, nodes=4096):
        if self.denominator.size == 1:
            return 0
        return polynomial_zeros_in_disk(self.denominator, radius, nodes)

    def _check_poles(self, z):
        q = npoly.polyval(z, self.denominator)
        dq = npoly.polyval(z, npoly.polyder(self.denominator))
        if np.any((q == 0) | (np.abs(q) <= POLE_TOL * np.abs(dq))):
            raise PoleProximity("evaluation point within 1e-13 of a pole")

    def _value(self, z):
        return npoly.polyval(z, self.numerator) / npoly.polyval(z, self.denominator)

    def _derivative(self, z):
        p, q = self.numerator, self.denominator
        pv, qv = npoly.polyval(z, p), npoly.polyval(z, q)
        dp, dq = npoly.polyval(z, npoly.polyder(p)), npoly.polyval(z, npoly.polyder(q))
        return (dp * qv - pv * dq) / qv**2

    def scaled(self, lam):
        return PolyRatio(self.numerator * lam, self.denominator, self.check_circle)

    def to_poly_ratio(self, verify=True):
        return self

    def taylor_coefficients(self, count):
        """First ``count`` Taylor coefficients at the origin by power-series division."""
        q = self.denominator
        if q[0] == 0:
            raise MalformedFunction("pole at the origin; no Taylor expansion")
        p = np.zeros(count, dtype=complex)
        p[: min(count, self.numerator.size)] = self.numerator[:count]
        out = np.zeros(count, dtype=complex)
        for j in range(count):
            k = min(j, q.size - 1)
            acc = p[j] - np.dot(q[1 : k + 1], out[j - 1 :: -1][:k]) if k else p[j]
            out[j] = acc / q[0]
        return out


@dataclass(frozen=True, eq=False)
class TaylorPoly(RationalFunction):
    coefficients: np.ndarray

    form = "taylor"

    def __post_init__(self):
        c = np.trim_zeros(_frozen(self.coefficients), "b")
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self):
        return self.coefficients.size - 1

    def poles(self):
        return np.zeros(0, dtype=complex)

    def _value(self, z):
        return npoly.polyval(z, self.coefficients)

    def _derivative(self, z):
        return npoly.polyval(z, npoly.polyder(self.coefficients))

    def scaled(self, lam):
        return TaylorPoly(self.coefficients * lam)

    def _expand(self):
        return self.coefficients, np.ones(1, dtype=complex)

    def taylor_coefficients(self, count):
        out = np.zeros(count, dtype=complex)
        k = min(count, self.coefficients.size)
        out[:k] = self.coefficients[:k]
        return out


def _blaschke_accumulate(points, z):
    """Yield (B_{k-1}, B'_{k-1}) before each factor, then the final pair."""
    b = np.ones_like(z)
    db = np.zeros_like(z)
    for a in points:
        yield b, db
        phi, dphi = mobius_factor(a, z)
        b, db = b * phi, db * phi + b * dphi
    yield b, db


@dataclass(frozen=True, eq=False)
class BlaschkeProduct(RationalFunction):
    zeros: np.ndarray

    form = "blaschke"

    def __post_init__(self):
        zs = _frozen(self.zeros)
        if np.any(np.abs(zs) >= 1.0):
            raise MalformedFunction("Blaschke zeros must lie in the open disk")
        object.__setattr__(self, "zeros", zs)

    @property
    def degree(self):
        return self.zeros.size

    def poles(self):
        nz = self.zeros[self.zeros != 0]
        return 1.0 / np.conj(nz)

    def _value(self, z):
        b = np.ones_like(z)
        for a in self.zeros:
            b = b * mobius_factor(a, z)[0]
        return b

    def _derivative(self, z):
        *_, (b, db) = _blaschke_accumulate(self.zeros, z)
        return db

    def one_minus_modulus_ratio(self, w):
        """(1 - |B(w)|) / (1 - |w|) for |w| < 1, computed without cancellation."""
        w = np.asarray(w, dtype=complex)
        s = 1.0 - np.abs(w) ** 2
        acc = np.zeros(w.shape)
        for a in self.zeros:
            e = (1.0 - abs(a) ** 2) / np.abs(1.0 - np.conj(a) * w) ** 2
            acc = acc + np.log1p(-s * e)
        one_minus_sq = -np.expm1(acc)
        mod = np.sqrt(np.maximum(1.0 - one_minus_sq, 0.0))
        return one_minus_sq / ((1.0 + mod) * (1.0 - np.abs(w)))

    def scaled(self, lam):
        return self.to_poly_ratio().scaled(lam)

    def _expand(self):
        num = np.ones(1, dtype=complex)
        den = np.ones(1, dtype=complex)
        for a in self.zeros:
            if a == 0:
                num = npoly.polymul(num, [0.0, 1.0])
            else:
                u = np.conj(a) / abs(a)
                num = npoly.polymul(num, [u * a, -u])
                den = npoly.polymul(den, [1.0, -np.conj(a)])
        return num, den


@dataclass(frozen=True, eq=False)
class PoleBasis(RationalFunction):
    """``constant + sum_k coefficients[k] * e_k(z)`` with points sorted by modulus."""

    constant: complex
    points: np.ndarray
    coefficients: np.ndarray

    form = "pole_basis"

    def __post_init__(self):
        pts = _frozen(self.points)
        cs = _frozen(self.coefficients)
        if pts.size != cs.size:
            raise MalformedFunction("points and coefficients differ in length")
        mods = np.abs(pts)
        if np.any(mods >= 1.0):
            raise MalformedFunction("basis points must lie in the open disk")
        if np.any(np.diff(mods) < 0):
            raise MalformedFunction("basis points must be sorted by modulus")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "coefficients", cs)
        object.__setattr__(self, "constant", complex(self.constant))

    @property
    def degree(self):
        return self.points.size

    def poles(self):
        nz = self.points[self.points != 0]
        return 1.0 / np.conj(nz)

    def _terms(self, z, want_derivative):
        val = np.full(z.shape, self.constant, dtype=complex)
        dval = np.zeros(z.shape, dtype=complex)
        for (b, db), a, c in zip(_blaschke_accumulate(self.points, z), self.points, self.coefficients):
            ac = np.conj(a)
            s = np.sqrt(1.0 - abs(a) ** 2)
            den = 1.0 - ac * z
            val = val + c * s * b / den
            if want_derivative:
                dval = dval + c * s * (db * den + b * ac) / den**2
        return dval if want_derivative else val

    def _value(self, z):
        return self._terms(z, False)

    def _derivative(self, z):
        return self._terms(z, True)

    def scaled(self, lam):
        return PoleBasis(self.constant * lam, self.points, self.coefficients * lam)

    def _expand(self):
        # common denominator prod_j (1 - conj(a_j) z); a zero point contributes 1
        m = self.points.size
        dens = [np.array([1.0, -np.conj(a)], dtype=complex) for a in self.points]
        nums = []
        for a in self.points:
            if a == 0:
                nums.append(np.array([0.0, 1.0], dtype=complex))
            else:
                u = np.conj(a) / abs(a)
                # (conj(a) z - 1) = -(1 - conj(a) z); the sign goes to the numerator
                nums.append(np.array([u * a, -u], dtype=complex))
        den = np.ones(1, dtype=complex)
        for d in dens:
            den = npoly.polymul(den, d)
        num = self.constant * den
        for k in range(m):
            a, c = self.points[k], self.coefficients[k]
            term = np.array([c * np.sqrt(1.0 - abs(a) ** 2)], dtype=complex)
            for j in range(k):
                term = npoly.polymul(term, nums[j])
            for j in range(k + 1, m):
                term = npoly.polymul(term, dens[j])
            num = npoly.polyadd(num, term)
        return num, den


@dataclass(frozen=True, eq=False)
class PartialFraction(RationalFunction):
    """``constant + sum_j sum_l coefficients[j, l] / (poles[j] - z)**(l + 1)``."""

    constant: complex
    centers: np.ndarray
    coefficients: np.ndarray

    form = "partial_fraction"

    def __post_init__(self):
        p = _frozen(self.centers)
        c = np.array(self.coefficients, dtype=complex)
        if c.ndim == 1:
            c = c.reshape(-1, 1)
        if c.shape[0] != p.size:
            raise MalformedFunction("one coefficient row per pole required")
        c.setflags(write=False)
        object.__setattr__(self, "centers", p)
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "constant", complex(self.constant))

    @property
    def order(self):
        return self.coefficients.shape[1]

    @property
    def degree(self):
        return self.centers.size * self.order

    def poles(self):
        return self.centers

    def _sum(self, z, power_shift):
        flat = z.reshape(-1)
        out = np.zeros(flat.shape, dtype=complex)
        chunk = max(1, (1 << 21) // max(1, self.centers.size))
        for s in range(0, flat.size, chunk):
            zz = flat[s : s + chunk]
            inv = 1.0 / (self.centers[:, None] - zz[None, :])
            acc = np.zeros(zz.shape, dtype=complex)
            pw = inv ** (1 + power_shift)
            for l in range(self.order):
                weight = (l + 1) if power_shift else 1
                acc = acc + weight * (self.coefficients[:, l] @ pw)
                pw = pw * inv
            out[s : s + chunk] = acc
        return out.reshape(z.shape)

    def _value(self, z):
        return self.constant + self._sum(z, 0)

    def _derivative(self, z):
        return self._sum(z, 1)

    def scaled(self, lam):
        return PartialFraction(self.constant * lam, self.centers, self.coefficients * lam)

    def _expand(self):
        k = self.order
        lin = [np.array([p, -1.0], dtype=complex) for p in self.centers]
        den = np.ones(1, dtype=complex)
        for f in lin:
            den = npoly.polymul(den, npoly.polypow(f, k))
        num = self.constant * den
        for j, fj in enumerate(lin):
            others = np.ones(1, dtype=complex)
            for i, fi in enumerate(lin):
                if i != j:
                    others = npoly.polymul(others, npoly.polypow(fi, k))
            for l in range(k):
                term = npoly.polymul(others, npoly.polypow(fj, k - l - 1))
                num = npoly.polyadd(num, self.coefficients[j, l] * term)
        return num, den


def eval_rational(fn, z):
    """Value of ``fn`` at ``z`` (scalar or array)."""
    return _scalar_or_array(z, fn(z))


def eval_derivative(fn, z):
    """Analytic derivative of ``fn`` at ``z``."""
    return _scalar_or_array(z, fn.derivative(z))


def blaschke_eval(B, z):
    return _scalar_or_array(z, B(z))


def mt_basis_eval(basis_points, k, z):
    """k-th (1-based) Malmquist-Takenaka function for the given points."""
    pts = np.asarray(basis_points, dtype=complex)
    if not 1 <= k <= pts.size:
        raise IndexOutOfRange(f"k={k} outside 1..{pts.size}")
    zz = np.asarray(z, dtype=complex)
    b = np.ones_like(zz)
    for a in pts[: k - 1]:
        b = b * mobius_factor(a, zz)[0]
    a = pts[k - 1]
    out = np.sqrt(1.0 - abs(a) ** 2) * b / (1.0 - np.conj(a) * zz)
    return _scalar_or_array(z, out)


def reproducing_kernel_eval(B, w, z):
    """Model-space kernel ``(1 - conj(B(w)) B(z)) / (1 - conj(w) z)``."""
    zz = np.asarray(z, dtype=complex)
    den = 1.0 - np.conj(w) * zz
    if np.any(np.abs(den) < 1e-14):
        raise DegenerateDenominator("1 - conj(w) z vanishes")
    out = (1.0 - np.conj(B(w)) * B(zz)) / den
    return _scalar_or_array(z, out)


def polynomial_zeros_in_disk(coeffs, radius=1.0, nodes=4096):
    """Number of zeros of a polynomial inside |z| < radius (argument principle)."""
    z = radius * np.exp(2j * np.pi * np.arange(nodes + 1) / nodes)
    q = npoly.polyval(z, np.asarray(coeffs, dtype=complex))
    turns = np.sum(np.angle(q[1:] / q[:-1])) / (2.0 * np.pi)
    return int(round(turns))


def _min_modulus_on_circle(coeffs, nodes=2048):
    thetas = 2.0 * np.pi * np.arange(nodes) / nodes
    vals = np.abs(npoly.polyval(np.exp(1j * thetas), coeffs))
    step = 2.0 * np.pi / nodes
    best = float(vals.min())
    for j in np.argsort(vals, kind="stable")[:4]:
        _, v = golden_maximize(
            lambda t: -abs(npoly.polyval(np.exp(1j * t), coeffs)),
            thetas[j] - step,
            thetas[j] + step,
        )
        best = min(best, -v)
    return best


def poly_from_roots(roots, lead=1.0):
    """Ascending coefficients of lead * prod (z - r)."""
    c = np.ones(1, dtype=complex) * lead
    for r in roots:
        c = npoly.polymul(c, [-r, 1.0])
    return c


def monomial(n, scale=1.0):
    c = np.zeros(n + 1, dtype=complex)
    c[n] = scale
    return TaylorPoly(c)
