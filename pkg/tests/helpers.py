"""Random test-function generators shared by the test modules."""
from __future__ import annotations

import numpy as np

from ratlength.core import BlaschkeProduct, PolyRatio, poly_from_roots

# criterion number -> (passed, detail); printed by the terminal-summary hook
ACCEPTANCE_RESULTS = {}


def random_disk_points(rng, n, rmax=0.9):
    """n points with modulus <= rmax, uniform in area."""
    r = rmax * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))


def random_blaschke(rng, n, rmax=0.9):
    return BlaschkeProduct(random_disk_points(rng, n, rmax))


def random_poly_ratio(rng, degree, gap=0.1, pole_free_disk=False):
    """Random rational of exact degree with every pole at distance >= gap from T.

    With ``pole_free_disk`` all poles lie in |z| >= 1 + gap.
    """
    poles = []
    for _ in range(degree):
        inside = (not pole_free_disk) and rng.random() < 0.5
        if inside:
            mod = (1.0 - gap) * np.sqrt(rng.random())
        else:
            mod = (1.0 + gap) * (1.0 + 2.0 * rng.random())
        poles.append(mod * np.exp(2j * np.pi * rng.random()))
    ndeg = int(rng.integers(0, degree + 1))
    num = rng.normal(size=ndeg + 1) + 1j * rng.normal(size=ndeg + 1)
    den = poly_from_roots(poles)
    return PolyRatio(num, den)


def mobius_koebe(rng):
    """Normalized Koebe function composed with a random disk automorphism.

    k(phi(z)) with phi(z) = e^{i t}(z + a)/(1 + conj(a) z) is univalent with a
    single pole at the boundary point phi^{-1}(1). Subtracting the constant and
    dividing by the derivative at 0 keeps the Taylor coefficients bounded by
    the de Branges bound. Returned as numerator/denominator coefficients.
    """
    a = 0.6 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
    u = np.exp(2j * np.pi * rng.random())
    # phi = u (z + a) / (1 + conj(a) z) = P / Q
    P = u * np.array([a, 1.0])
    Q = np.array([1.0, np.conj(a)])
    # k(P/Q) = P Q / (Q - P)^2
    num = np.polynomial.polynomial.polymul(P, Q)
    den = np.polynomial.polynomial.polymul(Q - P, Q - P)
    R = PolyRatio(num, den, check_circle=False)
    c0 = complex(R(0.0))
    d0 = complex(R.derivative(0.0))
    num = np.polynomial.polynomial.polysub(num, c0 * den) / d0
    return PolyRatio(num, den, check_circle=False)
