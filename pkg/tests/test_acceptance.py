"""Acceptance suite: the twelve project-level criteria at their stated tolerances.

Each criterion records a one-line PASS/FAIL verdict, printed in the pytest
terminal summary (or directly when this file is run as a script).
"""
from __future__ import annotations

import functools
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from helpers import (
    ACCEPTANCE_RESULTS,
    mobius_koebe,
    random_blaschke,
    random_disk_points,
    random_poly_ratio,
)
from ratlength.core import Analytic, BlaschkeProduct, PolyRatio, koebe, monomial, reproducing_kernel_eval
from ratlength.crofton import ArcSet, CroftonSampler, Polyline, crofton_estimate, image_polyline
from ratlength.experiments import compare_window, estimate_beta, fit_gamma, fit_power_law, run_growth_family
from ratlength.factory import RungeConfig, runge_approximate
from ratlength.quadrature import boundary_length, circle_average, dynkin_L, sup_norm_circle, verify_bounds

KAYUMOV_DEGREES = (16, 32, 64, 128, 256)


def record(number, ok, detail):
    ACCEPTANCE_RESULTS[number] = (bool(ok), detail)
    print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_01_sharpness():
    start = time.perf_counter()
    worst_mono = max(abs(boundary_length(monomial(n)) - n) / n for n in range(1, 65))
    rng = np.random.default_rng(101)
    worst_bl = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 33))
        B = random_blaschke(rng, n, 0.9)
        worst_bl = max(worst_bl, abs(boundary_length(B) - n) / n)
    elapsed = time.perf_counter() - start
    ok = worst_mono <= 1e-9 and worst_bl <= 1e-6 and elapsed < 5.0
    record(1, ok, f"z^n rel err {worst_mono:.1e}, Blaschke rel err {worst_bl:.1e}, {elapsed:.2f} s")


def test_criterion_02_dolzhenko():
    rng = np.random.default_rng(102)
    worst = 0.0
    for _ in range(200):
        R = random_poly_ratio(rng, int(rng.integers(1, 21)), gap=0.1)
        ratio = boundary_length(R) / (R.degree * sup_norm_circle(R))
        worst = max(worst, ratio)
    record(2, worst <= 1 + 1e-9, f"max dolzhenko_ratio {worst:.6f} over 200 rationals")


def test_criterion_03_energy_bound():
    rng = np.random.default_rng(103)
    worst = 0.0
    for _ in range(100):
        R = random_poly_ratio(rng, int(rng.integers(1, 21)), gap=0.1, pole_free_disk=True)
        worst = max(worst, verify_bounds(R).prop1_ratio)
    mono = max(abs(verify_bounds(monomial(n)).prop1_ratio - 1 / 6) for n in (1, 5, 17, 40))
    ok = worst <= 1 + 1e-9 and mono <= 1e-9
    record(3, ok, f"max prop1_ratio {worst:.6f}; z^n deviation from 1/6 {mono:.1e}")


def test_criterion_04_dynkin():
    rng = np.random.default_rng(104)
    worst_full = worst_half = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 33))
        B = random_blaschke(rng, n, 0.9)
        worst_full = max(worst_full, dynkin_L(B, 1.0) / (8 * n + 1))
        worst_half = max(worst_half, dynkin_L(B, 0.5))
    ok = worst_full <= 1.0 and worst_half <= 1.0
    record(4, ok, f"max L(1)/(8n+1) {worst_full:.4f}, max L(1/2) {worst_half:.4f}")


@functools.lru_cache(maxsize=None)
def regression_corpus():
    """Factory-built families with degrees up to 64."""
    target = {"kind": "poly_ratio", "numerator": [[0, 0], [1, 0]], "denominator": [[2, 0], [-1, 0]]}
    specs = {
        "poles equal-split": {"generator": "poles", "degrees": [2, 4, 8, 16, 32, 64]},
        "poles geometric": {"generator": "poles", "policy": "geometric-decay", "seed": 5, "degrees": [2, 4, 8, 16, 32]},
        "kayumov koebe": {"generator": "kayumov", "degrees": [16, 32, 64]},
        "runge mobius": {"generator": "runge", "target": target, "delta": 0.1, "order": 1, "degrees": [8, 16, 32]},
    }
    return {name: run_growth_family(spec) for name, spec in specs.items()}


def test_criterion_05_univalent_upper_bound():
    worst, count = 0.0, 0
    for records in regression_corpus().values():
        for r in records:
            if r.certified:
                count += 1
                worst = max(worst, r.normalized_length / (6 * math.pi * math.sqrt(r.degree)))
    ok = count > 0 and worst <= 1.0
    record(5, ok, f"max l/(6 pi sqrt n) {worst:.4f} over {count} certified members")


def test_criterion_06_crofton():
    M = 2048
    circle = Polyline.from_points(np.exp(2j * np.pi * np.arange(M) / M), closed=True)
    est = crofton_estimate(circle, CroftonSampler(1440, 1440, 1.0))
    circle_err = abs(est.raw_length / (2 * math.pi) - 1)
    rng = np.random.default_rng(106)
    worst, crossing_ok = 0.0, True
    for _ in range(20):
        R = random_poly_ratio(rng, int(rng.integers(1, 9)), gap=0.1)
        p = image_polyline(R, ArcSet.full(), 8192)
        bmax = float(np.max(np.abs(p.vertices)))
        e = crofton_estimate(p, CroftonSampler(1440, 1440, bmax))
        worst = max(worst, abs(e.normalized_length / boundary_length(R) - 1))
        crossing_ok &= e.max_crossings <= 2 * R.degree
    ok = circle_err <= 0.01 and worst <= 0.02 and crossing_ok
    record(6, ok, f"circle rel err {circle_err:.1e}, max rel disagreement {worst:.1e}, crossings <= 2n: {crossing_ok}")


def test_criterion_07_kernel_identity():
    rng = np.random.default_rng(107)
    worst = 0.0
    for _ in range(50):
        B = random_blaschke(rng, int(rng.integers(1, 9)), 0.9)
        w = complex(random_disk_points(rng, 1, 0.9)[0])
        lhs = circle_average(lambda z: np.abs(reproducing_kernel_eval(B, w, z)) ** 2, 1.0)
        rhs = (1 - abs(B(w)) ** 2) / (1 - abs(w) ** 2)
        worst = max(worst, abs(lhs / rhs - 1))
    record(7, worst <= 1e-8, f"max relative error {worst:.1e}")


def test_criterion_08_runge_rate():
    f = Analytic(lambda z: 1 / (2 - z) + 0.3 * z**3, lambda z: 1 / (2 - z) ** 2 + 0.9 * z**2)
    z = np.exp(2j * np.pi * (np.arange(1024) + 0.5) / 1024)
    arcs = [256 * 2**k for k in range(5)]
    slopes, ok = [], True
    for m in (0, 1, 2):
        err, derr = [], []
        for n in arcs:
            R = runge_approximate(f, RungeConfig(0.1, order=m, arcs=n))
            err.append(np.max(np.abs(R(z) - f(z))))
            derr.append(np.max(np.abs(R.derivative(z) - f.derivative(z))))
        s = np.polyfit(np.log(arcs), np.log(err), 1)[0]
        sd = np.polyfit(np.log(arcs), np.log(derr), 1)[0]
        slopes.append((s, sd))
        ok &= abs(s + m + 1) <= 0.3 and abs(sd + m + 1) <= 0.3
    text = ", ".join(f"m={m}: {s:.3f}/{sd:.3f}" for m, (s, sd) in enumerate(slopes))
    record(8, ok, f"slopes (R/R') {text}")


@functools.lru_cache(maxsize=None)
def kayumov_sources():
    rng = np.random.default_rng(109)
    sources = {"koebe": np.arange(1, max(KAYUMOV_DEGREES) + 1, dtype=complex)}
    for i in range(10):
        g = mobius_koebe(rng)
        sources[f"mobius-koebe {i}"] = g.taylor_coefficients(max(KAYUMOV_DEGREES) + 1)[1:]
    return sources


@functools.lru_cache(maxsize=None)
def kayumov_families():
    out = {}
    for name, coeffs in kayumov_sources().items():
        family = {
            "generator": "kayumov",
            "coefficients": [[c.real, c.imag] for c in coeffs],
            "degrees": list(KAYUMOV_DEGREES),
            "resolution": 4096,
        }
        out[name] = run_growth_family(family)
    return out


def test_criterion_09_kayumov_univalence():
    failures = []
    for name, records in kayumov_families().items():
        for r in records:
            if not r.certified:
                failures.append(f"{name} n={r.degree}")
    total = sum(len(v) for v in kayumov_families().values())
    record(9, not failures, f"{total - len(failures)}/{total} truncations certified at M=4096 {failures[:3]}")


def test_criterion_10_spectrum():
    beta_k = estimate_beta(koebe(), 1.0).beta
    rng = np.random.default_rng(110)
    worst = 0.0
    for _ in range(5):
        pole = (1.5 + 1.5 * rng.random()) * np.exp(2j * np.pi * rng.random())
        c = rng.normal(size=2) + 1j * rng.normal(size=2)
        mob = PolyRatio(c, [-pole, 1.0])
        worst = max(worst, abs(estimate_beta(mob, 1.0).beta))
    auto = BlaschkeProduct([0.5 * np.exp(1j)])
    worst = max(worst, abs(estimate_beta(auto, 1.0).beta))
    ok = abs(beta_k - 2) <= 0.1 and worst <= 0.05
    record(10, ok, f"koebe beta {beta_k:.5f}, max |beta| over Mobius maps {worst:.4f}")


def test_criterion_11_exponent_fitting():
    n = np.array([16, 32, 64, 128, 256])
    planted = max(abs(fit_power_law(n, 3.0 * n**g).slope - g) for g in (0.0, 0.4, 1.0))
    fams = dict(regression_corpus())
    fams.update(kayumov_families())
    slopes, violations = {}, []
    for name, records in fams.items():
        try:
            fit = fit_gamma(records)
        except Exception:
            continue
        slopes[name] = fit.slope
        verdict = compare_window(fit, tolerance=0.05)
        if verdict.violation:
            violations.append(name)
        print(f"  {name}: {verdict.message}")
    ok = planted <= 1e-6 and not violations and slopes
    top = max(slopes.values())
    record(11, ok, f"planted err {planted:.1e}; {len(slopes)} family fits, max slope {top:.4f} (window reported only)")


def test_criterion_12_determinism(tmp_path):
    fam = tmp_path / "family.json"
    fam.write_text(json.dumps({"generator": "poles", "seed": 3, "degrees": [2, 4, 8]}))
    fn = tmp_path / "fn.json"
    fn.write_text(json.dumps({"kind": "poly_ratio", "numerator": [[0, 0], [1, 0], [0.2, 0.1]], "denominator": [[2, 0], [-1, 0]]}))
    commands = [
        ["gamma", "--family", str(fam)],
        ["bounds", "--input", str(fn)],
        ["crofton", "--input", str(fn), "--mc", "--seed", "11", "--theta", "50", "--offsets", "50"],
        ["spectrum", "--input", str(fn)],
    ]

    def run_all():
        outs = []
        for cmd in commands:
            proc = subprocess.run(
                [sys.executable, "-m", "ratlength.cli", *cmd], capture_output=True, check=True
            )
            outs.append(proc.stdout)
        return outs

    first, second = run_all(), run_all()
    same = all(a == b and a for a, b in zip(first, second))
    record(12, same, f"{len(commands)} CLI commands bit-identical across two runs")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
