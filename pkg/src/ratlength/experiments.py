"""Growth experiments: families of univalent rational functions of increasing
degree, log-log exponent fits, and integral-means exponents.

Fitted slopes are exponents of the specific families generated here. They are
not estimates of the supremum over all univalent rational functions.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from . import descriptor
from .core import monomial
from .errors import EmptyFamily, GeneratorFailure, InsufficientData
from .factory import (
    KayumovConfig,
    PolePrescription,
    RungeConfig,
    construct_from_poles,
    kayumov_truncate,
    runge_approximate,
)
from .quadrature import DEFAULT_GRID, circle_integral_means, sup_norm_circle, verify_bounds
from .univalence import boundary_simple, certify_re_derivative

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class ReferenceConstants:
    bb1_lower: float = 0.23
    bb1_upper: float = 0.46
    gamma0_upper: float = 0.5
    carleson_jones_conjecture: float = 0.25


@dataclass(frozen=True)
class GrowthRecord:
    degree: int
    length: float
    sup_norm: float
    normalized_length: float
    certificate: object = None
    report: object = None
    certified_flag: bool | None = None

    @property
    def certified(self):
        if self.certified_flag is not None:
            return self.certified_flag
        return bool(self.certificate) and self.certificate.passed

    CSV_HEADER = "n,length,sup_norm,normalized_length,certified,dolzhenko_ratio,prop1_ratio,upper_ratio"

    def csv_row(self):
        rep = self.report

        def fmt(x):
            return "" if x is None else repr(float(x))

        return ",".join(
            [
                str(self.degree),
                fmt(self.length),
                fmt(self.sup_norm),
                fmt(self.normalized_length),
                "1" if self.certified else "0",
                fmt(rep.dolzhenko_ratio if rep else None),
                fmt(rep.prop1_ratio if rep else None),
                fmt(rep.univalent_upper_ratio if rep else None),
            ]
        )


def records_to_csv(records):
    lines = [GrowthRecord.CSV_HEADER] + [r.csv_row() for r in records]
    return "\n".join(lines) + "\n"


def records_from_csv(text):
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append(
            GrowthRecord(
                degree=int(row["n"]),
                length=float(row["length"]),
                sup_norm=float(row["sup_norm"]),
                normalized_length=float(row["normalized_length"]),
                certified_flag=row["certified"] == "1",
            )
        )
    return out


@dataclass(frozen=True)
class GammaFit:
    slope: float
    intercept: float
    rms: float
    degree_range: tuple
    count: int

    CSV_HEADER = "slope,intercept,rms,count"

    def csv_row(self):
        return f"{self.slope!r},{self.intercept!r},{self.rms!r},{self.count}"


def fit_power_law(degrees, values):
    """Least-squares line through (log n, log value)."""
    n = np.asarray(degrees, dtype=float)
    v = np.asarray(values, dtype=float)
    if n.size < 3 or np.unique(n).size < 3:
        raise InsufficientData("need at least three distinct degrees")
    if np.any(v <= 0) or np.any(n <= 0):
        raise InsufficientData("log fit needs positive degrees and values")
    x, y = np.log(n), np.log(v)
    A = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (slope * x + intercept)
    return GammaFit(
        slope=float(slope),
        intercept=float(intercept),
        rms=float(np.sqrt(np.mean(resid**2))),
        degree_range=(int(n.min()), int(n.max())),
        count=int(n.size),
    )


def fit_gamma(records):
    """Family exponent from the certified records only."""
    good = [r for r in records if r.certified]
    return fit_power_law([r.degree for r in good], [r.normalized_length for r in good])


@dataclass(frozen=True)
class WindowVerdict:
    slope: float
    region: str
    violation: bool
    message: str


def compare_window(fit, constants=ReferenceConstants(), tolerance=0.0):
    """Place a fitted family exponent against the known window for the growth exponent.

    Only the upper bound is a theorem for certified normalized families, so
    only exceeding it is flagged.
    """
    g = fit.slope
    lo, hi, top = constants.bb1_lower, constants.bb1_upper, constants.gamma0_upper
    if g > top + tolerance:
        return WindowVerdict(g, "above", True, f"family exponent {g:.4f} exceeds the upper bound {top}")
    if g < lo:
        region, msg = "below", (
            f"family exponent {g:.4f} is below the window [{lo}, {hi}]; "
            "consistent (no family is claimed extremal)"
        )
    elif g <= hi:
        region, msg = "inside", f"family exponent {g:.4f} is inside the window [{lo}, {hi}]"
    else:
        region, msg = "between", f"family exponent {g:.4f} lies between {hi} and {top}"
    return WindowVerdict(g, region, False, msg)


def default_schedule():
    return [1.0 - 2.0**-k for k in range(3, 14)]


@dataclass(frozen=True)
class BetaEstimate:
    beta: float
    t: float
    schedule: tuple
    means: tuple

    def __float__(self):
        return self.beta


def estimate_beta(f, t, r_schedule=None, grid=DEFAULT_GRID):
    """Slope of log M_t[f'](r) against |log(1 - r)| over a finite radius schedule."""
    rs = default_schedule() if r_schedule is None else list(r_schedule)
    if len(rs) < 3:
        raise InsufficientData("need at least three radii")
    if any(b <= a for a, b in zip(rs, rs[1:])) or rs[0] <= 0 or rs[-1] >= 1:
        raise ValueError("radii must increase strictly inside (0, 1)")
    means = [circle_integral_means(f, t, r, grid) for r in rs]
    x = np.abs(np.log1p(-np.asarray(rs)))
    y = np.log(means)
    slope = float(np.polyfit(x, y, 1)[0])
    return BetaEstimate(slope, float(t), tuple(rs), tuple(means))


def _pole_family_member(spec, n):
    lo = spec.get("radius_min", 0.5)
    hi = spec.get("radius_max", 0.9)
    rng = np.random.default_rng(spec["seed"]) if "seed" in spec else None
    mods = np.linspace(lo, hi, n) if n > 1 else np.array([lo])
    if rng is None:
        angles = GOLDEN_ANGLE * np.arange(n)
    else:
        angles = rng.uniform(0.0, 2 * np.pi, n)
    a = mods * np.exp(1j * angles)
    prescription = PolePrescription(
        tuple(1.0 / np.conj(a)),
        spec.get("policy", "equal-split"),
        spec.get("budget_fraction", 0.9),
    )
    return construct_from_poles(prescription)


def _kayumov_coefficients(spec, n):
    source = spec.get("coefficients", "koebe")
    if source == "koebe":
        return np.arange(1, n + 1, dtype=complex)
    if isinstance(source, list):
        return np.array([descriptor.decode_complex(v) for v in source])
    fn = descriptor.from_dict(source)
    return fn.taylor_coefficients(n + 1)[1:]


def build_member(spec, degree):
    """Construct the family member for one schedule entry."""
    gen = spec["generator"]
    if gen == "monomial":
        return monomial(degree)
    if gen == "poles":
        return _pole_family_member(spec, degree)
    if gen == "kayumov":
        cfg = KayumovConfig(degree, spec.get("r"))
        return kayumov_truncate(_kayumov_coefficients(spec, degree), cfg)
    if gen == "runge":
        target = descriptor.from_dict(spec["target"])
        cfg = RungeConfig(
            delta=spec["delta"],
            order=spec.get("order", 1),
            arcs=degree,
            arc_quadrature_nodes=spec.get("arc_quadrature_nodes", 16),
        )
        return runge_approximate(target, cfg)
    raise ValueError(f"unknown generator {gen!r}")


def _certify(spec, R):
    method = spec.get("certify", "re" if spec["generator"] == "poles" else "boundary")
    if method == "re":
        return certify_re_derivative(R)
    return boundary_simple(R, spec.get("resolution"))


def measure_member(R, certificate, grid=DEFAULT_GRID):
    sup = sup_norm_circle(R, grid)
    if sup == 0.0:
        report = verify_bounds(R, certificate, grid)
        return GrowthRecord(R.degree, 0.0, 0.0, 0.0, certificate, report)
    report = verify_bounds(R.scaled(1.0 / sup), certificate, grid)
    return GrowthRecord(
        degree=R.degree,
        length=report.boundary_length * sup,
        sup_norm=sup,
        normalized_length=report.boundary_length,
        certificate=certificate,
        report=report,
    )


def run_growth_family(family, grid=DEFAULT_GRID):
    """Construct, certify, normalize and measure every member of a family."""
    if family["generator"] == "explicit":
        members = [descriptor.from_dict(d) for d in family.get("functions", [])]
        if not members:
            raise EmptyFamily("explicit family has no functions")
        built = [(m.degree, lambda m=m: m) for m in members]
    else:
        degrees = list(family.get("degrees", []))
        if not degrees:
            raise EmptyFamily("degree schedule is empty")
        built = [(d, lambda d=d: build_member(family, d)) for d in degrees]
    records = []
    for degree, make in built:
        try:
            R = make()
        except Exception as exc:
            raise GeneratorFailure(degree, exc) from exc
        records.append(measure_member(R, _certify(family, R), grid))
    records.sort(key=lambda r: r.degree)
    return records
