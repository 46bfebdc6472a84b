"""Grid search over the Schwarz-parameter set behind the coefficient bounds.

The searched set is the hypothesis set of the bound derivations, not the
function class itself: ``|b_m| <= 1``, ``|b_2m|, |c_2m| <= 1 - |b_m|^2``,
``c_m = -b_m`` and the pinned sum

    b_2m + c_2m = 2 (B1^2 - 2 B2) b_m^2 / B1.

Points are parametrized by ``b_m`` and ``d = b_2m - c_2m``.  A maximum at or
below a bound therefore checks the inequality chain; a tightness near 1 says
the chain has no slack on this set, not that the bound is sharp for the class.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .bounds import BoundValue, ClassParams, bound_a_2m1, bound_a_m1, fekete_szego_bound
from .ma_minda import PhiSpec, mobius_beta, power_alpha
from .schwarz import SchwarzPoint

log = logging.getLogger(__name__)

SEED = 0x5EED
DEFAULT_DENSITY = 32
MIN_DENSITY = 8
#: slack admitted on the disc constraints so boundary grid nodes count as feasible
FEAS_TOL = 1e-12
#: an empirical maximum above bound + VIOLATION_TOL is a falsification finding
VIOLATION_TOL = 1e-9

ABS_A_M1 = "abs_a_m1"
ABS_A_2M1 = "abs_a_2m1"
FEKETE_SZEGO = "fekete_szego"
FUNCTIONALS = (ABS_A_M1, ABS_A_2M1, FEKETE_SZEGO)

SCOPE_NOTE = (
    "searched set: truncated Schwarz constraints with c_m = -b_m and the pinned "
    "sum b_2m + c_2m; empirical <= theoretical tests the bound derivation, "
    "tightness measures its slack on this set, not sharpness for the class"
)


@dataclass(frozen=True)
class FeasibleRegion:
    phi: PhiSpec
    params: ClassParams

    @property
    def b1(self) -> float:
        return float(self.phi.b1)

    def pinned_sum(self, b_m):
        return 2 * float(self.phi.discriminant()) * b_m * b_m / self.b1


@dataclass
class PointBatch:
    """A chunk of feasible points as parallel complex arrays."""

    b_m: np.ndarray
    d: np.ndarray
    s: np.ndarray
    rejected: int = 0

    @property
    def b_2m(self):
        return (self.s + self.d) / 2

    @property
    def c_2m(self):
        return (self.s - self.d) / 2

    def __len__(self):
        return self.b_m.size

    def points(self) -> Iterator[SchwarzPoint]:
        for b, b2, c2 in zip(self.b_m, self.b_2m, self.c_2m):
            yield SchwarzPoint(complex(b), complex(b2), complex(-b), complex(c2))


def _batch(region: FeasibleRegion, b_m, d) -> PointBatch:
    s = region.pinned_sum(b_m)
    room = 1 - np.abs(b_m) ** 2
    ok = (np.abs(s + d) / 2 <= room + FEAS_TOL) & (np.abs(s - d) / 2 <= room + FEAS_TOL)
    return PointBatch(b_m[ok], d[ok], s[ok], int(ok.size - np.count_nonzero(ok)))


def enumerate_region(region: FeasibleRegion, density: int = DEFAULT_DENSITY,
                     random_samples: int = 0, seed: int = SEED) -> Iterator[PointBatch]:
    """Yield feasible points in chunks, one chunk per ``|b_m|`` grid value.

    Radii are ``k/density`` (``|b_m|`` on [0, 1], ``|d|`` on [0, 2]) and
    phases ``2 pi k/density``, so doubling the density refines the grid.
    Infeasible nodes are dropped and counted in ``PointBatch.rejected``.
    Optional uniform random samples from the bounding box follow in one
    final chunk.
    """
    n = int(density)
    if n < MIN_DENSITY:
        raise ValueError(f"density must be >= {MIN_DENSITY}, got {density}")
    steps = np.arange(n + 1) / n
    phases = np.exp(2j * np.pi * (np.arange(n) / n))
    d_grid = (2 * steps[:, None] * phases[None, :]).ravel()
    for rb in steps:
        b_vals = rb * phases
        b_m = np.repeat(b_vals, d_grid.size)
        d = np.tile(d_grid, b_vals.size)
        yield _batch(region, b_m, d)
    if random_samples:
        rng = np.random.default_rng(seed)
        k = int(random_samples)
        b_m = rng.uniform(0, 1, k) * np.exp(2j * np.pi * rng.uniform(0, 1, k))
        d = rng.uniform(0, 2, k) * np.exp(2j * np.pi * rng.uniform(0, 1, k))
        yield _batch(region, b_m, d)


def _values(region: FeasibleRegion, batch: PointBatch, functional: str, gamma) -> np.ndarray:
    p = region.params
    sc = float(p.scale)
    a1 = region.b1 * batch.b_m / sc
    if functional == ABS_A_M1:
        return np.abs(a1)
    a2 = (p.m + 1) / 2 * a1 * a1 + region.b1 * batch.d / (4 * sc)
    if functional == ABS_A_2M1:
        return np.abs(a2)
    if functional == FEKETE_SZEGO:
        return np.abs(a2 - float(gamma) * a1 * a1)
    raise ValueError(f"unknown functional {functional!r}")


def theoretical_bound(functional: str, phi: PhiSpec, p: ClassParams, gamma=None) -> BoundValue:
    if functional == ABS_A_M1:
        return bound_a_m1(phi, p)
    if functional == ABS_A_2M1:
        return bound_a_2m1(phi, p)
    if functional == FEKETE_SZEGO:
        return fekete_szego_bound(phi, p, gamma)
    raise ValueError(f"unknown functional {functional!r}")


@dataclass
class SearchReport:
    functional: str
    phi: str
    m: int
    lam: float
    gamma: float | None
    theoretical: BoundValue
    empirical_max: float
    argmax: SchwarzPoint | None
    grid_size: int
    samples_rejected: int

    @property
    def tightness(self) -> float:
        if self.theoretical.value == 0:
            return 1.0 if self.empirical_max == 0 else math.inf
        return self.empirical_max / self.theoretical.value

    @property
    def violated(self) -> bool:
        return self.empirical_max > self.theoretical.value + VIOLATION_TOL

    def to_dict(self) -> dict:
        def pair(x):
            return [x.real, x.imag]
        argmax = None
        if self.argmax is not None:
            argmax = {k: pair(complex(getattr(self.argmax, k))) for k in ("b_m", "b_2m", "c_m", "c_2m")}
        return {
            "params": {"m": self.m, "lambda": self.lam, "gamma": self.gamma, "phi": self.phi},
            "functional": self.functional,
            "theoretical": self.theoretical.value,
            "branch": self.theoretical.branch,
            "degenerate": self.theoretical.degenerate,
            "empirical": self.empirical_max,
            "argmax": argmax,
            "tightness": self.tightness,
            "grid_size": self.grid_size,
            "samples_rejected": self.samples_rejected,
        }


def _scan(region: FeasibleRegion, targets, density, random_samples=0):
    """One enumeration pass maximizing several ``(functional, gamma)`` targets."""
    best = [(-1.0, None) for _ in targets]
    size = rejected = 0
    for batch in enumerate_region(region, density, random_samples):
        size += len(batch)
        rejected += batch.rejected
        if not len(batch):
            continue
        for i, (functional, gamma) in enumerate(targets):
            vals = _values(region, batch, functional, gamma)
            j = int(np.argmax(vals))
            if vals[j] > best[i][0]:
                pt = SchwarzPoint(complex(batch.b_m[j]), complex(batch.b_2m[j]),
                                  complex(-batch.b_m[j]), complex(batch.c_2m[j]))
                best[i] = (float(vals[j]), pt)
    return best, size, rejected


def _reports(region, targets, density, random_samples=0):
    best, size, rejected = _scan(region, targets, density, random_samples)
    p = region.params
    out = []
    for (functional, gamma), (value, pt) in zip(targets, best):
        out.append(SearchReport(
            functional=functional,
            phi=region.phi.label,
            m=p.m,
            lam=float(p.lam),
            gamma=None if gamma is None else float(gamma),
            theoretical=theoretical_bound(functional, region.phi, p, gamma),
            empirical_max=max(value, 0.0),
            argmax=pt,
            grid_size=size,
            samples_rejected=rejected,
        ))
    return out


def empirical_max(region: FeasibleRegion, functional: str, density: int = DEFAULT_DENSITY,
                  gamma=None, random_samples: int = 0) -> SearchReport:
    """Maximize one functional over the region."""
    if functional == FEKETE_SZEGO and gamma is None:
        gamma = region.params.gamma
    if functional != FEKETE_SZEGO:
        gamma = None
    return _reports(region, [(functional, gamma)], density, random_samples)[0]


MIDPOINT_GAMMA = "(m+1)/2"


def resolve_gamma(gamma, m: int):
    if isinstance(gamma, str):
        if gamma.replace(" ", "") == MIDPOINT_GAMMA:
            return Fraction(m + 1, 2)
        return Fraction(gamma)
    return gamma


def default_grid() -> dict:
    return {
        "m": [1, 2, 3],
        "lambda": [0, Fraction(1, 4), Fraction(1, 2)],
        "phi": [mobius_beta(0), mobius_beta(Fraction(1, 2)), power_alpha(Fraction(1, 2)), power_alpha(1)],
        "gamma": [0, Fraction(1, 2), 1, MIDPOINT_GAMMA],
    }


@dataclass
class ValidationSummary:
    reports: list = field(default_factory=list)
    density: int = DEFAULT_DENSITY

    @property
    def violations(self) -> list:
        return [r for r in self.reports if r.violated]

    def min_tightness(self) -> dict:
        out = {}
        for r in self.reports:
            out[r.functional] = min(out.get(r.functional, math.inf), r.tightness)
        return out

    def to_dict(self) -> dict:
        return {
            "density": self.density,
            "scope": SCOPE_NOTE,
            "cells": [r.to_dict() for r in self.reports],
            "violations": [r.to_dict() for r in self.violations],
            "min_tightness": self.min_tightness(),
        }


def _workers() -> int:
    env = os.environ.get("BIUNIV_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer BIUNIV_THREADS=%r", env)
    return os.cpu_count() or 1


def validate_bounds(grid: dict | None = None, density: int = DEFAULT_DENSITY,
                    functionals=FUNCTIONALS, random_samples: int = 0,
                    workers: int | None = None) -> ValidationSummary:
    """Run the searches for every ``(m, lambda, phi)`` cell of ``grid``.

    Each cell is enumerated once; the FS functional is evaluated for every
    gamma of the grid.  Bound violations are reported, never raised.
    """
    grid = default_grid() if grid is None else grid
    cells = [(m, lam, phi) for m in grid.get("m", []) for lam in grid.get("lambda", [])
             for phi in grid.get("phi", [])]
    gammas = list(grid.get("gamma", [])) or [0]

    def run(cell):
        m, lam, phi = cell
        region = FeasibleRegion(phi, ClassParams(m, lam))
        targets = [(f, None) for f in functionals if f != FEKETE_SZEGO]
        if FEKETE_SZEGO in functionals:
            targets += [(FEKETE_SZEGO, resolve_gamma(g, m)) for g in gammas]
        return _reports(region, targets, density, random_samples)

    workers = workers or _workers()
    summary = ValidationSummary(density=density)
    if not cells:
        return summary
    with ThreadPoolExecutor(max_workers=min(workers, len(cells))) as pool:
        for reports in pool.map(run, cells):
            summary.reports.extend(reports)
    return summary
