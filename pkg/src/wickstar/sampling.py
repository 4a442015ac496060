"""Seeded sample generators for the verification and rigidity suites.

All samplers take a numpy Generator so a single seed pins the whole run;
regions deliberately stay away from chart blow-up zones (disk samples
default to |z| <= 0.8, annulus moduli are log-uniform strictly inside
(1/R, R))."""

from __future__ import annotations

import math

import numpy as np

from .sphere import GPoint, OmegaPoint, SpherePoint


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def sample_disk(rng, n: int, rmax: float = 0.8):
    """n points of the open disk, area-uniform within |z| <= rmax."""
    r = rmax * np.sqrt(rng.random(n))
    th = 2 * math.pi * rng.random(n)
    return [complex(x) for x in r * np.exp(1j * th)]


def sample_annulus(rng, n: int, radius: float, margin: float = 0.9):
    """n points of A_R, log-uniform in modulus over the middle fraction."""
    u = margin * math.log(radius) * (2 * rng.random(n) - 1)
    th = 2 * math.pi * rng.random(n)
    return [complex(x) for x in np.exp(u) * np.exp(1j * th)]


def sample_punctured(rng, n: int, min_mod: float = 1e-3, max_mod: float = 0.9):
    """n points of D*, log-uniform in modulus."""
    u = rng.uniform(math.log(min_mod), math.log(max_mod), n)
    th = 2 * math.pi * rng.random(n)
    return [complex(x) for x in np.exp(u) * np.exp(1j * th)]


def sample_half_plane(rng, n: int, spread: float = 2.0):
    """n points of the upper half plane."""
    x = spread * rng.standard_normal(n)
    y = np.exp(0.7 * rng.standard_normal(n))
    return [complex(a, b) for a, b in zip(x, y)]


def sample_gpoints(rng, n: int, spread: float = 2.0, min_sep: float = 0.05):
    """n pairs of distinct finite sphere points."""
    out = []
    while len(out) < n:
        z = complex(spread * rng.standard_normal(), spread * rng.standard_normal())
        w = complex(spread * rng.standard_normal(), spread * rng.standard_normal())
        if abs(z - w) < min_sep:
            continue
        out.append(GPoint(SpherePoint.finite(z), SpherePoint.finite(w)))
    return out


def sample_omega_points(rng, n: int, rmax: float = 0.85):
    """n points of the bivariate disk model with both slots in the disk
    (then zw != 1 automatically)."""
    zs = sample_disk(rng, n, rmax)
    ws = sample_disk(rng, n, rmax)
    return [OmegaPoint(SpherePoint.finite(z), SpherePoint.finite(w))
            for z, w in zip(zs, ws)]
