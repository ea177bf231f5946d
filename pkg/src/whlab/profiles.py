"""Smooth glue, smoothed steps and the radial plateau bump.

Everything here is built from the classical C-infinity glue

    G(t) = exp(-1/t) for t > 0,  G(t) = 0 otherwise,
    g(t) = G(t) / (G(t) + G(1 - t)),

which rises from 0 at t <= 0 to 1 at t >= 1 and satisfies g(1/2) = 1/2.
"""

from __future__ import annotations

import numpy as np

__all__ = ["glue", "smoothstep", "bump_profile"]


def glue(t):
    """G(t) = exp(-1/t) for t > 0, else 0 (vectorized)."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    with np.errstate(divide="ignore", over="ignore"):
        out[pos] = np.exp(-1.0 / t[pos])
    return out


def smoothstep(t):
    """Normalized C-infinity ramp: 0 for t <= 0, 1 for t >= 1, g(t) between."""
    t = np.asarray(t, dtype=float)
    a = glue(t)
    b = glue(1.0 - t)
    with np.errstate(invalid="ignore"):
        out = np.where(t <= 0.0, 0.0, np.where(t >= 1.0, 1.0, a / (a + b)))
    return out


def bump_profile(r, rho):
    """Radial plateau bump: 1 for r <= 1, 0 for r >= rho, glued in between.

    The transition uses the normalized glue at t = (rho - r) / (rho - 1), so
    the profile is even in the underlying coordinate, takes values in [0, 1],
    and the plateau/support conditions hold exactly at every evaluation point.
    """
    r = np.abs(np.asarray(r, dtype=float))
    t = (rho - r) / (rho - 1.0)
    out = smoothstep(t)
    # Pin the plateau and the support exactly; smoothstep already clamps,
    # but r == 1 and r == rho must not depend on rounding of t.
    out = np.where(r <= 1.0, 1.0, out)
    out = np.where(r >= rho, 0.0, out)
    return out
