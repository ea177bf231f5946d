"""Doubling ratios over balls, separated ball families along cone rays,
and scans exhibiting the small-tau trend of the doubling constants.

A doubling ratio compares indicator norms of a ball and its tau-inflation
inside Omega.  The weak-doubling estimate D_est is the minimum ratio over a
finite schedule of sampled balls -- an upper bound for the infimum
restricted to the sampled radii, never a certified limit.  The separated
estimate S_est is the maximum ratio over a family whose tau-inflated balls
are pairwise disjoint inside Omega; both geometry flags are recomputed
from continuum data, never trusted from the construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericFailure, ValidationError
from .grid import Ball, DomainMask, as_point, ball_indicator
from .spaces import SpaceSpec, luxemburg_norm

__all__ = [
    "DoublingEntry",
    "DoublingReport",
    "doubling_ratio",
    "separated_sequence",
    "weak_doubling_scan",
    "separated_doubling_scan",
    "tau_scan",
]

#: Quadrature slack allowed on ratio >= 1 (lattice property at grid resolution).
RATIO_SLACK = 0.05


@dataclass(frozen=True)
class DoublingEntry:
    y: tuple
    radius: float
    ratio: float
    contained: bool
    disjoint: bool


@dataclass(frozen=True)
class DoublingReport:
    """Computed ratios for one tau together with the aggregate estimates."""

    tau: float
    entries: tuple
    d_est: float
    s_est: float | None
    containment_verified: bool
    disjointness_verified: bool

    def __post_init__(self):
        for e in self.entries:
            if e.ratio < 1.0 - RATIO_SLACK:
                raise NumericFailure(
                    f"doubling ratio {e.ratio} below 1 beyond quadrature slack")


def _check_box(ball: Ball, grid) -> bool:
    c = as_point(ball.center, grid.n)
    return bool(np.all(c - ball.radius >= -grid.half_width)
                and np.all(c + ball.radius <= grid.half_width))


def _contained(omega: DomainMask, ball: Ball) -> bool:
    """Ball inside the grid box and inside Omega (continuum and nodes)."""
    if not _check_box(ball, omega.grid):
        return False
    clear = omega.clearance(ball.center)
    if clear is not None and clear < ball.radius:
        return False
    return omega.contains_ball_nodes(ball)


def doubling_ratio(y, radius: float, tau: float, space: SpaceSpec) -> float:
    """||chi_{B(y, tau R)}||_X(Omega) / ||chi_{B(y, R)}||_X(Omega).

    Preconditions: tau > 1 and the inflated ball contained in the grid box
    and in Omega (checked at node level and, for cone domains, against the
    continuum sector-distance formula).
    """
    if not (tau > 1.0):
        raise ValidationError("tau must exceed 1 for a doubling ratio")
    if not (radius > 0.0):
        raise ValidationError("ball radius must be positive")
    outer = Ball(tuple(as_point(y, space.grid.n)), tau * radius)
    if not _contained(space.domain, outer):
        raise ValidationError(
            f"inflated ball B({outer.center}, {outer.radius}) is not contained "
            "in the grid box and the domain")
    inner = Ball(outer.center, radius)
    denom = luxemburg_norm(ball_indicator(inner, space.grid), space)
    if denom < 1e-14:
        raise NumericFailure("degenerate inner ball: indicator norm below 1e-14")
    numer = luxemburg_norm(ball_indicator(outer, space.grid), space)
    return numer / denom


def separated_sequence(omega: DomainMask, tau: float, theta: float,
                       lam: float, m: int, y0: float | None = None) -> list:
    """Geometric ball family (y_j, R_j) along the central ray of a cone.

    Centers are y_j = y0 * lam^j for j = 1..m with radii R_j = theta |y_j|,
    so the tau-inflated balls stay inside Omega (tau * theta below the sine
    of the aperture half-angle; below 1 on the half-line) and are pairwise
    disjoint (lam > (1 + tau*theta)/(1 - tau*theta)).  Both properties are
    re-verified post hoc by the scans.  ``y0 = None`` picks the largest
    value keeping the outermost inflated ball inside the grid box.
    """
    grid = omega.grid
    if m < 2:
        raise ValidationError("a separated family needs at least 2 balls")
    if not (tau > 1.0):
        raise ValidationError("tau must exceed 1")
    if not (0.0 < theta):
        raise ValidationError("theta must be positive")
    tt = tau * theta
    if omega.kind == "cone":
        alpha1, alpha2 = omega.params
        beta = 0.5 * (alpha2 - alpha1)
        limit = math.sin(min(beta, 0.5 * math.pi))
        if not (tt < limit):
            raise ValidationError(
                f"tau*theta = {tt:g} must be below sin of the aperture "
                f"half-angle ({limit:g})")
    elif omega.kind in ("halfline", "full"):
        if not (tt < 1.0):
            raise ValidationError(f"tau*theta = {tt:g} must be below 1")
    else:
        raise ValidationError("separated sequences need a cone-like domain")
    lam_min = (1.0 + tt) / (1.0 - tt)
    if not (lam > lam_min):
        raise ValidationError(
            f"lambda = {lam:g} must exceed (1 + tau*theta)/(1 - tau*theta) "
            f"= {lam_min:g} for disjoint inflated balls")

    ray = omega.central_ray()
    box_limit = grid.half_width / (1.0 + tt) / float(np.max(np.abs(ray)))
    if y0 is None:
        y0 = box_limit / lam ** m
    if not (abs(y0) >= 4.0 * grid.h / theta):
        raise ValidationError(
            f"|y0| = {abs(y0):g} must be at least 4h/theta = "
            f"{4.0 * grid.h / theta:g} so the innermost ball is resolved")

    family = []
    for j in range(1, m + 1):
        dist = y0 * lam ** j
        center = tuple(dist * ray)
        radius = theta * abs(dist)
        if not _check_box(Ball(center, tau * radius), grid):
            raise ValidationError(
                f"grid box too small: inflated ball {j} of {m} "
                f"(center distance {dist:g}) leaves the box")
        family.append((center, radius))
    return family


def _pairwise_disjoint(family, tau: float) -> list[bool]:
    """Per-ball flag: its tau-inflation misses every other tau-inflation."""
    n = len(family)
    ok = [True] * n
    for j in range(n):
        yj = np.asarray(family[j][0])
        for k in range(j + 1, n):
            yk = np.asarray(family[k][0])
            gap = float(np.linalg.norm(yj - yk))
            if gap < tau * (family[j][1] + family[k][1]):
                ok[j] = ok[k] = False
    return ok


def _scan(space: SpaceSpec, tau: float, schedule) -> DoublingReport:
    entries = []
    for y, radius in schedule:
        ratio = doubling_ratio(y, radius, tau, space)
        entries.append((tuple(as_point(y, space.grid.n)), float(radius), ratio))
    disjoint = _pairwise_disjoint([(e[0], e[1]) for e in entries], tau)
    contained = [
        _contained(space.domain, Ball(e[0], tau * e[1])) for e in entries
    ]
    ratios = [e[2] for e in entries]
    all_disjoint = all(disjoint)
    report = DoublingReport(
        tau=tau,
        entries=tuple(DoublingEntry(e[0], e[1], e[2], c, d)
                      for e, c, d in zip(entries, contained, disjoint)),
        d_est=min(ratios),
        s_est=max(ratios) if all_disjoint else None,
        containment_verified=all(contained),
        disjointness_verified=all_disjoint,
    )
    return report


def weak_doubling_scan(space: SpaceSpec, tau: float, schedule) -> DoublingReport:
    """Minimum ratio over a finite ball schedule (weak-doubling estimate).

    D_est is an upper bound for the lim-inf restricted to the sampled
    radii only; the report records every ratio so the sampling is audit-
    able.
    """
    if not schedule:
        raise ValidationError("weak doubling scan needs a non-empty schedule")
    return _scan(space, tau, schedule)


def separated_doubling_scan(space: SpaceSpec, tau: float, theta: float,
                            lam: float, m: int, y0: float | None = None) -> DoublingReport:
    """Maximum ratio over the verified disjoint geometric family."""
    family = separated_sequence(space.domain, tau, theta, lam, m, y0)
    report = _scan(space, tau, family)
    if not report.disjointness_verified:
        raise NumericFailure("constructed family failed the disjointness recheck")
    return report


def tau_scan(space: SpaceSpec, tau_list, theta: float, lam: float,
             m: int, y0: float | None = None) -> list:
    """(tau, D_est, S_est) rows over a tau list decreasing toward 1.

    The same geometric family serves every tau (its geometry does not
    depend on tau); only the containment margin and the ratios do.
    """
    taus = [float(t) for t in tau_list]
    if not taus or any(t <= 1.0 for t in taus):
        raise ValidationError("every tau in the scan must exceed 1")
    if not all(b < a for a, b in zip(taus, taus[1:])):
        raise ValidationError("tau list must be strictly decreasing toward 1")
    rows = []
    for tau in taus:
        report = separated_doubling_scan(space, tau, theta, lam, m, y0)
        rows.append((tau, report.d_est, report.s_est))
    return rows
