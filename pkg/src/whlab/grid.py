"""Truncated uniform grids on R^n (n in {1, 2}), sampled functions,
domain masks for cones, and the restriction / extension-by-zero pair.

Conventions
-----------
The grid covers the periodic box [-L, L)^n with N nodes per axis,
node spacing h = 2L/N and node coordinates x_m = -L + m h.  The matching
frequency nodes are xi_k = pi k / L for k = -N/2 .. N/2 - 1 (ascending).
Ball and mask membership is tested at node centers with strict
inequalities; boundary precision is deliberately traded for an
unambiguous rule.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBallError, ValidationError

__all__ = [
    "Grid",
    "GridFunction",
    "Ball",
    "DomainMask",
    "make_grid",
    "sample",
    "restrict",
    "extend_by_zero",
    "ball_indicator",
    "full_space",
    "half_line",
    "sector",
    "explicit_mask",
    "write_gridfunction_csv",
]


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [-L, L)^n with 2L-periodic FFT pairing.

    Parameters
    ----------
    n : int
        Dimension, 1 or 2.
    half_width : float
        L > 0; the box is [-L, L)^n.
    points : int
        Nodes per axis; an even power of two, at least 8.
    """

    n: int
    half_width: float
    points: int

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValidationError(f"dimension must be 1 or 2, got {self.n}")
        if not (self.half_width > 0):
            raise ValidationError("half_width must be positive")
        N = self.points
        if N < 8 or (N & (N - 1)) != 0:
            raise ValidationError(
                f"points must be a power of two >= 8, got {N}")
        h = 2.0 * self.half_width / N
        x_axis = -self.half_width + h * np.arange(N)
        xi_axis = (math.pi / self.half_width) * np.arange(-(N // 2), N // 2)
        x_axis.flags.writeable = False
        xi_axis.flags.writeable = False
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "x_axis", x_axis)
        object.__setattr__(self, "xi_axis", xi_axis)

    @property
    def shape(self):
        return (self.points,) * self.n

    @property
    def node_count(self):
        return self.points ** self.n

    @property
    def cell_volume(self):
        return self.h ** self.n

    def coords(self):
        """Node coordinate arrays, one per axis, broadcast to ``shape``."""
        if self.n == 1:
            return (self.x_axis,)
        return tuple(np.meshgrid(self.x_axis, self.x_axis, indexing="ij"))

    def freq_coords(self):
        """Frequency node arrays in ascending order, broadcast to ``shape``."""
        if self.n == 1:
            return (self.xi_axis,)
        return tuple(np.meshgrid(self.xi_axis, self.xi_axis, indexing="ij"))

    def distances(self, center):
        """Euclidean node distances to ``center`` (array of ``shape``)."""
        c = as_point(center, self.n)
        if self.n == 1:
            return np.abs(self.x_axis - c[0])
        x1, x2 = self.coords()
        return np.hypot(x1 - c[0], x2 - c[1])


def same_grid(a: Grid, b: Grid) -> bool:
    return (a.n, a.half_width, a.points) == (b.n, b.half_width, b.points)


def as_point(y, n: int) -> np.ndarray:
    """Normalize a scalar / sequence to a length-n float point."""
    arr = np.atleast_1d(np.asarray(y, dtype=float))
    if arr.shape != (n,):
        raise ValidationError(f"expected a point in R^{n}, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples, one value per grid node."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != self.grid.shape:
            raise ValidationError(
                f"value shape {vals.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValidationError("grid function values must be finite")
        object.__setattr__(self, "values", vals)

    def _check_same_grid(self, other: "GridFunction"):
        if not same_grid(self.grid, other.grid):
            raise ValidationError("grid mismatch between grid functions")

    def __add__(self, other: "GridFunction") -> "GridFunction":
        self._check_same_grid(other)
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        self._check_same_grid(other)
        return GridFunction(self.grid, self.values - other.values)

    def __mul__(self, scalar) -> "GridFunction":
        return GridFunction(self.grid, self.values * complex(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True)
class Ball:
    """Open Euclidean ball B(y, R); node membership is |x - y| < R."""

    center: tuple
    radius: float

    def __post_init__(self):
        c = tuple(float(v) for v in np.atleast_1d(self.center))
        object.__setattr__(self, "center", c)
        if not (self.radius > 0):
            raise ValidationError("ball radius must be positive")


@dataclass(frozen=True, eq=False)
class DomainMask:
    """Per-node indicator of the domain Omega.

    ``kind`` is one of full / halfline / cone / explicit; cone masks carry
    their angular interval in ``params`` so that containment can also be
    checked against the continuum geometry.
    """

    grid: Grid
    inside: np.ndarray
    kind: str
    params: tuple = ()

    def __post_init__(self):
        ins = np.asarray(self.inside, dtype=bool)
        if ins.shape != self.grid.shape:
            raise ValidationError("mask shape does not match grid")
        if not ins.any():
            raise ValidationError("domain mask selects no node")
        ins.flags.writeable = False
        object.__setattr__(self, "inside", ins)

    def clearance(self, y) -> float | None:
        """Continuum distance from y to the complement of Omega.

        Returns ``inf`` for the full space, ``None`` for explicit masks
        (no continuum formula available), and a nonpositive number when y
        lies outside Omega.
        """
        y = as_point(y, self.grid.n)
        if self.kind == "full":
            return math.inf
        if self.kind == "halfline":
            return float(y[0])
        if self.kind == "cone":
            alpha1, alpha2 = self.params
            r = math.hypot(y[0], y[1])
            if r == 0.0:
                return 0.0
            theta = math.atan2(y[1], y[0])
            d1 = (theta - alpha1) % (2.0 * math.pi)
            d2 = (alpha2 - theta) % (2.0 * math.pi)
            aperture = alpha2 - alpha1
            if d1 > aperture or d2 > aperture:
                return -r  # outside the sector
            phi = min(d1, d2, 0.5 * math.pi)
            return r * math.sin(phi)
        return None

    def contains_ball_nodes(self, ball: Ball) -> bool:
        """True iff every node of the ball lies inside the mask."""
        member = self.grid.distances(ball.center) < ball.radius
        if not member.any():
            raise DegenerateBallError(
                f"ball B({ball.center}, {ball.radius}) contains no grid node")
        return bool(np.all(self.inside[member]))

    def central_ray(self) -> np.ndarray:
        """Unit vector along the canonical ray of the domain."""
        if self.kind in ("full", "halfline"):
            ray = np.zeros(self.grid.n)
            ray[0] = 1.0
            return ray
        if self.kind == "cone":
            alpha1, alpha2 = self.params
            psi = 0.5 * (alpha1 + alpha2)
            return np.array([math.cos(psi), math.sin(psi)])
        raise ValidationError("explicit masks have no canonical ray")


def make_grid(n: int, half_width: float, points: int) -> Grid:
    """Build the truncated uniform grid; see :class:`Grid` for invariants."""
    return Grid(n=n, half_width=float(half_width), points=int(points))


def sample(expr, grid: Grid) -> GridFunction:
    """Evaluate a pointwise rule on the nodes.

    ``expr`` receives one coordinate array per axis and must return finite
    values broadcastable to the grid shape.
    """
    raw = expr(*grid.coords())
    vals = np.broadcast_to(np.asarray(raw, dtype=complex), grid.shape).copy()
    if not np.all(np.isfinite(vals)):
        raise ValidationError("expression evaluated to a non-finite value")
    return GridFunction(grid, vals)


def restrict(u: GridFunction, omega: DomainMask) -> GridFunction:
    """r_Omega embedded in the full grid: zero the values outside Omega."""
    if not same_grid(u.grid, omega.grid):
        raise ValidationError("grid mismatch between function and mask")
    return GridFunction(u.grid, np.where(omega.inside, u.values, 0.0))


def extend_by_zero(u: GridFunction, omega: DomainMask) -> GridFunction:
    """e_Omega at node level: identical action to :func:`restrict`.

    Both operators multiply by the indicator of Omega, so their composition
    is exactly multiplication by chi_Omega node-wise.
    """
    return restrict(u, omega)


def ball_indicator(ball: Ball, grid: Grid) -> GridFunction:
    """0/1 samples of the open ball; errors when no node is inside."""
    c = as_point(ball.center, grid.n)
    member = grid.distances(c) < ball.radius
    if not member.any():
        raise DegenerateBallError(
            f"ball B({tuple(c)}, {ball.radius}) contains no grid node")
    return GridFunction(grid, member.astype(complex))


def full_space(grid: Grid) -> DomainMask:
    return DomainMask(grid, np.ones(grid.shape, dtype=bool), "full")


def half_line(grid: Grid) -> DomainMask:
    """Omega = {x >= 0} on a one-dimensional grid."""
    if grid.n != 1:
        raise ValidationError("half-line masks require n = 1")
    return DomainMask(grid, grid.x_axis >= 0.0, "halfline")


def sector(grid: Grid, alpha1: float, alpha2: float) -> DomainMask:
    """Open planar cone with angular interval (alpha1, alpha2).

    Membership is decided from the signs of cross products against the edge
    directions, which makes the mask exactly invariant under positive
    scaling of node coordinates.  Requires 0 < alpha2 - alpha1 <= 2 pi.
    """
    if grid.n != 2:
        raise ValidationError("sector masks require n = 2")
    aperture = alpha2 - alpha1
    if not (0.0 < aperture <= 2.0 * math.pi + 1e-12):
        raise ValidationError("sector aperture must lie in (0, 2*pi]")
    x1, x2 = grid.coords()
    # d1 > 0: strictly counterclockwise of the alpha1 edge;
    # d2 > 0: strictly clockwise of the alpha2 edge.
    d1 = -math.sin(alpha1) * x1 + math.cos(alpha1) * x2
    d2 = math.sin(alpha2) * x1 - math.cos(alpha2) * x2
    if aperture >= 2.0 * math.pi - 1e-12:
        # Slit plane: exclude only the closed edge ray (and the origin).
        along = math.cos(alpha1) * x1 + math.sin(alpha1) * x2
        inside = ~((d1 == 0.0) & (along >= 0.0))
    elif aperture > math.pi:
        inside = (d1 > 0.0) | (d2 > 0.0)
    else:
        inside = (d1 > 0.0) & (d2 > 0.0)
    return DomainMask(grid, inside, "cone", (float(alpha1), float(alpha2)))


def explicit_mask(grid: Grid, inside) -> DomainMask:
    return DomainMask(grid, np.asarray(inside, dtype=bool), "explicit")


def write_gridfunction_csv(u: GridFunction, path_or_buf) -> None:
    """Serialize samples as CSV: index, x (or x1, x2), re, im.

    Rows follow node index order (C order for n = 2, so
    index = i1 * N + i2).
    """
    close = False
    if isinstance(path_or_buf, (str, bytes)) or hasattr(path_or_buf, "__fspath__"):
        buf = open(path_or_buf, "w", newline="")
        close = True
    else:
        buf = path_or_buf
    try:
        writer = csv.writer(buf, lineterminator="\n")
        if u.grid.n == 1:
            writer.writerow(["index", "x", "re", "im"])
            for idx, (x, v) in enumerate(zip(u.grid.x_axis, u.values)):
                writer.writerow([idx, f"{x:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"])
        else:
            writer.writerow(["index", "x1", "x2", "re", "im"])
            x1, x2 = u.grid.coords()
            flat_v = u.values.ravel()
            flat_x1 = x1.ravel()
            flat_x2 = x2.ravel()
            for idx in range(flat_v.size):
                writer.writerow([
                    idx,
                    f"{flat_x1[idx]:.17g}",
                    f"{flat_x2[idx]:.17g}",
                    f"{flat_v[idx].real:.17g}",
                    f"{flat_v[idx].imag:.17g}",
                ])
    finally:
        if close:
            buf.close()


def gridfunction_csv(u: GridFunction) -> str:
    """CSV serialization as a string (same schema as the file writer)."""
    buf = io.StringIO()
    write_gridfunction_csv(u, buf)
    return buf.getvalue()
