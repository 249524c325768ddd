"""Structured grids and geometry transforms.

Periodic kinds (torus, periodic box) carry samples at x_j = j L / N per axis.
Dirichlet kinds impose u = 0 on the plane x_d = 0 of the last axis and are
handled through odd extension to a doubled periodic grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "DomainKind",
    "GridGeometry",
    "Field",
    "GeometryError",
    "zeros_field",
    "odd_extension",
    "restrict_to_half",
    "galilean_boost",
    "scale_datum",
]


class GeometryError(ValueError):
    """Raised for invalid geometries or geometry mismatches between fields."""


class DomainKind(str, Enum):
    TORUS = "torus"
    PERIODIC_BOX = "periodic_box"
    DIRICHLET_INTERVAL = "dirichlet_interval"
    DIRICHLET_SLAB = "dirichlet_slab"


_PERIODIC = frozenset({DomainKind.TORUS, DomainKind.PERIODIC_BOX})
_DIRICHLET = frozenset({DomainKind.DIRICHLET_INTERVAL, DomainKind.DIRICHLET_SLAB})


@dataclass(frozen=True)
class GridGeometry:
    """Discretization descriptor: domain kind, side lengths, samples per axis."""

    kind: DomainKind
    lengths: tuple[float, ...]
    points: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "kind", DomainKind(self.kind))
        object.__setattr__(self, "lengths", tuple(float(l) for l in self.lengths))
        object.__setattr__(self, "points", tuple(int(n) for n in self.points))
        if len(self.lengths) != len(self.points) or not self.points:
            raise GeometryError("lengths and points must be nonempty and of equal dimension")
        for n in self.points:
            if n < 4 or n & (n - 1):
                raise GeometryError(f"points per axis must be powers of two >= 4, got {n}")
        for l in self.lengths:
            if not (l > 0 and math.isfinite(l)):
                raise GeometryError(f"lengths must be positive finite, got {l}")
        if self.kind is DomainKind.TORUS and any(l != 1.0 for l in self.lengths):
            raise GeometryError("torus geometry requires unit side lengths")
        if self.kind is DomainKind.DIRICHLET_INTERVAL and self.dim != 1:
            raise GeometryError("dirichlet_interval is one-dimensional")
        if self.kind is DomainKind.DIRICHLET_SLAB and self.dim < 2:
            raise GeometryError("dirichlet_slab requires dimension >= 2")

    @property
    def dim(self) -> int:
        return len(self.points)

    @property
    def is_periodic(self) -> bool:
        return self.kind in _PERIODIC

    @property
    def is_dirichlet(self) -> bool:
        return self.kind in _DIRICHLET

    @property
    def cell_volume(self) -> float:
        return math.prod(l / n for l, n in zip(self.lengths, self.points))

    @property
    def volume(self) -> float:
        return math.prod(self.lengths)

    def axis_coordinates(self, axis: int) -> np.ndarray:
        """Sample positions x_j = j L / N along one axis."""
        n, l = self.points[axis], self.lengths[axis]
        return np.arange(n) * (l / n)

    def coordinate_grids(self) -> list[np.ndarray]:
        """Broadcastable coordinate arrays, one per axis."""
        return list(np.ix_(*[self.axis_coordinates(i) for i in range(self.dim)]))

    def doubled(self) -> "GridGeometry":
        """Periodic box covering the odd extension (last axis doubled)."""
        if not self.is_dirichlet:
            raise GeometryError("doubled() applies to Dirichlet geometries only")
        lengths = self.lengths[:-1] + (2.0 * self.lengths[-1],)
        points = self.points[:-1] + (2 * self.points[-1],)
        return GridGeometry(DomainKind.PERIODIC_BOX, lengths, points)


@dataclass
class Field:
    """Complex samples on a structured grid, the discrete state u(t, .)."""

    geometry: GridGeometry
    data: np.ndarray

    def __post_init__(self):
        self.data = np.ascontiguousarray(self.data, dtype=complex)
        if self.data.shape != self.geometry.points:
            raise GeometryError(
                f"data shape {self.data.shape} does not match grid {self.geometry.points}"
            )

    def copy(self) -> "Field":
        return Field(self.geometry, self.data.copy())


def zeros_field(geometry: GridGeometry) -> Field:
    return Field(geometry, np.zeros(geometry.points, dtype=complex))


def require_same_geometry(a: Field, b: Field) -> None:
    if a.geometry != b.geometry:
        raise GeometryError(f"geometry mismatch: {a.geometry} vs {b.geometry}")


def odd_extension(field: Field) -> Field:
    """Antisymmetric reflection of a Dirichlet field across x_d = 0.

    The result lives on the doubled periodic grid and satisfies
    u~(x', -x_d) = -u~(x', x_d) at every sample; its first half is the input.
    """
    geom = field.geometry
    if not geom.is_dirichlet:
        raise GeometryError("odd_extension requires a Dirichlet geometry")
    scale = np.max(np.abs(field.data))
    boundary = np.abs(field.data[..., 0]).max() if field.data.size else 0.0
    if boundary > 1e-12 * scale:
        raise GeometryError(
            f"boundary samples must vanish: max |u| on the plane is {boundary:.3e}"
        )
    n = geom.points[-1]
    out = np.zeros(geom.points[:-1] + (2 * n,), dtype=complex)
    out[..., :n] = field.data
    out[..., n] = 0.0
    out[..., n + 1 :] = -field.data[..., 1:][..., ::-1]
    return Field(geom.doubled(), out)


def restrict_to_half(field: Field) -> Field:
    """Inverse of odd_extension: keep the half grid x_d in [0, L).

    Rejects fields that are not antisymmetric in the last axis.
    """
    geom = field.geometry
    if not geom.is_periodic:
        raise GeometryError("restrict_to_half requires a periodic geometry")
    m = geom.points[-1]
    idx = (-np.arange(m)) % m
    residual = np.abs(field.data[..., idx] + field.data).max()
    scale = np.max(np.abs(field.data))
    if residual > 1e-8 * max(scale, 1e-300):
        raise GeometryError(
            f"field is not antisymmetric in the last axis (residual {residual:.3e})"
        )
    n = m // 2
    kind = DomainKind.DIRICHLET_INTERVAL if geom.dim == 1 else DomainKind.DIRICHLET_SLAB
    half = GridGeometry(kind, geom.lengths[:-1] + (geom.lengths[-1] / 2.0,), geom.points[:-1] + (n,))
    data = field.data[..., :n].copy()
    data[..., 0] = 0.0
    return Field(half, data)


@dataclass(frozen=True)
class LatticeVelocity:
    """Integer mode indices; the boost velocity is v = 2 pi modes / lengths."""

    modes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(int(m) for m in self.modes))


def galilean_boost(field: Field, velocity: LatticeVelocity, t: float) -> Field:
    """Galilean boost u(x) -> e^{i v.x - i |v|^2 t} u(x - 2 v t).

    v = 2 pi modes / lengths, so the modulation is grid-periodic. The off-grid
    shift is applied as an exact modulation in Fourier space.
    """
    geom = field.geometry
    if not geom.is_periodic:
        raise GeometryError("galilean_boost requires a periodic geometry")
    modes = velocity.modes
    if len(modes) != geom.dim:
        raise GeometryError(f"velocity has {len(modes)} components for a {geom.dim}-d grid")
    v = np.array([2.0 * math.pi * m / l for m, l in zip(modes, geom.lengths)])

    data = field.data
    if t != 0.0 and any(modes):
        # shift by a = 2 v t: multiply mode n by exp(-2 pi i n . a / L)
        coeffs = np.fft.fftn(data)
        for axis, (n_pts, l) in enumerate(zip(geom.points, geom.lengths)):
            a = 2.0 * v[axis] * t
            n_idx = np.fft.fftfreq(n_pts, d=1.0 / n_pts)
            phase = np.exp(-2j * math.pi * n_idx * a / l)
            shape = [1] * geom.dim
            shape[axis] = n_pts
            coeffs = coeffs * phase.reshape(shape)
        data = np.fft.ifftn(coeffs)

    grids = geom.coordinate_grids()
    vx = sum(v[i] * grids[i] for i in range(geom.dim))
    vv = float(np.dot(v, v))
    return Field(geom, np.exp(1j * vx - 1j * vv * t) * data)


def scale_datum(field: Field, z: complex) -> Field:
    """Pointwise multiplication by a complex constant."""
    return Field(field.geometry, complex(z) * field.data)
