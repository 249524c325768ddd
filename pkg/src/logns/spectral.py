"""Fourier machinery: transforms, exact free propagator, multiplier H^s norm.

Conventions follow the transform f^(n) = integral f(x) e^{-2 pi i n.x} dx on
the unit torus: `forward` returns coefficients normalized so a plane wave of
amplitude A has a single coefficient A. For a box with side lengths L the
frequency of mode n is n / L and norms carry the volume factor so that the
s = 0 multiplier norm squared equals the mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import Field, GeometryError, GridGeometry

__all__ = [
    "Spectrum",
    "forward",
    "backward",
    "free_propagator",
    "hs_multiplier_norm",
    "truncate_modes",
]


@dataclass
class Spectrum:
    """Fourier coefficients in numpy fft mode ordering, one per grid point."""

    geometry: GridGeometry
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.ascontiguousarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != self.geometry.points:
            raise GeometryError(
                f"coeff shape {self.coeffs.shape} does not match grid {self.geometry.points}"
            )


def _require_periodic(geometry: GridGeometry, what: str) -> None:
    if not geometry.is_periodic:
        raise GeometryError(f"{what} requires a periodic geometry, got {geometry.kind.value}")


def forward(field: Field) -> Spectrum:
    _require_periodic(field.geometry, "forward transform")
    n_total = field.data.size
    return Spectrum(field.geometry, np.fft.fftn(field.data) / n_total)


def backward(spec: Spectrum) -> Field:
    _require_periodic(spec.geometry, "backward transform")
    n_total = spec.coeffs.size
    return Field(spec.geometry, np.fft.ifftn(spec.coeffs * n_total))


@lru_cache(maxsize=32)
def squared_frequency(geometry: GridGeometry) -> np.ndarray:
    """|n / L|^2 on the full mode grid, fft ordering. Cached per geometry."""
    axes = []
    for n_pts, l in zip(geometry.points, geometry.lengths):
        n_idx = np.fft.fftfreq(n_pts, d=1.0 / n_pts)
        axes.append((n_idx / l) ** 2)
    grids = np.ix_(*axes)
    out = sum(grids)
    return np.broadcast_to(out, geometry.points).copy()


@lru_cache(maxsize=32)
def mode_radius(geometry: GridGeometry) -> np.ndarray:
    """|n| (integer mode index magnitude) on the full mode grid."""
    axes = []
    for n_pts in geometry.points:
        axes.append(np.fft.fftfreq(n_pts, d=1.0 / n_pts) ** 2)
    out = sum(np.ix_(*axes))
    return np.sqrt(np.broadcast_to(out, geometry.points))


def free_propagator(field: Field, dt: float) -> Field:
    """Exact flow of i u_t + Lap u = 0: mode n picks up e^{-4 pi^2 |n/L|^2 i dt}."""
    _require_periodic(field.geometry, "free_propagator")
    xi2 = squared_frequency(field.geometry)
    symbol = np.exp(-4.0 * math.pi**2 * xi2 * 1j * dt)
    return Field(field.geometry, np.fft.ifftn(np.fft.fftn(field.data) * symbol))


def hs_multiplier_norm(field: Field, s: float) -> float:
    """Bessel-potential norm: sqrt(V sum (1 + 4 pi^2 |n/L|^2)^s |f^(n)|^2).

    s = 0 reproduces the L^2 norm; any real s is accepted.
    """
    _require_periodic(field.geometry, "hs_multiplier_norm")
    coeffs = np.fft.fftn(field.data) / field.data.size
    weight = (1.0 + 4.0 * math.pi**2 * squared_frequency(field.geometry)) ** s
    total = float(np.sum(weight * np.abs(coeffs) ** 2))
    return math.sqrt(field.geometry.volume * total)


def truncate_modes(field: Field, radius: float) -> Field:
    """Sharp Fourier cutoff: zero all coefficients with |n| > radius."""
    _require_periodic(field.geometry, "truncate_modes")
    coeffs = np.fft.fftn(field.data)
    coeffs[mode_radius(field.geometry) > radius] = 0.0
    return Field(field.geometry, np.fft.ifftn(coeffs))
