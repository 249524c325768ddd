"""Grid geometry, odd extension, and symmetry transforms."""

import math

import numpy as np
import pytest

from logns.geometry import (
    DomainKind,
    Field,
    GeometryError,
    GridGeometry,
    LatticeVelocity,
    galilean_boost,
    odd_extension,
    require_same_geometry,
    restrict_to_half,
    scale_datum,
    zeros_field,
)


def torus(n=64):
    return GridGeometry(DomainKind.TORUS, (1.0,), (n,))


class TestGridGeometryValidation:
    def test_accepts_string_kind(self):
        geom = GridGeometry("torus", (1.0,), (16,))
        assert geom.kind is DomainKind.TORUS

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 5, 6, 12, 100])
    def test_rejects_non_power_of_two_points(self, n):
        with pytest.raises(GeometryError):
            GridGeometry(DomainKind.TORUS, (1.0,), (n,))

    def test_rejects_dimension_mismatch(self):
        with pytest.raises(GeometryError):
            GridGeometry(DomainKind.PERIODIC_BOX, (1.0, 2.0), (16,))

    def test_rejects_empty(self):
        with pytest.raises(GeometryError):
            GridGeometry(DomainKind.TORUS, (), ())

    def test_rejects_nonpositive_length(self):
        with pytest.raises(GeometryError):
            GridGeometry(DomainKind.PERIODIC_BOX, (0.0,), (16,))
        with pytest.raises(GeometryError):
            GridGeometry(DomainKind.PERIODIC_BOX, (math.inf,), (16,))

    def test_torus_requires_unit_lengths(self):
        with pytest.raises(GeometryError):
            GridGeometry(DomainKind.TORUS, (2.0,), (16,))

    def test_dirichlet_interval_is_one_dimensional(self):
        GridGeometry(DomainKind.DIRICHLET_INTERVAL, (1.0,), (16,))
        with pytest.raises(GeometryError):
            GridGeometry(DomainKind.DIRICHLET_INTERVAL, (1.0, 1.0), (16, 16))

    def test_slab_needs_two_dimensions(self):
        GridGeometry(DomainKind.DIRICHLET_SLAB, (1.0, 1.0), (8, 8))
        with pytest.raises(GeometryError):
            GridGeometry(DomainKind.DIRICHLET_SLAB, (1.0,), (8,))


class TestGridGeometryProperties:
    def test_cell_volume_and_volume(self):
        geom = GridGeometry(DomainKind.PERIODIC_BOX, (2.0, 3.0), (8, 16))
        assert geom.dim == 2
        assert geom.volume == pytest.approx(6.0)
        assert geom.cell_volume == pytest.approx(6.0 / 128)

    def test_axis_coordinates(self):
        geom = GridGeometry(DomainKind.PERIODIC_BOX, (2.0,), (8,))
        np.testing.assert_allclose(geom.axis_coordinates(0), np.arange(8) * 0.25)

    def test_coordinate_grids_broadcast(self):
        geom = GridGeometry(DomainKind.PERIODIC_BOX, (1.0, 2.0), (4, 8))
        grids = geom.coordinate_grids()
        assert grids[0].shape == (4, 1)
        assert grids[1].shape == (1, 8)
        assert (grids[0] + grids[1]).shape == (4, 8)

    def test_doubled(self):
        geom = GridGeometry(DomainKind.DIRICHLET_SLAB, (1.0, 0.5), (8, 16))
        dbl = geom.doubled()
        assert dbl.kind is DomainKind.PERIODIC_BOX
        assert dbl.lengths == (1.0, 1.0)
        assert dbl.points == (8, 32)

    def test_doubled_rejects_periodic(self):
        with pytest.raises(GeometryError):
            torus().doubled()


class TestField:
    def test_shape_mismatch(self):
        with pytest.raises(GeometryError):
            Field(torus(16), np.zeros(8, dtype=complex))

    def test_zeros_field(self):
        f = zeros_field(torus(16))
        assert f.data.shape == (16,)
        assert np.all(f.data == 0)

    def test_copy_is_independent(self):
        f = zeros_field(torus(16))
        g = f.copy()
        g.data[0] = 1.0
        assert f.data[0] == 0.0

    def test_require_same_geometry(self):
        require_same_geometry(zeros_field(torus(16)), zeros_field(torus(16)))
        with pytest.raises(GeometryError):
            require_same_geometry(zeros_field(torus(16)), zeros_field(torus(32)))


class TestOddExtension:
    def sine_field(self, n=32, modes=3):
        geom = GridGeometry(DomainKind.DIRICHLET_INTERVAL, (1.0,), (n,))
        x = geom.axis_coordinates(0)
        return Field(geom, np.sin(math.pi * modes * x) * (1.0 + 0.5j))

    def test_round_trip_is_bit_exact(self):
        f = self.sine_field()
        back = restrict_to_half(odd_extension(f))
        assert back.geometry == f.geometry
        assert np.array_equal(back.data, f.data)

    def test_extension_is_antisymmetric(self):
        ext = odd_extension(self.sine_field())
        m = ext.geometry.points[-1]
        idx = (-np.arange(m)) % m
        np.testing.assert_array_equal(ext.data[idx], -ext.data)

    def test_rejects_nonzero_boundary(self):
        geom = GridGeometry(DomainKind.DIRICHLET_INTERVAL, (1.0,), (16,))
        with pytest.raises(GeometryError):
            odd_extension(Field(geom, np.ones(16, dtype=complex)))

    def test_rejects_periodic_input(self):
        with pytest.raises(GeometryError):
            odd_extension(zeros_field(torus(16)))

    def test_restrict_rejects_non_antisymmetric(self):
        rng = np.random.default_rng(0)
        f = Field(torus(32), rng.standard_normal(32) + 1j)
        with pytest.raises(GeometryError):
            restrict_to_half(f)

    def test_slab_round_trip(self):
        geom = GridGeometry(DomainKind.DIRICHLET_SLAB, (1.0, 1.0), (8, 16))
        grids = geom.coordinate_grids()
        data = np.cos(2 * math.pi * grids[0]) * np.sin(math.pi * 2 * grids[1])
        f = Field(geom, data)
        back = restrict_to_half(odd_extension(f))
        assert np.array_equal(back.data, f.data)


class TestGalileanBoost:
    def test_zero_time_is_pure_modulation(self):
        geom = torus(32)
        f = Field(geom, np.ones(32, dtype=complex))
        boosted = galilean_boost(f, LatticeVelocity((2,)), 0.0)
        x = geom.axis_coordinates(0)
        np.testing.assert_allclose(boosted.data, np.exp(4j * math.pi * x), atol=1e-14)

    def test_preserves_mass(self):
        rng = np.random.default_rng(7)
        f = Field(torus(64), rng.standard_normal(64) + 1j * rng.standard_normal(64))
        boosted = galilean_boost(f, LatticeVelocity((3,)), 0.37)
        assert np.sum(np.abs(boosted.data) ** 2) == pytest.approx(
            np.sum(np.abs(f.data) ** 2), rel=1e-13
        )

    def test_shifts_plane_wave_mode(self):
        geom = torus(32)
        x = geom.axis_coordinates(0)
        f = Field(geom, np.exp(2j * math.pi * 3 * x))
        boosted = galilean_boost(f, LatticeVelocity((2,)), 0.0)
        coeffs = np.fft.fft(boosted.data) / 32
        assert abs(coeffs[5]) == pytest.approx(1.0, abs=1e-13)

    def test_rejects_dirichlet(self):
        geom = GridGeometry(DomainKind.DIRICHLET_INTERVAL, (1.0,), (16,))
        with pytest.raises(GeometryError):
            galilean_boost(zeros_field(geom), LatticeVelocity((1,)), 0.0)

    def test_rejects_dimension_mismatch(self):
        with pytest.raises(GeometryError):
            galilean_boost(zeros_field(torus(16)), LatticeVelocity((1, 1)), 0.0)

    def test_off_grid_shift_matches_analytic_plane_wave(self):
        # for a plane wave the spectral shift can be checked in closed form
        geom = torus(64)
        x = geom.axis_coordinates(0)
        f = Field(geom, np.exp(2j * math.pi * 2 * x))
        t = 0.123
        v = 2 * math.pi * 1
        boosted = galilean_boost(f, LatticeVelocity((1,)), t)
        expected = np.exp(1j * v * x - 1j * v * v * t) * np.exp(
            2j * math.pi * 2 * (x - 2 * v * t)
        )
        np.testing.assert_allclose(boosted.data, expected, atol=1e-12)


def test_scale_datum():
    f = Field(torus(16), np.full(16, 1.0 + 1.0j))
    g = scale_datum(f, 2j)
    np.testing.assert_allclose(g.data, np.full(16, -2.0 + 2.0j))
