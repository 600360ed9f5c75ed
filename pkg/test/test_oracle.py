"""
lfmkit is a numerics toolkit for the Lebesgue-Feynman measure.
Copyright (C) 2026 lfmkit developers.

This program is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with this program.  If not, see <http://www.gnu.org/licenses/>.
"""

import sys
import unittest

import numpy as np

sys.path.append("..")
from example_functionals import small_grid, coherent_packet, relative_gap
from lfmkit.core import SpatialGrid, TimeGrid, WaveFunction, Caustic, GridMismatch, PropagatorError, UnstableStep
from lfmkit.feynman import PotentialSpec
from lfmkit.oracle import (SplitStepSolver, solve_schrodinger, split_step_order, exact_propagator, apply_kernel,
                           compare, packet_center, packet_width_sq, free_packet_width_sq)


class TestExactPropagator(unittest.TestCase):

    def test_argument_errors(self):
        with self.assertRaises(ValueError):
            exact_propagator("morse", 1.0)
        with self.assertRaises(ValueError):
            exact_propagator("free", 0.0)
        with self.assertRaises(ValueError):
            exact_propagator("free", 1.0, mode="complex_time")

    def test_caustic(self):
        with self.assertRaises(Caustic):
            exact_propagator("harmonic", np.pi, "real_time")
        exact_propagator("harmonic", np.pi, "imaginary_time")

    def test_heat_kernel_normalized(self):
        grid = small_grid()
        kernel = exact_propagator("free", 0.5)
        self.assertAlmostEqual(np.sum(kernel(grid.points, 0.3)) * grid.spacing, 1.0, places=10)

    def test_mehler_semigroup(self):
        grid = small_grid()
        phi0 = coherent_packet(grid)
        half = exact_propagator("harmonic", 0.5)
        twice = apply_kernel(half, apply_kernel(half, phi0))
        once = apply_kernel(exact_propagator("harmonic", 1.0), phi0)
        self.assertLess(relative_gap(twice, once), 1e-8)

    def test_maslov_phase_past_focal_time(self):
        phi0 = coherent_packet(SpatialGrid())
        by_kernel = apply_kernel(exact_propagator("harmonic", 4.0, "real_time"), phi0)
        by_solver = solve_schrodinger(PotentialSpec.harmonic(), phi0, 4.0)
        l2, _, aligned = compare(by_kernel, by_solver)
        self.assertLess(aligned, 1e-4)
        self.assertLess(l2, 1e-4)


class TestSplitStep(unittest.TestCase):

    def setUp(self):
        self.grid = SpatialGrid()
        self.phi0 = coherent_packet(self.grid)

    def test_coherent_state_oscillates(self):
        wave = solve_schrodinger(PotentialSpec.harmonic(), self.phi0, 1.0)
        self.assertLess(abs(wave.norm() - self.phi0.norm()), 1e-10)
        self.assertAlmostEqual(packet_center(wave), np.cos(1.0), delta=1e-5)
        self.assertAlmostEqual(packet_width_sq(wave), 1.0, delta=1e-5)

    def test_free_spreading(self):
        phi0 = WaveFunction.gaussian_packet(self.grid)
        wave = solve_schrodinger(PotentialSpec.free(), phi0, 1.0)
        self.assertAlmostEqual(packet_width_sq(wave), free_packet_width_sq(1.0, 1.0), places=6)
        self.assertAlmostEqual(packet_center(wave), 0.0, places=8)

    def test_ground_state_decay(self):
        phi0 = WaveFunction.gaussian_packet(self.grid)
        result = SplitStepSolver(PotentialSpec.harmonic()).run(phi0=phi0, grid=TimeGrid(1.0, 200),
                                                               mode="imaginary_time")
        self.assertAlmostEqual(result.norm_after / result.norm_before, np.exp(-0.5), delta=1e-4)
        self.assertEqual(result.method, "split_step")

    def test_step_limits(self):
        with self.assertRaises(UnstableStep):
            solve_schrodinger(PotentialSpec.harmonic(), self.phi0, 1.0, dt=0.1)
        with self.assertRaises(ValueError):
            solve_schrodinger(PotentialSpec.harmonic(), self.phi0, 0.0)
        with self.assertRaises(UnstableStep):
            SplitStepSolver(PotentialSpec.free()).run(phi0=self.phi0, grid=TimeGrid(1.0, 4))

    def test_potential_required(self):
        with self.assertRaises(PropagatorError):
            SplitStepSolver().run(phi0=self.phi0, grid=TimeGrid(1.0, 64))

    def test_strang_order(self):
        slope, errors = split_step_order(PotentialSpec.anharmonic(), self.phi0, 1.0)
        self.assertLess(abs(slope - 2.0), 0.2)
        self.assertTrue(all(a > b for a, b in zip(errors, errors[1:])))

    def test_plane_wave_phase(self):
        phi0 = WaveFunction.plane_wave(self.grid, 3)
        k = 2 * np.pi * 3 / self.grid.period
        with self.assertLogs(level='WARN'):
            solve_schrodinger(PotentialSpec.free(), phi0, 1.0)
        wave = solve_schrodinger(PotentialSpec.free(), phi0, 1.0, leak_tol=np.inf)
        expected = phi0.values * np.exp(-0.5j * k ** 2)
        self.assertLess(np.max(np.abs(wave.values - expected)), 1e-10)


class TestCompare(unittest.TestCase):

    def test_phase_alignment(self):
        grid = small_grid()
        a = coherent_packet(grid)
        b = a.with_values(np.exp(0.7j) * a.values)
        l2, linf, aligned = compare(a, b)
        self.assertGreater(l2, 0.5)
        self.assertGreater(linf, 0.1)
        self.assertLess(aligned, 1e-6)

    def test_grid_mismatch(self):
        with self.assertRaises(GridMismatch):
            compare(coherent_packet(small_grid()), coherent_packet(small_grid(128)))


if __name__ == '__main__':
    unittest.main()
