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

import os
import sys
import unittest
from unittest import mock

import numpy as np

sys.path.append("..")
from example_functionals import constant_functional, tilted_gaussian
from lfmkit.core import (TimeGrid, DiscretePath, PhasePath, FiniteSubspace, CylinderFunctional,
                         GaussianFunctional, QuadratureSpec, SpatialGrid, WaveFunction, VectorFieldSpec,
                         BudgetExceeded, GridMismatch, NoJacobian, ValidationError, validate)
from lfmkit.core.quadrature import node_budget_from_env, DEFAULT_NODE_BUDGET
from lfmkit.flows import sine_field, coupled_tanh_field, tanh_shear_flow, elementwise_tanh_flow, translation_flow
from lfmkit.lfm import canonical_gaussian, coordinate_moment


class TestTimeGrid(unittest.TestCase):

    def test_invalid_arguments(self):
        for t_final, n_slices in [(0, 4), (-1.0, 4), (1.0, 0), (1.0, 2.5)]:
            with self.subTest(t_final=t_final, n_slices=n_slices):
                with self.assertRaises(ValueError):
                    TimeGrid(t_final, n_slices)

    def test_nodes(self):
        grid = TimeGrid(1.3, 7)
        nodes = grid.nodes()
        self.assertEqual(len(nodes), 8)
        self.assertEqual(nodes[0], 0.0)
        self.assertAlmostEqual(nodes[-1], 1.3, places=14)
        self.assertEqual(validate(grid), [])

    def test_refined(self):
        grid = TimeGrid(2.0, 5).refined()
        self.assertEqual(grid.n_slices, 10)
        self.assertAlmostEqual(grid.delta, 0.2)


class TestDiscretePath(unittest.TestCase):

    def setUp(self):
        self.grid = TimeGrid(1.0, 6)
        self.coordinates = np.random.default_rng(3).standard_normal(6)
        self.path = DiscretePath.from_coordinates(self.grid, self.coordinates)

    def test_norm_matches_coordinates(self):
        self.assertAlmostEqual(self.path.sobolev_norm_sq(), np.sum(self.coordinates ** 2), places=12)
        np.testing.assert_allclose(self.path.to_coordinates(), self.coordinates, rtol=0, atol=1e-12)

    def test_refine_preserves_norm(self):
        refined = self.path.refine()
        self.assertEqual(refined.grid.n_slices, 12)
        self.assertAlmostEqual(refined.sobolev_norm_sq(), self.path.sobolev_norm_sq(), places=10)

    def test_translate(self):
        moved = self.path.translate(self.path)
        np.testing.assert_allclose(moved.values, 2 * self.path.values)
        other = DiscretePath(TimeGrid(2.0, 6), np.zeros(6))
        with self.assertRaises(ValueError):
            self.path.translate(other)

    def test_wrong_length(self):
        with self.assertRaises(ValueError):
            DiscretePath(self.grid, np.zeros(5))

    def test_values_are_frozen(self):
        with self.assertRaises(ValueError):
            self.path.values[0, 0] = 1.0

    def test_validate(self):
        self.assertEqual(validate(self.path), [])
        bad = DiscretePath(self.grid, np.full(6, np.nan))
        self.assertNotEqual(validate(bad), [])


class TestPhasePath(unittest.TestCase):

    def test_norms(self):
        grid = TimeGrid(1.0, 4)
        path = PhasePath(grid, np.ones(4), np.full(4, 2.0))
        value, used = path.norm_sq("l2")
        self.assertEqual(used, "l2")
        self.assertAlmostEqual(value, 1.0 + 4.0)
        value, _ = path.norm_sq("derivative")
        self.assertAlmostEqual(value, 4.0)
        with self.assertRaises(ValueError):
            path.norm_sq("sup")

    def test_dimension_mismatch(self):
        grid = TimeGrid(1.0, 3)
        with self.assertRaises(ValueError):
            PhasePath(grid, np.zeros((3, 2)), np.zeros((3, 1)))
        with self.assertRaises(ValueError):
            PhasePath(grid, np.zeros(2), np.zeros(3))


class TestFiniteSubspace(unittest.TestCase):

    def test_orthonormal(self):
        for basis_id in FiniteSubspace.BASIS_IDS:
            with self.subTest(basis_id=basis_id):
                subspace = FiniteSubspace(5, basis_id)
                np.testing.assert_allclose(subspace.gram(), np.eye(5), atol=1e-12)
                self.assertEqual(validate(subspace), [])

    def test_hat_embedding_carries_free_action(self):
        subspace = FiniteSubspace(6, "hat", TimeGrid(0.5, 6))
        x = np.random.default_rng(1).standard_normal(6)
        path = DiscretePath(subspace.grid, subspace.embed(x))
        self.assertAlmostEqual(path.sobolev_norm_sq(), np.sum(x ** 2), places=12)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            FiniteSubspace(0)
        with self.assertRaises(ValueError):
            FiniteSubspace(3, "fourier")
        with self.assertRaises(ValueError):
            FiniteSubspace(3, "hat", TimeGrid(1.0, 4))


class TestCylinderFunctional(unittest.TestCase):

    def test_construction_errors(self):
        with self.assertRaises(ValueError):
            CylinderFunctional(2, factors=[np.exp])
        with self.assertRaises(ValueError):
            CylinderFunctional(1, np.exp, decay_class="compact")
        with self.assertRaises(ValueError):
            CylinderFunctional(1)
        with self.assertRaises(ValueError):
            CylinderFunctional(1, np.exp, decay_rate=-1.0)

    def test_extension_is_gaussian_tail(self):
        psi = coordinate_moment(2)
        x = np.array([[1.5, 0.5, -2.0]])
        expected = 1.5 ** 2 * np.exp(-0.5 * np.sum(x ** 2))
        self.assertAlmostEqual(psi(x)[0], expected)
        self.assertAlmostEqual(psi.extended(3)(x)[0], expected)
        with self.assertRaises(ValueError):
            canonical_gaussian(3).extended(2)

    def test_too_few_coordinates(self):
        with self.assertRaises(ValueError):
            canonical_gaussian(3)(np.zeros((4, 2)))

    def test_arithmetic(self):
        psi = canonical_gaussian(2)
        phi = coordinate_moment(2).extended(2)
        x = np.random.default_rng(0).standard_normal((5, 2))
        np.testing.assert_allclose((2 * psi - phi)(x), 2 * psi(x) - phi(x))
        self.assertEqual((psi + phi).decay_class, "polynomial_times_gaussian")

    def test_shifted(self):
        psi = canonical_gaussian(2)
        h = np.array([0.5, -1.0])
        x = np.random.default_rng(2).standard_normal((4, 2))
        np.testing.assert_allclose(psi.shifted(h)(x), psi(x + h))
        np.testing.assert_allclose(psi.shifted(h).center, -h)

    def test_numeric_gradient(self):
        psi = CylinderFunctional(2, lambda x: np.exp(-0.5 * np.sum(x ** 2, axis=-1)))
        x = np.array([[0.3, -0.7]])
        np.testing.assert_allclose(psi.grad(x), -x * psi(x)[:, None], atol=1e-8)

    def test_zero_dimensional(self):
        self.assertEqual(constant_functional(2.0)(np.zeros((1, 0)))[0], 2.0)

    def test_validate(self):
        self.assertEqual(validate(canonical_gaussian(4)), [])
        broken = CylinderFunctional(1, lambda x: 2 * np.exp(-0.5 * x[..., 0] ** 2), decay_bound=(1.0, 0.5))
        self.assertNotEqual(validate(broken), [])


class TestGaussianFunctional(unittest.TestCase):

    def test_diagonal_pairing(self):
        self.assertAlmostEqual(GaussianFunctional(2 * np.eye(1)).exact_pairing(), 2 ** -0.5)

    def test_shifted_pairing(self):
        psi = tilted_gaussian()
        M, b = psi.matrix.real, psi.shift.real
        expected = np.linalg.det(M) ** -0.5 * np.exp(0.5 * b @ np.linalg.solve(M, b))
        self.assertAlmostEqual(psi.exact_pairing(), expected, places=14)

    def test_not_positive_definite(self):
        with self.assertRaises(ValueError):
            GaussianFunctional([[1.0, 0.0], [0.0, -1.0]])

    def test_pull_back_scales_by_determinant(self):
        L = np.array([[2.0, 0.3], [0.0, 1.5]])
        psi = GaussianFunctional(np.eye(2))
        self.assertAlmostEqual(psi.pulled_back(L).exact_pairing(), np.linalg.det(L))


class TestQuadratureSpec(unittest.TestCase):

    def test_invalid(self):
        with self.assertRaises(ValueError):
            QuadratureSpec(scheme="sparse_grid")
        with self.assertRaises(ValueError):
            QuadratureSpec.tensor(0)
        with self.assertRaises(ValueError):
            QuadratureSpec.monte_carlo(sample_count=1)

    def test_budget_checked_at_construction(self):
        with self.assertRaises(BudgetExceeded):
            QuadratureSpec.tensor(20, node_budget=100, dim=2)
        QuadratureSpec.tensor(10, node_budget=100, dim=2)

    def test_schedule_validation(self):
        self.assertEqual(validate(QuadratureSpec(epsilon_schedule=(0.4, 0.2, 0.1))), [])
        self.assertNotEqual(validate(QuadratureSpec(epsilon_schedule=(0.1, 0.2))), [])
        self.assertNotEqual(validate(QuadratureSpec(epsilon_schedule=(0.1,))), [])

    def test_strict_validation_raises(self):
        with self.assertRaises(ValidationError) as context:
            validate(QuadratureSpec(epsilon_schedule=(0.1, 0.2)), strict=True)
        self.assertEqual(context.exception.violations, ["epsilon_schedule must be strictly decreasing"])
        self.assertEqual(validate(QuadratureSpec(epsilon_schedule=(0.4, 0.2)), strict=True), [])

    def test_replace(self):
        quad = QuadratureSpec.tensor(12)
        self.assertEqual(quad.replace(nodes_per_dim=8).nodes_per_dim, 8)
        self.assertEqual(quad.nodes_per_dim, 12)
        with self.assertRaises(TypeError):
            quad.replace(nodes=8)

    def test_damped(self):
        self.assertFalse(QuadratureSpec().damped)
        self.assertTrue(QuadratureSpec(damping_epsilon=0.1).damped)

    def test_node_budget_from_env(self):
        with mock.patch.dict(os.environ, {"LFMKIT_NODE_BUDGET": "5e4"}):
            self.assertEqual(node_budget_from_env(), 50000)
            self.assertEqual(QuadratureSpec().node_budget, 50000)
        with mock.patch.dict(os.environ, {"LFMKIT_NODE_BUDGET": ""}):
            self.assertEqual(node_budget_from_env(), DEFAULT_NODE_BUDGET)
        with mock.patch.dict(os.environ, {"LFMKIT_NODE_BUDGET": "many"}):
            with self.assertRaises(ValueError):
                node_budget_from_env()


class TestWaveFunction(unittest.TestCase):

    def setUp(self):
        self.grid = SpatialGrid()

    def test_size_mismatch(self):
        with self.assertRaises(GridMismatch):
            WaveFunction(self.grid, np.zeros(10))

    def test_packet_is_normalized(self):
        wave = WaveFunction.gaussian_packet(self.grid, center=1.0, width=0.8, momentum=2.0)
        self.assertAlmostEqual(wave.norm(), 1.0, places=10)
        mass, mean, variance = wave.density_moments()
        self.assertAlmostEqual(mean, 1.0, places=10)
        self.assertAlmostEqual(variance, 0.8 ** 2 / 2, places=10)

    def test_inner_requires_matching_grid(self):
        wave = WaveFunction.gaussian_packet(self.grid)
        other = WaveFunction.gaussian_packet(SpatialGrid(-10, 10, 1024))
        with self.assertRaises(GridMismatch):
            wave.inner(other)
        self.assertAlmostEqual(wave.inner(wave), 1.0, places=10)

    def test_delta_approximant_has_unit_mass(self):
        wave = WaveFunction.delta_approximant(self.grid, q0=0.5)
        self.assertAlmostEqual(np.sum(wave.values.real) * self.grid.spacing, 1.0, places=12)

    def test_boundary_mass(self):
        self.assertLess(WaveFunction.gaussian_packet(self.grid).boundary_mass(), 1e-20)
        self.assertGreater(WaveFunction.plane_wave(self.grid, 3).boundary_mass(), 0.05)

    def test_validate(self):
        self.assertEqual(validate(WaveFunction.gaussian_packet(self.grid)), [])
        values = np.zeros(self.grid.n_points)
        values[3] = np.inf
        self.assertNotEqual(validate(WaveFunction(self.grid, values)), [])


class TestFields(unittest.TestCase):

    def test_analytic_jacobian_matches_differences(self):
        self.assertEqual(validate(sine_field()), [])

    def test_finite_difference_jacobian(self):
        field = coupled_tanh_field()
        x = np.array([0.2, -0.4, 0.1])
        J = field.jacobian_at(x)
        self.assertEqual(J.shape, (3, 3))
        self.assertAlmostEqual(J[0, 1], 0.5 * 0.5 / np.cosh(0.2 - 0.2) ** 2, places=8)

    def test_no_jacobian(self):
        field = VectorFieldSpec(lambda x: x, h_fd=None)
        with self.assertRaises(NoJacobian):
            field.jacobian_at(np.zeros(3))

    def test_flows_validate(self):
        for flow in (tanh_shear_flow(), elementwise_tanh_flow(), translation_flow([1.0, -0.5])):
            with self.subTest(flow=flow.name):
                self.assertEqual(validate(flow), [])

    def test_validate_rejects_plain_objects(self):
        with self.assertRaises(TypeError):
            validate(object())


if __name__ == '__main__':
    unittest.main()
