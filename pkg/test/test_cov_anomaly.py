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
from scipy.linalg import expm

sys.path.append("..")
from lfmkit.core import GaussianFunctional, QuadratureSpec, TimeGrid, VectorFieldSpec, SingularJacobian
from lfmkit.cov_anomaly import (verify_change_of_variables, verify_change_of_variables_gaussian, pulled_back,
                                with_determinant, discrete_action, density_ratio, AnomalousFlow,
                                construct_anomalous_flow, anomaly_report)
from lfmkit.feynman import PotentialSpec
from lfmkit.flows import (translation_flow, scaling_flow, elementwise_tanh_flow, tanh_shear_flow, field_flow,
                          linear_flow, integral_operator_flow, nystrom_operator, gaussian_kernel,
                          fredholm_determinant, flow_logdet)
from lfmkit.lfm import integrate_lfm, canonical_gaussian, polynomial_gaussian


class TestChangeOfVariables(unittest.TestCase):

    def test_translation(self):
        for phi in (canonical_gaussian(2), polynomial_gaussian(2)):
            with self.subTest(functional=phi.name):
                lhs, rhs, gap = verify_change_of_variables(translation_flow([1.0, 0.5]), 1.0, phi, 2)
                self.assertLess(gap, 1e-10)

    def test_scaling(self):
        for t in (0.1, 0.3, 0.5):
            with self.subTest(t=t):
                lhs, rhs, gap = verify_change_of_variables(scaling_flow(), t, canonical_gaussian(2), 2)
                self.assertAlmostEqual(lhs, np.exp(2 * t), places=12)
                self.assertAlmostEqual(rhs, np.exp(2 * t), places=12)

    def test_nonlinear_flows(self):
        cases = [(elementwise_tanh_flow(), canonical_gaussian(3)), (tanh_shear_flow(), polynomial_gaussian(2))]
        for flow, phi in cases:
            with self.subTest(flow=flow.name):
                n = phi.dim
                lhs = integrate_lfm(pulled_back(flow, 0.5, phi, n), n)
                rhs = integrate_lfm(with_determinant(flow, 0.5, phi, n), n)
                allowed = max(1e-7, 10 * (lhs.quadrature_error_estimate + rhs.quadrature_error_estimate))
                self.assertLess(abs(lhs.value - rhs.value), allowed)

    def test_gaussian_closed_form(self):
        L = expm(0.3 * np.random.default_rng(4).standard_normal((3, 3)))
        phi = GaussianFunctional(np.eye(3) + 0.1 * np.ones((3, 3)))
        lhs, rhs, gap = verify_change_of_variables_gaussian(L, phi)
        self.assertLess(gap, 1e-12 * abs(rhs))
        with self.assertRaises(TypeError):
            verify_change_of_variables_gaussian(L, canonical_gaussian(3))

    def test_singular_determinant(self):
        collapse = VectorFieldSpec(lambda x: -x, jacobian=lambda x: -np.broadcast_to(
            np.eye(x.shape[-1]), x.shape + (x.shape[-1],)), name="collapse")
        with self.assertRaises(SingularJacobian):
            integrate_lfm(with_determinant(field_flow(collapse), 1.0, canonical_gaussian(2), 2), 2)

    def test_dimension_too_small(self):
        with self.assertRaises(ValueError):
            verify_change_of_variables(scaling_flow(), 0.5, canonical_gaussian(3), 2)


class TestDiscreteAction(unittest.TestCase):

    def test_harmonic_path(self):
        grid = TimeGrid(1.0, 2)
        self.assertAlmostEqual(discrete_action(np.array([1.0, 1.0]), PotentialSpec.harmonic(), grid), 0.375)
        self.assertEqual(discrete_action(np.zeros(2), PotentialSpec.free(), grid), 0.0)

    def test_wrong_length(self):
        with self.assertRaises(ValueError):
            discrete_action(np.zeros(3), PotentialSpec.free(), TimeGrid(1.0, 2))

    def test_density_ratio(self):
        points = np.random.default_rng(0).standard_normal((5, 3))
        np.testing.assert_allclose(density_ratio(scaling_flow(), 0.2, points), np.exp(0.6))


class TestAnomalousFlow(unittest.TestCase):

    def test_construction(self):
        flow = construct_anomalous_flow(n=5, n_reference=2, seed=3)
        self.assertLess(flow.residuals["leaves_span"], 1e-12)
        self.assertLess(flow.residuals["radial_part"], 1e-12)
        self.assertAlmostEqual(flow.residuals["rotation_on_references"], 1.0, places=12)
        self.assertLess(flow.residuals["projector_defect"], 1e-12)
        self.assertGreater(abs(flow.residuals["trace"]), 1e-2)
        self.assertGreater(abs(flow.residuals["det_at_t_half"] - 1.0), 1e-2)

    def test_references_rotate_in_their_span(self):
        flow = AnomalousFlow(n=4, n_reference=2, seed=1)
        paths = flow.sample_paths(np.random.default_rng(0), 6, 4)
        moved = flow.flow(0.7, paths)
        np.testing.assert_allclose(np.linalg.norm(moved, axis=-1), np.linalg.norm(paths, axis=-1), rtol=1e-12)
        np.testing.assert_allclose(moved @ flow.references.T @ flow.references, moved, atol=1e-12)
        self.assertTrue(np.all(np.linalg.norm(moved - paths, axis=-1) > 1e-2))
        tangent = paths @ flow.generator.T
        np.testing.assert_allclose(np.sum(tangent * paths, axis=-1), 0.0, atol=1e-12)
        with self.assertRaises(ValueError):
            flow.sample_paths(np.random.default_rng(0), 6, 5)

    def test_invalid_reference_count(self):
        for n_reference in (0, 1, 4):
            with self.subTest(n_reference=n_reference):
                with self.assertRaises(ValueError):
                    AnomalousFlow(n=4, n_reference=n_reference)


class TestAnomalyReport(unittest.TestCase):

    def setUp(self):
        self.quad = QuadratureSpec.tensor(12)

    def test_translation_is_invariant(self):
        report = anomaly_report(translation_flow([0.5, -0.25, 0.125, 0.0]), PotentialSpec.free(), TimeGrid(1.0, 4),
                                4, quad=self.quad, t=1.0, sample_count=32)
        self.assertEqual(report.verdict, "invariant")
        self.assertEqual(report.det_field_stats, (1.0, 1.0, 1.0))
        self.assertLess(report.pairing_gap, 1e-10)
        self.assertTrue(report.cov_holds)
        self.assertEqual(report.pairing_method, "quadrature")

    def test_flagship_is_anomalous(self):
        flow = construct_anomalous_flow(n=4, n_reference=2, seed=0)
        report = anomaly_report(flow.flow, PotentialSpec.free(), TimeGrid(1.0, 4), 4, quad=self.quad, t=0.5,
                                sample_count=64, path_sampler=flow.sample_paths)
        self.assertLess(report.action_gap, 1e-6)
        self.assertGreater(report.displacement_stats[0], 1e-3)
        self.assertGreater(report.density_ratio_deviation, 1e-2)
        self.assertEqual(report.verdict, "anomalous")

    def test_analytic_route_in_high_dimension(self):
        flow = construct_anomalous_flow(n=8, n_reference=3, seed=2)
        report = anomaly_report(flow.flow, PotentialSpec.harmonic(), TimeGrid(1.0, 8), 8, t=0.5, sample_count=16,
                                path_sampler=flow.sample_paths)
        self.assertEqual(report.pairing_method, "analytic_gaussian")
        self.assertLess(report.cov_gap, 1e-9)
        self.assertGreater(report.pairing_gap, 0.0)

    def test_det_field_matches_fredholm_and_logdet(self):
        n = 40
        flow = integral_operator_flow(nystrom_operator(gaussian_kernel, 1.0, n))
        report = anomaly_report(flow, PotentialSpec.free(), TimeGrid(1.0, n), n, t=1.0, sample_count=16)
        fredholm = fredholm_determinant(gaussian_kernel, 1.0, n, 1.0)
        _, direct, _ = flow_logdet(flow, 1.0, np.zeros(n), n)
        for value in report.det_field_stats:
            self.assertLess(abs(value - fredholm) / fredholm, 1e-9)
            self.assertLess(abs(value - direct) / abs(direct), 1e-9)
        self.assertEqual(report.pairing_method, "analytic_gaussian")
        self.assertGreater(report.pairing_gap, 0.0)
        self.assertGreater(report.displacement_stats[0], 0.0)

    def test_argument_errors(self):
        free, grid = PotentialSpec.free(), TimeGrid(1.0, 4)
        with self.assertRaises(ValueError):
            anomaly_report(scaling_flow(), free, TimeGrid(1.0, 3), 4)
        with self.assertRaises(ValueError):
            anomaly_report(scaling_flow(), free, grid, 4, pairing_method="series")
        with self.assertRaises(ValueError):
            anomaly_report(linear_flow(np.eye(4)), free, grid, 4, probe=canonical_gaussian(4),
                           pairing_method="analytic_gaussian")


if __name__ == '__main__':
    unittest.main()
