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
from lfmkit.core import VectorFieldSpec, FlowSpec, NoJacobian, SingularJacobian
from lfmkit.flows import (jacobian_trace, trace_truncation_sweep, derivative_pairing_values,
                          measure_derivative_pairing, shift_invariance_check, flow_logdet, nystrom_operator,
                          gaussian_kernel, fredholm_determinant, fredholm_sweep, logdet_first_order_link,
                          determinant_by_volume, constant_field, diagonal_field, rank_one_field, sine_field,
                          coupled_tanh_field, shipped_fields, linear_flow, integral_operator_flow, tanh_shear_flow,
                          elementwise_tanh_flow, scaling_flow, translation_flow, field_flow, shipped_functionals)
from lfmkit.lfm import canonical_gaussian, polynomial_gaussian, coordinate_moment


class TestJacobianTrace(unittest.TestCase):

    def test_diagonal(self):
        value, tail = jacobian_trace(diagonal_field(), np.zeros(10), 10)
        self.assertAlmostEqual(value, 2 * (1 - 0.5 ** 10), places=14)
        self.assertAlmostEqual(tail, 0.5 ** 9, places=14)

    def test_rank_one(self):
        value, _ = jacobian_trace(rank_one_field([1.0, 2.0], [0.5, 0.25]), np.ones(4), 4)
        self.assertAlmostEqual(value, 1.0)

    def test_point_too_short(self):
        with self.assertRaises(ValueError):
            jacobian_trace(diagonal_field(), np.zeros(2), 3)

    def test_no_jacobian(self):
        with self.assertRaises(NoJacobian):
            jacobian_trace(VectorFieldSpec(None), np.zeros(2), 2)

    def test_truncation_sweep(self):
        rows, cauchy = trace_truncation_sweep(diagonal_field(), range(5, 41, 5))
        self.assertTrue(cauchy)
        self.assertIsNone(rows[0]["change"])
        self.assertAlmostEqual(rows[-1]["value"], 2.0, places=10)

    def test_truncation_sweep_warns(self):
        growing = VectorFieldSpec(lambda x: x * np.arange(1, x.shape[-1] + 1),
                                  jacobian=lambda x: np.diag(np.arange(1.0, x.shape[-1] + 1)), name="growing")
        with self.assertLogs(level='WARN'):
            _, cauchy = trace_truncation_sweep(growing, (5, 10, 15, 20))
        self.assertFalse(cauchy)


class TestDerivativePairing(unittest.TestCase):

    def test_shipped_fields(self):
        functionals = shipped_functionals(3)
        for field_name, field in shipped_fields().items():
            for name, phi in functionals.items():
                with self.subTest(field=field_name, functional=name):
                    lhs, rhs = derivative_pairing_values(field, phi, 3)
                    allowed = max(1e-8, 10 * (lhs.quadrature_error_estimate + rhs.quadrature_error_estimate))
                    self.assertLess(abs(lhs.value - rhs.value), allowed)

    def test_shipped_fields_up_to_six_dimensions(self):
        for n in (4, 5, 6):
            for field_name, field in shipped_fields().items():
                for name, phi in shipped_functionals(n).items():
                    with self.subTest(n=n, field=field_name, functional=name):
                        lhs, rhs = derivative_pairing_values(field, phi, n)
                        allowed = max(1e-8, 10 * (lhs.quadrature_error_estimate + rhs.quadrature_error_estimate))
                        self.assertLess(abs(lhs.value - rhs.value), allowed)

    def test_diagonal_on_gaussian(self):
        lhs, rhs, gap = measure_derivative_pairing(diagonal_field(), canonical_gaussian(4), 4)
        self.assertAlmostEqual(rhs, 1 + 0.5 + 0.25 + 0.125, places=12)
        self.assertLess(gap, 1e-12)

    def test_dimension_mismatch(self):
        with self.assertRaises(ValueError):
            measure_derivative_pairing(diagonal_field(), canonical_gaussian(4), 3)


class TestShiftInvariance(unittest.TestCase):

    def test_shifts(self):
        for phi in (canonical_gaussian(2), polynomial_gaussian(2), coordinate_moment(2)):
            for h in ([1.0, 0.5], [-0.25], [2.0, -1.0]):
                with self.subTest(functional=phi.name, h=h):
                    self.assertLess(shift_invariance_check(h, phi, 2), 1e-10)

    def test_shift_too_long(self):
        with self.assertRaises(ValueError):
            shift_invariance_check([1.0, 1.0, 1.0], canonical_gaussian(2), 2)


class TestFlowLogdet(unittest.TestCase):

    def test_linear_flow(self):
        A = 0.25 * np.random.default_rng(0).standard_normal((4, 4))
        via_trace, direct, gap = flow_logdet(linear_flow(A), 0.7, np.zeros(4), 4)
        self.assertAlmostEqual(direct, np.exp(0.7 * np.trace(A)), places=12)
        self.assertLess(gap, 1e-10)

    def test_nonlinear_flows(self):
        x = np.random.default_rng(1).standard_normal(8)
        cases = [(elementwise_tanh_flow(), 8), (tanh_shear_flow(), 3), (field_flow(sine_field()), 2)]
        for flow, n in cases:
            with self.subTest(flow=flow.name):
                _, _, gap = flow_logdet(flow, 0.7, x, n)
                self.assertLess(gap, 1e-6)

    def test_tanh_shear_preserves_volume(self):
        via_trace, direct, _ = flow_logdet(tanh_shear_flow(), 2.0, np.array([0.3, -1.2, 0.4]), 3)
        self.assertAlmostEqual(direct, 1.0, places=14)
        self.assertAlmostEqual(via_trace, 1.0, places=12)

    def test_singular_jacobian(self):
        collapse = VectorFieldSpec(lambda x: -x, jacobian=lambda x: -np.eye(x.shape[-1]), name="collapse")
        with self.assertRaises(SingularJacobian) as context:
            flow_logdet(field_flow(collapse), 1.0, np.zeros(2), 2)
        self.assertEqual(context.exception.tau, 1.0)

    def test_singular_jacobian_between_samples(self):
        # det = (1 - tau)^2 touches zero at tau = 1 without a sign change; no RK4 stage lands on it
        collapse = VectorFieldSpec(lambda x: -x, jacobian=lambda x: -np.eye(x.shape[-1]), name="collapse")
        with self.assertRaises(SingularJacobian) as context:
            flow_logdet(field_flow(collapse), 1.9, np.zeros(2), 2)
        self.assertAlmostEqual(context.exception.tau, 1.0, places=5)

    def test_singular_jacobian_sign_change(self):
        # odd dimension: det = (1 - tau)^3 changes sign at tau = 1
        collapse = VectorFieldSpec(lambda x: -x, jacobian=lambda x: -np.eye(x.shape[-1]), name="collapse")
        with self.assertRaises(SingularJacobian) as context:
            flow_logdet(field_flow(collapse), 1.9, np.zeros(3), 3)
        self.assertAlmostEqual(context.exception.tau, 1.0, places=8)

    def test_too_few_steps(self):
        with self.assertRaises(ValueError):
            flow_logdet(scaling_flow(), 0.5, np.zeros(2), 2, ode_steps=4)

    def test_first_order_link(self):
        for field in (diagonal_field(), sine_field()):
            with self.subTest(field=field.name):
                slope, trace, gap = logdet_first_order_link(field, np.zeros(6), 6)
                self.assertLess(gap, 1e-6)

    def test_determinant_by_volume(self):
        x = np.random.default_rng(2).standard_normal(4)
        volume, det, gap = determinant_by_volume(elementwise_tanh_flow(), 0.5, x, 4)
        self.assertLess(gap, 1e-5)
        self.assertGreater(det, 1.0)


class TestFredholm(unittest.TestCase):

    def test_nystrom_is_symmetric(self):
        matrix = nystrom_operator(gaussian_kernel, 1.0, 12)
        np.testing.assert_allclose(matrix, matrix.T, atol=1e-15)

    def test_sweep_converges(self):
        rows = fredholm_sweep()
        self.assertIsNone(rows[0]["change"])
        changes = [row["change"] for row in rows[1:]]
        self.assertLess(changes[-1], 1e-10)
        self.assertGreater(rows[-1]["det"], 1.0)

    def test_two_routes_agree(self):
        n = 20
        det = fredholm_determinant(n=n, t=0.8)
        flow = integral_operator_flow(nystrom_operator(gaussian_kernel, 1.0, n))
        via_trace, direct, gap = flow_logdet(flow, 0.8, np.zeros(n), n)
        self.assertAlmostEqual(direct, det, places=10)
        self.assertLess(gap, 1e-6)

    def test_two_routes_agree_at_forty_nodes(self):
        n = 40
        det = fredholm_determinant(n=n, t=1.0)
        flow = integral_operator_flow(nystrom_operator(gaussian_kernel, 1.0, n))
        via_trace, direct, gap = flow_logdet(flow, 1.0, np.zeros(n), n)
        self.assertLess(abs(direct - det) / abs(det), 1e-9)
        self.assertLess(gap, 1e-6)
        self.assertGreater(det, 1.0)


class TestFlowLibrary(unittest.TestCase):

    def test_linear_flow_inverse(self):
        flow = linear_flow(np.array([[0.0, 1.0], [-1.0, 0.0]]))
        x = np.array([[1.0, 2.0]])
        np.testing.assert_allclose(flow.inverse(0.4, flow(0.4, x)), x, atol=1e-14)
        np.testing.assert_allclose(flow.matrix(0.4), expm(0.4 * np.array([[0.0, 1.0], [-1.0, 0.0]])))

    def test_field_flow_numeric_inverse(self):
        flow = field_flow(coupled_tanh_field())
        x = np.array([[0.3, -0.2, 0.5]])
        np.testing.assert_allclose(flow(0.5, flow.inverse(0.5, x)), x, atol=1e-10)

    def test_translation_and_constant_field(self):
        flow = translation_flow([1.0, -2.0])
        np.testing.assert_allclose(flow(0.5, np.zeros((1, 3))), [[0.5, -1.0, 0.0]])
        self.assertAlmostEqual(jacobian_trace(constant_field([1.0]), np.ones(3), 3)[0], 0.0)

    def test_generic_flow_derivatives(self):
        flow = FlowSpec(lambda t, x: x * (1 + t))
        x = np.array([0.5, -1.0])
        np.testing.assert_allclose(flow.time_derivative(0.3, x), x, atol=1e-8)
        np.testing.assert_allclose(flow.mixed_derivative(0.3, x), np.eye(2), atol=1e-4)


if __name__ == '__main__':
    unittest.main()
