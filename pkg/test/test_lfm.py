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
from example_functionals import constant_functional, double_factorial, shifted_square, tilted_gaussian
from lfmkit.core import QuadratureSpec, BudgetExceeded, NonIntegrable, ValidationError
from lfmkit.lfm import (integrate_lfm, normalization_check, dimension_sweep, gaussian_pairing, linearity_check,
                        canonical_gaussian, coordinate_moment, fourier_gaussian, damped_oscillation,
                        damped_oscillation_pairing, pure_phase, product_decay, product_decay_pairing,
                        product_decay_limit, odd_gaussian, polynomial_gaussian, cosine_gaussian, SWEEP_FAMILIES)


class TestNormalization(unittest.TestCase):

    def test_canonical_gaussian(self):
        for n in range(1, 13):
            with self.subTest(n=n):
                self.assertLess(normalization_check(n), 1e-12)

    def test_invalid_dimension(self):
        with self.assertRaises(ValueError):
            normalization_check(0)


class TestIntegrateLfm(unittest.TestCase):

    def test_moments(self):
        for power in range(0, 9):
            with self.subTest(power=power):
                value = integrate_lfm(coordinate_moment(power), 1)
                self.assertAlmostEqual(value.value, double_factorial(power), places=11)

    def test_moment_does_not_depend_on_n(self):
        for n in (2, 5, 9):
            with self.subTest(n=n):
                value = integrate_lfm(coordinate_moment(2, coordinate=2), n)
                self.assertAlmostEqual(value.value, 1.0, places=12)
                self.assertEqual(value.dim, n)

    def test_fourier(self):
        value = integrate_lfm(fourier_gaussian(1.5), 3)
        self.assertAlmostEqual(value.value, np.exp(-1.5 ** 2 / 2), places=12)

    def test_gaussian_closed_form(self):
        psi = tilted_gaussian()
        value = integrate_lfm(psi, 2)
        self.assertAlmostEqual(value.value, gaussian_pairing(psi.matrix, psi.shift), places=9)
        self.assertLess(value.quadrature_error_estimate, 1e-6)

    def test_polynomial_and_cosine(self):
        self.assertAlmostEqual(integrate_lfm(polynomial_gaussian(3), 3).value, 2.0, places=11)
        self.assertAlmostEqual(integrate_lfm(cosine_gaussian(3), 3).value, np.exp(-1.0), places=11)
        self.assertAlmostEqual(integrate_lfm(shifted_square(0.5), 1).value, 1.25, places=12)

    def test_zero_dimensional_functional(self):
        value = integrate_lfm(constant_functional(2.0), 4)
        self.assertEqual(value.value, 2.0)
        self.assertEqual(value.quadrature_error_estimate, 0.0)

    def test_argument_errors(self):
        with self.assertRaises(TypeError):
            integrate_lfm(lambda x: x, 2)
        with self.assertRaises(ValueError):
            integrate_lfm(canonical_gaussian(3), 2)

    def test_error_estimate_and_evaluations(self):
        value = integrate_lfm(canonical_gaussian(4), 4, QuadratureSpec.tensor(10))
        self.assertEqual(value.scheme_used, "tensor_gauss_hermite")
        self.assertFalse(value.switched)
        self.assertEqual(value.evaluations, (10 + 8) * 4)
        self.assertGreaterEqual(value.quadrature_error_estimate, 0.0)


class TestBudget(unittest.TestCase):

    def test_over_budget_raises(self):
        quad = QuadratureSpec.tensor(20, node_budget=100, auto_switch=False)
        with self.assertRaises(BudgetExceeded):
            integrate_lfm(polynomial_gaussian(3), 3, quad)

    def test_over_budget_switches(self):
        quad = QuadratureSpec.tensor(20, node_budget=100, sample_count=20000, rng_seed=5)
        with self.assertLogs(level='WARN'):
            value = integrate_lfm(polynomial_gaussian(3), 3, quad)
        self.assertTrue(value.switched)
        self.assertEqual(value.scheme_used, "gaussian_importance_mc")
        self.assertEqual(value.evaluations, 20000)
        self.assertLess(abs(value.value - 2.0), 6 * value.quadrature_error_estimate + 1e-12)

    def test_separable_stays_within_budget(self):
        quad = QuadratureSpec.tensor(20, node_budget=1000, auto_switch=False)
        self.assertAlmostEqual(integrate_lfm(canonical_gaussian(30), 30, quad).value, 1.0, places=11)

    def test_monte_carlo_is_seeded(self):
        quad = QuadratureSpec.monte_carlo(sample_count=5000, rng_seed=11)
        first = integrate_lfm(cosine_gaussian(2), 2, quad).value
        second = integrate_lfm(cosine_gaussian(2), 2, quad).value
        self.assertEqual(first, second)


class TestDeterminism(unittest.TestCase):

    def test_independent_of_worker_count(self):
        serial = integrate_lfm(polynomial_gaussian(3), 3, QuadratureSpec.tensor(16, chunk_size=97))
        threaded = integrate_lfm(polynomial_gaussian(3), 3, QuadratureSpec.tensor(16, chunk_size=97, jobs=4))
        self.assertEqual(serial.value, threaded.value)
        self.assertEqual(serial.quadrature_error_estimate, threaded.quadrature_error_estimate)


class TestDamping(unittest.TestCase):

    def test_oscillatory_needs_damping(self):
        with self.assertRaises(NonIntegrable):
            integrate_lfm(damped_oscillation(), 1)

    def test_fixed_damping(self):
        quad = QuadratureSpec(damping_epsilon=0.1)
        value = integrate_lfm(damped_oscillation(1.0, 0.5), 1, quad)
        self.assertAlmostEqual(value.value, damped_oscillation_pairing(1.0, 0.5, 0.1), places=12)
        self.assertEqual(value.epsilon_used, 0.1)

    def test_damping_ignored_for_decaying_functionals(self):
        value = integrate_lfm(canonical_gaussian(2), 2, QuadratureSpec(damping_epsilon=0.3))
        self.assertEqual(value.epsilon_used, 0.0)
        self.assertAlmostEqual(value.value, 1.0, places=13)

    def test_extrapolation(self):
        quad = QuadratureSpec(epsilon_schedule=(0.02, 0.01, 0.005, 0.0025))
        value = integrate_lfm(damped_oscillation(1.0, 0.5), 1, quad)
        self.assertEqual(value.epsilon_used, 0.0)
        self.assertAlmostEqual(value.value, damped_oscillation_pairing(1.0, 0.5), places=5)
        self.assertEqual(value.evaluations, 4 * (20 + 18))

    def test_invalid_schedule_is_rejected(self):
        with self.assertRaises(ValidationError):
            integrate_lfm(damped_oscillation(1.0, 0.5), 1, QuadratureSpec(epsilon_schedule=(0.01, 0.02)))

    def test_pure_phase_needs_damping(self):
        with self.assertRaises(NonIntegrable):
            integrate_lfm(pure_phase(), 1, QuadratureSpec(damping_epsilon=0.0, epsilon_schedule=None))


class TestSweeps(unittest.TestCase):

    def test_product_decay(self):
        sweep = dimension_sweep(product_decay, 8, limit=product_decay_limit())
        for entry in sweep:
            with self.subTest(n=entry.dim):
                self.assertAlmostEqual(entry.value, product_decay_pairing(entry.dim), places=12)
        self.assertFalse(sweep.non_cauchy)
        self.assertLess(abs(sweep[-1].value - sweep.limit), 2e-3)

    def test_odd_family_vanishes(self):
        sweep = dimension_sweep(odd_gaussian, 6)
        for entry in sweep:
            self.assertLess(abs(entry.value), 1e-15)
        self.assertFalse(sweep.non_cauchy)

    def test_families(self):
        for name, family in SWEEP_FAMILIES.items():
            with self.subTest(family=name):
                self.assertEqual(len(dimension_sweep(family, 3)), 3)

    def test_invalid_length(self):
        with self.assertRaises(ValueError):
            dimension_sweep(canonical_gaussian, 0)


class TestLinearity(unittest.TestCase):

    def test_linear_combination(self):
        gap = linearity_check(cosine_gaussian(3), coordinate_moment(2).extended(3), 2.0, -0.5, 3)
        self.assertLess(gap, 1e-12)

    def test_complex_coefficients(self):
        gap = linearity_check(fourier_gaussian(1.0).extended(2), canonical_gaussian(2), 1j, 3.0, 2)
        self.assertLess(gap, 1e-12)


if __name__ == '__main__':
    unittest.main()
