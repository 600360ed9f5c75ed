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
import hypothesis.strategies as st
from hypothesis import given, settings

sys.path.append("..")
from example_functionals import double_factorial
from lfmkit.core import DiscretePath, GaussianFunctional, QuadratureSpec, TimeGrid
from lfmkit.cov_anomaly import verify_change_of_variables_gaussian
from lfmkit.flows import shift_invariance_check
from lfmkit.lfm import (integrate_lfm, normalization_check, canonical_gaussian, coordinate_moment,
                        polynomial_gaussian, cosine_gaussian)

settings.register_profile("lfmkit", derandomize=True, max_examples=25, deadline=None)
settings.load_profile("lfmkit")

COEFFICIENTS = st.floats(min_value=-10, max_value=10, allow_nan=False)
UNIT = st.floats(min_value=-1, max_value=1, allow_nan=False)


class TestPairingProperties(unittest.TestCase):

    @given(st.integers(min_value=1, max_value=10), st.integers(min_value=2, max_value=12))
    def test_normalization(self, n, nodes):
        self.assertLess(normalization_check(n, QuadratureSpec.tensor(nodes)), 1e-12)

    @given(st.integers(min_value=0, max_value=10), st.integers(min_value=1, max_value=3), st.integers(0, 2))
    def test_moments(self, power, coordinate, extra):
        value = integrate_lfm(coordinate_moment(power, coordinate), coordinate + extra).value
        expected = double_factorial(power)
        self.assertLess(abs(value - expected), 1e-12 * max(1.0, expected))

    @given(COEFFICIENTS, COEFFICIENTS)
    def test_linearity(self, a, b):
        psi1, psi2 = cosine_gaussian(2), polynomial_gaussian(2)
        combined = integrate_lfm(a * psi1 + b * psi2, 2).value
        separate = a * integrate_lfm(psi1, 2).value + b * integrate_lfm(psi2, 2).value
        self.assertLess(abs(combined - separate), 1e-12 * (1 + abs(a) + abs(b)))

    @given(st.lists(UNIT, min_size=1, max_size=3))
    def test_shift_invariance(self, h):
        self.assertLess(shift_invariance_check(h, polynomial_gaussian(3), 3), 1e-10)

    @given(st.lists(UNIT, min_size=3, max_size=3), st.lists(st.floats(-0.3, 0.3), min_size=2, max_size=2))
    def test_gaussian_quadrature(self, entries, shift):
        matrix = np.eye(2) + 0.2 * np.array([[entries[0], entries[1]], [entries[1], entries[2]]])
        phi = GaussianFunctional(matrix, shift)
        value = integrate_lfm(phi, 2).value
        self.assertLess(abs(value - phi.exact_pairing()), 1e-6 * abs(phi.exact_pairing()))


class TestPathProperties(unittest.TestCase):

    @given(st.integers(min_value=1, max_value=16), st.floats(min_value=0.1, max_value=5.0), st.data())
    def test_norm_identity(self, n_slices, t_final, data):
        coordinates = data.draw(st.lists(st.floats(-5, 5), min_size=n_slices, max_size=n_slices))
        grid = TimeGrid(t_final, n_slices)
        path = DiscretePath.from_coordinates(grid, coordinates)
        norm_sq = float(np.sum(np.square(coordinates)))
        self.assertAlmostEqual(path.sobolev_norm_sq(), norm_sq, delta=1e-10 * (1 + norm_sq))
        np.testing.assert_allclose(path.to_coordinates(), coordinates, atol=1e-10)
        self.assertAlmostEqual(path.refine().sobolev_norm_sq(), norm_sq, delta=1e-10 * (1 + norm_sq))


class TestChangeOfVariablesProperties(unittest.TestCase):

    @given(st.lists(st.floats(-0.5, 0.5), min_size=4, max_size=4), st.lists(UNIT, min_size=2, max_size=2))
    def test_linear_gaussian(self, entries, shift):
        L = expm(np.reshape(entries, (2, 2)))
        phi = GaussianFunctional(np.array([[1.5, 0.3], [0.3, 1.0]]), shift)
        lhs, rhs, gap = verify_change_of_variables_gaussian(L, phi)
        self.assertLess(gap, 1e-10 * abs(rhs))


if __name__ == '__main__':
    unittest.main()
