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

"""
Shared fixtures for the test suite: small grids, potentials and functionals with known pairings.
"""

import numpy as np

from lfmkit.core.functional import CylinderFunctional, GaussianFunctional
from lfmkit.core.wavefunction import SpatialGrid, WaveFunction
from lfmkit.feynman.symbols import PotentialSpec


def small_grid(n_points=256, half_width=8.0):
    """ A coarse spatial grid for tests that build dense transfer matrices. """
    return SpatialGrid(-half_width, half_width, n_points)


def coherent_packet(grid, q0=1.0, omega=1.0):
    return WaveFunction.coherent_state(grid, q0, omega)


def relative_gap(a, b):
    """ ||a - b|| / ||b|| for two WaveFunctions on one grid. """
    return a.with_values(a.values - b.values).norm() / b.norm()


def shifted_square(c):
    """ (x_1 + c)^2 exp(-|x|^2 / 2) on E_1. Pairing 1 + c^2. """
    return CylinderFunctional(1, factors=[lambda x: (x + c) ** 2 * np.exp(-0.5 * x ** 2)],
                              decay_class="polynomial_times_gaussian", name="(x1+c)^2*gauss")


def tilted_gaussian():
    """ A non-diagonal real Gaussian with a linear term. """
    return GaussianFunctional([[1.2, 0.2], [0.2, 1.0]], shift=[0.3, -0.1], name="tilted")


def constant_functional(value=2.0):
    """ A functional that reads no coordinates at all. """
    return CylinderFunctional(0, lambda x: np.full(x.shape[:-1], value), name="const")


def double_factorial(power):
    """ Standard normal moment E[Z^power]. """
    if power % 2:
        return 0.0
    return float(np.prod(np.arange(power - 1, 0, -2))) if power else 1.0


potentials = {
    "free": PotentialSpec.free,
    "harmonic": PotentialSpec.harmonic,
    "anharmonic": PotentialSpec.anharmonic,
    "barrier": PotentialSpec.gaussian_barrier,
}
