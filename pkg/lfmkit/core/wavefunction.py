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

import numpy as np
from scipy.integrate import trapezoid

from lfmkit.core.jsonify import Jsonify
from lfmkit.core.lfmkitError import GridMismatch


class SpatialGrid(Jsonify):
    """
    Uniform 1-D grid of n_points points from x_min to x_max inclusive. For spectral stepping
    the grid is read as one period of length n_points * spacing.
    """

    def __init__(self, x_min=-12.0, x_max=12.0, n_points=1024):
        if not x_max > x_min:
            raise ValueError("SpatialGrid requires x_max > x_min")
        if int(n_points) != n_points or n_points < 2:
            raise ValueError("SpatialGrid requires n_points >= 2")
        self.x_min = float(x_min)
        self.x_max = float(x_max)
        self.n_points = int(n_points)

    @property
    def points(self):
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def spacing(self):
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def period(self):
        return self.n_points * self.spacing

    @property
    def wavenumbers(self):
        return 2 * np.pi * np.fft.fftfreq(self.n_points, d=self.spacing)

    def matches(self, other):
        return (self.n_points == other.n_points
                and abs(self.x_min - other.x_min) <= 1e-12 * max(1.0, abs(self.x_min))
                and abs(self.x_max - other.x_max) <= 1e-12 * max(1.0, abs(self.x_max)))

    def require_match(self, other):
        if not self.matches(other):
            raise GridMismatch("spatial grids differ: [{}, {}]x{} vs [{}, {}]x{}".format(
                self.x_min, self.x_max, self.n_points, other.x_min, other.x_max, other.n_points))

    def __repr__(self):
        return "SpatialGrid({}, {}, {})".format(self.x_min, self.x_max, self.n_points)


class WaveFunction(Jsonify):
    """
    Complex values on a SpatialGrid.

    :param grid: The spatial grid.
    :type grid: SpatialGrid

    :param values: Complex array of length grid.n_points.
    :type values: numpy.ndarray
    """

    def __init__(self, grid, values):
        values = np.array(values, dtype=complex).reshape(-1)
        if values.size != grid.n_points:
            raise GridMismatch("WaveFunction has {} values for a grid of {} points".format(values.size, grid.n_points))
        values.setflags(write=False)
        self.grid = grid
        self.values = values

    def norm(self):
        """ L2 norm by the trapezoid rule. """
        return float(np.sqrt(trapezoid(np.abs(self.values) ** 2, dx=self.grid.spacing)))

    def inner(self, other):
        """ <self, other>, antilinear in self. """
        self.grid.require_match(other.grid)
        return complex(trapezoid(np.conj(self.values) * other.values, dx=self.grid.spacing))

    def with_values(self, values):
        return WaveFunction(self.grid, values)

    def density_moments(self):
        """
        :returns: (mass, mean, variance) of |phi|^2.
        """
        x = self.grid.points
        density = np.abs(self.values) ** 2
        mass = trapezoid(density, dx=self.grid.spacing)
        mean = trapezoid(x * density, dx=self.grid.spacing) / mass
        variance = trapezoid((x - mean) ** 2 * density, dx=self.grid.spacing) / mass
        return float(mass), float(mean), float(variance)

    def boundary_mass(self, fraction=0.05):
        """ Share of |phi|^2 in the outer ``fraction`` of the grid on each side. """
        count = max(1, int(fraction * self.grid.n_points))
        density = np.abs(self.values) ** 2
        total = np.sum(density)
        if total == 0:
            return 0.0
        return float((np.sum(density[:count]) + np.sum(density[-count:])) / total)

    @classmethod
    def gaussian_packet(cls, grid, center=0.0, width=1.0, momentum=0.0):
        """
        Normalized packet (pi w^2)^{-1/4} exp(-(x - c)^2 / (2 w^2) + i p x).
        """
        x = grid.points
        values = (np.pi * width ** 2) ** -0.25 * np.exp(-(x - center) ** 2 / (2 * width ** 2) + 1j * momentum * x)
        return cls(grid, values)

    @classmethod
    def coherent_state(cls, grid, q0, omega=1.0):
        return cls.gaussian_packet(grid, center=q0, width=1.0 / np.sqrt(omega))

    @classmethod
    def plane_wave(cls, grid, mode):
        """ Periodic mode exp(i k x) with k = 2 pi mode / period. """
        k = 2 * np.pi * mode / grid.period
        return cls(grid, np.exp(1j * k * grid.points))

    @classmethod
    def delta_approximant(cls, grid, q0=0.0, width=1e-2):
        """
        Narrow Gaussian scaled to unit discrete mass, sum(values) * spacing = 1.
        """
        x = grid.points
        values = np.exp(-(x - q0) ** 2 / (2 * width ** 2))
        return cls(grid, values / (np.sum(values) * grid.spacing))

    def validate(self):
        violations = []
        if not np.all(np.isfinite(self.values)):
            violations.append("values are not finite")
        elif not np.isfinite(self.norm()):
            violations.append("L2 norm is not finite")
        return violations
