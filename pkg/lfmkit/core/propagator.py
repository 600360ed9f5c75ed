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

from lfmkit.core.lfmkitError import PropagatorError, GridMismatch
from lfmkit.core.timegrid import TimeGrid

MODES = ("real_time", "imaginary_time")


class Propagator:
    """
    Abstract class for a propagator: something that carries a WaveFunction phi0 to phi(t, .).
    """

    name = "Propagator"

    def run(self, phi0=None, grid=None, mode="imaginary_time", **kwargs):
        """
        Call out and run the propagator.

        :param phi0: Initial data on a spatial grid.
        :type phi0: lfmkit.WaveFunction

        :param grid: Time slicing of (0, t).
        :type grid: lfmkit.TimeGrid

        :param mode: "real_time" for i phi' = H phi, "imaginary_time" for phi' = -H phi.
        :type mode: str

        :returns: A PropagatorResult.
        """
        raise PropagatorError("This abstract propagator class cannot be used directly.")

    @classmethod
    def get_solver_settings(cls):
        raise PropagatorError("This abstract propagator class cannot be used directly.")

    @classmethod
    def get_supported_modes(cls):
        return set(MODES)

    @classmethod
    def check_mode(cls, mode):
        if mode not in cls.get_supported_modes():
            raise PropagatorError("{} does not support mode '{}'; supported: {}".format(
                cls.name, mode, ", ".join(sorted(cls.get_supported_modes()))))

    @classmethod
    def warn_unsupported(cls, kwargs):
        from lfmkit.core import log
        for key in kwargs:
            log.warning('Unsupported keyword argument to {0} propagator: {1}'.format(cls.name, key))

    @staticmethod
    def check_inputs(phi0, grid):
        if phi0 is None:
            raise PropagatorError("Initial data phi0 is required to run a propagator.")
        if not isinstance(grid, TimeGrid):
            raise GridMismatch("expected a TimeGrid, got {}".format(type(grid).__name__))
