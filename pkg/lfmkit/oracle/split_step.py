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

import math

import numpy as np

from lfmkit.core import log
from lfmkit.core.lfmkitError import PropagatorError, UnstableStep
from lfmkit.core.propagator import Propagator
from lfmkit.core.results import PropagatorResult
from lfmkit.core.timegrid import TimeGrid
from lfmkit.utilities.numutils import loglog_slope

DEFAULT_MAX_DT = 0.05
DEFAULT_LEAK_TOL = 1e-10
DEFAULT_STEPS = 2048


class SplitStepSolver(Propagator):
    """
    Strang-split spectral solver on the periodic spatial grid: half a potential step, a full
    kinetic step in frequency space, half a potential step.

    Real time solves i phi' = -phi''/2 + V phi, imaginary time phi' = phi''/2 - V phi. The
    imaginary-time evolution is not renormalized.
    """

    name = "SplitStepSolver"

    def __init__(self, potential=None, max_dt=DEFAULT_MAX_DT, leak_tol=DEFAULT_LEAK_TOL):
        self.potential = potential
        self.max_dt = max_dt
        self.leak_tol = leak_tol

    @classmethod
    def get_solver_settings(cls):
        """
        :returns: Tuple of strings, denoting all keyword argument for this propagator's run() method.
        """
        return ('phi0', 'grid', 'mode', 'potential')

    def run(self, phi0=None, grid=None, mode="real_time", potential=None, **kwargs):
        """
        :param grid: Time grid whose slices are the split steps.
        :type grid: TimeGrid

        :returns: PropagatorResult
        """
        if potential is not None:
            self.potential = potential
        if self.potential is None:
            raise PropagatorError("A potential is required to run {}.".format(self.name))
        if kwargs:
            self.warn_unsupported(kwargs)
        self.check_inputs(phi0, grid)
        self.check_mode(mode)
        dt = grid.delta
        if not dt > 0 or dt > self.max_dt:
            raise UnstableStep("split step dt = {:.4g} outside (0, {:.4g}]".format(dt, self.max_dt))

        spatial = phi0.grid
        unit = 1j if mode == "real_time" else 1.0
        half_potential = np.exp(-unit * self.potential(spatial.points) * dt / 2)
        kinetic = np.exp(-unit * spatial.wavenumbers ** 2 * dt / 2)
        values = np.array(phi0.values)
        for _ in range(grid.n_slices):
            values = half_potential * values
            values = np.fft.ifft(kinetic * np.fft.fft(values))
            values = half_potential * values
        wave = phi0.with_values(values)

        leaked = wave.boundary_mass()
        if leaked > self.leak_tol:
            log.warning("Boundary mass %.3g exceeds %.1g; the periodic grid may wrap around", leaked,
                        self.leak_tol)
        return PropagatorResult(wave, mode, grid.n_slices, norm_before=phi0.norm(), norm_after=wave.norm(),
                                rule="strang", method="split_step")


def solve_schrodinger(V, phi0, t, mode="real_time", dt=None, max_dt=DEFAULT_MAX_DT, leak_tol=DEFAULT_LEAK_TOL):
    """
    Evolve phi0 to time t with the split-step solver.

    :param dt: Requested step, t / 2048 by default. The step used is t / ceil(t / dt).
    :raises UnstableStep: When dt <= 0 or dt > max_dt.
    :returns: WaveFunction
    """
    if t <= 0:
        raise ValueError("solve_schrodinger needs t > 0")
    dt = t / DEFAULT_STEPS if dt is None else dt
    if not dt > 0 or dt > max_dt:
        raise UnstableStep("split step dt = {:.4g} outside (0, {:.4g}]".format(dt, max_dt))
    steps = max(1, int(math.ceil(t / dt - 1e-9)))
    solver = SplitStepSolver(V, max_dt=max_dt, leak_tol=leak_tol)
    return solver.run(phi0=phi0, grid=TimeGrid(t, steps), mode=mode).wave


def split_step_order(V, phi0, t, step_counts=(32, 64, 128, 256), mode="real_time", reference=None):
    """
    Measured order of the split-step scheme in dt.

    :param reference: Exact phi(t, .); defaults to a run with 16 times the finest step count.
    :returns: (slope, errors)
    """
    if reference is None:
        reference = solve_schrodinger(V, phi0, t, mode, dt=t / (16 * max(step_counts)))
    errors = []
    for count in step_counts:
        wave = solve_schrodinger(V, phi0, t, mode, dt=t / count)
        errors.append(wave.with_values(wave.values - reference.values).norm())
    return loglog_slope(step_counts, errors), errors
