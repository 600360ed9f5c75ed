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

from lfmkit.core import log
from lfmkit.core.functional import CylinderFunctional
from lfmkit.core.lfmkitError import NonIntegrable, PropagatorError
from lfmkit.core.propagator import Propagator
from lfmkit.core.quadrature import QuadratureSpec
from lfmkit.core.results import PropagatorResult
from lfmkit.core.validation import validate
from lfmkit.core.timegrid import TimeGrid
from lfmkit.core.wavefunction import WaveFunction
from lfmkit.feynman.kernels import RULES, kernel_quadratic_exact
from lfmkit.feynman.symbols import PotentialSpec
from lfmkit.utilities.numutils import extrapolate_to_zero, loglog_slope


def _aliasing(spacing, delta, epsilon):
    """ Size of the first alias of a damped real-time slice kernel under grid quadrature. """
    return np.exp(-(2 * np.pi / spacing) ** 2 * delta * epsilon / (1 + 4 * epsilon ** 2))


def transfer_matrix(potential, spatial_grid, delta, mode="imaginary_time", rule="endpoint", epsilon=0.0):
    """
    Dense one-slice transfer matrix T with (T phi)(x_i) = sum_j T_ij phi(x_j).

    The kinetic factor is the heat kernel in imaginary time. In real time it is the free
    kernel damped by exp(-eps u^2 / delta) and rescaled by (1 + 2 i eps)^{1/2}, which keeps
    the free pairing of each slice at 1.
    """
    if rule not in RULES:
        raise ValueError("Unknown rule '{}', expected one of {}".format(rule, RULES))
    x = spatial_grid.points
    u2 = (x[:, None] - x[None, :]) ** 2
    if mode == "imaginary_time":
        kernel = np.exp(-u2 / (2 * delta)) / np.sqrt(2 * np.pi * delta)
        unit = 1.0
    else:
        if epsilon <= 0:
            raise NonIntegrable("real-time slices of a non-quadratic potential need damping")
        if _aliasing(spatial_grid.spacing, delta, epsilon) > 1e-8:
            log.warning("Damped slice kernel (delta=%.3g, eps=%.3g) is not resolved by grid spacing %.3g",
                        delta, epsilon, spatial_grid.spacing)
        kernel = (np.sqrt((1 + 2j * epsilon) / (2j * np.pi * delta))
                  * np.exp((0.5j - epsilon) * u2 / delta))
        unit = 1j
    kernel = kernel * spatial_grid.spacing

    if rule == "endpoint":
        return kernel * np.exp(-unit * delta * potential(x))[None, :]
    if rule == "midpoint":
        half = np.exp(-unit * delta * potential(x) / 2)
        return half[:, None] * kernel * half[None, :]
    middle = 0.5 * (x[:, None] + x[None, :])
    return kernel * np.exp(-unit * delta * potential(middle))


def _iterate(matrix, values, n_slices):
    for _ in range(n_slices):
        values = matrix @ values
    return values


class LagrangianPropagator(Propagator):
    """
    Time-sliced configuration-space path integral for i phi' = -phi''/2 + V phi (real time)
    or phi' = phi''/2 - V phi (imaginary time).

    Each slice is the Gaussian pairing over the path increment, taken by grid quadrature.
    Real-time evolution under a quadratic potential chains the slices in closed form; any
    other real-time potential needs damping from the QuadratureSpec.
    """

    name = "LagrangianPropagator"

    def __init__(self, potential=None):
        self.potential = potential

    @classmethod
    def get_solver_settings(cls):
        """
        :returns: Tuple of strings, denoting all keyword argument for this propagator's run() method.
        """
        return ('phi0', 'grid', 'mode', 'potential', 'quad', 'rule', 'estimate_error')

    def run(self, phi0=None, grid=None, mode="imaginary_time", potential=None, quad=None, rule="endpoint",
            estimate_error=False, **kwargs):
        """
        :param potential: The potential V.
        :type potential: PotentialSpec

        :param quad: Damping settings for real time; epsilon_schedule values are extrapolated.
        :type quad: QuadratureSpec

        :param rule: "endpoint", "midpoint" or "weyl" potential sampling.
        :type rule: str

        :param estimate_error: Also run with half the slices and record the L2 gap.
        :type estimate_error: bool

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
        quad = quad or QuadratureSpec()
        validate(quad, strict=True)

        try:
            values, method, epsilon = self._propagate(phi0, grid, mode, quad, rule)
        except (np.linalg.LinAlgError, FloatingPointError) as err:
            raise PropagatorError("{} failed on {} slices: {}".format(self.name, grid.n_slices, err)) from err
        wave = phi0.with_values(values)
        error = None
        if estimate_error and grid.n_slices >= 2:
            coarse, _, _ = self._propagate(phi0, TimeGrid(grid.t_final, grid.n_slices // 2), mode, quad, rule)
            error = phi0.with_values(values - coarse).norm()
        return PropagatorResult(wave, mode, grid.n_slices, error_estimate=error, norm_before=phi0.norm(),
                                norm_after=wave.norm(), rule=rule, epsilon_used=epsilon, method=method)

    def _propagate(self, phi0, grid, mode, quad, rule):
        spatial = phi0.grid
        if mode == "real_time" and self.potential.is_quadratic:
            kernel = kernel_quadratic_exact(1.0, self.potential.quadratic_coefficient, grid, mode, rule)
            return kernel.apply(phi0).values, "exact_chain", 0.0
        if mode == "imaginary_time":
            matrix = transfer_matrix(self.potential, spatial, grid.delta, mode, rule)
            return _iterate(matrix, phi0.values, grid.n_slices), "transfer", 0.0
        if not quad.damped:
            raise NonIntegrable("real-time propagation under {} needs damping_epsilon or epsilon_schedule".format(
                self.potential.name))
        if not quad.epsilon_schedule:
            matrix = transfer_matrix(self.potential, spatial, grid.delta, mode, rule, quad.damping_epsilon)
            return _iterate(matrix, phi0.values, grid.n_slices), "damped", quad.damping_epsilon
        damped = [_iterate(transfer_matrix(self.potential, spatial, grid.delta, mode, rule, eps),
                           phi0.values, grid.n_slices) for eps in quad.epsilon_schedule]
        values, _ = extrapolate_to_zero(quad.epsilon_schedule, damped)
        return values, "damped_extrapolated", 0.0


def propagate_lagrangian(V, phi0, grid, mode="imaginary_time", quad=None, rule="endpoint", estimate_error=False):
    """
    Propagate phi0 over grid by the Lagrangian time-sliced path integral.

    :returns: PropagatorResult
    """
    return LagrangianPropagator(V).run(phi0=phi0, grid=grid, mode=mode, quad=quad, rule=rule,
                                       estimate_error=estimate_error)


def pathwise_value(V, phi0, q, grid, quad=None):
    """
    phi(t, q) in imaginary time as one LFM pairing over the n_slices path increments.

    With xi_j = q + sqrt(delta) (x_1 + ... + x_j), the functional is
    exp(-|x|^2 / 2 - delta sum_j V(xi_j)) phi0(xi_n); the endpoint rule on the full path.

    :param phi0: Vectorized callable q -> phi0(q).
    """
    from lfmkit.lfm.integrator import integrate_lfm
    n, delta = grid.n_slices, grid.delta

    def evaluator(x):
        xi = q + np.sqrt(delta) * np.cumsum(x, axis=-1)
        return (np.exp(-0.5 * np.sum(x ** 2, axis=-1) - delta * np.sum(V(xi), axis=-1))
                * np.asarray(phi0(xi[..., -1]), dtype=complex))

    psi = CylinderFunctional(n, evaluator, name="psi_q")
    return integrate_lfm(psi, n, quad).value


def trotter_order(V, phi0, t, slice_counts=(32, 64, 128, 256), rule="endpoint", mode="imaginary_time",
                  reference=None, quad=None):
    """
    Measured convergence order of the time slicing.

    :param reference: Exact phi(t, .) as a WaveFunction. Without one, errors are the gaps
        between successive slice counts.
    :returns: (slope, errors)
    """
    results = [propagate_lagrangian(V, phi0, TimeGrid(t, n), mode, quad, rule).wave for n in slice_counts]
    if reference is not None:
        errors = [r.with_values(r.values - reference.values).norm() for r in results]
        sizes = slice_counts
    else:
        errors = [a.with_values(a.values - b.values).norm() for a, b in zip(results, results[1:])]
        sizes = slice_counts[:-1]
    return loglog_slope(sizes, errors), errors
