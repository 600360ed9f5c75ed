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
from lfmkit.core.lfmkitError import NonIntegrable, PropagatorError
from lfmkit.core.propagator import Propagator
from lfmkit.core.quadrature import QuadratureSpec
from lfmkit.core.results import PropagatorResult
from lfmkit.core.validation import validate
from lfmkit.core.timegrid import TimeGrid
from lfmkit.feynman.kernels import kernel_quadratic_exact
from lfmkit.feynman.symbols import HamiltonianSymbol
from lfmkit.utilities.numutils import extrapolate_to_zero


def _gaussian_p_transfer(symbol, spatial_grid, delta, mode, epsilon):
    """
    Slice kernel with the momentum integral done in closed form,
    (2 pi)^{-1} int exp(i p u - i delta H(m, p) - eps p^2) dp at m = (x + y) / 2, u = x - y.
    """
    x = spatial_grid.points
    middle = 0.5 * (x[:, None] + x[None, :])
    u = x[:, None] - x[None, :]
    A, B, C = symbol.coefficients(middle)
    if mode == "real_time":
        alpha = epsilon + 0.5j * delta * A
        kernel = np.exp(-(u - delta * B) ** 2 / (4 * alpha) - 1j * delta * C)
    else:
        alpha = epsilon + 0.5 * delta * A + 0j
        kernel = np.exp(-(u + 1j * delta * B) ** 2 / (4 * alpha) - delta * C)
    return kernel / np.sqrt(4 * np.pi * alpha) * spatial_grid.spacing


def _numeric_p_transfer(symbol, spatial_grid, delta, mode, epsilon):
    """ The same slice kernel by quadrature over the FFT dual grid; O(n_points^3). """
    x = spatial_grid.points
    p = np.fft.fftshift(spatial_grid.wavenumbers)
    dp = 2 * np.pi / spatial_grid.period
    unit = 1j if mode == "real_time" else 1.0
    kernel = np.empty((x.size, x.size), dtype=complex)
    for i, xi in enumerate(x):
        middle = 0.5 * (xi + x)[:, None]
        exponent = 1j * p[None, :] * (xi - x)[:, None] - unit * delta * symbol(middle, p[None, :]) - epsilon * p ** 2
        kernel[i] = np.sum(np.exp(exponent), axis=1) * dp / (2 * np.pi)
    return kernel * spatial_grid.spacing


class WeylPropagator(Propagator):
    """
    Phase-space time slicing with the midpoint rule in q, which is the discretization of the
    Weyl-ordered Hamiltonian. The momentum of each slice is integrated at its node.

    Symbols quadratic in p are integrated over p in closed form. In real time this needs
    damping exp(-eps p^2) unless the symbol is p^2/2 + b q^2/2, whose slices are chained
    exactly. Other symbols are integrated over p numerically on the FFT dual grid.
    """

    name = "WeylPropagator"

    def __init__(self, symbol=None):
        self.symbol = symbol

    @classmethod
    def get_solver_settings(cls):
        """
        :returns: Tuple of strings, denoting all keyword argument for this propagator's run() method.
        """
        return ('phi0', 'grid', 'mode', 'symbol', 'quad', 'estimate_error')

    def run(self, phi0=None, grid=None, mode="real_time", symbol=None, quad=None, estimate_error=False,
            **kwargs):
        """
        :param symbol: The Hamiltonian symbol H(q, p).
        :type symbol: HamiltonianSymbol

        :param quad: Momentum damping; epsilon_schedule values are extrapolated.
        :type quad: QuadratureSpec

        :returns: PropagatorResult
        """
        if symbol is not None:
            self.symbol = symbol
        if not isinstance(self.symbol, HamiltonianSymbol):
            raise PropagatorError("A HamiltonianSymbol is required to run {}.".format(self.name))
        if kwargs:
            self.warn_unsupported(kwargs)
        self.check_inputs(phi0, grid)
        self.check_mode(mode)
        quad = quad or QuadratureSpec()
        validate(quad, strict=True)

        try:
            values, method, epsilon = self._propagate(phi0, grid, mode, quad)
        except (np.linalg.LinAlgError, FloatingPointError) as err:
            raise PropagatorError("{} failed on {} slices: {}".format(self.name, grid.n_slices, err)) from err
        wave = phi0.with_values(values)
        error = None
        if estimate_error and grid.n_slices >= 2:
            coarse, _, _ = self._propagate(phi0, TimeGrid(grid.t_final, grid.n_slices // 2), mode, quad)
            error = phi0.with_values(values - coarse).norm()
        return PropagatorResult(wave, mode, grid.n_slices, error_estimate=error, norm_before=phi0.norm(),
                                norm_after=wave.norm(), rule="weyl", epsilon_used=epsilon, method=method)

    def _exact_chain(self):
        potential = self.symbol.potential
        return potential is not None and potential.is_quadratic

    def _transfer(self, spatial, delta, mode, epsilon):
        if self.symbol.quadratic_p is None:
            return _numeric_p_transfer(self.symbol, spatial, delta, mode, epsilon)
        A, _, _ = self.symbol.coefficients(spatial.points)
        if mode == "imaginary_time" and np.any(A <= 0) and epsilon <= 0:
            raise NonIntegrable("imaginary-time slices of {} need a positive p^2 coefficient".format(self.symbol.name))
        if epsilon > 0 and np.exp(-epsilon * (2 * np.pi / spatial.spacing) ** 2) > 1e-8:
            log.warning("Momentum damping eps=%.3g is not resolved by grid spacing %.3g", epsilon, spatial.spacing)
        return _gaussian_p_transfer(self.symbol, spatial, delta, mode, epsilon)

    def _iterate(self, phi0, grid, mode, epsilon):
        matrix = self._transfer(phi0.grid, grid.delta, mode, epsilon)
        values = phi0.values
        for _ in range(grid.n_slices):
            values = matrix @ values
        return values

    def _propagate(self, phi0, grid, mode, quad):
        if mode == "real_time" and self._exact_chain() and not quad.damped:
            kernel = kernel_quadratic_exact(1.0, self.symbol.potential.quadratic_coefficient, grid, mode, "weyl")
            return kernel.apply(phi0).values, "exact_chain", 0.0
        if mode == "imaginary_time" and self.symbol.quadratic_p is not None:
            return self._iterate(phi0, grid, mode, quad.damping_epsilon), "transfer", quad.damping_epsilon
        if not quad.damped:
            raise NonIntegrable("real-time slices of {} need momentum damping".format(self.symbol.name))
        if not quad.epsilon_schedule:
            return self._iterate(phi0, grid, mode, quad.damping_epsilon), "damped", quad.damping_epsilon
        damped = [self._iterate(phi0, grid, mode, eps) for eps in quad.epsilon_schedule]
        values, _ = extrapolate_to_zero(quad.epsilon_schedule, damped)
        return values, "damped_extrapolated", 0.0


def propagate_hamiltonian_weyl(H, phi0, grid, quad=None, mode="real_time", estimate_error=False):
    """
    Approximate exp(-i t H_Weyl) phi0 (or exp(-t H_Weyl) phi0 in imaginary time) by
    phase-space time slicing.

    :returns: PropagatorResult
    """
    return WeylPropagator(H).run(phi0=phi0, grid=grid, mode=mode, quad=quad, estimate_error=estimate_error)


def weyl_dilation_action(wave):
    """ The Weyl quantization of q p, -i (q phi' + phi / 2), with a spectral derivative. """
    grid = wave.grid
    derivative = np.fft.ifft(1j * grid.wavenumbers * np.fft.fft(wave.values))
    return wave.with_values(-1j * (grid.points * derivative + 0.5 * wave.values))


def dilation_limit(phi0, q, t):
    """
    One Weyl slice of H = q p over time t, in the limit of no damping:
    phi0(q (1 - t/2) / (1 + t/2)) / (1 + t/2).

    :param phi0: Vectorized callable.
    """
    return np.asarray(phi0(q * (1 - t / 2) / (1 + t / 2)), dtype=complex) / (1 + t / 2)
