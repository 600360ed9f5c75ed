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
Closed-form Gaussian slice kernels and their exact composition.
"""

import numpy as np

from lfmkit.core import log
from lfmkit.core.lfmkitError import DegenerateSlice, PropagatorError
from lfmkit.core.propagator import MODES
from lfmkit.core.wavefunction import WaveFunction

RULES = ("endpoint", "midpoint", "weyl")


class QuadraticKernel:
    """
    K(x, y) = constant * exp(-(alpha x^2 + beta x y + gamma y^2)), acting as
    phi(x) = int K(x, y) phi0(y) dy.

    :param duration: Time covered by the kernel.
    :param mode: "real_time" or "imaginary_time".
    """

    def __init__(self, alpha, beta, gamma, constant, duration, mode="real_time"):
        if mode not in MODES:
            raise ValueError("Unknown mode '{}'".format(mode))
        self.alpha = complex(alpha)
        self.beta = complex(beta)
        self.gamma = complex(gamma)
        self.constant = complex(constant)
        self.duration = float(duration)
        self.mode = mode

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return self.constant * np.exp(-(self.alpha * x ** 2 + self.beta * x * y + self.gamma * y ** 2))

    def compose(self, earlier):
        """
        The kernel of "earlier, then self": int K_self(x, z) K_earlier(z, y) dz, done in closed
        form on the principal branch.

        :raises DegenerateSlice: When the z-integral is singular.
        """
        if earlier.mode != self.mode:
            raise ValueError("cannot compose kernels of different modes")
        A = self.gamma + earlier.alpha
        scale = max(abs(self.gamma), abs(earlier.alpha), 1.0)
        if abs(A) <= 1e-12 * scale:
            raise DegenerateSlice("singular slice integral at t = {:.6g}".format(earlier.duration))
        if self.mode == "imaginary_time" and A.real <= 0:
            raise DegenerateSlice("slice integral does not converge at t = {:.6g}".format(earlier.duration))
        return QuadraticKernel(self.alpha - self.beta ** 2 / (4 * A),
                               -self.beta * earlier.beta / (2 * A),
                               earlier.gamma - earlier.beta ** 2 / (4 * A),
                               self.constant * earlier.constant * np.sqrt(np.pi / A),
                               self.duration + earlier.duration, self.mode)

    def max_wavenumber(self, grid, support=None):
        """
        Largest local wavenumber of K(x, y) in y, over x on the grid and y in ``support``.
        """
        x = grid.points
        y = x if support is None else support
        if y.size == 0:
            return 0.0
        edges = np.array([x[0], x[-1]])
        slopes = (self.beta * edges[:, None] + 2 * self.gamma * np.array([y.min(), y.max()])[None, :]).imag
        return float(np.max(np.abs(slopes)))

    def apply(self, wave):
        """
        Apply to a WaveFunction. Real-time kernels are factored into chirp, convolution and chirp,
        with the convolution done exactly by its Fourier multiplier; imaginary-time kernels use
        grid quadrature.

        :raises PropagatorError: When a real-time chirp oscillates faster than the grid resolves.
        """
        if self.mode == "real_time":
            return WaveFunction(wave.grid, self._apply_spectral(wave))
        grid = wave.grid
        x = grid.points
        support = x[np.abs(wave.values) > 1e-12 * np.max(np.abs(wave.values))] if np.any(wave.values) else x[:0]
        if self.max_wavenumber(grid, support) > np.pi / grid.spacing:
            log.warning("Kernel over t = %.4g is not resolved by a grid spacing of %.4g", self.duration,
                        grid.spacing)
        matrix = self(x[:, None], x[None, :]) * grid.spacing
        return WaveFunction(grid, matrix @ wave.values)

    def _apply_spectral(self, wave):
        # alpha x^2 + beta x y + gamma y^2 = (alpha + beta/2) x^2 - (beta/2) (x - y)^2 + (gamma + beta/2) y^2
        grid = wave.grid
        x = grid.points
        outer = self.alpha + self.beta / 2
        inner = self.gamma + self.beta / 2
        reach = 2 * max(abs(outer.imag), abs(inner.imag)) * max(abs(grid.x_min), abs(grid.x_max))
        if reach > np.pi / grid.spacing:
            raise PropagatorError("Kernel over t = {:.4g} chirps faster than a grid spacing of {:.4g} resolves".format(
                self.duration, grid.spacing))
        source = np.exp(-inner * x ** 2) * wave.values
        if abs(self.beta) <= 1e-300:
            return self.constant * np.exp(-outer * x ** 2) * np.sum(source) * grid.spacing
        # int exp(-p u^2 - i k u) du = sqrt(pi / p) exp(-k^2 / (4 p)), p = -beta / 2, Re p >= 0
        p = -self.beta / 2
        k = grid.wavenumbers
        multiplier = np.sqrt(np.pi / p) * np.exp(-k ** 2 / (4 * p))
        convolved = np.fft.ifft(multiplier * np.fft.fft(source))
        return self.constant * np.exp(-outer * x ** 2) * convolved

    def __repr__(self):
        return "QuadraticKernel(alpha={:.6g}, beta={:.6g}, gamma={:.6g}, t={:.6g}, mode={})".format(
            self.alpha, self.beta, self.gamma, self.duration, self.mode)


def slice_kernel(a, b, delta, mode="real_time", rule="endpoint"):
    """
    One-slice kernel of the action a xi'^2 / 2 - b xi^2 / 2.

    The potential b q^2 / 2 is sampled at the source point ("endpoint"), averaged over both
    points ("midpoint"), or taken at the spatial midpoint (x + y) / 2 ("weyl").
    """
    if rule not in RULES:
        raise ValueError("Unknown rule '{}', expected one of {}".format(rule, RULES))
    unit = 1j if mode == "real_time" else 1.0
    kinetic = a / (2 * delta) / unit
    alpha, beta, gamma = kinetic, -2 * kinetic, kinetic
    potential = unit * b * delta / 2
    if rule == "endpoint":
        gamma += potential
    elif rule == "midpoint":
        alpha += potential / 2
        gamma += potential / 2
    else:
        alpha += potential / 4
        beta += potential / 2
        gamma += potential / 4
    constant = np.sqrt(a / (2 * np.pi * unit * delta) + 0j)
    return QuadraticKernel(alpha, beta, gamma, constant, delta, mode)


def kernel_quadratic_exact(a, b, grid, mode="real_time", rule="endpoint"):
    """
    The n_slices-fold chained kernel of the action a xi'^2 / 2 - b xi^2 / 2 over grid, composed
    slice by slice in closed form.

    :raises DegenerateSlice: When a slice integral is singular, when a real-time harmonic flow
        reaches its first focal point pi / sqrt(b / a) within grid.t_final, or when the chain
        crosses a focal point, where the off-diagonal coefficient changes sign.
    """
    if a <= 0:
        raise ValueError("kernel_quadratic_exact needs a > 0, got {}".format(a))
    if mode == "real_time" and b > 0 and np.sqrt(b / a) * grid.t_final >= np.pi * (1 - 1e-9):
        raise DegenerateSlice("harmonic flow reaches its focal point at t = {:.6g} within t = {:.6g}".format(
            np.pi / np.sqrt(b / a), grid.t_final))
    step = slice_kernel(a, b, grid.delta, mode, rule)
    kernel = step
    for j in range(1, grid.n_slices):
        chained = step.compose(kernel)
        if mode == "real_time" and np.sign(chained.beta.imag) != np.sign(kernel.beta.imag):
            raise DegenerateSlice("chain crosses a focal point between t = {:.6g} and t = {:.6g}".format(
                kernel.duration, chained.duration))
        kernel = chained
    return kernel


def extract_kernel(propagate, spatial_grid, q0=0.0, width=1e-2):
    """
    Row K(., q0) of a propagator, read off from its action on a delta-approximant.

    :param propagate: Callable WaveFunction -> PropagatorResult or WaveFunction.
    :returns: (kernel row, source mean, source variance). The row approximates K convolved
        with the discrete source, which matches K at time t + variance for heat kernels.
    """
    source = WaveFunction.delta_approximant(spatial_grid, q0, width)
    weights = source.values.real * spatial_grid.spacing
    mean = float(np.sum(weights * spatial_grid.points))
    variance = float(np.sum(weights * (spatial_grid.points - mean) ** 2))
    result = propagate(source)
    wave = getattr(result, "wave", result)
    return wave, mean, variance
