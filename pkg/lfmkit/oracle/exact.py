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
Closed-form propagators and wave comparisons.
"""

import numpy as np

from lfmkit.core.lfmkitError import Caustic
from lfmkit.core.propagator import MODES
from lfmkit.core.wavefunction import WaveFunction

KINDS = ("free", "harmonic")


def exact_propagator(kind, t, mode="imaginary_time", omega=1.0):
    """
    Closed-form kernel K(q, q', t).

    free: the heat kernel (2 pi t)^{-1/2} exp(-(q - q')^2 / 2t), or (2 pi i t)^{-1/2}
    exp(i (q - q')^2 / 2t) in real time. harmonic: the Mehler kernel for V = omega^2 q^2 / 2,
    with the Maslov phase past each focal time in real time.

    :raises Caustic: For harmonic real time at t = m pi / omega.
    :returns: Vectorized callable (q, q') -> K.
    """
    if kind not in KINDS:
        raise ValueError("Unknown propagator kind '{}', expected one of {}".format(kind, KINDS))
    if mode not in MODES:
        raise ValueError("Unknown mode '{}'".format(mode))
    if t <= 0:
        raise ValueError("exact_propagator needs t > 0")

    if kind == "free":
        if mode == "imaginary_time":
            return lambda q, r: np.exp(-(np.asarray(q) - r) ** 2 / (2 * t)) / np.sqrt(2 * np.pi * t)
        return lambda q, r: np.exp(1j * (np.asarray(q) - r) ** 2 / (2 * t)) / np.sqrt(2j * np.pi * t)

    phase = omega * t
    if mode == "imaginary_time":
        s, c = np.sinh(phase), np.cosh(phase)
        return lambda q, r: (np.sqrt(omega / (2 * np.pi * s))
                             * np.exp(-omega * ((np.asarray(q) ** 2 + np.asarray(r) ** 2) * c - 2 * q * r) / (2 * s)))
    s, c = np.sin(phase), np.cos(phase)
    if abs(s) < 1e-12:
        raise Caustic("harmonic propagator is singular at t = {:.6g} (omega t = {:.6g})".format(t, phase))
    maslov = np.exp(-1j * np.pi / 4) * np.exp(-0.5j * np.pi * np.floor(phase / np.pi))
    amplitude = maslov * np.sqrt(omega / (2 * np.pi * abs(s)))
    return lambda q, r: amplitude * np.exp(1j * omega * ((np.asarray(q) ** 2 + np.asarray(r) ** 2) * c
                                                          - 2 * q * r) / (2 * s))


def apply_kernel(kernel, wave):
    """ int K(x, y) phi(y) dy by grid quadrature on the wave's grid. """
    x = wave.grid.points
    return WaveFunction(wave.grid, (kernel(x[:, None], x[None, :]) * wave.grid.spacing) @ wave.values)


def compare(a, b):
    """
    :returns: (l2_gap, linf_gap, phase_aligned_l2), where the last is min over theta of
        ||a - e^{i theta} b||.
    """
    a.grid.require_match(b.grid)
    difference = a.with_values(a.values - b.values)
    aligned_sq = a.norm() ** 2 + b.norm() ** 2 - 2 * abs(b.inner(a))
    return difference.norm(), float(np.max(np.abs(difference.values))), float(np.sqrt(max(aligned_sq, 0.0)))


def packet_center(wave):
    return wave.density_moments()[1]


def packet_width_sq(wave):
    """ w^2 = 2 Var(|phi|^2), the w of (pi w^2)^{-1/4} exp(-x^2 / 2 w^2). """
    return 2 * wave.density_moments()[2]


def free_packet_width_sq(width, t):
    """ Spreading of a free Gaussian packet: w^2 + t^2 / w^2. """
    return width ** 2 + t ** 2 / width ** 2
