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
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite_e import hermegauss
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import BarycentricInterpolator

"""
NUMERICAL UTILITIES SHARED BY THE ENGINES
"""


@lru_cache(maxsize=64)
def gauss_hermite_rule(m):
    """
    m-point rule for the standard normal density: nodes z_k and weights summing to 1.
    """
    nodes, weights = hermegauss(m)
    weights = weights / math.sqrt(2 * math.pi)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@lru_cache(maxsize=64)
def gauss_legendre_rule(m, a=0.0, b=1.0):
    """ m-point Gauss-Legendre rule mapped to (a, b). """
    nodes, weights = leggauss(m)
    nodes = 0.5 * (b - a) * nodes + 0.5 * (b + a)
    weights = 0.5 * (b - a) * weights
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def exact_sum(values):
    """ Correctly rounded sum of complex values, independent of order. """
    values = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(values.real), math.fsum(values.imag))


def chunked_sum(partial, total, chunk_size, jobs=1):
    """
    Sum partial(start, stop) over fixed chunks of range(total).

    Chunk boundaries are fixed by chunk_size and each chunk is reduced with math.fsum, so the
    result does not depend on the number of workers.

    :param partial: Callable (start, stop) -> array of terms.
    :param total: Number of items.
    :param chunk_size: Items per chunk.
    :param jobs: Worker threads.
    """
    bounds = [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]

    def reduce_chunk(bound):
        return exact_sum(partial(*bound))

    if jobs > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            pieces = list(pool.map(reduce_chunk, bounds))
    else:
        pieces = [reduce_chunk(b) for b in bounds]
    return exact_sum(pieces)


def rk4(rhs, t0, t1, y0, steps):
    """
    Classical fourth-order Runge-Kutta with fixed step count.

    :param rhs: Callable (t, y) -> dy/dt.
    :returns: y(t1).
    """
    h = (t1 - t0) / steps
    t, y = t0, y0
    for step in range(steps):
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + h / 2 * k1)
        k3 = rhs(t + h / 2, y + h / 2 * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t = t0 + (step + 1) * h
    return y


def extrapolate_to_zero(parameters, values):
    """
    Evaluate at 0 the interpolating polynomial through (parameters, values). Values may be
    scalars or arrays stacked along the first axis.

    :returns: (extrapolated value, error estimate). The estimate is the change when the
        point farthest from 0 is dropped.
    """
    parameters = np.asarray(parameters, dtype=float)
    values = np.asarray(values, dtype=complex)
    full = np.asarray(BarycentricInterpolator(parameters, values)(0.0))
    if len(parameters) < 2:
        return _scalar(full), float("inf")
    keep = np.argsort(np.abs(parameters))[:-1]
    reduced = np.asarray(BarycentricInterpolator(parameters[keep], values[keep])(0.0))
    return _scalar(full), float(np.max(np.abs(full - reduced)))


def _scalar(value):
    return complex(value) if value.ndim == 0 else value


def loglog_slope(sizes, errors):
    """
    Least-squares slope of log(error) against log(size), returned as a positive order for
    decreasing errors.
    """
    sizes = np.asarray(sizes, dtype=float)
    errors = np.asarray(errors, dtype=float)
    slope = np.polyfit(np.log(sizes), np.log(errors), 1)[0]
    return float(-slope)
