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
Shipped vector fields, flows and test functionals with trace-class Jacobians.
"""

import numpy as np
from scipy.linalg import expm

from lfmkit.core.fields import FlowSpec, VectorFieldSpec
from lfmkit.core.functional import CylinderFunctional
from lfmkit.lfm.functionals import canonical_gaussian, coordinate_moment, fourier_gaussian


def _powers(n, ratio, first=1.0):
    return first * ratio ** np.arange(n)


def _embed(vector, n):
    out = np.zeros(n)
    m = min(n, vector.size)
    out[:m] = vector[:m]
    return out


# Vector fields

def constant_field(h):
    """ k(x) = h, a pure translation direction. """
    h = np.asarray(h, dtype=float)
    return VectorFieldSpec(lambda x: np.broadcast_to(_embed(h, x.shape[-1]), x.shape).copy(),
                           jacobian=lambda x: np.zeros(x.shape + (x.shape[-1],)),
                           trace_class_decay=lambda j: 0.0, divergence=lambda x: np.zeros(x.shape[:-1]),
                           name="constant")


def diagonal_field(ratio=0.5):
    """ k(x) = A x with A = diag(1, ratio, ratio^2, ...). """
    def jacobian(x):
        return np.broadcast_to(np.diag(_powers(x.shape[-1], ratio)), x.shape + (x.shape[-1],)).copy()

    return VectorFieldSpec(lambda x: x * _powers(x.shape[-1], ratio), jacobian=jacobian,
                           trace_class_decay=lambda j: ratio ** (j - 1),
                           divergence=lambda x: np.full(x.shape[:-1], np.sum(_powers(x.shape[-1], ratio))),
                           name="diag")


def rank_one_field(u, v):
    """ k(x) = <v, x> u, with tr k' = <u, v> once n covers both vectors. """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)

    def evaluator(x):
        n = x.shape[-1]
        return (x @ _embed(v, n))[..., None] * _embed(u, n)

    def jacobian(x):
        n = x.shape[-1]
        return np.broadcast_to(np.outer(_embed(u, n), _embed(v, n)), x.shape + (n,)).copy()

    size = max(u.size, v.size)
    decay = [abs(_embed(u, size)[j] * _embed(v, size)[j]) for j in range(size)]
    return VectorFieldSpec(evaluator, jacobian=jacobian, trace_class_decay=decay, name="rank_one")


def sine_field(analytic=True):
    """ k(x)_j = sin(x_j) / 2^j. """
    def evaluator(x):
        return np.sin(x) * _powers(x.shape[-1], 0.5, 0.5)

    def jacobian(x):
        diagonal = np.cos(x) * _powers(x.shape[-1], 0.5, 0.5)
        return diagonal[..., None] * np.eye(x.shape[-1])

    return VectorFieldSpec(evaluator, jacobian=jacobian if analytic else None,
                           trace_class_decay=lambda j: 0.5 ** j, name="sine")


def coupled_tanh_field():
    """
    k(x)_j = tanh(x_j + x_{j+1} / 2) / 2^j. Off-diagonal couplings, finite differences only.
    """
    def evaluator(x):
        shifted = np.concatenate([x[..., 1:], np.zeros(x.shape[:-1] + (1,))], axis=-1)
        return np.tanh(x + 0.5 * shifted) * _powers(x.shape[-1], 0.5, 0.5)

    return VectorFieldSpec(evaluator, trace_class_decay=lambda j: 0.5 ** j, name="coupled_tanh")


def shipped_fields():
    return {
        "constant": constant_field([1.0]),
        "diag": diagonal_field(),
        "rank_one": rank_one_field([1.0, 2.0], [0.5, -0.25]),
        "sine": sine_field(),
        "coupled_tanh": coupled_tanh_field(),
    }


# Flows

def linear_flow(A):
    """ F(t, x) = e^{tA} x. """
    A = np.asarray(A, dtype=float)

    def matrix(t):
        return expm(t * A)

    return FlowSpec(lambda t, x: x @ matrix(t).T, inverse=lambda t, x: x @ matrix(-t).T,
                    space_jacobian=lambda t, x: np.broadcast_to(matrix(t), x.shape + (A.shape[0],)).copy(),
                    time_derivative=lambda t, x: x @ (A @ matrix(t)).T,
                    mixed_derivative=lambda t, x: np.broadcast_to(A @ matrix(t), x.shape + (A.shape[0],)).copy(),
                    matrix=matrix, name="expm", dim=A.shape[0])


def integral_operator_flow(K):
    """ F(t, x) = (I + t K) x for a discretized integral operator K. """
    K = np.asarray(K, dtype=float)
    identity = np.eye(K.shape[0])

    def matrix(t):
        return identity + t * K

    return FlowSpec(lambda t, x: x @ matrix(t).T, inverse=lambda t, x: np.linalg.solve(matrix(t), x.T).T,
                    space_jacobian=lambda t, x: np.broadcast_to(matrix(t), x.shape + (K.shape[0],)).copy(),
                    time_derivative=lambda t, x: x @ K.T,
                    mixed_derivative=lambda t, x: np.broadcast_to(K, x.shape + (K.shape[0],)).copy(),
                    matrix=matrix, name="I+tK", dim=K.shape[0])


def tanh_shear_flow():
    """ F(t, x) = (x_1 + t tanh(x_2), x_2, x_3, ...). """
    def forward(t, x):
        y = np.array(x, dtype=float)
        y[..., 0] += t * np.tanh(x[..., 1])
        return y

    def inverse(t, x):
        return forward(-t, x)

    def space_jacobian(t, x):
        J = np.broadcast_to(np.eye(x.shape[-1]), x.shape + (x.shape[-1],)).copy()
        J[..., 0, 1] = t / np.cosh(x[..., 1]) ** 2
        return J

    def time_derivative(t, x):
        out = np.zeros_like(x)
        out[..., 0] = np.tanh(x[..., 1])
        return out

    def mixed_derivative(t, x):
        M = np.zeros(x.shape + (x.shape[-1],))
        M[..., 0, 1] = 1 / np.cosh(x[..., 1]) ** 2
        return M

    return FlowSpec(forward, inverse, space_jacobian, time_derivative, mixed_derivative, name="tanh_shear")


def elementwise_tanh_flow(strength=1.0, ratio=0.5):
    """
    F(t, x)_j = x_j + c_j t tanh(x_j) with c_j = strength ratio^{j-1}; inverted by Newton steps.
    Invertible while c_j t > -1.
    """
    def coefficients(x):
        return _powers(x.shape[-1], ratio, strength)

    def forward(t, x):
        return x + t * coefficients(x) * np.tanh(x)

    def inverse(t, x):
        c = t * coefficients(x)
        y = np.array(x, dtype=float)
        for _ in range(100):
            step = (y + c * np.tanh(y) - x) / (1 + c / np.cosh(y) ** 2)
            y = y - step
            if np.max(np.abs(step), initial=0.0) < 1e-15 * max(1.0, np.max(np.abs(x), initial=0.0)):
                break
        return y

    def space_jacobian(t, x):
        diagonal = 1 + t * coefficients(x) / np.cosh(x) ** 2
        return diagonal[..., None] * np.eye(x.shape[-1])

    def mixed_derivative(t, x):
        diagonal = coefficients(x) / np.cosh(x) ** 2
        return diagonal[..., None] * np.eye(x.shape[-1])

    return FlowSpec(forward, inverse, space_jacobian, lambda t, x: coefficients(x) * np.tanh(x),
                    mixed_derivative, name="elementwise_tanh")


def scaling_flow():
    """ F(t, x) = e^t x, with det F_2' = e^{n t}. """
    def jacobian(t, x):
        return np.exp(t) * np.broadcast_to(np.eye(x.shape[-1]), x.shape + (x.shape[-1],))

    return FlowSpec(lambda t, x: np.exp(t) * x, inverse=lambda t, x: np.exp(-t) * x, space_jacobian=jacobian,
                    time_derivative=lambda t, x: np.exp(t) * x, mixed_derivative=jacobian,
                    matrix=lambda t: np.exp(t), name="scaling")


def translation_flow(h):
    """ F(t, x) = x + t h. """
    h = np.asarray(h, dtype=float)

    def jacobian(t, x):
        return np.broadcast_to(np.eye(x.shape[-1]), x.shape + (x.shape[-1],)).copy()

    return FlowSpec(lambda t, x: x + t * _embed(h, x.shape[-1]), inverse=lambda t, x: x - t * _embed(h, x.shape[-1]),
                    space_jacobian=jacobian, time_derivative=lambda t, x: np.broadcast_to(_embed(h, x.shape[-1]),
                                                                                           x.shape).copy(),
                    mixed_derivative=lambda t, x: np.zeros(x.shape + (x.shape[-1],)),
                    offset=lambda t: t * h, name="translation")


def field_flow(k):
    """ F(t, x) = x + t k(x) for a vector field k; inverted numerically. """
    def space_jacobian(t, x):
        return np.eye(x.shape[-1]) + t * k.jacobian_at(x)

    return FlowSpec(lambda t, x: x + t * k(x), space_jacobian=space_jacobian,
                    time_derivative=lambda t, x: k(x), mixed_derivative=lambda t, x: k.jacobian_at(x),
                    name="x+t*{}".format(k.name))


# Test functionals

def bilinear_gaussian(n=2):
    """ (1 + x_1 x_2) exp(-|x|^2 / 2). Pairing 1. """
    def evaluator(x):
        return (1 + x[..., 0] * x[..., 1]) * np.exp(-0.5 * np.sum(x ** 2, axis=-1))

    return CylinderFunctional(max(2, n), evaluator, decay_class="polynomial_times_gaussian",
                              name="(1+x1x2)*gauss")


def shipped_functionals(n=2):
    return {
        "gauss": canonical_gaussian(n),
        "x1^2*gauss": coordinate_moment(2).extended(n),
        "fourier": fourier_gaussian(1.0).extended(n),
        "bilinear": bilinear_gaussian(n),
    }
