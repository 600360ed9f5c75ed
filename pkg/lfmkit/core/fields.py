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
from scipy import optimize

from lfmkit.core.lfmkitError import NoJacobian


def _central_jacobian(function, x, step):
    """ Batched central-difference Jacobian, J[..., i, j] = d f_i / d x_j. """
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    columns = []
    for j in range(n):
        offset = np.zeros(n)
        offset[j] = step
        columns.append((np.asarray(function(x + offset)) - np.asarray(function(x - offset))) / (2 * step))
    return np.stack(columns, axis=-1)


class VectorFieldSpec:
    """
    A vector field k on E, read on truncations E_n. All callables are batched over leading
    axes and dimension-agnostic: the evaluator maps (..., n) to (..., n) for any n.

    :param evaluator: x -> k(x).
    :type evaluator: callable

    :param jacobian: Optional analytic x -> k'(x) with shape (..., n, n).
    :type jacobian: callable

    :param trace_class_decay: Optional bound on |<k'(x) e_j, e_j>|, as a sequence indexed from
        j = 1 or a callable j -> bound.

    :param h_fd: Finite-difference step; None disables finite differences.
    :type h_fd: float

    :param divergence: Optional analytic x -> tr k'(x) with shape (...,).
    :type divergence: callable
    """

    def __init__(self, evaluator, jacobian=None, trace_class_decay=None, h_fd=1e-5, divergence=None,
                 name=None, dim=None):
        self.evaluator = evaluator
        self.jacobian = jacobian
        self.trace_class_decay = trace_class_decay
        self.h_fd = h_fd
        self.divergence = divergence
        self.name = name or "k"
        self.dim = dim

    def __call__(self, x):
        return np.asarray(self.evaluator(np.asarray(x, dtype=float)))

    def jacobian_at(self, x):
        if self.jacobian is not None:
            return np.asarray(self.jacobian(np.asarray(x, dtype=float)))
        if self.evaluator is None or self.h_fd is None:
            raise NoJacobian("field '{}' has neither an analytic nor a finite-difference Jacobian".format(self.name))
        return _central_jacobian(self.evaluator, x, self.h_fd)

    def trace_at(self, x):
        if self.divergence is not None:
            return np.asarray(self.divergence(np.asarray(x, dtype=float)))
        return np.trace(self.jacobian_at(x), axis1=-2, axis2=-1)

    def decay_bound(self, j):
        """ :returns: The trace-class bound for index j >= 1, or None. """
        decay = self.trace_class_decay
        if decay is None:
            return None
        if callable(decay):
            return float(decay(j))
        return float(decay[j - 1]) if j - 1 < len(decay) else 0.0

    def validate(self, sample_dim=4, n_samples=8, seed=0):
        violations = []
        dim = self.dim or sample_dim
        rng = np.random.default_rng(seed)
        points = rng.normal(size=(n_samples, dim))
        if self.evaluator is not None:
            values = self(points)
            if values.shape != points.shape or not np.all(np.isfinite(values)):
                violations.append("evaluator is not a finite n-vector field on sampled points")
                return violations
        if self.jacobian is not None and self.evaluator is not None and self.h_fd is not None:
            analytic = self.jacobian_at(points)
            numeric = _central_jacobian(self.evaluator, points, self.h_fd)
            scale = np.maximum(1.0, np.max(np.abs(analytic), axis=(-2, -1), keepdims=True))
            if np.any(np.abs(analytic - numeric) > 10 * self.h_fd ** 2 * scale):
                violations.append("analytic jacobian disagrees with finite differences")
        return violations

    def __repr__(self):
        return "VectorFieldSpec(name={})".format(self.name)


class FlowSpec:
    """
    A flow F(t, x) on E with F(0, x) = x. Callables are batched over leading axes of x.

    :param forward: (t, x) -> F(t, x).
    :param inverse: (t, x) -> F^{-1}(t, x). When absent it is solved pointwise with scipy.
    :param space_jacobian: (t, x) -> F_2'(t, x) with shape (..., n, n); finite differences if absent.
    :param time_derivative: (t, x) -> F_1'(t, x); central differences in t if absent.
    :param mixed_derivative: (t, x) -> d/dt F_2'(t, x); central differences in t if absent.
    :param matrix: For affine flows, t -> L(t) with F(t, x) = L(t) x + offset(t).
    :param offset: For affine flows, t -> offset(t); zero when absent.
    :param dim: Dimension the flow is defined on, None if dimension-agnostic.
    """

    def __init__(self, forward, inverse=None, space_jacobian=None, time_derivative=None,
                 mixed_derivative=None, matrix=None, offset=None, h_fd=1e-5, name=None, dim=None):
        self.forward = forward
        self._inverse = inverse
        self._space_jacobian = space_jacobian
        self._time_derivative = time_derivative
        self._mixed_derivative = mixed_derivative
        self.matrix = matrix
        self.offset = offset
        self.h_fd = h_fd
        self.name = name or "F"
        self.dim = dim

    def __call__(self, t, x):
        return np.asarray(self.forward(t, np.asarray(x, dtype=float)))

    @property
    def affine(self):
        return self.matrix is not None or self.offset is not None

    @property
    def has_analytic_jacobian(self):
        return self._space_jacobian is not None

    def inverse(self, t, x):
        x = np.asarray(x, dtype=float)
        if self._inverse is not None:
            return np.asarray(self._inverse(t, x))
        flat = x.reshape(-1, x.shape[-1])
        solved = np.empty_like(flat)
        for row, target in enumerate(flat):
            solution = optimize.root(lambda y: self(t, y) - target, target,
                                     jac=lambda y: self.space_jacobian(t, y), tol=1e-13)
            solved[row] = solution.x
        return solved.reshape(x.shape)

    def space_jacobian(self, t, x):
        if self._space_jacobian is not None:
            return np.asarray(self._space_jacobian(t, np.asarray(x, dtype=float)))
        return _central_jacobian(lambda y: self(t, y), x, self.h_fd)

    def time_derivative(self, t, x):
        if self._time_derivative is not None:
            return np.asarray(self._time_derivative(t, np.asarray(x, dtype=float)))
        return (self(t + self.h_fd, x) - self(t - self.h_fd, x)) / (2 * self.h_fd)

    def mixed_derivative(self, t, x):
        if self._mixed_derivative is not None:
            return np.asarray(self._mixed_derivative(t, np.asarray(x, dtype=float)))
        return (self.space_jacobian(t + self.h_fd, x) - self.space_jacobian(t - self.h_fd, x)) / (2 * self.h_fd)

    def validate(self, sample_dim=3, n_samples=8, t_values=(0.3, 0.7), seed=0):
        violations = []
        dim = self.dim or sample_dim
        rng = np.random.default_rng(seed)
        points = rng.normal(size=(n_samples, dim))
        if np.max(np.abs(self(0.0, points) - points)) > 1e-12 * max(1.0, np.max(np.abs(points))):
            violations.append("F(0, x) != x")
        for t in t_values:
            round_trip = self(t, self.inverse(t, points))
            if np.max(np.abs(round_trip - points)) > 1e-9 * max(1.0, np.max(np.abs(points))):
                violations.append("inverse mismatch")
                break
        if self._space_jacobian is not None:
            for t in t_values:
                analytic = self.space_jacobian(t, points)
                numeric = _central_jacobian(lambda y: self(t, y), points, self.h_fd)
                scale = np.maximum(1.0, np.max(np.abs(analytic)))
                if np.max(np.abs(analytic - numeric)) > 1e-6 * scale:
                    violations.append("space_jacobian mismatch")
                    break
        return violations

    def __repr__(self):
        return "FlowSpec(name={})".format(self.name)
