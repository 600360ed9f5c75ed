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

from lfmkit.core.jsonify import Jsonify


def _frozen(values, dtype=float):
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


class TimeGrid(Jsonify):
    """
    Uniform slicing of the interval (0, t_final).

    :param t_final: Final time of the interval, must be positive.
    :type t_final: float

    :param n_slices: Number of slices, at least 1.
    :type n_slices: int
    """

    def __init__(self, t_final, n_slices):
        if not t_final > 0:
            raise ValueError("TimeGrid requires t_final > 0, got {}".format(t_final))
        if int(n_slices) != n_slices or n_slices < 1:
            raise ValueError("TimeGrid requires an integer n_slices >= 1, got {}".format(n_slices))
        self.t_final = float(t_final)
        self.n_slices = int(n_slices)
        self.delta = self.t_final / self.n_slices

    def nodes(self):
        """
        :returns: The n_slices + 1 node times j*delta.
        """
        return np.arange(self.n_slices + 1) * self.delta

    def refined(self, factor=2):
        return TimeGrid(self.t_final, self.n_slices * factor)

    def validate(self):
        violations = []
        if abs(self.delta * self.n_slices - self.t_final) > 4 * np.finfo(float).eps * self.t_final:
            violations.append("delta * n_slices differs from t_final")
        if abs(self.nodes()[-1] - self.t_final) > 4 * np.finfo(float).eps * self.t_final * self.n_slices:
            violations.append("last node does not map to t_final")
        return violations

    def __repr__(self):
        return "TimeGrid(t_final={}, n_slices={})".format(self.t_final, self.n_slices)


class DiscretePath(Jsonify):
    """
    Time-sliced path pinned to 0 at the left endpoint. Values are stored at nodes 1..n_slices,
    one row per node and one column per configuration coordinate.

    :param grid: Slicing of the time interval.
    :type grid: TimeGrid

    :param values: Array of shape (n_slices,) or (n_slices, dim_q).
    :type values: numpy.ndarray
    """

    def __init__(self, grid, values):
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] != grid.n_slices:
            raise ValueError("DiscretePath expects {} node values, got shape {}".format(
                grid.n_slices, values.shape))
        self.grid = grid
        self.values = _frozen(values)

    @property
    def dim_q(self):
        return self.values.shape[1]

    def with_origin(self):
        """ :returns: Node values including the pinned node 0. """
        return np.vstack([np.zeros((1, self.dim_q)), self.values])

    def increments(self):
        return np.diff(self.with_origin(), axis=0)

    def sobolev_norm_sq(self):
        """
        Discrete form of the squared path norm, sum of |xi_j - xi_{j-1}|^2 / delta.
        """
        return float(np.sum(self.increments() ** 2) / self.grid.delta)

    def to_coordinates(self):
        """
        Coordinates in the orthonormal increment basis. The squared norm of the result equals
        sobolev_norm_sq().
        """
        return (self.increments() / np.sqrt(self.grid.delta)).T.reshape(-1)

    @classmethod
    def from_coordinates(cls, grid, coordinates, dim_q=1):
        coordinates = np.asarray(coordinates, dtype=float).reshape(dim_q, grid.n_slices).T
        return cls(grid, np.cumsum(coordinates * np.sqrt(grid.delta), axis=0))

    def translate(self, h):
        """ :returns: The path xi + h, where h is a DiscretePath on the same grid. """
        if h.grid.n_slices != self.grid.n_slices or h.grid.t_final != self.grid.t_final:
            raise ValueError("Cannot translate a path by a path on a different grid")
        return DiscretePath(self.grid, self.values + h.values)

    def refine(self):
        """
        Piecewise-linear refinement to 2 * n_slices. The squared norm is preserved exactly in
        exact arithmetic.
        """
        full = self.with_origin()
        midpoints = 0.5 * (full[:-1] + full[1:])
        refined = np.empty((2 * self.grid.n_slices, self.dim_q))
        refined[0::2] = midpoints
        refined[1::2] = full[1:]
        return DiscretePath(self.grid.refined(2), refined)

    def validate(self):
        violations = self.grid.validate()
        norm_sq = self.sobolev_norm_sq()
        if not np.all(np.isfinite(self.values)):
            violations.append("path values are not finite")
        elif not (np.isfinite(norm_sq) and norm_sq >= 0):
            violations.append("discrete Sobolev norm is not finite")
        return violations


class PhasePath(Jsonify):
    """
    Time-sliced phase-space path. Configuration values sit at slice midpoints and momenta at
    nodes 1..n_slices.

    The squared norm can use either the difference form of q, sum |dq|^2 / delta, or its
    L2 form, sum |q|^2 * delta; the momentum part is always sum |p|^2 * delta.
    """

    def __init__(self, grid, q_values, p_values):
        q_values = np.asarray(q_values, dtype=float)
        p_values = np.asarray(p_values, dtype=float)
        if q_values.ndim == 1:
            q_values = q_values[:, None]
        if p_values.ndim == 1:
            p_values = p_values[:, None]
        if q_values.shape[0] != grid.n_slices or p_values.shape[0] != grid.n_slices:
            raise ValueError("PhasePath expects {} midpoint and node values".format(grid.n_slices))
        if q_values.shape[1] != p_values.shape[1]:
            raise ValueError("PhasePath requires dim_p == dim_q")
        self.grid = grid
        self.q_values = _frozen(q_values)
        self.p_values = _frozen(p_values)

    def norm_sq(self, q_norm="derivative"):
        """
        :param q_norm: "derivative" for sum |dq|^2 / delta, "l2" for sum |q|^2 * delta.
        :type q_norm: str

        :returns: Tuple (norm squared, q_norm used).
        """
        if q_norm == "derivative":
            q_part = np.sum(np.diff(self.q_values, axis=0) ** 2) / self.grid.delta
        elif q_norm == "l2":
            q_part = np.sum(self.q_values ** 2) * self.grid.delta
        else:
            raise ValueError("q_norm must be 'derivative' or 'l2', got {}".format(q_norm))
        p_part = np.sum(self.p_values ** 2) * self.grid.delta
        return float(q_part + p_part), q_norm

    def validate(self):
        violations = self.grid.validate()
        for q_norm in ("derivative", "l2"):
            value, _ = self.norm_sq(q_norm)
            if not (np.isfinite(value) and value >= 0):
                violations.append("{} norm is not finite".format(q_norm))
        return violations
