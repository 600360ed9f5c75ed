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

from lfmkit.core.timegrid import TimeGrid


class FiniteSubspace:
    """
    The span E_n of the first n members of a fixed orthonormal family.

    Two families are supported. The "coordinate" family is the standard basis of R^n. The
    "hat" family lives on the path space of a TimeGrid with n slices: member j is the ramp
    whose derivative is delta^{-1/2} on slice j and 0 elsewhere. It is orthonormal for the
    norm ||f'||_{L2}, and in it the free action of a path equals |x|^2 / 2.

    :param dim: Dimension n of the subspace.
    :type dim: int

    :param basis_id: "coordinate" or "hat".
    :type basis_id: str

    :param grid: Time grid for the hat family. Defaults to a unit interval with dim slices.
    :type grid: TimeGrid
    """

    BASIS_IDS = ("coordinate", "hat")

    def __init__(self, dim, basis_id="coordinate", grid=None):
        if int(dim) != dim or dim < 1:
            raise ValueError("FiniteSubspace requires dim >= 1, got {}".format(dim))
        if basis_id not in self.BASIS_IDS:
            raise ValueError("Unknown basis_id '{}', expected one of {}".format(basis_id, self.BASIS_IDS))
        self.dim = int(dim)
        self.basis_id = basis_id
        if basis_id == "hat":
            if grid is None:
                grid = TimeGrid(1.0, self.dim)
            if grid.n_slices != self.dim:
                raise ValueError("hat basis of dim {} needs a grid with {} slices".format(self.dim, self.dim))
        self.grid = grid

    def basis_matrix(self):
        """
        :returns: Row j holds basis member j; coordinate vectors for the coordinate family,
            node values at nodes 1..n for the hat family.
        """
        if self.basis_id == "coordinate":
            return np.eye(self.dim)
        nodes = np.arange(1, self.dim + 1)
        ramps = (nodes[None, :] >= nodes[:, None]).astype(float)
        return ramps * np.sqrt(self.grid.delta)

    def gram(self):
        basis = self.basis_matrix()
        if self.basis_id == "coordinate":
            return basis @ basis.T
        # derivative samples on each slice, node 0 pinned at 0
        with_origin = np.hstack([np.zeros((self.dim, 1)), basis])
        derivatives = np.diff(with_origin, axis=1) / self.grid.delta
        return derivatives @ derivatives.T * self.grid.delta

    def embed(self, coordinates):
        """ :returns: Basis combination sum_j x_j e_j, batched over leading axes. """
        return np.asarray(coordinates) @ self.basis_matrix()

    def validate(self):
        deviation = np.max(np.abs(self.gram() - np.eye(self.dim)))
        if deviation > 1e-12:
            return ["Gram matrix deviates from identity by {:.3e}".format(deviation)]
        return []
