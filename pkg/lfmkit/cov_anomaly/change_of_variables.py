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

from lfmkit.core.functional import CylinderFunctional, GaussianFunctional
from lfmkit.core.lfmkitError import SingularJacobian
from lfmkit.lfm.integrator import integrate_lfm


def _pullback_weight(F, t, psi):
    """
    Weight rate and center for psi o F^{-1} when F is affine with a diagonal linear part:
    a_j / L_jj^2 and L c + offset. Otherwise the weight of psi is kept.
    """
    if not F.affine:
        return psi.decay_rate, psi.center
    n = psi.dim
    linear = np.ones(n) if F.matrix is None else F.matrix(t)
    linear = np.asarray(linear, dtype=float)
    if linear.ndim == 2:
        if linear.shape[0] < n or np.any(linear[:n, :n] != np.diag(np.diagonal(linear)[:n])):
            return psi.decay_rate, psi.center
        linear = np.diagonal(linear)[:n]
    linear = np.broadcast_to(linear, (n,))
    offset = np.zeros(n)
    if F.offset is not None:
        shift = np.asarray(F.offset(t), dtype=float).reshape(-1)[:n]
        offset[:shift.size] = shift
    return psi.decay_rate / linear ** 2, linear * psi.center + offset


def pulled_back(F, t, phi, n):
    """ The functional x -> phi(F^{-1}(t, x)) on E_n. """
    psi = phi.extended(max(phi.dim, n))
    rate, center = _pullback_weight(F, t, psi)
    return psi.composed(lambda x: F.inverse(t, x), dim=psi.dim, decay_rate=rate, center=center,
                        name="{}oF^-1".format(phi.name))


def with_determinant(F, t, phi, n):
    """ The functional x -> phi(x) det F_2'(t, x) on E_n. """
    psi = phi.extended(max(phi.dim, n))

    def determinant(x):
        det = np.linalg.det(np.asarray(F.space_jacobian(t, x)))
        if np.any(np.abs(det) < 1e-12):
            raise SingularJacobian("det F_2' vanishes at a quadrature node", tau=t)
        return det

    return psi.times(determinant, dim=psi.dim, name="{}*det".format(phi.name))


def verify_change_of_variables(F, t, phi, n, quad=None):
    """
    Both sides of int phi(F^{-1}(t, x)) nu(dx) = int phi(x) det F_2'(t, x) nu(dx), each by its
    own quadrature.

    For affine flows with a diagonal linear part the left side is integrated against the
    transported Gaussian weight.

    :returns: (lhs, rhs, gap)
    """
    if n < phi.dim:
        raise ValueError("functional reads {} coordinates but n = {}".format(phi.dim, n))
    lhs = integrate_lfm(pulled_back(F, t, phi, n), n, quad).value
    rhs = integrate_lfm(with_determinant(F, t, phi, n), n, quad).value
    return lhs, rhs, abs(lhs - rhs)


def verify_change_of_variables_gaussian(L, phi):
    """
    Closed-form sides of the change of variables for a linear map L and a GaussianFunctional.

    :returns: (lhs, rhs, gap)
    """
    if not isinstance(phi, GaussianFunctional):
        raise TypeError("closed-form change of variables needs a GaussianFunctional")
    L = np.asarray(L, dtype=float)
    lhs = phi.pulled_back(L).exact_pairing()
    rhs = np.linalg.det(L) * phi.exact_pairing()
    return lhs, rhs, abs(lhs - rhs)
