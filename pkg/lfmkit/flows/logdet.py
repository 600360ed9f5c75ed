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

from lfmkit.core.lfmkitError import SingularJacobian
from lfmkit.flows.trace import jacobian_trace
from lfmkit.utilities.numutils import gauss_legendre_rule, rk4

MAX_CONDITION = 1e12
# |det F_2'| below this share of its largest sampled value counts as a zero of the determinant.
SINGULAR_DET = 1e-9
DIP_SCREEN = 1e-2


def _real_if_exact(value):
    value = complex(value)
    return value.real if value.imag == 0 else value


def _locate_singularity(det, taus, values):
    """
    tau of a zero of det between samples: the root of a sign change, or the minimum of an
    interior dip of |det| that reaches zero.

    :returns: tau, or None when det stays away from zero.
    """
    for left, right, a, b in zip(taus, taus[1:], values, values[1:]):
        if a == 0:
            return float(left)
        if np.sign(a) != np.sign(b):
            return float(optimize.brentq(det, left, right, xtol=1e-14))

    magnitudes = np.abs(values)
    largest = np.max(magnitudes)
    for i in range(1, len(taus) - 1):
        dip = magnitudes[i] < magnitudes[i - 1] and magnitudes[i] <= magnitudes[i + 1]
        if not dip or magnitudes[i] > DIP_SCREEN * largest:
            continue
        found = optimize.minimize_scalar(lambda tau: abs(det(tau)), bounds=sorted((taus[i - 1], taus[i + 1])),
                                         method="bounded", options={"xatol": 1e-12})
        if abs(det(found.x)) <= SINGULAR_DET * largest:
            return float(found.x)
    return None


def flow_logdet(F, t, x, n, ode_steps=64):
    """
    det F_2'(t, x) two ways: directly, and as exp of the integrated trace
    int_0^t tr(F_12''(tau, x) F_2'(tau, x)^{-1}) dtau, integrated with fixed-step RK4.

    The determinant is sampled at every RK4 stage time first. A sign change between samples is
    bracketed with brentq; a dip of |det| between samples is minimized to see whether it
    reaches zero.

    :param F: The flow.
    :type F: FlowSpec

    :returns: (via_trace, via_direct, relative gap)
    :raises SingularJacobian: When F_2'(tau, x) is singular at some tau in [0, t]; tau is
        the located zero.
    """
    if ode_steps < 8:
        raise ValueError("flow_logdet needs ode_steps >= 8, got {}".format(ode_steps))
    x = np.asarray(x, dtype=float).reshape(-1)[:n]
    if x.size != n:
        raise ValueError("need a point of dimension {}".format(n))

    def raw_jacobian(tau):
        return np.asarray(F.space_jacobian(tau, x))[:n, :n]

    def det(tau):
        return float(np.real(np.linalg.det(raw_jacobian(tau))))

    def jacobian(tau):
        J = raw_jacobian(tau)
        if np.linalg.cond(J) > MAX_CONDITION:
            raise SingularJacobian("F_2' is singular at tau = {:.6g}".format(tau), tau=tau)
        return J

    taus = np.linspace(0.0, t, 2 * ode_steps + 1)
    for tau in taus:
        jacobian(tau)
    root = _locate_singularity(det, taus, [det(tau) for tau in taus])
    if root is not None:
        raise SingularJacobian("det F_2' vanishes at tau = {:.6g}".format(root), tau=root)

    def rate(tau, _):
        J = jacobian(tau)
        mixed = np.asarray(F.mixed_derivative(tau, x))[:n, :n]
        return np.trace(np.linalg.solve(J, mixed))

    direct = np.linalg.det(jacobian(t))
    integrated = rk4(rate, 0.0, t, 0.0 + 0j, ode_steps) if t != 0 else 0.0
    via_trace = np.exp(integrated)
    gap = abs(via_trace - direct) / max(abs(direct), 1e-300)
    return _real_if_exact(via_trace), _real_if_exact(direct), float(gap)


def nystrom_operator(kernel, length=1.0, n=40):
    """
    Symmetric Nystrom discretization W^{1/2} K W^{1/2} on n Gauss-Legendre nodes of (0, length).

    :param kernel: Vectorized callable (tau, sigma) -> K(tau, sigma).
    """
    nodes, weights = gauss_legendre_rule(n, 0.0, length)
    root = np.sqrt(weights)
    return root[:, None] * kernel(nodes[:, None], nodes[None, :]) * root[None, :]


def gaussian_kernel(tau, sigma):
    return np.exp(-(tau - sigma) ** 2)


def fredholm_determinant(kernel=gaussian_kernel, length=1.0, n=40, t=1.0):
    """ det(I + t K) as the product of 1 + t lambda_j over the Nystrom eigenvalues. """
    matrix = nystrom_operator(kernel, length, n)
    if np.allclose(matrix, matrix.T, rtol=0, atol=1e-14):
        eigenvalues = np.linalg.eigvalsh(matrix)
    else:
        eigenvalues = np.linalg.eigvals(matrix)
    return _real_if_exact(np.prod(1 + t * eigenvalues))


def fredholm_sweep(kernel=gaussian_kernel, length=1.0, n_values=(5, 10, 20, 40), t=1.0):
    """ :returns: Rows of n, determinant and change from the previous n. """
    rows, previous = [], None
    for n in n_values:
        value = fredholm_determinant(kernel, length, n, t)
        rows.append({"n": n, "det": value, "change": None if previous is None else abs(value - previous)})
        previous = value
    return rows


def logdet_first_order_link(k, x, n, t=1e-4):
    """
    d/dt log det(I + t k'(x)) at t = 0 by a central difference, against tr k'(x).

    :returns: (slope, trace, relative gap)
    """
    J = k.jacobian_at(np.asarray(x, dtype=float).reshape(-1)[:n])
    identity = np.eye(n)
    plus = np.linalg.slogdet(identity + t * J)
    minus = np.linalg.slogdet(identity - t * J)
    slope = (plus[1] - minus[1]) / (2 * t)
    trace = jacobian_trace(k, x, n)[0]
    return float(slope), trace, abs(slope - trace) / max(abs(trace), 1e-300)


def determinant_by_volume(F, t, x, n, size=1e-3):
    """
    Volume ratio of the image of a small cube around x, from the parallelepiped spanned by the
    images of its central edges, against det F_2'(t, x).

    :returns: (volume_ratio, det, gap)
    """
    x = np.asarray(x, dtype=float).reshape(-1)[:n]
    edges = np.eye(n) * size
    images = np.stack([F(t, x + e) - F(t, x - e) for e in edges], axis=-1) / (2 * size)
    volume = float(np.linalg.det(images))
    det = float(np.real(np.linalg.det(np.asarray(F.space_jacobian(t, x))[:n, :n])))
    return volume, det, abs(volume - det)
