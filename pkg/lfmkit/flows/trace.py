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
from lfmkit.core.functional import CylinderFunctional
from lfmkit.lfm.integrator import integrate_lfm


def _point(x, n):
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size < n:
        raise ValueError("need a point of dimension >= {}, got {}".format(n, x.size))
    return x[:n]


def _tail(k, n, diagonal):
    """ Tail of the trace beyond n: from the decay bound when known, else the last term. """
    if k.trace_class_decay is None:
        return float(abs(diagonal[-1])) if diagonal.size else 0.0
    if not callable(k.trace_class_decay):
        return float(np.sum(np.abs(k.trace_class_decay[n:])))
    total, j = 0.0, n + 1
    while j < n + 100000:
        term = abs(k.decay_bound(j))
        total += term
        if term <= 1e-17 * max(total, 1e-300):
            break
        j += 1
    return total


def jacobian_trace(k, x, n):
    """
    Truncated trace sum_{j <= n} <k'(x) e_j, e_j>.

    :param k: The vector field.
    :type k: VectorFieldSpec

    :param x: Point of dimension >= n; its first n coordinates are used.
    :returns: (value, tail_estimate)
    :raises NoJacobian: When no Jacobian is available.
    """
    diagonal = np.diagonal(k.jacobian_at(_point(x, n)))
    value = np.sum(diagonal)
    if np.iscomplexobj(value) and value.imag == 0:
        value = value.real
    return value.item(), _tail(k, n, diagonal)


def trace_truncation_sweep(k, n_values, x=None, lag=5):
    """
    jacobian_trace at each n in n_values, at x (zeros by default).

    :returns: (rows, cauchy). Each row holds n, value, tail and the change from n - lag;
        cauchy is True when those changes are non-increasing.
    """
    rows = []
    for n in n_values:
        point = np.zeros(n) if x is None else _point(x, n)
        value, tail = jacobian_trace(k, point, n)
        rows.append({"n": n, "value": value, "tail": tail})
    for row in rows:
        lower = row["n"] - lag
        if lower >= 1:
            point = np.zeros(lower) if x is None else _point(x, lower)
            row["change"] = abs(row["value"] - jacobian_trace(k, point, lower)[0])
        else:
            row["change"] = None
    changes = [row["change"] for row in rows if row["change"] is not None]
    cauchy = all(b <= a * (1 + 1e-12) + 1e-15 for a, b in zip(changes, changes[1:]))
    if not cauchy:
        log.warning("Trace truncation of %s is not Cauchy over n = %s", k.name, list(n_values))
    return rows, cauchy


def derivative_pairing_values(k, phi, n, quad=None):
    """
    The two sides of nu'k = tr(k') nu on a test functional as LfmValues:
    lhs = -(nu, phi' k), rhs = (nu, tr(k') phi).
    """
    psi = phi.extended(max(phi.dim, n))
    if psi.dim != n:
        raise ValueError("functional reads {} coordinates but n = {}".format(phi.dim, n))

    def directional(x):
        return -np.sum(psi.grad(x) * k(x), axis=-1)

    def weighted(x):
        return k.trace_at(x) * psi(x)

    settings = dict(decay_class=psi.decay_class, decay_rate=psi.decay_rate, center=psi.center)
    lhs = integrate_lfm(CylinderFunctional(n, directional, name="-phi'k", **settings), n, quad)
    rhs = integrate_lfm(CylinderFunctional(n, weighted, name="tr(k')phi", **settings), n, quad)
    return lhs, rhs


def measure_derivative_pairing(k, phi, n, quad=None):
    """ :returns: (lhs, rhs, gap) of nu'k = tr(k') nu tested on phi. """
    lhs, rhs = derivative_pairing_values(k, phi, n, quad)
    return lhs.value, rhs.value, abs(lhs.value - rhs.value)


def shift_invariance_check(h, phi, n, quad=None):
    """
    |(nu, phi(. + h)) - (nu, phi)|. The shifted side re-centers the quadrature nodes at -h.
    """
    h = np.asarray(h, dtype=float).reshape(-1)
    base = phi.extended(max(phi.dim, h.size))
    if base.dim > n:
        raise ValueError("shift of dimension {} does not fit in n = {}".format(h.size, n))
    shifted = integrate_lfm(base.shifted(h), n, quad).value
    unshifted = integrate_lfm(base, n, quad).value
    return abs(shifted - unshifted)
