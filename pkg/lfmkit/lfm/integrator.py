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

import numpy as np

from lfmkit.core import log
from lfmkit.core.functional import CylinderFunctional, GaussianFunctional
from lfmkit.core.lfmkitError import BudgetExceeded, NonIntegrable
from lfmkit.core.quadrature import QuadratureSpec
from lfmkit.core.results import LfmValue, SweepResult
from lfmkit.core.validation import validate
from lfmkit.lfm.functionals import canonical_gaussian
from lfmkit.utilities.numutils import chunked_sum, exact_sum, extrapolate_to_zero, gauss_hermite_rule


class _Weight:
    """
    Per-coordinate Gaussian weight exp(-A_j (x_j - c_j)^2) with A = a + eps, and the factor
    that turns weighted sums back into the normalized pairing.
    """

    def __init__(self, psi, epsilon):
        self.rate = psi.decay_rate + epsilon
        self.center = psi.center
        self.epsilon = epsilon
        if np.any(self.rate <= 0):
            raise NonIntegrable("{} has a zero weight rate; give it damping or a decay_rate".format(psi.name))
        self.scale = 1.0 / np.sqrt(2 * self.rate)
        self.prefactor = float(np.prod(self.scale))

    def nodes(self, z, j):
        return self.center[j] + z * self.scale[j]

    def correction(self, x, j):
        """ exp(A_j (x - c_j)^2 - eps x^2), the weight divided back out at x. """
        return np.exp(self.rate[j] * (x - self.center[j]) ** 2 - self.epsilon * x ** 2)


def _tensor_separable(psi, weight, m):
    z, w = gauss_hermite_rule(m)
    value = 1.0 + 0j
    for j, factor in enumerate(psi.factors):
        x = weight.nodes(z, j)
        value *= exact_sum(w * np.asarray(factor(x), dtype=complex) * weight.correction(x, j))
    return value * weight.prefactor


def _tensor_full(psi, weight, m, quad):
    z, w = gauss_hermite_rule(m)
    d = psi.dim
    shape = (m,) * d
    axes = [weight.nodes(z, j) for j in range(d)]
    corrections = [w * weight.correction(axes[j], j) for j in range(d)]

    def partial(start, stop):
        index = np.unravel_index(np.arange(start, stop), shape)
        points = np.stack([axes[j][index[j]] for j in range(d)], axis=-1)
        factor = np.ones(stop - start)
        for j in range(d):
            factor = factor * corrections[j][index[j]]
        return psi(points) * factor

    return chunked_sum(partial, m ** d, quad.chunk_size, quad.jobs) * weight.prefactor


def _tensor(psi, weight, quad):
    m = quad.nodes_per_dim
    companion = m - 2 if m > 2 else m + 1
    if psi.separable:
        value = _tensor_separable(psi, weight, m)
        lower = _tensor_separable(psi, weight, companion)
        evaluations = (m + companion) * psi.dim
    else:
        value = _tensor_full(psi, weight, m, quad)
        lower = _tensor_full(psi, weight, companion, quad)
        evaluations = m ** psi.dim + companion ** psi.dim
    return value, abs(value - lower), evaluations


def _monte_carlo(psi, weight, quad):
    count, d = quad.sample_count, psi.dim
    rng = np.random.default_rng(quad.rng_seed)
    samples = rng.standard_normal((count, d))
    points = np.stack([weight.nodes(samples[:, j], j) for j in range(d)], axis=-1)

    def integrand(start, stop):
        block = points[start:stop]
        factor = np.ones(stop - start)
        for j in range(d):
            factor = factor * weight.correction(block[:, j], j)
        return psi(block) * factor

    terms = integrand(0, count)
    mean = chunked_sum(lambda start, stop: terms[start:stop], count, quad.chunk_size, quad.jobs) / count
    spread = math.sqrt(float(np.sum(np.abs(terms - mean) ** 2)) / (count - 1))
    return mean * weight.prefactor, weight.prefactor * spread / math.sqrt(count), count


def _tensor_cost(psi, quad):
    if psi.separable:
        return quad.nodes_per_dim * psi.dim
    return quad.nodes_per_dim ** psi.dim


def _integrate_at(psi, n, quad, epsilon):
    weight = _Weight(psi, epsilon)
    scheme, switched = quad.scheme, False
    if scheme == "tensor_gauss_hermite" and _tensor_cost(psi, quad) > quad.node_budget:
        message = "{} nodes in dimension {} exceed the tensor budget of {}".format(
            quad.nodes_per_dim, psi.dim, quad.node_budget)
        if not quad.auto_switch:
            raise BudgetExceeded(message)
        log.warning("%s; switching to gaussian_importance_mc with %d samples", message, quad.sample_count)
        scheme, switched = "gaussian_importance_mc", True
    if scheme == "tensor_gauss_hermite":
        value, error, evaluations = _tensor(psi, weight, quad)
    else:
        value, error, evaluations = _monte_carlo(psi, weight, quad)
    return LfmValue(value, n, error, epsilon_used=epsilon, scheme_used=scheme, switched=switched,
                    evaluations=evaluations)


def integrate_lfm(psi, n, quad=None):
    """
    Normalized pairing (nu, psi) = (2 pi)^{-n/2} int_{E_n} psi(x) dx.

    Only the psi.dim coordinates the functional reads are integrated; the canonical Gaussian
    on the remaining n - psi.dim coordinates pairs to exactly 1. The Gaussian weight of each
    coordinate is factored out analytically, so the normalization cancels exactly on the
    tensor rule.

    Damping applies to oscillatory_damped functionals only. With an epsilon_schedule the
    damped values are extrapolated to eps = 0.

    :param psi: The test functional.
    :type psi: CylinderFunctional

    :param n: Dimension of the subspace E_n.
    :type n: int

    :param quad: Quadrature settings; defaults to a 20-node tensor rule.
    :type quad: QuadratureSpec

    :returns: LfmValue
    :raises ValidationError: When quad violates its invariants, e.g. a non-decreasing epsilon_schedule.
    """
    if not isinstance(psi, CylinderFunctional):
        raise TypeError("integrate_lfm needs a CylinderFunctional, got {}".format(type(psi).__name__))
    if psi.dim > n:
        raise ValueError("functional reads {} coordinates but n = {}".format(psi.dim, n))
    quad = QuadratureSpec() if quad is None else quad
    validate(quad, strict=True)
    if psi.dim == 0:
        value = psi(np.zeros((1, 0)))[0]
        return LfmValue(value, n, 0.0, scheme_used=quad.scheme, evaluations=1)

    if psi.decay_class != "oscillatory_damped":
        return _integrate_at(psi, n, quad, 0.0)
    if not quad.damped:
        raise NonIntegrable("{} is oscillatory_damped; set damping_epsilon or epsilon_schedule".format(psi.name))
    if not quad.epsilon_schedule:
        return _integrate_at(psi, n, quad, quad.damping_epsilon)

    damped = [_integrate_at(psi, n, quad, eps) for eps in quad.epsilon_schedule]
    value, error = extrapolate_to_zero(quad.epsilon_schedule, [d.value for d in damped])
    error += max(d.quadrature_error_estimate for d in damped)
    return LfmValue(value, n, error, epsilon_used=0.0, scheme_used=damped[-1].scheme_used,
                    switched=any(d.switched for d in damped), evaluations=sum(d.evaluations for d in damped))


def normalization_check(n, quad=None):
    """ :returns: |(nu, exp(-|x|^2/2)) - 1| on E_n. """
    if n < 1:
        raise ValueError("normalization_check needs n >= 1")
    return abs(integrate_lfm(canonical_gaussian(n), n, quad).value - 1.0)


def dimension_sweep(psi_family, n_max, quad=None, limit=None):
    """
    Evaluate (nu, psi_n) on E_n for n = 1..n_max.

    :param psi_family: Callable n -> CylinderFunctional.
    :param limit: Optional known limit, stored with the result.
    :returns: SweepResult
    """
    if n_max < 1:
        raise ValueError("dimension_sweep needs n_max >= 1")
    sweep = SweepResult([integrate_lfm(psi_family(n), n, quad) for n in range(1, n_max + 1)], limit=limit)
    if sweep.non_cauchy:
        log.warning("Dimension sweep differences are not decreasing over the last three terms: %s",
                    sweep.differences[-3:])
    return sweep


def gaussian_pairing(matrix, shift=None):
    """ Closed-form (nu, exp(-x^T M x / 2 + b^T x)) = det(M)^{-1/2} exp(b^T M^{-1} b / 2). """
    return GaussianFunctional(matrix, shift).exact_pairing()


def linearity_check(psi1, psi2, a, b, n, quad=None):
    """
    :returns: Relative gap between (nu, a psi1 + b psi2) and a (nu, psi1) + b (nu, psi2).
    """
    combined = integrate_lfm(a * psi1 + b * psi2, n, quad).value
    separate = a * integrate_lfm(psi1, n, quad).value + b * integrate_lfm(psi2, n, quad).value
    return abs(combined - separate) / max(abs(separate), 1e-300)
