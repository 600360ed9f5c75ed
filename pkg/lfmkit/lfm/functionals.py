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
Test functionals with known pairings.
"""

import numpy as np

from lfmkit.core.functional import CylinderFunctional


def _gauss(x):
    return np.exp(-0.5 * x ** 2)


def canonical_gaussian(n):
    """ exp(-|x|^2 / 2) on E_n, pairing exactly 1. """
    return CylinderFunctional(n, factors=[_gauss] * n, decay_bound=(1.0, 0.5),
                              gradient=lambda x: -x * np.exp(-0.5 * np.sum(x ** 2, axis=-1))[..., None],
                              name="gauss")


def coordinate_moment(power, coordinate=1):
    """
    x_j^power * exp(-|x|^2 / 2), reading coordinates 1..j. Pairing: the standard normal
    moment of order ``power``.
    """
    factors = [_gauss] * (coordinate - 1) + [lambda x, p=power: x ** p * np.exp(-0.5 * x ** 2)]

    def gradient(x):
        value = x[..., coordinate - 1] ** power * np.exp(-0.5 * np.sum(x ** 2, axis=-1))
        grad = -x * value[..., None]
        if power > 0:
            grad[..., coordinate - 1] += (power * x[..., coordinate - 1] ** (power - 1)
                                          * np.exp(-0.5 * np.sum(x ** 2, axis=-1)))
        return grad

    return CylinderFunctional(coordinate, factors=factors, decay_class="polynomial_times_gaussian",
                              gradient=gradient, name="x{}^{}*gauss".format(coordinate, power))


def fourier_gaussian(kappa=1.0):
    """ exp(i kappa x_1 - x_1^2 / 2). Pairing exp(-kappa^2 / 2). """
    def factor(x):
        return np.exp(1j * kappa * x - 0.5 * x ** 2)

    return CylinderFunctional(1, factors=[factor], decay_bound=(1.0, 0.5),
                              gradient=lambda x: (1j * kappa - x) * factor(x),
                              name="exp(i{}x1)*gauss".format(kappa))


def damped_oscillation(kappa=1.0, mu=0.5):
    """
    exp(i kappa x_1 - mu x_1^2 / 2) with mu < 1, tagged oscillatory_damped. Its damped pairing
    is (mu + 2 eps)^{-1/2} exp(-kappa^2 / (2 (mu + 2 eps))).
    """
    return CylinderFunctional(1, factors=[lambda x: np.exp(1j * kappa * x - 0.5 * mu * x ** 2)],
                              decay_class="oscillatory_damped", decay_rate=0.5 * mu,
                              name="exp(i{}x1-{}x1^2/2)".format(kappa, mu))


def damped_oscillation_pairing(kappa, mu, epsilon=0.0):
    s = mu + 2 * epsilon
    return s ** -0.5 * np.exp(-kappa ** 2 / (2 * s))


def pure_phase(kappa=1.0):
    """ exp(i kappa x_1), no decay at all; pairs to 0 as damping is removed. """
    return CylinderFunctional(1, factors=[lambda x: np.exp(1j * kappa * x)],
                              decay_class="oscillatory_damped", decay_rate=0.0,
                              name="exp(i{}x1)".format(kappa))


def product_decay(n):
    """
    exp(-|x|^2 / 2 - sum_{j <= n} x_j^2 / 2^{j+1}). Pairing prod_{j <= n} (1 + 2^{-j})^{-1/2}.
    """
    factors = [lambda x, j=j: np.exp(-0.5 * x ** 2 - x ** 2 / 2.0 ** (j + 1)) for j in range(1, n + 1)]
    return CylinderFunctional(n, factors=factors, decay_bound=(1.0, 0.5), name="product_decay")


def product_decay_pairing(n):
    return float(np.prod([(1.0 + 2.0 ** -j) ** -0.5 for j in range(1, n + 1)]))


def product_decay_limit(j_max=60):
    """ Infinite-product oracle truncated at j_max. """
    return product_decay_pairing(j_max)


def odd_gaussian(n):
    """ x_1 * exp(-|x|^2 / 2) on E_n. Pairing 0 at every n. """
    return coordinate_moment(1).extended(max(1, n))


def polynomial_gaussian(n):
    """ (1 + x_1 x_2 + x_1^2) exp(-|x|^2 / 2) on E_n, n >= 2. Pairing 2. """
    def evaluator(x):
        return (1 + x[..., 0] * x[..., 1] + x[..., 0] ** 2) * np.exp(-0.5 * np.sum(x ** 2, axis=-1))

    def gradient(x):
        gauss = np.exp(-0.5 * np.sum(x ** 2, axis=-1))
        poly = 1 + x[..., 0] * x[..., 1] + x[..., 0] ** 2
        grad = -x * (poly * gauss)[..., None]
        grad[..., 0] += (x[..., 1] + 2 * x[..., 0]) * gauss
        grad[..., 1] += x[..., 0] * gauss
        return grad

    return CylinderFunctional(n, evaluator, decay_class="polynomial_times_gaussian", gradient=gradient,
                              name="poly*gauss")


def cosine_gaussian(n):
    """ cos(x_1 - x_n) exp(-|x|^2 / 2) on E_n. Pairing exp(-1) for n >= 2. """
    def evaluator(x):
        return np.cos(x[..., 0] - x[..., -1]) * np.exp(-0.5 * np.sum(x ** 2, axis=-1))

    def gradient(x):
        gauss = np.exp(-0.5 * np.sum(x ** 2, axis=-1))
        cosine = np.cos(x[..., 0] - x[..., -1])
        sine = np.sin(x[..., 0] - x[..., -1])
        grad = -x * (cosine * gauss)[..., None]
        grad[..., 0] += -sine * gauss
        grad[..., -1] += sine * gauss
        return grad

    return CylinderFunctional(n, evaluator, decay_bound=(1.0, 0.5), gradient=gradient, name="cos*gauss")


SWEEP_FAMILIES = {
    "gaussian": canonical_gaussian,
    "product_decay": product_decay,
    "odd": odd_gaussian,
}
