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


class PotentialSpec:
    """
    A real potential V(q) on the configuration line.

    :param evaluator: Vectorized callable q -> V(q).
    :type evaluator: callable

    :param smoothness_tag: Free-form label, "smooth" unless stated.
    :type smoothness_tag: str

    :param quadratic_coefficient: b when V(q) = b q^2 / 2 exactly. Real-time propagation of
        such potentials chains Gaussian slices in closed form.
    :type quadratic_coefficient: float

    :param second_derivative: Optional callable q -> V''(q).
    """

    def __init__(self, evaluator, smoothness_tag="smooth", quadratic_coefficient=None, second_derivative=None,
                 name=None):
        self.evaluator = evaluator
        self.smoothness_tag = smoothness_tag
        self.quadratic_coefficient = None if quadratic_coefficient is None else float(quadratic_coefficient)
        self.second_derivative = second_derivative
        self.name = name or "V"

    def __call__(self, q):
        q = np.asarray(q, dtype=float)
        return np.broadcast_to(np.asarray(self.evaluator(q), dtype=float), q.shape)

    @property
    def is_quadratic(self):
        return self.quadratic_coefficient is not None

    @classmethod
    def free(cls):
        return cls(lambda q: np.zeros_like(q), quadratic_coefficient=0.0, second_derivative=lambda q: 0 * q,
                   name="free")

    @classmethod
    def harmonic(cls, omega=1.0):
        b = omega ** 2
        return cls(lambda q: 0.5 * b * q ** 2, quadratic_coefficient=b, second_derivative=lambda q: b + 0 * q,
                   name="harmonic({})".format(omega))

    @classmethod
    def anharmonic(cls, lam=0.1):
        """ q^2 / 2 + lam q^4. """
        return cls(lambda q: 0.5 * q ** 2 + lam * q ** 4, second_derivative=lambda q: 1 + 12 * lam * q ** 2,
                   name="anharmonic({})".format(lam))

    @classmethod
    def gaussian_barrier(cls, height=1.0, width=1.0):
        """ q^2 / 2 + height exp(-q^2 / (2 width^2)). """
        return cls(lambda q: 0.5 * q ** 2 + height * np.exp(-q ** 2 / (2 * width ** 2)),
                   name="barrier({},{})".format(height, width))

    def validate(self, grid=None):
        from lfmkit.core.wavefunction import SpatialGrid
        grid = grid or SpatialGrid()
        violations = []
        values = self(grid.points)
        if not np.all(np.isfinite(values)):
            violations.append("potential is not finite on the spatial grid")
        if self.is_quadratic and not np.allclose(values, 0.5 * self.quadratic_coefficient * grid.points ** 2,
                                                 rtol=1e-12, atol=1e-12):
            violations.append("quadratic_coefficient does not match the evaluator")
        return violations

    def __repr__(self):
        return "PotentialSpec({})".format(self.name)


class HamiltonianSymbol:
    """
    A classical Hamiltonian H(q, p), read as the Weyl symbol of the quantum Hamiltonian.

    Symbols quadratic in p, H = A(q) p^2 / 2 + B(q) p + C(q), carry their coefficients so
    the momentum integral of each slice is done in closed form.

    :param evaluator: Vectorized callable (q, p) -> H(q, p).
    :param separable: True when H = T(p) + V(q).
    :param quadratic_p: Optional triple of callables (A, B, C).
    :param potential: The PotentialSpec V when H = p^2 / 2 + V(q).
    """

    def __init__(self, evaluator, separable=False, quadratic_p=None, potential=None, name=None):
        self.evaluator = evaluator
        self.separable = bool(separable)
        self.quadratic_p = quadratic_p
        self.potential = potential
        self.name = name or "H"

    def __call__(self, q, p):
        return np.asarray(self.evaluator(np.asarray(q, dtype=float), np.asarray(p, dtype=float)), dtype=float)

    def coefficients(self, q):
        """ :returns: (A(q), B(q), C(q)) as arrays shaped like q. """
        if self.quadratic_p is None:
            raise ValueError("symbol {} is not quadratic in p".format(self.name))
        q = np.asarray(q, dtype=float)
        return tuple(np.broadcast_to(np.asarray(c(q), dtype=float), q.shape) for c in self.quadratic_p)

    @classmethod
    def kinetic_plus(cls, potential):
        """ H = p^2 / 2 + V(q). """
        return cls(lambda q, p: 0.5 * p ** 2 + potential(q), separable=True,
                   quadratic_p=(lambda q: np.ones_like(q), lambda q: np.zeros_like(q), potential),
                   potential=potential, name="p^2/2+{}".format(potential.name))

    @classmethod
    def dilation(cls):
        """ H = q p, generator of dilations. Its Weyl quantization is (q p + p q) / 2. """
        return cls(lambda q, p: q * p, quadratic_p=(np.zeros_like, lambda q: q, np.zeros_like), name="qp")

    @classmethod
    def quadratic_in_p(cls, A, B, C, name=None):
        return cls(lambda q, p: 0.5 * A(q) * p ** 2 + B(q) * p + C(q), quadratic_p=(A, B, C), name=name)

    def validate(self, n_samples=64, seed=0):
        rng = np.random.default_rng(seed)
        q, p = rng.normal(scale=3.0, size=(2, n_samples))
        violations = []
        if not np.all(np.isfinite(self(q, p))):
            violations.append("symbol is not finite on sampled phase points")
        if self.quadratic_p is not None:
            A, B, C = self.coefficients(q)
            if not np.allclose(self(q, p), 0.5 * A * p ** 2 + B * p + C, rtol=1e-10, atol=1e-10):
                violations.append("quadratic_p coefficients do not match the evaluator")
        return violations

    def __repr__(self):
        return "HamiltonianSymbol({})".format(self.name)
