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

DECAY_CLASSES = ("gaussian_dominated", "polynomial_times_gaussian", "oscillatory_damped")


def _as_points(x, dim):
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[None, :]
    if x.shape[-1] < dim:
        raise ValueError("functional reads {} coordinates, got points of dimension {}".format(dim, x.shape[-1]))
    return x


def _per_coordinate(value, dim, fill):
    if value is None:
        return np.full(dim, fill, dtype=float)
    value = np.asarray(value, dtype=float)
    if value.ndim == 0:
        return np.full(dim, float(value))
    if value.shape != (dim,):
        raise ValueError("expected {} per-coordinate values, got shape {}".format(dim, value.shape))
    return value.copy()


class CylinderFunctional:
    """
    A test function on E that depends on its first ``dim`` coordinates.

    Evaluators are batched: they take an array of shape (m, dim) and return m complex values.
    On a larger subspace E_n the functional is extended by the canonical Gaussian factor
    exp(-|x_tail|^2 / 2) on the coordinates it does not read, so its pairing does not depend
    on n once n >= dim.

    The tensor quadrature factors the weight exp(-a_j (x_j - c_j)^2) out of each coordinate,
    with a = ``decay_rate`` and c = ``center``. The defaults a = 1/2, c = 0 give the canonical
    Gaussian weight.

    :param dim: Number of coordinates read.
    :type dim: int

    :param evaluator: Batched callable (m, dim) -> (m,). May be None when ``factors`` is given.
    :type evaluator: callable

    :param decay_class: One of "gaussian_dominated", "polynomial_times_gaussian",
        "oscillatory_damped".
    :type decay_class: str

    :param decay_bound: Constants (C, a) with |psi(x)| <= C exp(-a |x|^2).
    :type decay_bound: tuple

    :param decay_rate: Weight rate, scalar or one value per coordinate.
    :param center: Weight center, scalar or one value per coordinate.

    :param gradient: Optional batched callable (m, dim) -> (m, dim).
    :type gradient: callable

    :param factors: Optional list of ``dim`` batched 1-D callables with psi(x) = prod_j f_j(x_j).
    :type factors: list
    """

    def __init__(self, dim, evaluator=None, decay_class="gaussian_dominated", decay_bound=None,
                 decay_rate=None, center=None, gradient=None, factors=None, name=None):
        if int(dim) != dim or dim < 0:
            raise ValueError("CylinderFunctional requires dim >= 0, got {}".format(dim))
        if decay_class not in DECAY_CLASSES:
            raise ValueError("Unknown decay_class '{}', expected one of {}".format(decay_class, DECAY_CLASSES))
        if factors is not None:
            factors = list(factors)
            if len(factors) != dim:
                raise ValueError("separable functional of dim {} needs {} factors".format(dim, dim))
        if evaluator is None and factors is None:
            raise ValueError("CylinderFunctional needs an evaluator or a list of factors")
        self.dim = int(dim)
        self.decay_class = decay_class
        self.decay_bound = None if decay_bound is None else tuple(float(c) for c in decay_bound)
        self.decay_rate = _per_coordinate(decay_rate, self.dim, 0.5)
        self.center = _per_coordinate(center, self.dim, 0.0)
        if np.any(self.decay_rate < 0):
            raise ValueError("decay_rate must be nonnegative")
        self.gradient = gradient
        self.factors = factors
        self._evaluator = evaluator
        self.name = name or "psi"

    @property
    def separable(self):
        return self.factors is not None

    def _evaluate_own(self, x):
        if self._evaluator is not None:
            return np.asarray(self._evaluator(x), dtype=complex).reshape(x.shape[:-1])
        value = np.ones(x.shape[:-1], dtype=complex)
        for j, factor in enumerate(self.factors):
            value = value * np.asarray(factor(x[..., j]), dtype=complex)
        return value

    def __call__(self, x):
        """
        Evaluate on points of dimension n >= dim, including the Gaussian tail factor.

        :returns: Complex array with one value per point.
        """
        x = _as_points(x, self.dim)
        value = self._evaluate_own(x[..., :self.dim])
        if x.shape[-1] > self.dim:
            value = value * np.exp(-0.5 * np.sum(x[..., self.dim:] ** 2, axis=-1))
        return value

    def grad(self, x):
        """
        Gradient on dim-dimensional points: analytic when supplied, else central differences.
        """
        x = _as_points(x, self.dim)[..., :self.dim]
        if self.gradient is not None:
            return np.asarray(self.gradient(x), dtype=complex)
        step = 1e-5
        columns = []
        for j in range(self.dim):
            offset = np.zeros(self.dim)
            offset[j] = step
            columns.append((self._evaluate_own(x + offset) - self._evaluate_own(x - offset)) / (2 * step))
        return np.stack(columns, axis=-1)

    def _derived(self, dim, evaluator, **overrides):
        settings = dict(decay_class=self.decay_class, decay_bound=self.decay_bound,
                        decay_rate=self.decay_rate, center=self.center, gradient=None,
                        factors=None, name=self.name)
        settings.update(overrides)
        return CylinderFunctional(dim, evaluator, **settings)

    def extended(self, m):
        """
        The same functional read on m >= dim coordinates, with the tail Gaussian made explicit.
        """
        if m < self.dim:
            raise ValueError("cannot extend a functional of dim {} to {}".format(self.dim, m))
        if m == self.dim:
            return self
        extra = m - self.dim
        rate = np.concatenate([self.decay_rate, np.full(extra, 0.5)])
        center = np.concatenate([self.center, np.zeros(extra)])
        factors = None
        if self.separable:
            factors = self.factors + [_canonical_factor] * extra
        gradient = None
        if self.gradient is not None:
            own_gradient, own_dim = self.gradient, self.dim

            def gradient(x):
                tail = np.exp(-0.5 * np.sum(x[..., own_dim:] ** 2, axis=-1))
                head = self._evaluate_own(x[..., :own_dim])
                return np.concatenate([
                    np.asarray(own_gradient(x[..., :own_dim])) * tail[..., None],
                    -x[..., own_dim:] * (head * tail)[..., None]], axis=-1)
        bound = self.decay_bound
        if bound is not None:
            bound = (bound[0], min(bound[1], 0.5))
        return self._derived(m, None if self.separable else self.__call__, decay_rate=rate, center=center,
                             factors=factors, gradient=gradient, decay_bound=bound)

    def shifted(self, h):
        """
        The functional x -> psi(x + h). The weight center moves by -h, so the tensor rule
        integrates the shifted functional on re-centered nodes.
        """
        h = np.asarray(h, dtype=float).reshape(-1)
        base = self.extended(max(self.dim, h.size))
        h = np.concatenate([h, np.zeros(base.dim - h.size)])
        factors = None
        if base.separable:
            factors = [_shift_factor(f, s) for f, s in zip(base.factors, h)]
        gradient = None
        if base.gradient is not None:
            gradient = lambda x, g=base.gradient: g(x + h)
        return base._derived(base.dim, None if base.separable else (lambda x: base(x + h)),
                             center=base.center - h, factors=factors, gradient=gradient,
                             decay_bound=None, name="{}(.+h)".format(self.name))

    def composed(self, inner_map, dim=None, decay_rate=None, center=None, decay_class=None, name=None):
        """
        The functional x -> psi(inner_map(x)), where inner_map acts on dim-dimensional points.
        """
        dim = self.dim if dim is None else dim
        base = self.extended(max(self.dim, dim))
        return base._derived(dim, lambda x: base(inner_map(x)),
                             decay_rate=base.decay_rate if decay_rate is None else decay_rate,
                             center=base.center if center is None else center,
                             decay_class=decay_class or base.decay_class, decay_bound=None,
                             name=name or "{}oF".format(self.name))

    def times(self, multiplier, dim=None, name=None):
        """
        Pointwise product psi(x) * multiplier(x). The multiplier is batched over dim-dimensional
        points and must not spoil the Gaussian domination of psi.
        """
        dim = self.dim if dim is None else dim
        base = self.extended(max(self.dim, dim))
        return base._derived(base.dim, lambda x: base(x) * np.asarray(multiplier(x)),
                             decay_bound=None, name=name or "{}*g".format(self.name))

    def __add__(self, other):
        if not isinstance(other, CylinderFunctional):
            return NotImplemented
        dim = max(self.dim, other.dim)
        left, right = self.extended(dim), other.extended(dim)
        if left.decay_class == "oscillatory_damped" or right.decay_class == "oscillatory_damped":
            decay_class = "oscillatory_damped"
        elif "polynomial_times_gaussian" in (left.decay_class, right.decay_class):
            decay_class = "polynomial_times_gaussian"
        else:
            decay_class = "gaussian_dominated"
        center = left.center if np.array_equal(left.center, right.center) else np.zeros(dim)
        return CylinderFunctional(dim, lambda x: left(x) + right(x), decay_class=decay_class,
                                  decay_rate=np.minimum(left.decay_rate, right.decay_rate), center=center,
                                  name="({}+{})".format(self.name, other.name))

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        factors = None
        if self.separable and self.dim > 0:
            factors = [lambda x, f=self.factors[0]: scalar * np.asarray(f(x))] + self.factors[1:]
        gradient = None
        if self.gradient is not None:
            gradient = lambda x: scalar * np.asarray(self.gradient(x))
        return self._derived(self.dim, None if factors is not None else (lambda x: scalar * self._evaluate_own(x)),
                             factors=factors, gradient=gradient, decay_bound=None,
                             name="{}*{}".format(scalar, self.name))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def validate(self, n_samples=64, seed=0):
        violations = []
        rng = np.random.default_rng(seed)
        points = rng.normal(scale=2.0, size=(n_samples, max(self.dim, 1)))[:, :self.dim]
        values = self._evaluate_own(points)
        if not np.all(np.isfinite(values)):
            violations.append("evaluator is not finite on sampled inputs")
        elif self.decay_class == "gaussian_dominated" and self.decay_bound is not None:
            constant, rate = self.decay_bound
            envelope = constant * np.exp(-rate * np.sum(points ** 2, axis=-1))
            if np.any(np.abs(values) > envelope * (1 + 1e-12) + 1e-300):
                violations.append("gaussian decay bound violated on sampled inputs")
        return violations

    def __repr__(self):
        return "CylinderFunctional(name={}, dim={}, decay_class={})".format(self.name, self.dim, self.decay_class)


def _canonical_factor(x):
    return np.exp(-0.5 * x ** 2)


def _shift_factor(factor, shift):
    return lambda x: factor(x + shift)


class GaussianFunctional(CylinderFunctional):
    """
    psi(x) = scale * exp(-x^T M x / 2 + b^T x) with complex symmetric M whose real part is
    positive definite. The pairing is known in closed form.
    """

    def __init__(self, matrix, shift=None, scale=1.0, name=None):
        matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
        dim = matrix.shape[0]
        if matrix.shape != (dim, dim):
            raise ValueError("GaussianFunctional needs a square matrix")
        matrix = 0.5 * (matrix + matrix.T)
        real_eigs = np.linalg.eigvalsh(matrix.real)
        if real_eigs[0] <= 0:
            raise ValueError("real part of the quadratic form must be positive definite")
        shift = np.zeros(dim, dtype=complex) if shift is None else np.asarray(shift, dtype=complex)
        self.matrix = matrix
        self.shift = shift
        self.scale = complex(scale)

        def evaluator(x):
            quad = np.einsum("...i,ij,...j->...", x, matrix, x)
            return self.scale * np.exp(-0.5 * quad + x @ shift)

        def gradient(x):
            return evaluator(x)[..., None] * (shift - x @ matrix)

        super().__init__(dim, evaluator, decay_class="gaussian_dominated",
                         decay_rate=0.5 * real_eigs[0], gradient=gradient, name=name or "gaussian")

    def exact_pairing(self):
        """
        Normalized pairing scale * det(M)^{-1/2} * exp(b^T M^{-1} b / 2). The square root is
        taken per eigenvalue on the principal branch, which is continuous from real M.
        """
        eigenvalues = np.linalg.eigvals(self.matrix)
        root = np.prod(1.0 / np.sqrt(eigenvalues))
        exponent = 0.5 * self.shift @ np.linalg.solve(self.matrix, self.shift)
        return complex(self.scale * root * np.exp(exponent))

    def pulled_back(self, linear_map):
        """
        :returns: The functional x -> psi(L^{-1} x) for an invertible matrix L.
        """
        inverse = np.linalg.inv(np.asarray(linear_map, dtype=float))
        return GaussianFunctional(inverse.T @ self.matrix @ inverse, inverse.T @ self.shift,
                                  self.scale, name="{}oL^-1".format(self.name))

    def times_constant(self, constant):
        return GaussianFunctional(self.matrix, self.shift, self.scale * constant, name=self.name)
