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

import os
import copy

from lfmkit.core.jsonify import Jsonify
from lfmkit.core.lfmkitError import BudgetExceeded

SCHEMES = ("tensor_gauss_hermite", "gaussian_importance_mc")
DEFAULT_NODE_BUDGET = 10 ** 7
DEFAULT_EPSILON_SCHEDULE = (0.4, 0.2, 0.1, 0.05)


def node_budget_from_env():
    """
    :returns: The tensor node budget, LFMKIT_NODE_BUDGET if set, else 10**7.
    """
    value = os.environ.get("LFMKIT_NODE_BUDGET")
    if value is None or value.strip() == "":
        return DEFAULT_NODE_BUDGET
    try:
        budget = int(float(value))
    except ValueError:
        raise ValueError("LFMKIT_NODE_BUDGET must be a number, got '{}'".format(value))
    if budget < 1:
        raise ValueError("LFMKIT_NODE_BUDGET must be positive, got {}".format(budget))
    return budget


class QuadratureSpec(Jsonify):
    """
    Settings for every LFM evaluation.

    :param scheme: "tensor_gauss_hermite" or "gaussian_importance_mc".
    :type scheme: str

    :param nodes_per_dim: Gauss-Hermite nodes per coordinate (tensor scheme).
    :type nodes_per_dim: int

    :param sample_count: Number of Gaussian samples (MC scheme).
    :type sample_count: int

    :param rng_seed: Seed of the MC sample stream.
    :type rng_seed: int

    :param damping_epsilon: Damping exp(-eps |x|^2) for oscillatory integrands.
    :type damping_epsilon: float

    :param epsilon_schedule: Decreasing damping values extrapolated to eps -> 0.
    :type epsilon_schedule: tuple

    :param node_budget: Maximum tensor evaluations; defaults to LFMKIT_NODE_BUDGET or 10**7.
    :type node_budget: int

    :param auto_switch: Switch to MC instead of failing when a tensor request is over budget.
    :type auto_switch: bool

    :param jobs: Worker threads for node evaluation.
    :type jobs: int

    :param chunk_size: Nodes per evaluation chunk. Chunking fixes the summation order.
    :type chunk_size: int

    :param dim: If given, the tensor budget is checked at construction for this dimension.
    :type dim: int
    """

    def __init__(self, scheme="tensor_gauss_hermite", nodes_per_dim=20, sample_count=100000, rng_seed=0,
                 damping_epsilon=0.0, epsilon_schedule=None, node_budget=None, auto_switch=True,
                 jobs=1, chunk_size=65536, dim=None):
        if scheme not in SCHEMES:
            raise ValueError("Unknown quadrature scheme '{}', expected one of {}".format(scheme, SCHEMES))
        if int(nodes_per_dim) != nodes_per_dim or nodes_per_dim < 1:
            raise ValueError("nodes_per_dim must be a positive integer")
        if int(sample_count) != sample_count or sample_count < 2:
            raise ValueError("sample_count must be an integer >= 2")
        self.scheme = scheme
        self.nodes_per_dim = int(nodes_per_dim)
        self.sample_count = int(sample_count)
        self.rng_seed = int(rng_seed)
        self.damping_epsilon = float(damping_epsilon)
        self.epsilon_schedule = None if epsilon_schedule is None else tuple(float(e) for e in epsilon_schedule)
        self.node_budget = node_budget_from_env() if node_budget is None else int(node_budget)
        self.auto_switch = bool(auto_switch)
        self.jobs = max(1, int(jobs))
        self.chunk_size = max(1, int(chunk_size))
        if dim is not None and scheme == "tensor_gauss_hermite":
            if self.nodes_per_dim ** int(dim) > self.node_budget:
                raise BudgetExceeded("{} nodes in dimension {} exceed the tensor budget of {}".format(
                    self.nodes_per_dim, dim, self.node_budget))

    @classmethod
    def tensor(cls, nodes_per_dim=20, **kwargs):
        return cls(scheme="tensor_gauss_hermite", nodes_per_dim=nodes_per_dim, **kwargs)

    @classmethod
    def monte_carlo(cls, sample_count=100000, rng_seed=0, **kwargs):
        return cls(scheme="gaussian_importance_mc", sample_count=sample_count, rng_seed=rng_seed, **kwargs)

    def replace(self, **changes):
        """ :returns: A copy with the given fields replaced. """
        new = copy.copy(self)
        for key, value in changes.items():
            if key not in new.__dict__:
                raise TypeError("QuadratureSpec has no field '{}'".format(key))
            setattr(new, key, value)
        return new

    @property
    def damped(self):
        return self.damping_epsilon > 0 or bool(self.epsilon_schedule)

    def validate(self):
        violations = []
        if self.damping_epsilon < 0:
            violations.append("damping_epsilon must be >= 0")
        if self.epsilon_schedule is not None:
            schedule = self.epsilon_schedule
            if len(schedule) < 2:
                violations.append("epsilon_schedule needs at least two values")
            if any(e <= 0 for e in schedule):
                violations.append("epsilon_schedule values must be positive")
            if any(a <= b for a, b in zip(schedule, schedule[1:])):
                violations.append("epsilon_schedule must be strictly decreasing")
        if self.node_budget < 1:
            violations.append("node budget must be positive")
        return violations
