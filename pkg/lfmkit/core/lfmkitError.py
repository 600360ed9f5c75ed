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

# Domain construction errors
class DomainError(Exception):
    pass


class GridMismatch(DomainError):
    pass


class ValidationError(DomainError):

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations or [])


# Quadrature errors
class QuadratureError(Exception):
    pass


class BudgetExceeded(QuadratureError):
    pass


class NonIntegrable(QuadratureError):
    pass


# Flow errors
class FlowError(Exception):
    pass


class NoJacobian(FlowError):
    pass


class SingularJacobian(FlowError):

    def __init__(self, message, tau=None):
        super().__init__(message)
        self.tau = tau


# Propagator errors
class PropagatorError(Exception):
    pass


class DegenerateSlice(PropagatorError):
    pass


class Caustic(PropagatorError):
    pass


class UnstableStep(PropagatorError):
    pass


# Experiment errors
class ExperimentError(Exception):
    pass


class ConfigError(ExperimentError):

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class AssertionFailure(ExperimentError):
    pass
