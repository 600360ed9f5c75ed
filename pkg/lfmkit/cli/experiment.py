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

import time

from lfmkit.core import log
from lfmkit.core.lfmkitError import (ConfigError, DomainError, ExperimentError, FlowError, PropagatorError,
                                     QuadratureError)
from lfmkit.core.quadrature import QuadratureSpec
from lfmkit.core.results import ExperimentResult


def _floats(text):
    return tuple(float(item) for item in text.split(",") if item.strip())


def _ints(text):
    return tuple(int(item) for item in text.split(",") if item.strip())


def _bool(text):
    lowered = text.strip().lower()
    if lowered in ("1", "yes", "true", "on"):
        return True
    if lowered in ("0", "no", "false", "off"):
        return False
    raise ValueError(text)


_PARSERS = {
    "int": int,
    "float": float,
    "str": str.strip,
    "bool": _bool,
    "floats": _floats,
    "ints": _ints,
}


class Parameter:
    """
    One entry of an experiment's parameter table.

    :param kind: "int", "float", "str", "bool", or "floats"/"ints" for comma-separated lists.
    :type kind: str

    :param default: Value used when the config does not set the key.

    :param role: One-line description of the key, with its unit where it has one.
    :type role: str

    :param choices: Allowed values, for string keys.
    """

    def __init__(self, kind, default, role, choices=None):
        if kind not in _PARSERS:
            raise ValueError("Unknown parameter kind '{}'".format(kind))
        self.kind = kind
        self.default = default
        self.role = role
        self.choices = None if choices is None else tuple(choices)

    def parse(self, text):
        """ :raises ValueError: When text does not convert to this kind. """
        value = _PARSERS[self.kind](text)
        if self.choices is not None and value not in self.choices:
            raise ValueError("'{}' is not one of {}".format(value, ", ".join(self.choices)))
        return value


class Experiment:
    """
    Abstract class for a built-in experiment.

    Subclasses declare a name, a one-line description, a parameter table and the tolerances
    their assertions use, and implement execute().
    """

    name = "Experiment"
    description = ""
    parameters = {}
    tolerance = {}
    writes_csv = False

    def run(self, params=None, seed=0, jobs=1, timing=False):
        """
        Run the experiment and collect its result.

        :param params: Parameter values; missing keys take their defaults.
        :type params: dict

        :param seed: Seed for every random draw of the run.
        :type seed: int

        :param jobs: Worker threads for quadrature.
        :type jobs: int

        :param timing: Record wall time in the result.
        :type timing: bool

        :returns: ExperimentResult
        """
        resolved = self.resolve(params or {})
        log.info("Running %s with %s", self.name, resolved)
        start = time.perf_counter()
        try:
            outputs, checks, rows = self.execute(resolved, seed, jobs)
        except (DomainError, QuadratureError, FlowError, PropagatorError, ValueError) as err:
            log.error("%s failed: %s", self.name, err)
            outputs, checks, rows = {"error": "{}: {}".format(type(err).__name__, err)}, {"completed": False}, None
        elapsed = time.perf_counter() - start
        failures = sorted(label for label, ok in checks.items() if not ok)
        for label in failures:
            log.warning("%s: assertion '%s' failed", self.name, label)
        return ExperimentResult(self.name, resolved, outputs, dict(self.tolerance), not failures, seed,
                                wall_time_s=elapsed if timing else None, rows=rows if self.writes_csv else None,
                                failures=failures)

    def resolve(self, params):
        """ Fill in defaults and reject keys the parameter table does not declare. """
        unknown = sorted(set(params) - set(self.parameters))
        if unknown:
            raise ConfigError(["{}: unknown parameter '{}'".format(self.name, key) for key in unknown])
        return {key: params.get(key, parameter.default) for key, parameter in self.parameters.items()}

    def parse_parameters(self, values, section):
        """
        Convert the raw strings of a config section.

        :returns: (params, errors)
        """
        params, errors = {}, []
        for key, text in values.items():
            parameter = self.parameters.get(key)
            if parameter is None:
                errors.append("[{}] unknown key '{}' for experiment {}".format(section, key, self.name))
                continue
            try:
                params[key] = parameter.parse(text)
            except ValueError as err:
                errors.append("[{}] {}: expected {}, got '{}' ({})".format(section, key, parameter.kind, text, err))
        return params, errors

    def execute(self, params, seed, jobs):
        """
        :returns: (outputs, checks, rows). checks maps an assertion label to its outcome;
            rows is the optional CSV table.
        """
        raise ExperimentError("This abstract experiment class cannot be used directly.")

    @staticmethod
    def quadrature(params, jobs, **kwargs):
        return QuadratureSpec.tensor(params.get("nodes_per_dim", 20), jobs=jobs, **kwargs)

    def __repr__(self):
        return "{}({})".format(type(self).__name__, self.name)


def nodes_parameter(default=20):
    return Parameter("int", default, "Gauss-Hermite nodes per coordinate")
