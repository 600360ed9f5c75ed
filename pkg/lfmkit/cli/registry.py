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

from collections import OrderedDict

from lfmkit.cli.anomaly_experiments import (AnomalyFlagshipExperiment, AnomalyNystromExperiment,
                                            AnomalyTranslationExperiment)
from lfmkit.cli.flow_experiments import (ChangeOfVariablesExperiment, FredholmExperiment, LogdetExperiment,
                                         ScalingExperiment, TraceExperiment)
from lfmkit.cli.lfm_experiments import (DimensionSweepExperiment, LinearityExperiment, NormalizationExperiment,
                                        ShiftInvarianceExperiment)
from lfmkit.cli.propagator_experiments import (FeynmanOracleExperiment, OracleOrderExperiment,
                                               TrotterOrderExperiment, WeylDilationExperiment,
                                               WeylReductionExperiment)
from lfmkit.core.lfmkitError import ConfigError

REGISTRY = OrderedDict((experiment.name, experiment) for experiment in (
    NormalizationExperiment(),
    DimensionSweepExperiment(),
    LinearityExperiment(),
    ShiftInvarianceExperiment(),
    TraceExperiment(),
    LogdetExperiment(),
    FredholmExperiment(),
    ChangeOfVariablesExperiment(),
    ScalingExperiment(),
    FeynmanOracleExperiment(),
    TrotterOrderExperiment(),
    WeylReductionExperiment(),
    WeylDilationExperiment(),
    OracleOrderExperiment(),
    AnomalyTranslationExperiment(),
    AnomalyNystromExperiment(),
    AnomalyFlagshipExperiment(),
))


def get_experiment(name):
    try:
        return REGISTRY[name]
    except KeyError:
        raise ConfigError("unknown experiment '{}'; run list-experiments for the names".format(name)) from None


def list_experiments():
    """ :returns: (name, description) pairs in registry order. """
    return [(name, experiment.description) for name, experiment in REGISTRY.items()]
