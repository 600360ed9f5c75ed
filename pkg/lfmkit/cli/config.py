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
Experiment configuration files: INI text with one section per experiment.

    [DEFAULT]
    seed = 7

    [normalization]
    n_max = 8

    [short-sweep]
    experiment = dimension-sweep
    n_max = 6
"""

import os
import configparser

from lfmkit.cli.registry import REGISTRY
from lfmkit.core.lfmkitError import ConfigError

RESERVED_KEYS = ("experiment", "seed")


class ConfigEntry:
    """
    One configured run: a section label, the experiment it names, its parsed parameters and seed.
    """

    def __init__(self, label, experiment, parameters, seed=None):
        self.label = label
        self.experiment = experiment
        self.parameters = parameters
        self.seed = seed

    def __repr__(self):
        return "ConfigEntry({}, {})".format(self.label, self.experiment.name)


def load_config(path, registry=None):
    """
    Parse and check a configuration file.

    :param path: Path of the INI file.
    :param registry: Mapping of experiment names; the built-in registry by default.

    :returns: List of ConfigEntry in file order.
    :raises ConfigError: Listing every unknown section, unknown key and malformed value.
    """
    registry = REGISTRY if registry is None else registry
    if not os.path.isfile(path):
        raise ConfigError("config file '{}' does not exist".format(path))
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path) as config_file:
            parser.read_file(config_file)
    except (configparser.Error, UnicodeDecodeError) as err:
        raise ConfigError("could not parse '{}': {}".format(path, err)) from err

    entries, errors = [], []
    if not parser.sections():
        errors.append("'{}' names no experiments".format(path))
    for section in parser.sections():
        values = dict(parser.items(section))
        name = values.pop("experiment", section).strip()
        seed_text = values.pop("seed", None)
        experiment = registry.get(name)
        if experiment is None:
            errors.append("[{}] unknown experiment '{}'".format(section, name))
            continue
        seed = None
        if seed_text is not None:
            try:
                seed = int(seed_text)
            except ValueError:
                errors.append("[{}] seed: expected int, got '{}'".format(section, seed_text))
        parameters, problems = experiment.parse_parameters(values, section)
        errors.extend(problems)
        entries.append(ConfigEntry(section, experiment, parameters, seed))
    if errors:
        raise ConfigError(errors)
    return entries
