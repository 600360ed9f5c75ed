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
import json
import tempfile
from concurrent.futures import ThreadPoolExecutor

from lfmkit.cli.config import load_config
from lfmkit.core import log
from lfmkit.core.lfmkitError import AssertionFailure, ExperimentError


def write_atomic(path, text):
    """ Write text to path through a temporary file in the same directory. """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    handle, temporary = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(handle, "w") as output:
            output.write(text)
            output.write("\n")
        os.replace(temporary, path)
    except BaseException:
        if os.path.exists(temporary):
            os.remove(temporary)
        raise


class ExperimentRunner:
    """
    Runs the experiments of a configuration file and writes one result file per experiment.

    :param output_dir: Directory of the result files.
    :type output_dir: str

    :param seed: Seed overriding every seed of the configuration.
    :type seed: int

    :param jobs: Worker threads each experiment may use for quadrature.
    :type jobs: int

    :param timing: Record wall time in the result files as well as in timings.json.
    :type timing: bool

    :param concurrent: Run the experiments of the file concurrently.
    :type concurrent: bool

    :param check_determinism: Run every experiment twice and fail it when the two result hashes differ.
    :type check_determinism: bool
    """

    def __init__(self, output_dir="results", seed=None, jobs=1, timing=False, concurrent=False,
                 check_determinism=False):
        self.output_dir = output_dir
        self.seed = seed
        self.jobs = max(1, int(jobs))
        self.timing = timing
        self.concurrent = concurrent
        self.check_determinism = check_determinism

    def run(self, config_path):
        """
        :returns: List of ExperimentResult in file order.
        :raises ConfigError: When the configuration does not load.
        :raises AssertionFailure: After all files are written, when any experiment failed.
        """
        entries = load_config(config_path)
        if self.concurrent and len(entries) > 1:
            with ThreadPoolExecutor(max_workers=len(entries)) as executor:
                results = list(executor.map(self._run_entry, entries))
        else:
            results = [self._run_entry(entry) for entry in entries]

        timings = {entry.label: result.wall_time_s for entry, result in results}
        write_atomic(os.path.join(self.output_dir, "timings.json"), json.dumps(timings, indent=2, sort_keys=True))

        failed = [(entry.label, result.failures) for entry, result in results if not result.passed]
        for entry, result in results:
            log.info("%s: %s", entry.label, "pass" if result.passed else "FAIL")
        if failed:
            raise AssertionFailure("; ".join("{} failed {}".format(label, ", ".join(failures) or "assertions")
                                             for label, failures in failed))
        return [result for _, result in results]

    def _run_entry(self, entry):
        seed = self.seed if self.seed is not None else (entry.seed if entry.seed is not None else 0)
        result = entry.experiment.run(entry.parameters, seed=seed, jobs=self.jobs, timing=True)
        wall_time = result.wall_time_s
        if self.check_determinism:
            self._check_determinism(entry, seed, result)
        if not self.timing:
            result.wall_time_s = None
        text = result.to_json()
        if text is None:
            raise ExperimentError("result of {} is not JSON encodable".format(entry.label))
        write_atomic(os.path.join(self.output_dir, entry.label + ".json"), text)
        if result.rows:
            result.to_csv(os.path.join(self.output_dir, entry.label + ".csv"))
        result.wall_time_s = wall_time
        return entry, result

    def _check_determinism(self, entry, seed, result):
        """ Re-run an entry and compare JSON hashes with wall time left out. """
        repeat = entry.experiment.run(entry.parameters, seed=seed, jobs=self.jobs)
        wall_time, result.wall_time_s = result.wall_time_s, None
        first = result.get_json_hash()
        result.wall_time_s = wall_time
        if first is not None and first == repeat.get_json_hash():
            return
        log.warning("%s is not reproducible under seed %s", entry.label, seed)
        result.passed = False
        result.failures = sorted(set(result.failures) | {"determinism"})


def run(config_path, output_dir="results", seed=None, jobs=1, timing=False, concurrent=False,
        check_determinism=False):
    """
    Run a configuration file.

    :returns: 0 when every experiment's assertions pass.
    :raises ConfigError: For a missing or malformed configuration.
    :raises AssertionFailure: When any experiment fails.
    """
    ExperimentRunner(output_dir, seed, jobs, timing, concurrent, check_determinism).run(config_path)
    return 0
