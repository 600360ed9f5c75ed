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

import csv
import os
import warnings
from collections import UserList

import numpy as np

from lfmkit.core.jsonify import Jsonify


class LfmValue(Jsonify):
    """
    One evaluation of the normalized functional (nu, psi).

    :param value: The pairing value.
    :param dim: Dimension n of the subspace used.
    :param quadrature_error_estimate: Nonnegative error estimate.
    :param epsilon_used: Damping used; 0 for undamped and extrapolated values.
    :param scheme_used: Quadrature scheme that produced the value.
    :param switched: True if a tensor request was switched to MC.
    :param evaluations: Number of integrand evaluations.
    """

    def __init__(self, value, dim, quadrature_error_estimate, epsilon_used=0.0, scheme_used="tensor_gauss_hermite",
                 switched=False, evaluations=0):
        if not quadrature_error_estimate >= 0:
            raise ValueError("quadrature_error_estimate must be >= 0, got {}".format(quadrature_error_estimate))
        self.value = complex(value)
        self.dim = int(dim)
        self.quadrature_error_estimate = float(quadrature_error_estimate)
        self.epsilon_used = float(epsilon_used)
        self.scheme_used = scheme_used
        self.switched = bool(switched)
        self.evaluations = int(evaluations)

    def __repr__(self):
        return "LfmValue(value={:.15g}, dim={}, error={:.2e})".format(self.value, self.dim,
                                                                      self.quadrature_error_estimate)


class SweepResult(UserList, Jsonify):
    """
    Values of a dimension sweep, one LfmValue per n = 1..n_max, with successive differences.
    """

    def __init__(self, data=None, limit=None):
        super().__init__(data or [])
        self.limit = limit

    @property
    def differences(self):
        values = [v.value for v in self.data]
        return [abs(b - a) for a, b in zip(values, values[1:])]

    @property
    def non_cauchy(self):
        """
        True if the successive differences are not decreasing over the last three terms.
        Differences at rounding level count as converged.
        """
        tail = self.differences[-3:]
        if len(tail) < 3:
            return False
        floor = 1e-14 * max(1.0, max(abs(v.value) for v in self.data))
        if max(tail) <= floor:
            return False
        return not (tail[0] > tail[1] > tail[2] or tail[2] <= floor)

    def rows(self):
        rows = []
        for index, entry in enumerate(self.data):
            difference = self.differences[index - 1] if index > 0 else None
            rows.append({"n": entry.dim, "real": entry.value.real, "imag": entry.value.imag,
                         "difference": difference, "error_estimate": entry.quadrature_error_estimate})
        return rows

    def to_csv(self, path):
        write_csv(path, self.rows())


class PropagatorResult(Jsonify):
    """
    Output of a time-sliced or split-step propagation.

    :param wave: phi(t, .) on the spatial grid of phi0.
    :param mode: "real_time" or "imaginary_time".
    :param n_slices: Number of slices or steps used.
    :param error_estimate: Gap to the run at half the slices, if computed.
    :param norm_before: L2 norm of phi0.
    :param norm_after: L2 norm of the result.
    """

    def __init__(self, wave, mode, n_slices, error_estimate=None, norm_before=None, norm_after=None,
                 rule="endpoint", epsilon_used=0.0, method="transfer"):
        self.wave = wave
        self.mode = mode
        self.n_slices = int(n_slices)
        self.error_estimate = error_estimate
        self.norm_before = norm_before
        self.norm_after = norm_after
        self.rule = rule
        self.epsilon_used = epsilon_used
        self.method = method
        if mode == "real_time" and (norm_before is None or norm_after is None):
            warnings.warn("real-time PropagatorResult without recorded norms")

    @property
    def norm_drift(self):
        if self.norm_before is None or self.norm_after is None:
            return None
        return abs(self.norm_after - self.norm_before)


class AnomalyReport(Jsonify):
    """
    Separate measurements of action invariance, the determinant field and the density change
    under a flow.

    :param action_gap: max |S(F(t, xi)) - S(xi)| over sampled paths.
    :param det_field_stats: (min, max, mean) of det F_2'(t, x) over the same samples.
    :param pairing_gap: |(nu, phi * det) - (nu, phi)| for the e^{iS}-weighted probe.
    :param verdict: "anomalous" or "invariant".
    :param displacement_stats: (min, max, mean) of |F(t, xi) - xi| over the sampled paths.
    """

    def __init__(self, action_gap, det_field_stats, pairing_gap, verdict, cov_lhs=None, cov_rhs=None,
                 cov_gap=None, cov_tolerance=None, density_ratio_deviation=None, tolerance=1e-6,
                 det_tolerance=1e-2, pairing_method="quadrature", sample_count=0, displacement_stats=None):
        self.action_gap = float(action_gap)
        self.det_field_stats = tuple(float(np.real(s)) for s in det_field_stats)
        self.pairing_gap = float(pairing_gap)
        self.verdict = verdict
        self.cov_lhs = cov_lhs
        self.cov_rhs = cov_rhs
        self.cov_gap = cov_gap
        self.cov_tolerance = cov_tolerance
        self.density_ratio_deviation = density_ratio_deviation
        self.tolerance = tolerance
        self.det_tolerance = det_tolerance
        self.pairing_method = pairing_method
        self.sample_count = sample_count
        self.displacement_stats = None if displacement_stats is None else tuple(float(s) for s in displacement_stats)

    @staticmethod
    def decide(det_field_stats, action_gap, action_tolerance=1e-6, det_tolerance=1e-2):
        """
        :returns: "anomalous" iff det deviates from 1 beyond det_tolerance while the action gap
            stays below action_tolerance.
        """
        det_min, det_max = det_field_stats[0], det_field_stats[1]
        det_deviation = max(abs(det_min - 1.0), abs(det_max - 1.0))
        if det_deviation > det_tolerance and action_gap < action_tolerance:
            return "anomalous"
        return "invariant"

    @property
    def cov_holds(self):
        if self.cov_gap is None or self.cov_tolerance is None:
            return None
        return self.cov_gap < self.cov_tolerance


class ExperimentResult(Jsonify):
    """
    Machine-readable outcome of one experiment run.

    :param experiment: Registry name of the experiment.
    :param inputs: Echo of the resolved parameters.
    :param outputs: Measured quantities.
    :param tolerance: Tolerances the assertions used.
    :param passed: Conjunction of the experiment's assertions.
    :param seed: Seed the run used.
    :param rows: Optional table rows written as CSV plot data.
    """

    def __init__(self, experiment, inputs, outputs, tolerance, passed, seed, wall_time_s=None, rows=None,
                 failures=None):
        self.experiment = experiment
        self.inputs = inputs
        self.outputs = outputs
        self.tolerance = tolerance
        self.passed = bool(passed)
        self.seed = seed
        self.wall_time_s = wall_time_s
        self.rows = rows
        self.failures = list(failures or [])

    def to_dict(self):
        return {
            "experiment": self.experiment,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "wall_time_s": self.wall_time_s,
            "seed": self.seed,
            "failures": self.failures,
        }

    @classmethod
    def from_dict(cls, src_dict):
        return cls(src_dict["experiment"], src_dict["inputs"], src_dict["outputs"], src_dict["tolerance"],
                   src_dict["pass"], src_dict["seed"], wall_time_s=src_dict.get("wall_time_s"),
                   failures=src_dict.get("failures"))

    def to_csv(self, path):
        if not self.rows:
            return False
        write_csv(path, self.rows)
        return True


def write_csv(path, rows):
    """
    Write a list of dict rows to path; the header is the key order of the first row.
    The file is written under a temporary name and moved into place.
    """
    field_names = list(rows[0].keys())
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    temporary = path + ".tmp"
    with open(temporary, 'w', newline='') as csv_file:
        csv_writer = csv.writer(csv_file)
        csv_writer.writerow(field_names)
        for row in rows:
            csv_writer.writerow([_csv_cell(row[name]) for name in field_names])
    os.replace(temporary, path)


def _csv_cell(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        return repr(complex(value))
    return value
