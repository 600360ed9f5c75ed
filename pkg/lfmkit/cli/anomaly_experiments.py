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
Experiments separating action invariance from invariance of the full density.
"""

import numpy as np

from lfmkit.cli.experiment import Experiment, Parameter, nodes_parameter
from lfmkit.core.timegrid import TimeGrid
from lfmkit.cov_anomaly.anomaly import anomaly_report, construct_anomalous_flow
from lfmkit.feynman.symbols import PotentialSpec
from lfmkit.flows.library import integral_operator_flow, translation_flow
from lfmkit.flows.logdet import flow_logdet, fredholm_determinant, gaussian_kernel, nystrom_operator


def _det_deviation(report):
    return max(abs(s - 1.0) for s in report.det_field_stats[:2])


def _report_outputs(report):
    return {
        "action_gap": report.action_gap,
        "displacement_stats": list(report.displacement_stats),
        "det_field_stats": list(report.det_field_stats),
        "det_deviation": _det_deviation(report),
        "pairing_gap": report.pairing_gap,
        "verdict": report.verdict,
        "cov_lhs": report.cov_lhs,
        "cov_rhs": report.cov_rhs,
        "cov_gap": report.cov_gap,
        "density_ratio_deviation": report.density_ratio_deviation,
        "pairing_method": report.pairing_method,
    }


def _anomaly_parameters(n, t):
    return {
        "n": Parameter("int", n, "time slices, one path coordinate each"),
        "t": Parameter("float", t, "flow time"),
        "path_time": Parameter("float", 1.0, "duration of the sliced path"),
        "sample_count": Parameter("int", 256, "sampled paths for the action and determinant fields"),
    }


class AnomalyTranslationExperiment(Experiment):
    name = "anomaly-translation"
    description = "A translation changes the free action but keeps det F_2' = 1: no anomaly"
    parameters = dict(
        shift=Parameter("floats", (0.5, -0.25, 0.125, 0.0), "translation vector h"),
        nodes_per_dim=nodes_parameter(),
        **_anomaly_parameters(4, 1.0),
    )
    tolerance = {"det": 1e-12, "pairing_gap": 1e-10, "cov_gap": 1e-7}

    def execute(self, params, seed, jobs):
        n = params["n"]
        report = anomaly_report(translation_flow(params["shift"]), PotentialSpec.free(),
                                TimeGrid(params["path_time"], n), n, self.quadrature(params, jobs), t=params["t"],
                                sample_count=params["sample_count"], seed=seed,
                                cov_tolerance=self.tolerance["cov_gap"])
        checks = {
            "invariant": report.verdict == "invariant",
            "det": _det_deviation(report) < self.tolerance["det"],
            "pairing_gap": report.pairing_gap < self.tolerance["pairing_gap"],
            "cov": bool(report.cov_holds),
        }
        return _report_outputs(report), checks, None


class AnomalyNystromExperiment(Experiment):
    name = "anomaly-nystrom"
    description = "The integral-operator flow I + tK: det(I + tK) != 1 and the action changes"
    parameters = dict(
        length=Parameter("float", 1.0, "interval length of the kernel"),
        **_anomaly_parameters(40, 1.0),
    )
    tolerance = {"det_agreement": 1e-9, "logdet": 1e-6, "det_deviation": 1e-2, "cov_gap": 1e-7}

    def execute(self, params, seed, jobs):
        n, t = params["n"], params["t"]
        F = integral_operator_flow(nystrom_operator(gaussian_kernel, params["length"], n))
        report = anomaly_report(F, PotentialSpec.free(), TimeGrid(params["path_time"], n), n, t=t,
                                sample_count=params["sample_count"], seed=seed, cov_tolerance=self.tolerance["cov_gap"])
        fredholm = fredholm_determinant(gaussian_kernel, params["length"], n, t)
        via_trace, via_direct, logdet_gap = flow_logdet(F, t, np.zeros(n), n)
        agreement = max(abs(s - fredholm) for s in report.det_field_stats) / abs(fredholm)
        outputs = _report_outputs(report)
        outputs.update({"fredholm_determinant": fredholm, "det_via_trace": via_trace, "logdet_gap": logdet_gap,
                        "det_agreement": agreement})
        checks = {
            "det_agreement": agreement < self.tolerance["det_agreement"],
            "logdet": logdet_gap < self.tolerance["logdet"],
            "det_deviation": _det_deviation(report) > self.tolerance["det_deviation"],
            "pairing_changes": report.pairing_gap > 0,
            "cov": bool(report.cov_holds),
        }
        return outputs, checks, None


class AnomalyFlagshipExperiment(Experiment):
    name = "anomaly-flagship"
    description = "A flow that moves the sampled paths at fixed free action while det F_2' != 1 changes the density"
    parameters = dict(
        n_reference=Parameter("int", 2, "reference paths the flow rotates within their span"),
        strength=Parameter("float", 0.2, "scale of the generator's diagonal"),
        rotation=Parameter("float", 1.0, "angular rate of the rotation on the references"),
        nodes_per_dim=nodes_parameter(),
        **_anomaly_parameters(4, 0.5),
    )
    tolerance = {"action_gap": 1e-6, "displacement": 1e-3, "det_deviation": 1e-2, "cov_gap": 1e-7,
                 "density_ratio": 1e-3}

    def execute(self, params, seed, jobs):
        n = params["n"]
        flow = construct_anomalous_flow(n, params["n_reference"], seed, params["strength"], params["rotation"])
        report = anomaly_report(flow.flow, PotentialSpec.free(), TimeGrid(params["path_time"], n), n,
                                self.quadrature(params, jobs), t=params["t"], sample_count=params["sample_count"],
                                seed=seed, path_sampler=flow.sample_paths, tolerance=self.tolerance["action_gap"],
                                det_tolerance=self.tolerance["det_deviation"], cov_tolerance=self.tolerance["cov_gap"])
        outputs = _report_outputs(report)
        outputs["construction_residuals"] = flow.residuals
        checks = {
            "action_gap": report.action_gap < self.tolerance["action_gap"],
            "paths_move": report.displacement_stats[0] > self.tolerance["displacement"],
            "det_deviation": _det_deviation(report) > self.tolerance["det_deviation"],
            "cov": bool(report.cov_holds),
            "density_ratio": report.density_ratio_deviation > self.tolerance["density_ratio"],
            "anomalous": report.verdict == "anomalous",
        }
        return outputs, checks, None
