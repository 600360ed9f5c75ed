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
Experiments on vector fields, flows, determinants and the change of variables.
"""

import numpy as np

from lfmkit.cli.experiment import Experiment, Parameter, nodes_parameter
from lfmkit.cov_anomaly.change_of_variables import pulled_back, with_determinant
from lfmkit.flows.library import (diagonal_field, elementwise_tanh_flow, field_flow, integral_operator_flow,
                                  linear_flow, scaling_flow, shipped_fields, shipped_functionals, sine_field,
                                  tanh_shear_flow, translation_flow)
from lfmkit.flows.logdet import (determinant_by_volume, flow_logdet, fredholm_determinant, fredholm_sweep,
                                 gaussian_kernel, logdet_first_order_link, nystrom_operator)
from lfmkit.flows.trace import derivative_pairing_values, trace_truncation_sweep
from lfmkit.lfm.functionals import canonical_gaussian, polynomial_gaussian
from lfmkit.lfm.integrator import integrate_lfm


def _allowed(floor, factor, *values):
    return max(floor, factor * max(v.quadrature_error_estimate for v in values))


class TraceExperiment(Experiment):
    name = "thm1-trace"
    description = "Derivative of the measure along k equals tr(k') nu, over shipped fields and functionals"
    parameters = {
        "n": Parameter("int", 3, "subspace dimension, at most 6"),
        "nodes_per_dim": nodes_parameter(),
        "sweep_max": Parameter("int", 40, "largest n of the trace truncation sweep"),
    }
    tolerance = {"gap_floor": 1e-8, "error_factor": 10.0}

    def execute(self, params, seed, jobs):
        n = params["n"]
        quad = self.quadrature(params, jobs)
        rows, passed = [], True
        for field_name, k in shipped_fields().items():
            for functional_name, phi in shipped_functionals(n).items():
                lhs, rhs = derivative_pairing_values(k, phi, n, quad)
                gap = abs(lhs.value - rhs.value)
                allowed = _allowed(self.tolerance["gap_floor"], self.tolerance["error_factor"], lhs, rhs)
                rows.append({"field": field_name, "functional": functional_name, "lhs": lhs.value,
                             "rhs": rhs.value, "gap": gap, "allowed": allowed})
                passed = passed and gap < allowed
        sweep, cauchy = trace_truncation_sweep(diagonal_field(), range(5, params["sweep_max"] + 1, 5))
        outputs = {"rows": rows, "max_gap": max(row["gap"] for row in rows), "trace_sweep": sweep,
                   "trace_sweep_cauchy": cauchy}
        return outputs, {"pairing": passed, "trace_cauchy": cauchy}, None


class LogdetExperiment(Experiment):
    name = "thm3-logdet"
    description = "det F_2' by integrated trace against the direct determinant on matrix and Nystrom flows"
    parameters = {
        "matrix_dim": Parameter("int", 4, "dimension of the random matrix flow, at most 8"),
        "nystrom_n": Parameter("int", 40, "Nystrom nodes of the integral operator flow"),
        "t": Parameter("float", 0.7, "flow time"),
        "ode_steps": Parameter("int", 64, "RK4 steps of the trace integral"),
    }
    tolerance = {"relative_gap": 1e-6, "first_order": 1e-6, "volume": 1e-5}

    def execute(self, params, seed, jobs):
        rng = np.random.default_rng(seed)
        t, steps, m = params["t"], params["ode_steps"], params["matrix_dim"]
        kernel = nystrom_operator(gaussian_kernel, 1.0, params["nystrom_n"])
        cases = [
            ("expm", linear_flow(0.5 * rng.standard_normal((m, m)) / np.sqrt(m)), m, rng.standard_normal(m)),
            ("elementwise_tanh", elementwise_tanh_flow(), 8, rng.standard_normal(8)),
            ("tanh_shear", tanh_shear_flow(), 3, rng.standard_normal(3)),
            ("x+t*sine", field_flow(sine_field()), 2, rng.standard_normal(2)),
            ("I+tK", integral_operator_flow(kernel), params["nystrom_n"], np.zeros(params["nystrom_n"])),
        ]
        rows = []
        for label, F, n, x in cases:
            via_trace, via_direct, gap = flow_logdet(F, t, x, n, steps)
            rows.append({"flow": label, "n": n, "via_trace": via_trace, "via_direct": via_direct,
                         "relative_gap": gap})

        links = []
        for label, k in (("diag", diagonal_field()), ("sine", sine_field())):
            slope, trace, gap = logdet_first_order_link(k, np.zeros(6), 6)
            links.append({"field": label, "slope": slope, "trace": trace, "relative_gap": gap})
        volume, det, volume_gap = determinant_by_volume(elementwise_tanh_flow(), t, rng.standard_normal(4), 4)

        worst = max(row["relative_gap"] for row in rows)
        outputs = {"rows": rows, "max_relative_gap": worst, "first_order": links, "volume_ratio": volume,
                   "volume_det": det, "volume_gap": volume_gap}
        checks = {
            "relative_gap": worst < self.tolerance["relative_gap"],
            "first_order": all(link["relative_gap"] < self.tolerance["first_order"] for link in links),
            "volume": volume_gap < self.tolerance["volume"],
        }
        return outputs, checks, None


class FredholmExperiment(Experiment):
    name = "fredholm-convergence"
    description = "Nystrom Fredholm determinant det(I + tK) as the node count grows"
    parameters = {
        "n_values": Parameter("ints", (5, 10, 20, 40), "Gauss-Legendre node counts"),
        "length": Parameter("float", 1.0, "interval length of the kernel"),
        "t": Parameter("float", 1.0, "flow time"),
    }
    tolerance = {"final_change": 1e-10, "dual_route": 1e-6}
    writes_csv = True

    def execute(self, params, seed, jobs):
        n_values, length, t = params["n_values"], params["length"], params["t"]
        if len(n_values) < 2:
            raise ValueError("fredholm-convergence needs at least two node counts")
        rows = fredholm_sweep(gaussian_kernel, length, n_values, t)
        n = n_values[-1]
        F = integral_operator_flow(nystrom_operator(gaussian_kernel, length, n))
        via_trace, via_direct, gap = flow_logdet(F, t, np.zeros(n), n)
        eigen = fredholm_determinant(gaussian_kernel, length, n, t)
        product_gap = abs(eigen - via_direct) / abs(via_direct)
        outputs = {"rows": rows, "final_change": rows[-1]["change"], "via_trace": via_trace,
                   "via_direct": via_direct, "trace_gap": gap, "eigenvalue_gap": product_gap}
        checks = {
            "final_change": rows[-1]["change"] < self.tolerance["final_change"],
            "dual_route": max(gap, product_gap) < self.tolerance["dual_route"],
        }
        return outputs, checks, rows


class ChangeOfVariablesExperiment(Experiment):
    name = "thm4-cov"
    description = "Change of variables (nu, phi o F^-1) = (nu, phi det F_2') on affine and nonlinear flows"
    parameters = {
        "shift": Parameter("floats", (1.0, 0.5, -0.25), "translation vector h"),
        "t": Parameter("float", 0.5, "flow time of the nonlinear flows"),
        "scale_t": Parameter("float", 0.3, "flow time of the scaling"),
        "nodes_per_dim": nodes_parameter(40),
    }
    tolerance = {"gap_floor": 1e-7, "error_factor": 10.0}

    def execute(self, params, seed, jobs):
        quad = self.quadrature(params, jobs)
        h, t = np.asarray(params["shift"]), params["t"]
        d = h.size
        cases = [
            ("translation", translation_flow(h), 1.0, canonical_gaussian(d), d),
            ("translation", translation_flow(h), 1.0, polynomial_gaussian(max(2, d)), max(2, d)),
            ("scaling", scaling_flow(), params["scale_t"], canonical_gaussian(2), 2),
            ("tanh_shear", tanh_shear_flow(), t, polynomial_gaussian(2), 2),
            ("elementwise_tanh", elementwise_tanh_flow(), t, canonical_gaussian(2), 2),
        ]
        rows, passed = [], True
        for label, F, time, phi, n in cases:
            lhs = integrate_lfm(pulled_back(F, time, phi, n), n, quad)
            rhs = integrate_lfm(with_determinant(F, time, phi, n), n, quad)
            gap = abs(lhs.value - rhs.value)
            allowed = _allowed(self.tolerance["gap_floor"], self.tolerance["error_factor"], lhs, rhs)
            rows.append({"flow": label, "functional": phi.name, "t": time, "lhs": lhs.value, "rhs": rhs.value,
                         "gap": gap, "allowed": allowed})
            passed = passed and gap < allowed
        return {"rows": rows, "max_gap": max(row["gap"] for row in rows)}, {"cov": passed}, None


class ScalingExperiment(Experiment):
    name = "thm4-scaling"
    description = "Change of variables under x -> e^t x, against the closed form e^{n t}"
    parameters = {
        "n": Parameter("int", 2, "subspace dimension"),
        "t_values": Parameter("floats", (0.1, 0.3, 0.5), "flow times"),
        "nodes_per_dim": nodes_parameter(),
    }
    tolerance = {"gap": 1e-9, "analytic": 1e-9}

    def execute(self, params, seed, jobs):
        n = params["n"]
        quad = self.quadrature(params, jobs)
        F, phi = scaling_flow(), canonical_gaussian(n)
        rows = []
        for t in params["t_values"]:
            lhs = integrate_lfm(pulled_back(F, t, phi, n), n, quad).value
            rhs = integrate_lfm(with_determinant(F, t, phi, n), n, quad).value
            rows.append({"t": t, "lhs": lhs, "rhs": rhs, "gap": abs(lhs - rhs), "analytic": np.exp(n * t),
                         "analytic_gap": abs(rhs - np.exp(n * t))})
        checks = {
            "gap": all(row["gap"] < self.tolerance["gap"] for row in rows),
            "analytic": all(row["analytic_gap"] < self.tolerance["analytic"] for row in rows),
        }
        return {"rows": rows}, checks, None
