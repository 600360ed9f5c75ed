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
Experiments on the LFM pairing itself.
"""

import numpy as np

from lfmkit.cli.experiment import Experiment, Parameter, nodes_parameter
from lfmkit.core.functional import CylinderFunctional
from lfmkit.lfm.functionals import (SWEEP_FAMILIES, canonical_gaussian, coordinate_moment, cosine_gaussian,
                                    polynomial_gaussian, product_decay_limit, product_decay_pairing)
from lfmkit.lfm.integrator import dimension_sweep, integrate_lfm, linearity_check, normalization_check
from lfmkit.flows.trace import shift_invariance_check

_SWEEP_ORACLES = {
    "gaussian": lambda n: 1.0,
    "product_decay": product_decay_pairing,
    "odd": lambda n: 0.0,
}


class NormalizationExperiment(Experiment):
    name = "normalization"
    description = "Pairing of the canonical Gaussian on E_n equals 1 for n = 1..n_max"
    parameters = {
        "n_max": Parameter("int", 8, "largest subspace dimension"),
        "nodes_per_dim": nodes_parameter(),
    }
    tolerance = {"deviation": 1e-10}

    def execute(self, params, seed, jobs):
        quad = self.quadrature(params, jobs)
        rows = [{"n": n, "deviation": normalization_check(n, quad)} for n in range(1, params["n_max"] + 1)]
        worst = max(row["deviation"] for row in rows)
        return {"rows": rows, "max_deviation": worst}, {"deviation": worst < self.tolerance["deviation"]}, rows


class DimensionSweepExperiment(Experiment):
    name = "dimension-sweep"
    description = "Cylinder pairings along n = 1..n_max against closed forms, with Cauchy differences"
    parameters = {
        "family": Parameter("str", "product_decay", "sweep family", choices=sorted(SWEEP_FAMILIES)),
        "n_max": Parameter("int", 12, "largest subspace dimension"),
        "nodes_per_dim": nodes_parameter(),
    }
    tolerance = {"oracle": 1e-12}
    writes_csv = True

    def execute(self, params, seed, jobs):
        family = params["family"]
        oracle = _SWEEP_ORACLES[family]
        limit = product_decay_limit() if family == "product_decay" else oracle(0)
        sweep = dimension_sweep(SWEEP_FAMILIES[family], params["n_max"], self.quadrature(params, jobs), limit=limit)
        rows = sweep.rows()
        for row, entry in zip(rows, sweep):
            row["oracle"] = oracle(entry.dim)
            row["oracle_gap"] = abs(entry.value - row["oracle"])
        worst = max(row["oracle_gap"] for row in rows)
        outputs = {
            "rows": rows,
            "limit": limit,
            "limit_gap": abs(sweep[-1].value - limit),
            "max_oracle_gap": worst,
            "non_cauchy": sweep.non_cauchy,
        }
        return outputs, {"oracle": worst < self.tolerance["oracle"], "cauchy": not sweep.non_cauchy}, rows


class LinearityExperiment(Experiment):
    name = "linearity"
    description = "Pairing of a psi1 + b psi2 against a (nu, psi1) + b (nu, psi2) and closed forms"
    parameters = {
        "n": Parameter("int", 3, "subspace dimension, at least 2"),
        "a": Parameter("float", 2.0, "coefficient of cos(x_1 - x_n) gauss"),
        "b": Parameter("float", -0.5, "coefficient of x_1^2 gauss"),
        "nodes_per_dim": nodes_parameter(),
    }
    tolerance = {"relative_gap": 1e-12, "oracle": 1e-10}

    def execute(self, params, seed, jobs):
        n, a, b = params["n"], params["a"], params["b"]
        if n < 2:
            raise ValueError("linearity needs n >= 2")
        quad = self.quadrature(params, jobs)
        psi1, psi2 = cosine_gaussian(n), coordinate_moment(2).extended(n)
        gap = linearity_check(psi1, psi2, a, b, n, quad)
        combined = integrate_lfm(a * psi1 + b * psi2, n, quad).value
        expected = a * np.exp(-1.0) + b
        outputs = {"relative_gap": gap, "combined": combined, "closed_form": expected,
                   "oracle_gap": abs(combined - expected)}
        checks = {
            "relative_gap": gap < self.tolerance["relative_gap"],
            "oracle": outputs["oracle_gap"] < self.tolerance["oracle"],
        }
        return outputs, checks, None


def _shifted_square(c):
    """ (x_1 + c)^2 exp(-x_1^2 / 2), whose pairing is 1 + c^2. """
    return CylinderFunctional(1, factors=[lambda x: (x + c) ** 2 * np.exp(-0.5 * x ** 2)],
                              decay_class="polynomial_times_gaussian", name="(x1+c)^2*gauss")


class ShiftInvarianceExperiment(Experiment):
    name = "shift-invariance"
    description = "Translation invariance (nu, phi(. + h)) = (nu, phi) and the shifted second moment"
    parameters = {
        "n": Parameter("int", 4, "subspace dimension"),
        "shift": Parameter("float", 1.0, "size c of the shift h = c e_1"),
        "nodes_per_dim": nodes_parameter(),
    }
    tolerance = {"shift_gap": 1e-10, "moment": 1e-10}

    def execute(self, params, seed, jobs):
        n, c = params["n"], params["shift"]
        quad = self.quadrature(params, jobs)
        h = np.zeros(n)
        h[0] = c
        functionals = {"gauss": canonical_gaussian(n), "x1^2*gauss": coordinate_moment(2).extended(n)}
        if n >= 2:
            functionals["poly*gauss"] = polynomial_gaussian(n)
        rows = [{"functional": label, "gap": shift_invariance_check(h, phi, n, quad)}
                for label, phi in functionals.items()]
        moment = integrate_lfm(_shifted_square(c), n, quad).value
        worst = max(row["gap"] for row in rows)
        outputs = {"rows": rows, "max_gap": worst, "shifted_moment": moment, "shifted_moment_oracle": 1 + c ** 2}
        checks = {
            "shift_gap": worst < self.tolerance["shift_gap"],
            "moment": abs(moment - (1 + c ** 2)) < self.tolerance["moment"],
        }
        return outputs, checks, None
