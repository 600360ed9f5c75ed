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
Experiments on time-sliced propagators and the split-step oracle.
"""

import numpy as np

from lfmkit.cli.experiment import Experiment, Parameter
from lfmkit.core.lfmkitError import Caustic
from lfmkit.core.quadrature import QuadratureSpec
from lfmkit.core.timegrid import TimeGrid
from lfmkit.core.wavefunction import SpatialGrid, WaveFunction
from lfmkit.feynman.kernels import extract_kernel
from lfmkit.feynman.lagrangian import pathwise_value, propagate_lagrangian, trotter_order
from lfmkit.feynman.symbols import HamiltonianSymbol, PotentialSpec
from lfmkit.feynman.weyl import dilation_limit, propagate_hamiltonian_weyl, weyl_dilation_action
from lfmkit.oracle.exact import (apply_kernel, compare, exact_propagator, free_packet_width_sq, packet_center,
                                 packet_width_sq)
from lfmkit.oracle.split_step import DEFAULT_LEAK_TOL, DEFAULT_MAX_DT, solve_schrodinger, split_step_order
from lfmkit.utilities.numutils import loglog_slope


def _grid_parameters(x_min=-12.0, x_max=12.0, n_points=1024):
    return {
        "x_min": Parameter("float", x_min, "left end of the spatial grid"),
        "x_max": Parameter("float", x_max, "right end of the spatial grid"),
        "n_points": Parameter("int", n_points, "spatial grid points"),
    }


def _oracle_parameters():
    return {
        "max_dt": Parameter("float", DEFAULT_MAX_DT, "largest split-step time step"),
        "leak_tol": Parameter("float", DEFAULT_LEAK_TOL, "boundary mass that triggers a wrap-around warning"),
    }


def _spatial(params):
    return SpatialGrid(params["x_min"], params["x_max"], params["n_points"])


def _relative(a, b):
    return a.with_values(a.values - b.values).norm() / b.norm()


def _gaussian(center, width=1.0):
    return lambda q: (np.pi * width ** 2) ** -0.25 * np.exp(-(np.asarray(q) - center) ** 2 / (2 * width ** 2))


class FeynmanOracleExperiment(Experiment):
    name = "feynman-vs-oracle"
    description = "Time-sliced Lagrangian propagators against heat, Mehler and split-step oracles"
    parameters = dict(
        t=Parameter("float", 1.0, "propagation time"),
        n_slices=Parameter("int", 256, "time slices"),
        rule=Parameter("str", "midpoint", "potential sampling rule", choices=("endpoint", "midpoint", "weyl")),
        window=Parameter("float", 4.0, "half-width of the region where kernels are compared"),
        omega=Parameter("float", 1.0, "harmonic frequency"),
        lam=Parameter("float", 0.1, "quartic coefficient of the anharmonic potential"),
        barrier=Parameter("float", 1.0, "height of the Gaussian barrier"),
        pathwise_slices=Parameter("int", 4, "slices of the pathwise pairing check"),
        pathwise_q=Parameter("float", 0.3, "endpoint of the pathwise pairing check"),
        nodes_per_dim=Parameter("int", 20, "Gauss-Hermite nodes per coordinate"),
        **_grid_parameters(),
        **_oracle_parameters(),
    )
    tolerance = {"kernel": 1e-3, "shipped": 5e-3, "real_time": 5e-3, "pathwise": 1e-6}

    def execute(self, params, seed, jobs):
        spatial = _spatial(params)
        t, rule, omega = params["t"], params["rule"], params["omega"]
        grid = TimeGrid(t, params["n_slices"])
        inside = np.abs(spatial.points) <= params["window"]

        def kernel_row(V):
            return extract_kernel(lambda source: propagate_lagrangian(V, source, grid, "imaginary_time", rule=rule),
                                  spatial)

        def window_error(values, reference):
            return float(np.linalg.norm((values - reference)[inside]) / np.linalg.norm(reference[inside]))

        row, mean, variance = kernel_row(PotentialSpec.free())
        heat = exact_propagator("free", t + variance)(spatial.points, mean)
        free_error = window_error(row.values, heat)

        harmonic = PotentialSpec.harmonic(omega)
        row, _, _ = kernel_row(harmonic)
        source = WaveFunction.delta_approximant(spatial)
        mehler = apply_kernel(exact_propagator("harmonic", t, "imaginary_time", omega), source)
        harmonic_error = window_error(row.values, mehler.values)

        phi0 = WaveFunction.gaussian_packet(spatial, center=0.5)
        shipped = {}
        for V in (PotentialSpec.anharmonic(params["lam"]), PotentialSpec.gaussian_barrier(params["barrier"])):
            sliced = propagate_lagrangian(V, phi0, grid, "imaginary_time", rule=rule).wave
            oracle = solve_schrodinger(V, phi0, t, "imaginary_time", max_dt=params["max_dt"],
                                       leak_tol=params["leak_tol"])
            shipped[V.name] = compare(sliced, oracle)[0]

        coherent = WaveFunction.coherent_state(spatial, 1.0, omega)
        chained = propagate_lagrangian(harmonic, coherent, grid, "real_time", rule=rule)
        oracle = solve_schrodinger(harmonic, coherent, t, "real_time", max_dt=params["max_dt"],
                                   leak_tol=params["leak_tol"])
        real_time_gap = compare(chained.wave, oracle)[2]

        short = TimeGrid(t, params["pathwise_slices"])
        index = int(np.argmin(np.abs(spatial.points - params["pathwise_q"])))
        q = spatial.points[index]
        quad = QuadratureSpec.tensor(params["nodes_per_dim"], jobs=jobs)
        by_paths = pathwise_value(harmonic, _gaussian(0.5), q, short, quad)
        by_transfer = propagate_lagrangian(harmonic, phi0, short, "imaginary_time", rule="endpoint").wave
        at_q = complex(by_transfer.values[index])
        pathwise_gap = abs(by_paths - at_q) / abs(at_q)

        outputs = {
            "free_kernel_error": free_error,
            "harmonic_kernel_error": harmonic_error,
            "source_variance": variance,
            "shipped_l2_gap": shipped,
            "real_time_phase_aligned_gap": real_time_gap,
            "real_time_method": chained.method,
            "pathwise_value": by_paths,
            "pathwise_relative_gap": pathwise_gap,
        }
        checks = {
            "kernel": max(free_error, harmonic_error) < self.tolerance["kernel"],
            "shipped": max(shipped.values()) < self.tolerance["shipped"],
            "real_time": real_time_gap < self.tolerance["real_time"],
            "pathwise": pathwise_gap < self.tolerance["pathwise"],
        }
        return outputs, checks, None


class TrotterOrderExperiment(Experiment):
    name = "trotter-order"
    description = "Convergence order of Lagrangian time slicing against the Mehler kernel"
    parameters = dict(
        t=Parameter("float", 1.0, "propagation time"),
        slice_counts=Parameter("ints", (32, 64, 128, 256), "time slice counts"),
        omega=Parameter("float", 1.0, "harmonic frequency"),
        q0=Parameter("float", 1.0, "center of the coherent initial state"),
        **_grid_parameters(),
    )
    tolerance = {"slope": 0.3}
    writes_csv = True
    nominal = {"endpoint": 1.0, "midpoint": 2.0}

    def execute(self, params, seed, jobs):
        spatial = _spatial(params)
        t, omega, counts = params["t"], params["omega"], params["slice_counts"]
        V = PotentialSpec.harmonic(omega)
        phi0 = WaveFunction.coherent_state(spatial, params["q0"], omega)
        reference = apply_kernel(exact_propagator("harmonic", t, "imaginary_time", omega), phi0)
        rows, slopes = [], {}
        for rule in ("endpoint", "midpoint", "weyl"):
            slope, errors = trotter_order(V, phi0, t, counts, rule, "imaginary_time", reference)
            slopes[rule] = slope
            rows.extend({"rule": rule, "slices": n, "error": error} for n, error in zip(counts, errors))
        checks = {"{}_slope".format(rule): abs(slopes[rule] - order) <= self.tolerance["slope"]
                  for rule, order in self.nominal.items()}
        return {"slopes": slopes, "nominal": dict(self.nominal), "rows": rows}, checks, rows


class WeylReductionExperiment(Experiment):
    name = "weyl-reduction"
    description = "Phase-space slicing of p^2/2 + V(q) reduces to configuration-space slicing"
    parameters = dict(
        t=Parameter("float", 1.0, "propagation time"),
        real_slices=Parameter("int", 16, "slices of the real-time checks"),
        n_slices=Parameter("int", 256, "slices of the imaginary-time checks"),
        omega=Parameter("float", 1.0, "harmonic frequency"),
        lam=Parameter("float", 0.1, "quartic coefficient of the anharmonic potential"),
        **_grid_parameters(),
    )
    tolerance = {"reduction": 1e-10, "kernel": 1e-3}

    def execute(self, params, seed, jobs):
        spatial = _spatial(params)
        t, omega = params["t"], params["omega"]
        real_grid, imaginary_grid = TimeGrid(t, params["real_slices"]), TimeGrid(t, params["n_slices"])
        phi0 = WaveFunction.gaussian_packet(spatial, center=0.5)
        gaps = {}
        for V, mode, grid in ((PotentialSpec.free(), "real_time", real_grid),
                              (PotentialSpec.harmonic(omega), "real_time", real_grid),
                              (PotentialSpec.anharmonic(params["lam"]), "imaginary_time", imaginary_grid)):
            weyl = propagate_hamiltonian_weyl(HamiltonianSymbol.kinetic_plus(V), phi0, grid, mode=mode).wave
            lagrangian = propagate_lagrangian(V, phi0, grid, mode, rule="weyl").wave
            gaps["{}:{}".format(V.name, mode)] = _relative(weyl, lagrangian)

        harmonic = PotentialSpec.harmonic(omega)
        weyl = propagate_hamiltonian_weyl(HamiltonianSymbol.kinetic_plus(harmonic), phi0, imaginary_grid,
                                          mode="imaginary_time").wave
        mehler = apply_kernel(exact_propagator("harmonic", t, "imaginary_time", omega), phi0)
        kernel_error = _relative(weyl, mehler)

        outputs = {"reduction_gaps": gaps, "harmonic_relative_error": kernel_error}
        checks = {
            "reduction": max(gaps.values()) < self.tolerance["reduction"],
            "kernel": kernel_error < self.tolerance["kernel"],
        }
        return outputs, checks, None


class WeylDilationExperiment(Experiment):
    name = "weyl-dilation"
    description = "One damped Weyl slice of H = qp against the symmetrized operator to second order in t"
    parameters = dict(
        t_values=Parameter("floats", (0.2, 0.1, 0.05, 0.025), "slice durations"),
        epsilon_schedule=Parameter("floats", (4e-3, 2e-3, 1e-3, 5e-4), "momentum damping values"),
        center=Parameter("float", 0.5, "center of the initial packet"),
        width=Parameter("float", 1.0, "width of the initial packet"),
        **_grid_parameters(),
    )
    tolerance = {"slope": 0.3, "limit": 1e-5}
    writes_csv = True

    def execute(self, params, seed, jobs):
        spatial = _spatial(params)
        initial = _gaussian(params["center"], params["width"])
        phi0 = WaveFunction(spatial, initial(spatial.points).astype(complex))
        quad = QuadratureSpec(epsilon_schedule=params["epsilon_schedule"], jobs=jobs)
        symmetrized = weyl_dilation_action(phi0)
        derivative = np.fft.ifft(1j * spatial.wavenumbers * np.fft.fft(phi0.values))
        normal_ordered = phi0.with_values(-1j * spatial.points * derivative)

        rows = []
        for t in params["t_values"]:
            wave = propagate_hamiltonian_weyl(HamiltonianSymbol.dilation(), phi0, TimeGrid(t, 1), quad).wave
            weyl_error = phi0.with_values(wave.values - phi0.values + 1j * t * symmetrized.values).norm()
            normal_error = phi0.with_values(wave.values - phi0.values + 1j * t * normal_ordered.values).norm()
            limit = dilation_limit(initial, spatial.points, t)
            rows.append({"t": t, "weyl_error": weyl_error, "normal_error": normal_error,
                         "limit_gap": float(np.max(np.abs(wave.values - limit)))})

        t_values = [row["t"] for row in rows]
        slope = -loglog_slope(t_values, [row["weyl_error"] for row in rows])
        normal_slope = -loglog_slope(t_values, [row["normal_error"] for row in rows])
        worst = max(row["limit_gap"] for row in rows)
        outputs = {"rows": rows, "weyl_slope": slope, "normal_order_slope": normal_slope, "max_limit_gap": worst}
        checks = {
            "slope": abs(slope - 2.0) <= self.tolerance["slope"],
            "limit": worst < self.tolerance["limit"],
        }
        return outputs, checks, rows


class OracleOrderExperiment(Experiment):
    name = "oracle-order"
    description = "Split-step oracle: Strang order, exact plane waves, packet spreading and Mehler agreement"
    parameters = dict(
        t=Parameter("float", 1.0, "propagation time"),
        step_counts=Parameter("ints", (32, 64, 128, 256), "split-step counts of the order measurement"),
        omega=Parameter("float", 1.0, "harmonic frequency"),
        q0=Parameter("float", 1.0, "center of the coherent state"),
        **_grid_parameters(),
        **_oracle_parameters(),
    )
    tolerance = {"slope": 0.2, "mehler": 1e-5, "plane_wave": 1e-10, "norm": 1e-10, "packet": 1e-6}
    writes_csv = True

    def execute(self, params, seed, jobs):
        spatial = _spatial(params)
        t, omega, counts = params["t"], params["omega"], params["step_counts"]
        settings = dict(max_dt=params["max_dt"], leak_tol=params["leak_tol"])
        harmonic, free = PotentialSpec.harmonic(omega), PotentialSpec.free()
        coherent = WaveFunction.coherent_state(spatial, params["q0"], omega)

        slope, errors = split_step_order(harmonic, coherent, t, counts)
        rows = [{"steps": n, "error": error} for n, error in zip(counts, errors)]

        evolved = solve_schrodinger(harmonic, coherent, t, "imaginary_time", **settings)
        mehler = apply_kernel(exact_propagator("harmonic", t, "imaginary_time", omega), coherent)
        mehler_error = _relative(evolved, mehler)

        plane = WaveFunction.plane_wave(spatial, 3)
        k = 2 * np.pi * 3 / spatial.period
        moved = solve_schrodinger(free, plane, t, "real_time", max_dt=params["max_dt"], leak_tol=np.inf)
        plane_error = _relative(moved, plane.with_values(np.exp(-0.5j * k ** 2 * t) * plane.values))

        real = solve_schrodinger(harmonic, coherent, t, "real_time", **settings)
        packet = solve_schrodinger(free, WaveFunction.gaussian_packet(spatial), t, "real_time", **settings)
        center_gap = abs(packet_center(real) - params["q0"] * np.cos(omega * t))
        width_gap = abs(packet_width_sq(packet) - free_packet_width_sq(1.0, t))

        try:
            exact_propagator("harmonic", np.pi / omega, "real_time", omega)
            caustic = False
        except Caustic:
            caustic = True

        outputs = {
            "slope": slope,
            "rows": rows,
            "mehler_relative_error": mehler_error,
            "plane_wave_error": plane_error,
            "norm_drift": abs(real.norm() - coherent.norm()),
            "center_gap": center_gap,
            "width_sq_gap": width_gap,
            "caustic_reported": caustic,
        }
        checks = {
            "slope": abs(slope - 2.0) <= self.tolerance["slope"],
            "mehler": mehler_error < self.tolerance["mehler"],
            "plane_wave": plane_error < self.tolerance["plane_wave"],
            "norm": outputs["norm_drift"] < self.tolerance["norm"],
            "packet": max(center_gap, width_gap) < self.tolerance["packet"],
            "caustic": caustic,
        }
        return outputs, checks, rows
