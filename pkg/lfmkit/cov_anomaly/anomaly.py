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

import numpy as np
from scipy.linalg import expm

from lfmkit.core import log
from lfmkit.core.functional import GaussianFunctional
from lfmkit.core.results import AnomalyReport
from lfmkit.cov_anomaly.change_of_variables import (verify_change_of_variables,
                                                    verify_change_of_variables_gaussian, with_determinant)
from lfmkit.flows.library import linear_flow
from lfmkit.lfm.integrator import integrate_lfm
from lfmkit.utilities.numutils import gauss_hermite_rule

PAIRING_METHODS = ("auto", "quadrature", "analytic_gaussian")


def discrete_action(x, V, grid):
    """
    Time-sliced action of a path given by its increment coordinates x (shape (..., n_slices)):
    with xi_j = sqrt(delta) (x_1 + ... + x_j), S = |x|^2 / 2 - delta sum_j V(xi_j).
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != grid.n_slices:
        raise ValueError("path has {} coordinates for {} slices".format(x.shape[-1], grid.n_slices))
    xi = np.sqrt(grid.delta) * np.cumsum(x, axis=-1)
    return 0.5 * np.sum(x ** 2, axis=-1) - grid.delta * np.sum(V(xi), axis=-1)


def density_ratio(F, t, points):
    """ Pointwise ratio of the transformed density phi det F_2' nu to phi nu, i.e. det F_2'(t, x). """
    return np.real_if_close(np.linalg.det(np.asarray(F.space_jacobian(t, np.asarray(points, dtype=float)))))


def _ratio_nodes(n, samples, limit=4096):
    """ A fixed three-point Gauss-Hermite product grid when it is small enough, else the samples. """
    if 3 ** n > limit:
        return samples
    z, _ = gauss_hermite_rule(3)
    return np.stack(np.meshgrid(*([z] * n), indexing="ij"), axis=-1).reshape(-1, n)


class AnomalousFlow:
    """
    A linear flow e^{tG} that rotates a few reference paths inside their span.

    G = B W B^T + P G0 P: W is skew-symmetric on the orthonormal reference basis B, G0 a decaying
    diagonal generator and P the projector off the references. On the span G x != 0 and
    <x, G x> = 0, so paths move while |x| and with it the free action stay fixed. The trace
    lives on the complement, tr G = tr(P G0 P) != 0.
    """

    def __init__(self, n=4, n_reference=2, seed=0, strength=0.2, ratio=0.5, rotation=1.0):
        if not 1 < n_reference < n:
            raise ValueError("need 1 < n_reference < n, got n_reference = {}".format(n_reference))
        rng = np.random.default_rng(seed)
        basis, _ = np.linalg.qr(rng.standard_normal((n, n_reference)))
        projector = np.eye(n) - basis @ basis.T
        twist = rng.standard_normal((n_reference, n_reference))
        skew = (twist - twist.T) / 2
        skew *= rotation / np.linalg.norm(skew, 2)
        self.n = n
        self.references = basis.T
        self.generator = basis @ skew @ basis.T + projector @ np.diag(strength * ratio ** np.arange(n)) @ projector
        self.flow = linear_flow(self.generator)
        self.flow.name = "anomalous"
        on_span = basis.T @ self.generator @ basis
        self.residuals = {
            "leaves_span": float(np.max(np.abs(projector @ self.generator @ basis))),
            "radial_part": float(np.max(np.abs(on_span + on_span.T))),
            "rotation_on_references": float(np.linalg.norm(on_span, 2)),
            "projector_defect": float(np.max(np.abs(projector @ projector - projector))),
            "trace": float(np.trace(self.generator)),
            "det_at_t_half": float(np.linalg.det(expm(0.5 * self.generator))),
        }

    def sample_paths(self, rng, count, n):
        """ Paths in the span of the references. """
        if n != self.n:
            raise ValueError("anomalous flow was built for n = {}".format(self.n))
        return rng.standard_normal((count, self.references.shape[0])) @ self.references


def construct_anomalous_flow(n=4, n_reference=2, seed=0, strength=0.2, rotation=1.0):
    return AnomalousFlow(n, n_reference, seed, strength, rotation=rotation)


def _linear_part(F, t, n):
    L = np.asarray(F.matrix(t), dtype=float)
    return L * np.eye(n) if L.ndim == 0 else L


def _analytic_possible(F, V, probe):
    return isinstance(probe, GaussianFunctional) and F.matrix is not None and F.offset is None and V.is_quadratic


def anomaly_report(F, V, grid, n, quad=None, probe=None, t=1.0, sample_count=256, seed=0, path_sampler=None,
                   tolerance=1e-6, det_tolerance=1e-2, cov_tolerance=1e-7, pairing_method="auto"):
    """
    Separate measurements of what a flow does to the discrete action, to the determinant
    field and to the full density e^{iS} probe nu.

    :param F: Flow acting on the increment coordinates of the n-slice path.
    :param V: Potential of the action.
    :param grid: Time grid with n_slices = n.
    :param probe: Test functional, exp(-|x|^2) by default.
    :param t: Flow time.
    :param path_sampler: Callable (rng, count, n) -> paths; standard normal by default.
    :param pairing_method: "quadrature", "analytic_gaussian", or "auto", which takes the
        closed form for affine flows, quadratic V and Gaussian probes above six dimensions.
    :returns: AnomalyReport
    """
    if grid.n_slices != n:
        raise ValueError("grid has {} slices but n = {}".format(grid.n_slices, n))
    if pairing_method not in PAIRING_METHODS:
        raise ValueError("Unknown pairing_method '{}', expected one of {}".format(pairing_method, PAIRING_METHODS))
    probe = GaussianFunctional(2 * np.eye(n), name="exp(-|x|^2)") if probe is None else probe.extended(n)

    rng = np.random.default_rng(seed)
    samples = path_sampler(rng, sample_count, n) if path_sampler else rng.standard_normal((sample_count, n))
    moved = F(t, samples)
    action_gap = float(np.max(np.abs(discrete_action(moved, V, grid) - discrete_action(samples, V, grid))))
    shifts = np.linalg.norm(moved - samples, axis=-1)
    displacement = (float(np.min(shifts)), float(np.max(shifts)), float(np.mean(shifts)))
    dets = np.real(density_ratio(F, t, samples))
    stats = (float(np.min(dets)), float(np.max(dets)), float(np.mean(dets)))

    analytic = _analytic_possible(F, V, probe)
    if pairing_method == "analytic_gaussian" and not analytic:
        raise ValueError("closed-form pairing needs a linear flow, a quadratic potential and a Gaussian probe")
    if pairing_method == "quadrature" or (pairing_method == "auto" and (not analytic or n <= 6)):
        method = "quadrature"
        density = probe.times(lambda x: np.exp(1j * discrete_action(x, V, grid)), dim=n, name="e^{iS}probe")
        plain = integrate_lfm(density, n, quad).value
        weighted = integrate_lfm(with_determinant(F, t, density, n), n, quad).value
        cov_lhs, cov_rhs, cov_gap = verify_change_of_variables(F, t, probe, n, quad)
    else:
        method = "analytic_gaussian"
        cumulative = np.tril(np.ones((n, n)))
        action = np.eye(n) - V.quadratic_coefficient * grid.delta ** 2 * cumulative.T @ cumulative
        density = GaussianFunctional(probe.matrix - 1j * action, probe.shift, probe.scale)
        L = _linear_part(F, t, n)
        plain = density.exact_pairing()
        weighted = np.linalg.det(L) * plain
        cov_lhs, cov_rhs, cov_gap = verify_change_of_variables_gaussian(L, probe)

    ratio = np.real(density_ratio(F, t, _ratio_nodes(n, samples)))
    verdict = AnomalyReport.decide(stats, action_gap, tolerance, det_tolerance)
    if cov_gap >= cov_tolerance:
        log.warning("Change of variables gap %.3g exceeds %.1g for %s", cov_gap, cov_tolerance, F.name)
    return AnomalyReport(action_gap, stats, abs(weighted - plain), verdict, cov_lhs=complex(cov_lhs),
                         cov_rhs=complex(cov_rhs), cov_gap=float(cov_gap), cov_tolerance=cov_tolerance,
                         density_ratio_deviation=float(np.max(np.abs(ratio - 1))), tolerance=tolerance,
                         det_tolerance=det_tolerance, pairing_method=method, sample_count=sample_count,
                         displacement_stats=displacement)
