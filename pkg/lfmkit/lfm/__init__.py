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

from .integrator import (integrate_lfm, normalization_check, dimension_sweep, gaussian_pairing,
                         linearity_check)
from .functionals import (canonical_gaussian, coordinate_moment, fourier_gaussian, damped_oscillation,
                          damped_oscillation_pairing, pure_phase, product_decay, product_decay_pairing,
                          product_decay_limit, odd_gaussian, polynomial_gaussian, cosine_gaussian,
                          SWEEP_FAMILIES)

__all__ = ['integrate_lfm', 'normalization_check', 'dimension_sweep', 'gaussian_pairing', 'linearity_check',
           'canonical_gaussian', 'coordinate_moment', 'fourier_gaussian', 'damped_oscillation',
           'damped_oscillation_pairing', 'pure_phase', 'product_decay', 'product_decay_pairing',
           'product_decay_limit', 'odd_gaussian', 'polynomial_gaussian', 'cosine_gaussian', 'SWEEP_FAMILIES']
