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

from .trace import (jacobian_trace, trace_truncation_sweep, derivative_pairing_values, measure_derivative_pairing,
                    shift_invariance_check)
from .logdet import (flow_logdet, nystrom_operator, gaussian_kernel, fredholm_determinant, fredholm_sweep,
                     logdet_first_order_link, determinant_by_volume)
from .library import (constant_field, diagonal_field, rank_one_field, sine_field, coupled_tanh_field,
                      shipped_fields, linear_flow, integral_operator_flow, tanh_shear_flow,
                      elementwise_tanh_flow, scaling_flow, translation_flow, field_flow, bilinear_gaussian,
                      shipped_functionals)

__all__ = ['jacobian_trace', 'trace_truncation_sweep', 'derivative_pairing_values', 'measure_derivative_pairing',
           'shift_invariance_check', 'flow_logdet', 'nystrom_operator', 'gaussian_kernel', 'fredholm_determinant',
           'fredholm_sweep', 'logdet_first_order_link', 'determinant_by_volume', 'constant_field', 'diagonal_field',
           'rank_one_field', 'sine_field', 'coupled_tanh_field', 'shipped_fields', 'linear_flow',
           'integral_operator_flow', 'tanh_shear_flow', 'elementwise_tanh_flow', 'scaling_flow',
           'translation_flow', 'field_flow', 'bilinear_gaussian', 'shipped_functionals']
