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


from lfmkit.core.lfmkitError import ValidationError


def validate(obj, strict=False):
    """
    Check a domain object against its invariants.

    :param obj: Any lfmkit domain type.

    :param strict: Raise instead of returning when an invariant is violated.
    :type strict: bool

    :returns: List of violated invariants, empty iff all hold.
    :raises ValidationError: In strict mode, when the list is not empty.
    """
    checker = getattr(obj, "validate", None)
    if checker is None:
        raise TypeError("{} is not an lfmkit domain type".format(type(obj).__name__))
    violations = list(checker())
    if strict and violations:
        raise ValidationError("{} is invalid: {}".format(type(obj).__name__, "; ".join(violations)), violations)
    return violations
