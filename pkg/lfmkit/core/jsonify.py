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

import re
import copy
import json
import pydoc
import hashlib

from json import JSONEncoder
from typing import Optional

import numpy


class Jsonify:
    """
    Mixin for types that are written to and read back from JSON result files. Output is
    key-sorted, so equal objects encode to equal text.
    """

    def to_json(self, encode_private=True) -> Optional[str]:
        """
        :param encode_private: Include members whose names start with '_'.
        :type encode_private: bool

        :returns: Indented, key-sorted JSON text, or None when a member has no encoding.
        """
        encoder = ComplexJsonCoder(encode_private=encode_private)
        try:
            return json.dumps(copy.deepcopy(self), indent=2, sort_keys=True, default=encoder.default)
        except TypeError:
            return None

    @classmethod
    def from_json(cls, json_str: str) -> object:
        """
        :param json_str: Text written by to_json(), or a dict the decoder already parsed.

        :returns: The decoded object. Its type is the one named by the '_type' tag.
        """
        if isinstance(json_str, dict):
            return cls.from_dict(json_str)
        return json.loads(json_str, object_hook=ComplexJsonCoder().decode)

    def to_dict(self) -> dict:
        """ Members to encode; a copy of the instance dictionary unless overridden. """
        return self.__dict__.copy()

    @classmethod
    def from_dict(cls, src_dict: dict) -> object:
        """
        Rebuild an instance from its member dictionary without calling __init__, so decoding
        never repeats a constructor's checks or numerics.
        """
        new = cls.__new__(cls)
        new.__dict__ = {k: v for k, v in src_dict.items() if k != "_type"}
        return new

    def public_vars(self) -> dict:
        return {k: v for k, v in vars(self).items() if not k.startswith("_")}

    def get_json_hash(self, ignore_whitespace=True, hash_private_vals=False) -> Optional[str]:
        """
        MD5 digest of the sorted JSON text; equal digests mean equal objects.

        :param ignore_whitespace: Strip whitespace before hashing.
        :param hash_private_vals: Include members whose names start with '_'.

        :returns: Hex digest, or None when the object does not encode.
        """
        text = self.to_json(encode_private=hash_private_vals)
        if text is None:
            return None
        if ignore_whitespace:
            text = re.sub(r"\s+", "", text)
        return hashlib.md5(text.encode()).hexdigest()

    def __eq__(self, o: "Jsonify"):
        if not isinstance(o, Jsonify):
            return NotImplemented
        own_hash = self.get_json_hash()
        return own_hash is not None and own_hash == o.get_json_hash()

    __hash__ = None


class ComplexJsonCoder(JSONEncoder):
    """
    Encoder and object hook for lfmkit types. Arrays, complex numbers, numpy scalars and sets
    go to the coders of the type table; Jsonify objects become their member dict plus a
    '_type' tag naming the class.

    :param encode_private: Include members whose names start with '_'.
    :type encode_private: bool
    """

    def __init__(self, encode_private=True, **kwargs):
        super().__init__(**kwargs)
        self._encode_private = encode_private
        self._coders = (
            (numpy.ndarray, NdArrayCoder),
            ((complex, numpy.complexfloating), ComplexCoder),
            (numpy.generic, ScalarCoder),
            (set, SetCoder),
        )

    def default(self, o: object):
        for types, coder in self._coders:
            if isinstance(o, types):
                return coder.to_dict(o)
        if not isinstance(o, Jsonify):
            return super().default(o)

        members = o.to_dict()
        if not self._encode_private:
            members = {k: v for k, v in members.items() if not (k.startswith("_") and not k.startswith("__"))}
        members["_type"] = _type_tag(type(o))
        return members

    def decode(self, json_dict: dict):
        """ Object hook: dicts without a '_type' tag are returned unchanged. """
        if "_type" not in json_dict:
            return json_dict

        json_type = pydoc.locate(json_dict["_type"])
        if json_type is None:
            raise TypeError(f"{json_dict['_type']} does not exist.")
        # Result files may only name Jsonify types.
        if not (isinstance(json_type, type) and issubclass(json_type, Jsonify)):
            raise TypeError(f"{json_type} is not a Jsonify type.")
        return json_type.from_json(json_dict)


def _type_tag(cls):
    return f"{cls.__module__}.{cls.__name__}"


class NdArrayCoder(Jsonify):
    """ Arrays as nested lists; complex arrays as separate real and imaginary parts. """

    @staticmethod
    def to_dict(obj):
        if numpy.iscomplexobj(obj):
            return {"real": obj.real.tolist(), "imag": obj.imag.tolist(), "_type": _type_tag(NdArrayCoder)}
        return {"data": obj.tolist(), "_type": _type_tag(NdArrayCoder)}

    @staticmethod
    def from_json(obj):
        if "data" in obj:
            return numpy.array(obj["data"])
        return numpy.array(obj["real"]) + 1j * numpy.array(obj["imag"])


class ComplexCoder(Jsonify):

    @staticmethod
    def to_dict(obj):
        return {"real": float(obj.real), "imag": float(obj.imag), "_type": _type_tag(ComplexCoder)}

    @staticmethod
    def from_json(obj):
        return complex(obj["real"], obj["imag"])


class ScalarCoder(Jsonify):
    """ Numpy scalars are written as their Python equivalents. """

    @staticmethod
    def to_dict(obj):
        return obj.item()


class SetCoder(Jsonify):
    """ Sets as sorted lists. """

    @staticmethod
    def to_dict(obj):
        return {"data": sorted(obj), "_type": _type_tag(SetCoder)}

    @staticmethod
    def from_json(obj):
        return set(obj["data"])
