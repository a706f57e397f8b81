"""Tagged JSON encoding for certificates, reports and term tables.

Every value round-trips: ``decode(encode(x)) == x``.  Polynomials carry
their variable space, tuples and non-string dict keys are tagged, and keys
and terms are written in a fixed order so equal inputs give equal bytes.
"""
from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

from . import __version__
from .core import LaurentPoly, NotLaurent, VarSpace

_TYPES: dict[str, type] = {}


def register(*classes):
    for cls in classes:
        _TYPES[cls.__name__] = cls


def _register_defaults():
    from .cyclic import GSequenceCertificate, GSequenceStep
    from .exchange import CaterpillarReport, ConditionResult, GcdProbe
    from .homogeneous import HomogeneousReport, HomResult, SymbolicPoint
    from .recurrences import IntegralityReport, NonnegativityReport, TermTable
    from .stencil import StencilCertificate, StencilStep

    register(
        GSequenceCertificate, GSequenceStep, StencilCertificate, StencilStep,
        CaterpillarReport, ConditionResult, GcdProbe, HomogeneousReport, HomResult,
        SymbolicPoint, TermTable, IntegralityReport, NonnegativityReport, NotLaurent,
    )


def _space(sp: VarSpace):
    return [[v, sp.role(v)] for v in sp.names]


class _Encoder:
    """Converts objects to JSON data, pooling variable spaces by index."""

    def __init__(self):
        self.spaces: list = []
        self._index: dict = {}

    def space_id(self, sp: VarSpace) -> int:
        key = tuple(_space(sp)[i][0] + ":" + _space(sp)[i][1] for i in range(len(sp)))
        if key not in self._index:
            self._index[key] = len(self.spaces)
            self.spaces.append(_space(sp))
        return self._index[key]

    def data(self, obj):
        if obj is None or isinstance(obj, (bool, str, int)):
            return obj
        if isinstance(obj, Fraction):
            return {"$fraction": [obj.numerator, obj.denominator]}
        if isinstance(obj, LaurentPoly):
            sp = obj.space
            terms = [[list(sp.unpack(m)), c] for m, c in sorted(obj.terms.items(), reverse=True)]
            return {"$poly": {"space": self.space_id(sp), "terms": terms, "text": str(obj)}}
        if isinstance(obj, VarSpace):
            return {"$space": self.space_id(obj)}
        if isinstance(obj, tuple):
            return {"$tuple": [self.data(x) for x in obj]}
        if isinstance(obj, list):
            return [self.data(x) for x in obj]
        if isinstance(obj, dict):
            if all(isinstance(k, str) for k in obj):
                return {"$dict": {k: self.data(v) for k, v in obj.items()}}
            items = [[self.data(k), self.data(v)] for k, v in obj.items()]
            items.sort(key=lambda kv: json.dumps(kv[0], sort_keys=True))
            return {"$items": items}
        if dataclasses.is_dataclass(obj) and type(obj).__name__ in _TYPES:
            fields = {f.name: self.data(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
            return {"$type": type(obj).__name__, "fields": fields}
        raise TypeError(f"cannot encode {type(obj).__name__}")


class _Decoder:
    def __init__(self, spaces):
        self.spaces = [VarSpace([n for n, _ in rows], {n: r for n, r in rows}) for rows in spaces]

    def data(self, d):
        if isinstance(d, list):
            return [self.data(x) for x in d]
        if not isinstance(d, dict):
            return d
        if "$fraction" in d:
            return Fraction(*d["$fraction"])
        if "$poly" in d:
            body = d["$poly"]
            sp = self.spaces[body["space"]]
            return LaurentPoly(sp, {sp.pack(e): c for e, c in body["terms"]})
        if "$space" in d:
            return self.spaces[d["$space"]]
        if "$tuple" in d:
            return tuple(self.data(x) for x in d["$tuple"])
        if "$dict" in d:
            return {k: self.data(v) for k, v in d["$dict"].items()}
        if "$items" in d:
            return {_hashable(self.data(k)): self.data(v) for k, v in d["$items"]}
        if "$type" in d:
            cls = _TYPES[d["$type"]]
            return cls(**{k: self.data(v) for k, v in d["fields"].items()})
        raise ValueError(f"unrecognized record with keys {sorted(d)}")


def _hashable(x):
    return tuple(_hashable(v) for v in x) if isinstance(x, list) else x


def encode(obj, kind: str, seed: int | None = None, extra: dict | None = None) -> str:
    """One self-describing JSON record; identical inputs give identical text."""
    enc = _Encoder()
    record = {
        "tool": "laurentkit",
        "version": __version__,
        "kind": kind,
        "seed": seed,
        "result": enc.data(obj),
    }
    if extra:
        record["context"] = enc.data(dict(extra))
    record["spaces"] = enc.spaces
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def decode(text: str):
    """Inverse of :func:`encode`: returns ``(result, record)``."""
    record = json.loads(text)
    if record.get("tool") != "laurentkit":
        raise ValueError("not a laurentkit record")
    return _Decoder(record.get("spaces", [])).data(record["result"]), record


_register_defaults()
