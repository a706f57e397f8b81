"""Recurrence definition files (``.rec``): YAML documents using the polynomial grammar.

Every file has a ``kind`` and an optional ``name``, ``description``,
``parameters`` (formal coefficient names), ``constants`` (integers spliced
into coefficients or exponents) and ``bindings`` (integer values for
parameters, applied at computation time).

``kind: cyclic``
    ``n`` and ``polynomial`` in ``x1 .. x_{n-1}``; optional ``embedding``
    (``[cube, [p, q, r]]`` or ``[octahedron, [p, q, n]]``).
``kind: stencil``
    ``template`` with offset variables ``y[i,j,...]``, ``shift``, and
    ``region`` (``inequalities`` as ``[coefficients, constant]`` pairs meaning
    ``coefficients . h + constant >= 0``, optional ``bound``).  Optional
    ``order`` (product | cone), ``key``, ``congruence``
    (``[coefficients, modulus]``) and ``letters`` (``"i,j": name``).
``kind: homogeneous``
    ``polynomials`` P_1 .. P_n in ``x1 .. xn``; optional ``units``
    (invertible coefficients such as ``lambda``).
``kind: pattern``
    An explicit finite exchange pattern: ``variables``, ``root``, ``edges``
    (``[from, to, label, polynomial]``) and ``spine`` (vertex names).
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import yaml

from .core import VarSpace
from .cyclic import CyclicSpec
from .exchange import Edge, ExchangePattern
from .homogeneous import HomogeneousPattern
from .parsing import parse_poly
from .recurrences import CYCLIC, DEFAULT_BOUND, STENCIL, RecurrenceSpec, Region
from .stencil import StencilRecurrence

KINDS = ("cyclic", "stencil", "homogeneous", "pattern")


class DefinitionError(ValueError):
    pass


@dataclass(frozen=True)
class Definition:
    """A loaded file: ``value`` is a RecurrenceSpec, HomogeneousPattern or ``(ExchangePattern, spine)``."""

    kind: str
    name: str
    value: object
    constants: tuple = ()


def _need(doc, key):
    if key not in doc:
        raise DefinitionError(f"missing field {key!r}")
    return doc[key]


def _ints(seq, what):
    try:
        return tuple(int(x) for x in seq)
    except (TypeError, ValueError):
        raise DefinitionError(f"{what} must be a list of integers") from None


def _str_list(doc, key):
    v = doc.get(key) or []
    if isinstance(v, str):
        v = [t.strip() for t in v.split(",") if t.strip()]
    return [str(x) for x in v]


def _constants(doc, overrides):
    consts = dict(doc.get("constants") or {})
    for k, v in (overrides or {}).items():
        if k in consts:
            consts[k] = v
    for k, v in consts.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise DefinitionError(f"constant {k!r} must be an integer")
    return consts


def _bindings(doc, overrides, constants):
    b = dict(doc.get("bindings") or {})
    for k, v in (overrides or {}).items():
        if k not in constants:
            b[k] = v
    return tuple(sorted((str(k), int(v)) for k, v in b.items()))


def _cyclic(doc, name, consts, bindings):
    n = int(_need(doc, "n"))
    F = CyclicSpec.from_text(str(_need(doc, "polynomial")), n, _str_list(doc, "parameters"), consts)
    emb = doc.get("embedding")
    if emb is not None:
        emb = (str(emb[0]), _ints(emb[1], "embedding arguments"))
    return RecurrenceSpec(name, CYCLIC, F, bindings=bindings, description=str(doc.get("description", "")), embedding=emb)


def _stencil(doc, name, consts, bindings):
    kw = {"name": name}
    if "order" in doc:
        kw["order"] = str(doc["order"])
    if "key" in doc:
        kw["key"] = [_ints(r, "key row") for r in doc["key"]]
    if "congruence" in doc:
        c, m = doc["congruence"]
        kw["congruence"] = (_ints(c, "congruence coefficients"), int(m))
    if "letters" in doc:
        kw["letters"] = {_ints(str(k).split(","), "letter offset"): str(v) for k, v in doc["letters"].items()}
    st = StencilRecurrence.from_text(
        str(_need(doc, "template")), _ints(_need(doc, "shift"), "shift"),
        _str_list(doc, "parameters"), consts, **kw,
    )
    reg = _need(doc, "region")
    rows = []
    for row in _need(reg, "inequalities"):
        coeffs, const = row
        coeffs = _ints(coeffs, "region coefficients")
        if len(coeffs) != st.dim:
            raise DefinitionError("region inequality has the wrong dimension")
        rows.append((coeffs, int(const)))
    region = Region(tuple(rows), int(reg.get("bound", DEFAULT_BOUND)))
    return RecurrenceSpec(name, STENCIL, st, region, bindings, str(doc.get("description", "")))


def _homogeneous(doc, name, consts, bindings):
    if bindings:
        consts = {**consts, **dict(bindings)}
        params = [p for p in _str_list(doc, "parameters") if p not in consts]
    else:
        params = _str_list(doc, "parameters")
    polys = [str(p) for p in _need(doc, "polynomials")]
    return HomogeneousPattern.from_text(polys, params, _str_list(doc, "units"), name, consts)


def _pattern(doc, name, consts, bindings):
    variables = _str_list(doc, "variables") or None
    edges_doc = _need(doc, "edges")
    if variables is None:
        raise DefinitionError("missing field 'variables'")
    params = [p for p in _str_list(doc, "parameters") if p not in dict(bindings)]
    consts = {**consts, **dict(bindings)}
    space = VarSpace.of(variables + _str_list(doc, "units"), params)
    edges = []
    for row in edges_doc:
        if len(row) != 4:
            raise DefinitionError("each edge is [from, to, label, polynomial]")
        u, v, label, text = row
        edges.append(Edge(str(u), str(v), int(label), parse_poly(str(text), space, consts)))
    root = str(_need(doc, "root"))
    spine = [str(t) for t in _need(doc, "spine")]
    return ExchangePattern(space, variables, edges, root), spine


_BUILDERS = {"cyclic": _cyclic, "stencil": _stencil, "homogeneous": _homogeneous, "pattern": _pattern}


def load_text(text: str, overrides: dict | None = None, default_name: str = "custom") -> Definition:
    """Parse one definition.  ``overrides`` replaces constants or binds parameters."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise DefinitionError(f"not valid YAML: {e}") from None
    if not isinstance(doc, dict):
        raise DefinitionError("a definition must be a mapping")
    kind = str(_need(doc, "kind"))
    if kind not in KINDS:
        raise DefinitionError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    name = str(doc.get("name", default_name))
    consts = _constants(doc, overrides)
    bindings = _bindings(doc, overrides, consts)
    try:
        value = _BUILDERS[kind](doc, name, consts, bindings)
    except DefinitionError:
        raise
    except (ValueError, TypeError, KeyError) as e:
        raise DefinitionError(f"{kind} definition {name!r}: {e}") from e
    return Definition(kind, name, value, tuple(sorted(consts.items())))


def load_file(path, overrides: dict | None = None) -> Definition:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise DefinitionError(f"cannot read {path}: {e.strerror}") from None
    return load_text(text, overrides, default_name=p.stem)
