"""The structured input schema shared by all CLI subcommands.

One JSON object describes a group, a module over it, an optional
multiplicative character, and optionally the place data of a model:

    {
      "order": 4,
      "table": [0,1,2,3, 1,0,3,2, 2,3,0,1, 3,2,1,0],
      "invariant_factors": [8],
      "action": {"0": [1], "1": [3], "2": [5], "3": [7]},
      "chi": {"0": 1, "1": 3, "2": 5, "3": 7},
      "chi_modulus": 8,
      "designated": {"2": [0,1,2,3], "inf": [0,3]},
      "archimedean": ["inf"]
    }

`table` is the row-major multiplication table on element indices, `action`
maps element indices to row-major matrices on the invariant-factor
coordinates, `chi` maps element indices to units mod `chi_modulus`
(defaulting to the module exponent).  Curves are triples of rationals,
points "inf" or a rational pair, rationals "num/den" strings, places "inf"
or a decimal prime.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .abelian import FinAb
from .elliptic import Curve, CurvePoint
from .errors import InputError
from .gmodules import CyclotomicData, GModule
from .groups import GroupTable
from .models import PlaceModel
from .padics import Place, parse_rational


def load_document(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise InputError("input file not found: %s" % path) from None
    except json.JSONDecodeError as exc:
        raise InputError("input file is not valid JSON: %s" % exc) from None
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    return doc


def _require(doc: dict, field: str):
    if field not in doc:
        raise InputError("missing required field %r" % field)
    return doc[field]


def parse_group(doc: dict) -> GroupTable:
    order = _require(doc, "order")
    flat = _require(doc, "table")
    if not isinstance(order, int) or order < 1:
        raise InputError("order must be a positive integer")
    if not isinstance(flat, list) or len(flat) != order * order:
        raise InputError("table must be a row-major list of order^2 indices")
    table = tuple(tuple(int(flat[i * order + j]) for j in range(order))
                  for i in range(order))
    return GroupTable(order, table)


def parse_module(doc: dict) -> GModule:
    group = parse_group(doc)
    inv = _require(doc, "invariant_factors")
    if not isinstance(inv, list):
        raise InputError("invariant_factors must be a list")
    space = FinAb(tuple(int(x) for x in inv))
    raw = _require(doc, "action")
    if not isinstance(raw, dict):
        raise InputError("action must map element indices to matrices")
    r = space.rank
    action = []
    for g in range(group.order):
        key = str(g)
        if key not in raw:
            raise InputError("action is missing element %d" % g)
        flat = raw[key]
        if not isinstance(flat, list) or len(flat) != r * r:
            raise InputError("action matrix for element %d has wrong size" % g)
        action.append(tuple(tuple(int(flat[i * r + j]) for j in range(r))
                            for i in range(r)))
    return GModule(group, space, tuple(action))


def parse_chi(doc: dict, module: GModule) -> CyclotomicData | None:
    if "chi" not in doc:
        return None
    raw = doc["chi"]
    if not isinstance(raw, dict):
        raise InputError("chi must map element indices to units")
    modulus = doc.get("chi_modulus", module.space.exponent)
    vals = []
    for g in range(module.group.order):
        key = str(g)
        if key not in raw:
            raise InputError("chi is missing element %d" % g)
        vals.append(int(raw[key]))
    chi = CyclotomicData(int(modulus), tuple(vals))
    chi.validate(module.group)
    return chi


def parse_model(doc: dict) -> PlaceModel:
    module = parse_module(doc)
    designated = doc.get("designated", {})
    if not isinstance(designated, dict):
        raise InputError("designated must map labels to element lists")
    arch = doc.get("archimedean", [])
    if not isinstance(arch, list):
        raise InputError("archimedean must be a list of labels")
    des = {str(k): tuple(int(x) for x in v) for k, v in designated.items()}
    return PlaceModel(module, des, frozenset(str(x) for x in arch))


def parse_place(text: str) -> Place:
    return Place.parse(text)


def parse_curve(text: str) -> Curve:
    parts = str(text).split(",")
    if len(parts) != 3:
        raise InputError("curve must be three comma-separated rationals")
    return Curve(*(parse_rational(p) for p in parts))


def parse_point(text: str, curve: Curve) -> CurvePoint:
    text = str(text).strip()
    if text in ("inf", "oo", "infinity"):
        return curve.infinity()
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError("point must be 'inf' or 'x,y'")
    return curve.point(parse_rational(parts[0]), parse_rational(parts[1]))


def parse_quadratics(text: str) -> list[tuple[Fraction, Fraction]]:
    """Semicolon-separated monic quadratics, each given as 'b,c' meaning
    x^2 + b x + c."""
    out = []
    for chunk in str(text).split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise InputError("quadratic must be 'b,c' for x^2 + b x + c")
        out.append((parse_rational(parts[0]), parse_rational(parts[1])))
    if not out:
        raise InputError("no quadratics given")
    return out


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)
