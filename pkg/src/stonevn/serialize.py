"""Canonical JSON encodings for every value type.

Output is byte-stable: keys sorted, fixed separators, trailing newline.
"""

import json

from .boolalg import BAElement, BAHom, BoolAlg
from .boolspace import ContinuousMap, EquivRelation, FiniteBoolSpace, InverseSystem
from .errors import ContractError, ParseError
from .exact import field_by_name
from .vnring import ProductRing, RingElement, RingHom


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def loads(text, source="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc.msg}", exc.lineno, exc.colno) from None


def _require(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{kind} must be an object with a {key!r} field")
    return obj[key]


def _str_list(value, what):
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError(f"{what} must be a list of strings")
    return tuple(value)


def _str_map(value, what):
    if not isinstance(value, dict) or not all(isinstance(v, str) for v in value.values()):
        raise ParseError(f"{what} must be an object of string values")
    return value


# --- rings --------------------------------------------------------------------

def ring_to_json(A):
    return {"field": A.field.name, "points": list(A.points)}


def ring_from_json(obj):
    field = field_by_name(_require(obj, "field", "ring"))
    return ProductRing(_str_list(_require(obj, "points", "ring"), "ring points"), field)


def element_to_json(a):
    F = a.ring.field
    return {"coords": {p: F.format(c) for p, c in zip(a.ring.points, a.coords)}}


def element_from_json(obj, A):
    coords = _require(obj, "coords", "element")
    if not isinstance(coords, dict):
        raise ParseError("element coords must be an object")
    values = {}
    for k, v in coords.items():
        if isinstance(v, str):
            values[k] = A.field.parse(v)
        elif isinstance(v, int) and not isinstance(v, bool):
            values[k] = A.field.coerce(v)
        elif isinstance(v, float) and not A.field.exact:
            values[k] = A.field.coerce(v)
        else:
            raise ParseError(f"coordinate {k!r} has unsupported value {v!r}")
    return A.element(values)


def hom_to_json(f):
    return {"dual": f.dual_dict()}


def hom_from_json(obj, domain, codomain):
    mapping = _str_map(_require(obj, "dual", "homomorphism"), "dual map")
    if set(mapping) != set(codomain.points):
        raise ParseError("dual map must be defined on exactly the codomain points")
    return RingHom.from_names(domain, codomain, mapping)


# --- spaces ---------------------------------------------------------------------

def space_to_json(X):
    return {"points": list(X.points)}


def space_from_json(obj):
    return FiniteBoolSpace(_str_list(_require(obj, "points", "space"), "space points"))


def map_to_json(m):
    return {"map": m.as_dict()}


def map_from_json(obj, domain, codomain):
    mapping = _str_map(_require(obj, "map", "map"), "map")
    if set(mapping) != set(domain.points):
        raise ParseError("map must be defined on exactly the domain points")
    return ContinuousMap.from_names(domain, codomain, mapping)


def partition_to_json(R):
    return {"blocks": [list(b) for b in R.blocks]}


def partition_from_json(obj, X):
    blocks = _require(obj, "blocks", "partition")
    if not isinstance(blocks, list):
        raise ParseError("blocks must be a list")
    return EquivRelation.from_blocks(X, [_str_list(b, "block") for b in blocks])


def system_to_json(S):
    arrows = [{"from": j, "to": i, "map": S.arrows[(j, i)].as_dict()}
              for (j, i) in sorted(S.arrows)]
    return {"levels": [space_to_json(L) for L in S.levels], "arrows": arrows}


def system_from_json(obj):
    levels = [space_from_json(L) for L in _require(obj, "levels", "inverse system")]
    arrows = {}
    for a in obj.get("arrows", []):
        try:
            j, i = int(a["from"]), int(a["to"])
        except (KeyError, TypeError, ValueError):
            raise ParseError("arrow needs integer 'from' and 'to'") from None
        if not (0 <= j < len(levels) and 0 <= i < len(levels)):
            raise ParseError(f"arrow {j} -> {i} references a missing level")
        arrows[(j, i)] = map_from_json(a, levels[j], levels[i])
    return InverseSystem(levels, arrows)


# --- Boolean algebras -------------------------------------------------------------

def ba_to_json(B):
    return {"atoms": list(B.atoms)}


def ba_from_json(obj):
    return BoolAlg(_str_list(_require(obj, "atoms", "Boolean algebra"), "atoms"))


def ba_element_to_json(x):
    return {"subset": list(x.subset)}


def ba_element_from_json(obj, B):
    return B.element(_str_list(_require(obj, "subset", "BA element"), "subset"))


def ba_hom_to_json(h):
    return {"dual_atoms": h.dual_dict()}


def ba_hom_from_json(obj, domain, codomain):
    mapping = _str_map(_require(obj, "dual_atoms", "BA homomorphism"), "dual atom map")
    if set(mapping) != set(codomain.atoms):
        raise ParseError("dual atom map must be defined on exactly the codomain atoms")
    return BAHom.from_names(domain, codomain, mapping)


def to_json(value):
    """Dispatch on the value type."""
    encoders = [
        (ProductRing, ring_to_json), (RingElement, element_to_json), (RingHom, hom_to_json),
        (FiniteBoolSpace, space_to_json), (ContinuousMap, map_to_json),
        (EquivRelation, partition_to_json), (InverseSystem, system_to_json),
        (BoolAlg, ba_to_json), (BAElement, ba_element_to_json), (BAHom, ba_hom_to_json),
    ]
    for cls, enc in encoders:
        if isinstance(value, cls):
            return enc(value)
    raise ContractError(f"no JSON encoding for {type(value).__name__}")
