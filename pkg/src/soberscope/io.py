"""JSON documents for spaces and maps.

Three space forms are accepted::

    {"carrier": ["a", "b"], "opens": [[], ["b"], ["a", "b"]]}
    {"poset": {"elements": [...], "le-pairs": [["a", "b"], ...]}, "topology": "alexandroff"}
    {"family": "johnstone-P", "topology": "scott", "bound": 40}

Map documents are either a table between two inline spaces or a named map::

    {"source": {...}, "target": {...}, "table": {"a": "b", ...}}
    {"map": "f-case1", "bound": 40}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .chain import ChainSpace, omega_plus_one
from .errors import InputError
from .finite import FinitePoset, FiniteSpace, alexandroff, scott_finite, validate_topology
from .maps import SpaceMap

FAMILIES = ("johnstone-P", "johnstone-X", "johnstone-Y", "omega-plus-one")
_DEFAULT_TOPOLOGY = {"johnstone-P": "scott", "johnstone-X": "scott", "johnstone-Y": "scott",
                     "omega-plus-one": "alexandroff"}


@dataclass
class SpaceDocument:
    form: str            # "carrier" | "poset" | "family"
    space: Any
    data: dict


def _line_of(text: str, needle: str) -> int | None:
    pos = text.find(needle)
    return None if pos < 0 else text.count("\n", 0, pos) + 1


def _where(text: str, fld: str) -> str:
    line = _line_of(text, f'"{fld}"')
    return f"line {line}, field {fld!r}" if line else f"field {fld!r}"


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"syntax error: {e.msg}", f"line {e.lineno}, column {e.colno}") from None


def _element(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(f"elements must be strings or integers, got {x!r}", where)
    return x


def _list(doc: dict, key: str, text: str) -> list:
    val = doc.get(key)
    if not isinstance(val, list):
        raise InputError("expected a list", _where(text, key))
    return val


def space_from_data(doc: Any, text: str = "", bound: int | None = None) -> SpaceDocument:
    if not isinstance(doc, dict):
        raise InputError("a space document must be a JSON object")
    if "family" in doc:
        return _family(doc, text, bound)
    if "poset" in doc:
        return _poset(doc, text)
    if "carrier" in doc or "opens" in doc:
        return _carrier(doc, text)
    raise InputError("expected one of the fields 'carrier', 'poset' or 'family'")


def parse_space(text: str, bound: int | None = None) -> SpaceDocument:
    return space_from_data(load_json(text), text, bound)


def _carrier(doc: dict, text: str) -> SpaceDocument:
    carrier = [_element(x, _where(text, "carrier")) for x in _list(doc, "carrier", text)]
    if len(set(carrier)) != len(carrier):
        raise InputError("duplicate carrier element", _where(text, "carrier"))
    opens = []
    for i, u in enumerate(_list(doc, "opens", text)):
        where = f"{_where(text, 'opens')}, entry {i}"
        if not isinstance(u, list):
            raise InputError("each open set must be a list", where)
        opens.append(frozenset(_element(x, where) for x in u))
    problems = validate_topology(opens, carrier)
    if problems:
        raise InputError("; ".join(str(p) for p in problems), _where(text, "opens"))
    return SpaceDocument("carrier", FiniteSpace(tuple(carrier), opens), doc)


def _poset(doc: dict, text: str) -> SpaceDocument:
    poset = doc["poset"]
    if not isinstance(poset, dict):
        raise InputError("'poset' must be an object", _where(text, "poset"))
    elements = [_element(x, _where(text, "elements")) for x in _list(poset, "elements", text)]
    pairs = []
    for p in _list(poset, "le-pairs", text):
        if not (isinstance(p, list) and len(p) == 2):
            raise InputError(f"order pair must have two entries, got {p!r}", _where(text, "le-pairs"))
        pairs.append(tuple(p))
    topology = doc.get("topology", "alexandroff")
    try:
        order = FinitePoset.generated(elements, pairs)
    except InputError as e:
        raise InputError(str(e), _where(text, "le-pairs")) from None
    if topology == "alexandroff":
        space = alexandroff(order)
    elif topology == "scott":
        space = scott_finite(order)
    else:
        raise InputError(f"unknown topology {topology!r}", _where(text, "topology"))
    return SpaceDocument("poset", space, doc)


def _family(doc: dict, text: str, bound: int | None) -> SpaceDocument:
    from .johnstone import JAmbient

    name = doc["family"]
    if name not in FAMILIES:
        raise InputError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}",
                         _where(text, "family"))
    topology = doc.get("topology", _DEFAULT_TOPOLOGY[name])
    if topology not in ("scott", "alexandroff"):
        raise InputError(f"unknown topology {topology!r}", _where(text, "topology"))
    b = doc.get("bound", bound)
    if b is None:
        b = 40 if name.startswith("johnstone") else 16
    if isinstance(b, bool) or not isinstance(b, int) or b < 1:
        raise InputError(f"bound must be a positive integer, got {b!r}", _where(text, "bound"))
    if name == "omega-plus-one":
        space = omega_plus_one(topology, b)
    else:
        space = JAmbient(name.split("-")[1], b, topology=topology)
    return SpaceDocument("family", space, doc)


def serialize_space(space) -> str:
    """Inverse of :func:`parse_space` up to ordering."""
    from .johnstone import JAmbient

    if isinstance(space, SpaceDocument):
        space = space.space
    if isinstance(space, FiniteSpace):
        index = space.index
        opens = sorted((sorted(u, key=index.__getitem__) for u in space.opens),
                       key=lambda u: (len(u), [index[x] for x in u]))
        data = {"carrier": list(space.carrier), "opens": opens}
    elif isinstance(space, JAmbient):
        data = {"family": f"johnstone-{space.kind}", "topology": space.topology, "bound": space.bound}
    elif isinstance(space, ChainSpace) and space.top:
        data = {"family": "omega-plus-one", "topology": space.topology, "bound": space.bound}
    else:
        raise InputError(f"cannot serialise {space!r}")
    return json.dumps(data, ensure_ascii=False)


# -- maps ---------------------------------------------------------------------------------------

def parse_map(text: str, bound: int | None = None):
    doc = load_json(text)
    if not isinstance(doc, dict):
        raise InputError("a map document must be a JSON object")
    if "map" in doc:
        from .scenarios import named_any_map
        b = doc.get("bound", bound) or 40
        return named_any_map(doc["map"], b)
    for key in ("source", "target", "table"):
        if key not in doc:
            raise InputError(f"missing field {key!r}")
    src = space_from_data(doc["source"], text).space
    tgt = space_from_data(doc["target"], text).space
    if not isinstance(src, FiniteSpace) or not isinstance(tgt, FiniteSpace):
        raise InputError("table maps need finite source and target", _where(text, "table"))
    table = doc["table"]
    if not isinstance(table, dict):
        raise InputError("'table' must be an object", _where(text, "table"))
    lookup_src = {str(x): x for x in src.carrier}
    lookup_tgt = {str(x): x for x in tgt.carrier}
    resolved = {}
    for k, v in table.items():
        if k not in lookup_src:
            raise InputError(f"{k!r} is not in the source carrier", _where(text, "table"))
        if str(v) not in lookup_tgt:
            raise InputError(f"{v!r} is not in the target carrier", _where(text, "table"))
        resolved[lookup_src[k]] = lookup_tgt[str(v)]
    try:
        return SpaceMap(src, tgt, resolved, doc.get("name", "map"))
    except InputError as e:
        raise InputError(str(e), _where(text, "table")) from None
