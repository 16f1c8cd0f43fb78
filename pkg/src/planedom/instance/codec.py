"""JSON text format for instances. Rationals travel as [numerator, denominator]."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from planedom.instance.model import Clause, Layout, Pm3SatInstance


class InstanceDecodeError(ValueError):
    pass


def _rat(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def encode(inst: Pm3SatInstance) -> str:
    lay = inst.layout
    doc = {
        "n": inst.n,
        "clauses": [{"id": c.id, "polarity": c.polarity, "vars": list(c.vars)} for c in inst.clauses],
        "layout": {
            "intervals": [[_rat(lo), _rat(hi)] for lo, hi in (lay.intervals[v] for v in sorted(lay.intervals))],
            "rects": [{"clause": cid, "box": [_rat(x) for x in box]} for cid, box in sorted(lay.rects.items())],
            "legs": [{"clause": cid, "var": v, "x": _rat(x)} for (cid, v), x in sorted(lay.legs.items())],
        },
    }
    return json.dumps(doc, indent=1) + "\n"


def _fields(obj: Any, where: str, names: tuple[str, ...]) -> dict:
    if not isinstance(obj, dict):
        raise InstanceDecodeError(f"{where}: expected an object")
    for name in names:
        if name not in obj:
            raise InstanceDecodeError(f"{where}: missing field '{name}'")
    extra = sorted(set(obj) - set(names))
    if extra:
        raise InstanceDecodeError(f"{where}: unknown field '{extra[0]}'")
    return obj


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InstanceDecodeError(f"{where}: expected an integer")
    return x


def _list(x: Any, where: str, length: int | None = None) -> list:
    if not isinstance(x, list):
        raise InstanceDecodeError(f"{where}: expected an array")
    if length is not None and len(x) != length:
        raise InstanceDecodeError(f"{where}: expected {length} entries, got {len(x)}")
    return x


def _frac(x: Any, where: str) -> Fraction:
    num, den = _list(x, where, 2)
    num, den = _int(num, where + "[0]"), _int(den, where + "[1]")
    if den <= 0:
        raise InstanceDecodeError(f"{where}: denominator must be positive")
    return Fraction(num, den)


def decode(text: str) -> Pm3SatInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceDecodeError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    _fields(doc, "instance", ("n", "clauses", "layout"))
    n = _int(doc["n"], "n")

    clauses = []
    for i, raw in enumerate(_list(doc["clauses"], "clauses")):
        where = f"clauses[{i}]"
        _fields(raw, where, ("id", "polarity", "vars"))
        vs = [_int(v, f"{where}.vars[{k}]") for k, v in enumerate(_list(raw["vars"], where + ".vars"))]
        try:
            clauses.append(Clause(_int(raw["id"], where + ".id"), raw["polarity"], tuple(vs)))
        except ValueError as exc:
            raise InstanceDecodeError(f"{where}: {exc}") from None

    lay = _fields(doc["layout"], "layout", ("intervals", "rects", "legs"))
    intervals = {}
    for v, raw in enumerate(_list(lay["intervals"], "layout.intervals")):
        where = f"layout.intervals[{v}]"
        lo, hi = _list(raw, where, 2)
        intervals[v] = (_frac(lo, where + "[0]"), _frac(hi, where + "[1]"))
    rects = {}
    for i, raw in enumerate(_list(lay["rects"], "layout.rects")):
        where = f"layout.rects[{i}]"
        _fields(raw, where, ("clause", "box"))
        box = _list(raw["box"], where + ".box", 4)
        rects[_int(raw["clause"], where + ".clause")] = tuple(_frac(x, f"{where}.box[{k}]") for k, x in enumerate(box))
    legs = {}
    for i, raw in enumerate(_list(lay["legs"], "layout.legs")):
        where = f"layout.legs[{i}]"
        _fields(raw, where, ("clause", "var", "x"))
        key = (_int(raw["clause"], where + ".clause"), _int(raw["var"], where + ".var"))
        legs[key] = _frac(raw["x"], where + ".x")
    try:
        return Pm3SatInstance(n, tuple(clauses), Layout(intervals, rects, legs))
    except ValueError as exc:
        raise InstanceDecodeError(str(exc)) from None
