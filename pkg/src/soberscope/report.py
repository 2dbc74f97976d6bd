"""Check reports and their text / line-delimited JSON rendering."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

from .chain import EvSet, render_evset
from .finite import IrreducibleRecord


def render_value(x: Any) -> Any:
    """JSON-friendly rendering of sets, elements, descriptors and records."""
    from .johnstone import Descriptor, render_descriptor, render_element

    if isinstance(x, IrreducibleRecord):
        return render_value(x.members)
    if isinstance(x, EvSet):
        return render_evset(x)
    if isinstance(x, Descriptor):
        return render_descriptor(x)
    if isinstance(x, (frozenset, set)):
        items = [render_value(y) for y in x]
        return sorted(items, key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(x, tuple):
        if len(x) == 2 and isinstance(x[0], int) and (x[1] == math.inf or isinstance(x[1], int)) \
                and not isinstance(x[0], bool) and x[0] >= 1:
            return render_element(x)
        return [render_value(y) for y in x]
    if isinstance(x, list):
        return [render_value(y) for y in x]
    if isinstance(x, dict):
        return {str(render_value(k)): render_value(v) for k, v in x.items()}
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if x is None or isinstance(x, (str, int, bool)):
        return x
    return str(x)


@dataclass
class Fact:
    name: str
    holds: bool
    detail: Any = None
    mode: str = "exhaustive"


@dataclass
class CheckReport:
    property: str
    holds: bool
    witness: Any = None
    mode: str = "exhaustive"
    millis: float | None = None
    facts: list = field(default_factory=list)

    def record(self, timing: bool = True) -> dict:
        out = {
            "property": self.property,
            "holds": bool(self.holds),
            "witness": render_value(self.witness),
            "mode": self.mode,
            "millis": round(self.millis, 1) if (timing and self.millis is not None) else None,
        }
        if self.facts:
            out["facts"] = [
                {"name": f.name, "holds": bool(f.holds), "detail": render_value(f.detail), "mode": f.mode}
                for f in self.facts
            ]
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.record(timing), ensure_ascii=False)

    def to_text(self, timing: bool = True) -> str:
        tag = "PASS" if self.holds else "FAIL"
        line = f"{tag} {self.property} [{self.mode}"
        if timing and self.millis is not None:
            line += f", {self.millis:.0f} ms"
        line += "]"
        if self.witness is not None:
            line += f" witness={json.dumps(render_value(self.witness), ensure_ascii=False)}"
        lines = [line]
        for f in self.facts:
            mark = "ok " if f.holds else "BAD"
            text = f"  {mark} {f.name}"
            if f.detail is not None:
                text += f": {json.dumps(render_value(f.detail), ensure_ascii=False)}"
            if f.mode != self.mode:
                text += f" ({f.mode})"
            lines.append(text)
        return "\n".join(lines)


def from_facts(name: str, facts: list, mode: str, millis: float | None = None) -> CheckReport:
    failing = [f.name for f in facts if not f.holds]
    return CheckReport(name, not failing, failing or None, mode, millis, facts)
