"""Maps between spaces given by an explicit table on a finite source."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterator

from .errors import InputError
from .finite import FiniteSpace


@dataclass(frozen=True, eq=False)
class SpaceMap:
    source: FiniteSpace
    target: Any
    table: dict = field(repr=False)
    name: str = "map"

    def __post_init__(self):
        table = dict(self.table)
        object.__setattr__(self, "table", table)
        missing = [x for x in self.source.carrier if x not in table]
        if missing:
            raise InputError(f"map {self.name} is undefined on {missing}")
        extra = [x for x in table if x not in self.source.index]
        if extra:
            raise InputError(f"map {self.name} is defined outside its source: {extra}")
        for x, y in table.items():
            if self.target.is_finite and y not in self.target.index:
                raise InputError(f"map {self.name} sends {x!r} outside the target carrier")
            if not self.target.is_finite and hasattr(self.target, "is_point") and not self.target.is_point(y):
                raise InputError(f"map {self.name} sends {x!r} outside the target")

    def __call__(self, x):
        try:
            return self.table[x]
        except KeyError:
            raise InputError(f"{x!r} is not in the source of {self.name}") from None

    def image(self, s):
        return self.target.make_set(self.table[x] for x in s)

    def image_closure(self, s):
        return self.target.closure(self.image(s))

    def preimage(self, t) -> frozenset:
        return frozenset(x for x in self.source.carrier if self.table[x] in t)

    def with_spaces(self, source=None, target=None, name=None) -> "SpaceMap":
        return SpaceMap(
            source if source is not None else self.source,
            target if target is not None else self.target,
            self.table,
            name or self.name,
        )

    def is_injective(self) -> bool:
        return len(set(self.table.values())) == len(self.table)

    def compose(self, inner: "SpaceMap", name=None) -> "SpaceMap":
        """``self o inner``."""
        return SpaceMap(inner.source, self.target, {x: self(inner(x)) for x in inner.source.carrier},
                        name or f"{self.name}.{inner.name}")


def identity_map(space: FiniteSpace) -> SpaceMap:
    return SpaceMap(space, space, {x: x for x in space.carrier}, "id")


def constant_map(source: FiniteSpace, target: FiniteSpace, value) -> SpaceMap:
    return SpaceMap(source, target, {x: value for x in source.carrier}, f"const-{value}")


def all_maps(source: FiniteSpace, target: FiniteSpace) -> Iterator[SpaceMap]:
    for values in itertools.product(target.carrier, repeat=len(source.carrier)):
        yield SpaceMap(source, target, dict(zip(source.carrier, values)))
