"""The countable chain 0 < 1 < 2 < ... (< inf) as an exact symbolic space.

Subsets are :class:`EvSet` values: a finite head below a cut point plus a
yes/no tail for every natural at or above the cut, plus membership of the
top ``inf``.  Every up-set, down-set and Boolean combination of them is of
this form, so membership, inclusion, union, complement and suprema are all
exact.

Families of closed sets are infinite (one ``down(n)`` per ``n``); they are
enumerated for parameters up to ``bound``.  The chain's predicates only
compare parameters with each other, with their successors and with ``0``, so
any property of at most a few parameters that holds for all parameters up to
a modest bound holds for all of them.  Reports still carry the bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable

from .base import Space, window_irreducible
from .errors import ContractError, InputError

INF = math.inf


def _is_nat(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


@dataclass(frozen=True)
class EvSet:
    """Subset of ``{0, 1, 2, ...} u {inf}`` that is eventually constant on the naturals."""

    head: frozenset = frozenset()
    cut: int = 0
    tail: bool = False
    inf: bool = False

    def __post_init__(self):
        head = frozenset(n for n in self.head if n < self.cut)
        cut = self.cut
        # shrink the cut while the last head position agrees with the tail
        while cut > 0 and ((cut - 1) in head) == self.tail:
            cut -= 1
            head = head - {cut}
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "cut", cut)

    # constructors
    @classmethod
    def finite(cls, items: Iterable) -> "EvSet":
        items = set(items)
        inf = INF in items
        nats = {n for n in items if n != INF}
        for n in nats:
            if not _is_nat(n):
                raise InputError(f"{n!r} is not a point of the chain")
        return cls(frozenset(nats), max(nats) + 1 if nats else 0, False, inf)

    @classmethod
    def down(cls, n: int) -> "EvSet":
        return cls(frozenset(range(n + 1)), n + 1, False, False)

    @classmethod
    def up(cls, n: int, inf: bool = True) -> "EvSet":
        return cls(frozenset(), n, True, inf)

    @classmethod
    def naturals(cls) -> "EvSet":
        return cls(frozenset(), 0, True, False)

    @classmethod
    def empty(cls) -> "EvSet":
        return cls()

    # set algebra
    def _at(self, n: int) -> bool:
        return n in self.head if n < self.cut else self.tail

    def __contains__(self, x) -> bool:
        if x == INF:
            return self.inf
        return _is_nat(x) and self._at(x)

    def _combine(self, other: "EvSet", op) -> "EvSet":
        cut = max(self.cut, other.cut)
        head = frozenset(n for n in range(cut) if op(self._at(n), other._at(n)))
        return EvSet(head, cut, op(self.tail, other.tail), op(self.inf, other.inf))

    def __or__(self, other):
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other):
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a and not b)

    def __le__(self, other) -> bool:
        return (self - other).is_empty()

    def __lt__(self, other) -> bool:
        return self <= other and self != other

    def is_empty(self) -> bool:
        return not self.head and not self.tail and not self.inf

    def naturals_part(self) -> "EvSet":
        return EvSet(self.head, self.cut, self.tail, False)

    def finite_members(self):
        """Members as a set, when finite."""
        if self.tail:
            raise ValueError("infinite set")
        return set(self.head) | ({INF} if self.inf else set())

    def max_natural(self):
        return max(self.head) if self.head and not self.tail else None

    def __repr__(self):
        return f"EvSet({render_evset(self)})"


def render_evset(s: EvSet) -> str:
    if s.is_empty():
        return "{}"
    parts = []
    if s.tail and not s.head and s.cut == 0:
        parts.append("N")
    else:
        head = sorted(s.head)
        if head and head == list(range(head[-1] + 1)) and not s.tail:
            parts.append(f"0..{head[-1]}" if head[-1] > 0 else "0")
        else:
            parts.extend(str(n) for n in head)
        if s.tail:
            parts.append(f"{s.cut}..")
    if s.inf:
        parts.append("inf")
    return "{" + ",".join(parts) + "}"


@dataclass(frozen=True, eq=False)
class ChainSpace(Space):
    """The chain ``N`` (``top=False``) or ``N u {inf}`` with a chosen topology.

    ``topology`` is ``"alexandroff"`` (all up-sets) or ``"scott"``.  On the
    naturals alone both coincide.  ``labels`` optionally renames points for
    presentation, e.g. the sobrification of ``N`` labels ``n`` as ``down(n)``
    and ``inf`` as ``N``.
    """

    top: bool = True
    topology: str = "alexandroff"
    bound: int = 16
    labels: str | None = None
    name: str = field(default="")

    def __post_init__(self):
        if self.topology not in ("alexandroff", "scott"):
            raise InputError(f"unknown chain topology {self.topology!r}")
        if not self.name:
            base = "omega+1" if self.top else "omega"
            object.__setattr__(self, "name", f"{base}/{self.topology}")

    @property
    def mode(self):
        return f"symbolic window B={self.bound}"

    def __eq__(self, other):
        return (
            isinstance(other, ChainSpace)
            and (self.top, self.effective_topology) == (other.top, other.effective_topology)
        )

    def __hash__(self):
        return hash((self.top, self.effective_topology))

    @property
    def effective_topology(self) -> str:
        return self.topology if self.top else "alexandroff"

    @property
    def whole(self) -> EvSet:
        return EvSet.up(0, inf=self.top)

    def _check(self, s: EvSet) -> EvSet:
        if not isinstance(s, EvSet):
            raise InputError(f"expected a chain subset, got {s!r}")
        if s.inf and not self.top:
            raise InputError("inf is not a point of this chain")
        return s

    def points(self):
        return list(range(self.bound + 1)) + ([INF] if self.top else [])

    def is_point(self, x) -> bool:
        return _is_nat(x) or (self.top and x == INF)

    def leq(self, x, y) -> bool:
        for e in (x, y):
            if not self.is_point(e):
                raise InputError(f"{e!r} is not a point of {self.name}")
        return x <= y

    def closed_sets(self):
        out = [EvSet.empty()] + [EvSet.down(n) for n in range(self.bound + 1)]
        if self.top:
            if self.effective_topology == "alexandroff":
                out.append(EvSet.naturals())
            out.append(self.whole)
        else:
            out.append(EvSet.naturals())
        return out

    def open_sets(self):
        return [self.complement(c) for c in self.closed_sets()]

    def _is_down(self, s: EvSet) -> bool:
        if s.inf:
            return s == self.whole
        if s.tail:
            return s == EvSet.naturals()
        return s.head == frozenset(range(len(s.head)))

    def is_closed(self, s) -> bool:
        s = self._check(s)
        if not self._is_down(s):
            return False
        if self.top and self.effective_topology == "scott" and s.tail and not s.inf:
            return False
        return True

    def is_open(self, s) -> bool:
        return self.is_closed(self.complement(s))

    def closure(self, s):
        s = self._check(s)
        if s.inf:
            return self.whole
        if s.tail:
            if self.top and self.effective_topology == "scott":
                return self.whole
            return EvSet.naturals()
        if s.head:
            return EvSet.down(max(s.head))
        return EvSet.empty()

    def complement(self, s):
        return self.whole - self._check(s)

    def make_set(self, items):
        return self._check(EvSet.finite(items))

    def sup(self, s):
        s = self._check(s)
        if s.inf or s.tail:
            return INF if self.top else None
        if s.head:
            return max(s.head)
        return 0

    def upper_bounded(self, s) -> bool:
        s = self._check(s)
        return self.top or not s.tail

    def point_closure(self, x):
        if not self.is_point(x):
            raise InputError(f"{x!r} is not a point of {self.name}")
        return self.whole if x == INF else EvSet.down(x)

    def irreducible_closed(self):
        cached = self.__dict__.get("_irreducible")
        if cached is None:
            closed = self.closed_sets()
            cached = tuple(window_irreducible(self, closed, closed))
            object.__setattr__(self, "_irreducible", cached)
        return list(cached)

    def describe_point(self, x):
        if self.labels == "sobrification":
            return "N" if x == INF else f"down({x})"
        return "inf" if x == INF else x

    def describe(self, s):
        if self.labels == "sobrification" and isinstance(s, EvSet):
            return render_evset(s).replace("inf", "N*")
        return render_evset(s)

    def canonical_key(self, s):
        return (s.inf, s.tail, s.cut, sorted(s.head))


def omega_plus_one(topology: str = "alexandroff", bound: int = 16) -> ChainSpace:
    return ChainSpace(top=True, topology=topology, bound=bound)


def omega(bound: int = 16) -> ChainSpace:
    return ChainSpace(top=False, topology="alexandroff", bound=bound)


def sobrification_of_omega(bound: int = 16) -> ChainSpace:
    """``N^S``: directed lower sets of ``N``; ``down(n)`` is point ``n``, ``N`` is ``inf``."""
    return ChainSpace(top=True, topology="scott", bound=bound, labels="sobrification", name="N^S")


@dataclass(frozen=True, eq=False)
class ChainMap:
    """A map out of a chain: explicit values below ``cut``, then a uniform rule.

    ``tail`` is ``("shift", c)`` (``n -> n + c``, target must be a chain) or
    ``("const", v)``.  ``at_inf`` is the image of ``inf`` when the source has a
    top.  Images and preimages of :class:`EvSet` values are exact.
    """

    source: ChainSpace
    target: Any
    head: dict = field(default_factory=dict)
    cut: int = 0
    tail: tuple = ("shift", 0)
    at_inf: Any = INF
    name: str = "chain-map"

    def __post_init__(self):
        if set(self.head) != set(range(self.cut)):
            raise InputError("chain map must give explicit values for exactly 0..cut-1")
        kind = self.tail[0]
        if kind not in ("shift", "const"):
            raise InputError(f"unknown tail rule {kind!r}")
        if kind == "shift" and not isinstance(self.target, ChainSpace):
            raise InputError("a shifting tail needs a chain target")
        if kind == "shift" and self.cut + self.tail[1] < 0:
            raise InputError("shift leaves the chain")

    def __call__(self, x):
        if x == INF:
            if not self.source.top:
                raise InputError("inf is not in the source")
            return self.at_inf
        if not _is_nat(x):
            raise InputError(f"{x!r} is not a point of the source chain")
        if x < self.cut:
            return self.head[x]
        kind, v = self.tail
        return x + v if kind == "shift" else v

    def image(self, s: EvSet):
        values = {self.head[n] for n in range(self.cut) if n in s}
        lo = max(self.cut, s.cut)
        values |= {self(n) for n in range(self.cut, lo) if n in s}
        if s.inf:
            values.add(self.at_inf)
        kind, v = self.tail
        if isinstance(self.target, ChainSpace):
            out = EvSet.finite(values)
            if s.tail:
                out = out | (EvSet.up(lo + v, inf=False) if kind == "shift" else EvSet.finite({v}))
            return out
        if s.tail:
            values.add(v)
        return self.target.make_set(values)

    def preimage(self, t) -> EvSet:
        head = {n for n in range(self.cut) if self.head[n] in t}
        kind, v = self.tail
        out = EvSet.finite(head)
        if kind == "const":
            if v in t:
                out = out | EvSet.up(self.cut, inf=False)
        else:
            if not isinstance(t, EvSet):
                raise ContractError("shift rule needs a chain-valued target set")
            hi = max(self.cut, t.cut - v)
            out = out | EvSet.finite(n for n in range(self.cut, hi) if n + v in t)
            if t.tail:
                out = out | EvSet.up(hi, inf=False)
        if self.source.top and self.at_inf in t:
            out = out | EvSet.finite({INF})
        return out

    def image_closure(self, s):
        return self.target.closure(self.image(s))

    def values_on(self, pts):
        return {x: self(x) for x in pts}

    def with_spaces(self, source=None, target=None, name=None) -> "ChainMap":
        return ChainMap(
            source if source is not None else self.source,
            target if target is not None else self.target,
            dict(self.head), self.cut, self.tail, self.at_inf, name or self.name,
        )


def identity_chain_map(source: ChainSpace, target: ChainSpace | None = None, name="id") -> ChainMap:
    return ChainMap(source, target if target is not None else source, {}, 0, ("shift", 0), INF, name)


def xi_map(bound: int = 16) -> ChainMap:
    """``xi: (omega+1, Alexandroff) -> N^S`` with ``n -> down(n)``, ``inf -> N``."""
    return identity_chain_map(omega_plus_one("alexandroff", bound), sobrification_of_omega(bound), "xi-omega")
