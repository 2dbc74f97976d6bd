"""Finite posets and finite topological spaces.

Subsets are ``frozenset`` objects over the carrier; a space keeps its carrier
as a tuple so that every derived listing (closed sets, irreducible sets,
witnesses) is produced in one canonical order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .base import Space
from .errors import ContractError, InputError


def _canon(carrier_index, s):
    return tuple(sorted(carrier_index[x] for x in s))


def union_closure(generators: Iterable[frozenset]) -> frozenset:
    """All unions of subfamilies of ``generators`` (the empty union included)."""
    family = {frozenset()}
    for g in generators:
        family |= {f | g for f in family}
    return frozenset(family)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def __str__(self):
        sets = ", ".join("{" + ",".join(map(str, sorted(w, key=str))) + "}" for w in self.witness)
        if len(self.witness) == 1:
            return f"{self.axiom} axiom violated: {sets} is missing"
        return f"{self.axiom} axiom violated: {sets}"


def _is_topology_fast(family: set, carrier: list, index: dict) -> bool:
    """A family with the empty set and the carrier is a topology iff it holds
    every minimal neighbourhood and equals the set of their unions."""
    masks = {sum(1 << index[x] for x in u) for u in family}
    full = (1 << len(carrier)) - 1
    nbhd = []
    for i in range(len(carrier)):
        n = full
        for u in masks:
            if u >> i & 1:
                n &= u
        if n not in masks:
            return False
        nbhd.append(n)
    unions = {0}
    for g in set(nbhd):
        unions |= {f | g for f in unions}
        if len(unions) > len(masks):
            return False
    return unions == masks


def validate_topology(opens: Iterable[Iterable], carrier: Sequence) -> list[Violation]:
    """Check the topology axioms for ``opens`` on ``carrier``.

    Returns an empty list when the family is a topology.  Each violation
    names the axiom and the sets witnessing the failure; for the union and
    intersection axioms the witness is the pair followed by the missing set.
    """
    carrier = list(carrier)
    if len(set(carrier)) != len(carrier):
        dup = next(x for x in carrier if carrier.count(x) > 1)
        raise InputError(f"duplicate carrier identifier {dup!r}")
    whole = frozenset(carrier)
    family = {frozenset(u) for u in opens}
    index = {x: i for i, x in enumerate(carrier)}
    out = []
    for u in sorted(family, key=lambda u: (len(u), sorted(map(str, u)))):
        if not u <= whole:
            out.append(Violation("subset", (u, u - whole)))
    family = {u for u in family if u <= whole}
    if frozenset() not in family:
        out.append(Violation("empty", (frozenset(),)))
    if whole not in family:
        out.append(Violation("union", (whole,)))
    if not out and _is_topology_fast(family, carrier, index):
        return out
    ordered = sorted(family, key=lambda u: _canon(index, u))
    for u, v in itertools.combinations(ordered, 2):
        if u & v not in family:
            out.append(Violation("intersection", (u, v, u & v)))
        if u | v not in family:
            out.append(Violation("union", (u, v, u | v)))
    return out


@dataclass(frozen=True)
class FinitePoset:
    elements: tuple
    leq_pairs: frozenset

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "leq_pairs", frozenset(self.leq_pairs))
        if len(set(els)) != len(els):
            raise InputError("duplicate poset element")
        known = set(els)
        for a, b in self.leq_pairs:
            if a not in known or b not in known:
                raise InputError(f"order pair ({a!r}, {b!r}) mentions an unknown element")
        for a in els:
            if (a, a) not in self.leq_pairs:
                raise InputError(f"order is not reflexive at {a!r}")
        for a, b in self.leq_pairs:
            if a != b and (b, a) in self.leq_pairs:
                raise InputError(f"order is not antisymmetric: {a!r} and {b!r}")
        for a, b in self.leq_pairs:
            for c in els:
                if (b, c) in self.leq_pairs and (a, c) not in self.leq_pairs:
                    raise InputError(f"order is not transitive: {a!r} <= {b!r} <= {c!r}")

    @classmethod
    def generated(cls, elements: Iterable, pairs: Iterable[tuple]) -> "FinitePoset":
        """Reflexive-transitive closure of ``pairs``; antisymmetry is still checked."""
        els = tuple(elements)
        rel = {(a, a) for a in els} | {tuple(p) for p in pairs}
        changed = True
        while changed:
            extra = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
            rel |= extra
            changed = bool(extra)
        return cls(els, frozenset(rel))

    def leq(self, a, b) -> bool:
        return (a, b) in self.leq_pairs

    def up(self, s: Iterable) -> frozenset:
        s = set(s)
        return frozenset(y for y in self.elements if any((x, y) in self.leq_pairs for x in s))

    def down(self, s: Iterable) -> frozenset:
        s = set(s)
        return frozenset(y for y in self.elements if any((y, x) in self.leq_pairs for x in s))

    def is_directed(self, s: Iterable) -> bool:
        s = list(s)
        if not s:
            return False
        return all(any(self.leq(a, c) and self.leq(b, c) for c in s) for a in s for b in s)


class FiniteSpace(Space):
    """A topology on a finite carrier.

    Internally every subset is a bit mask over the carrier order.  Finite
    topologies are determined by the minimal neighbourhoods ``N(x)`` (the
    intersection of the opens containing ``x``), and most questions reduce to
    them: ``U`` is open iff ``N(x) <= U`` for ``x`` in ``U``, and ``x <= y`` in
    the specialization order iff ``y`` lies in ``N(x)``.
    """

    is_finite = True
    mode = "exhaustive"

    def __init__(self, carrier, opens=(), *, _masks=None):
        self.carrier = tuple(carrier)
        if _masks is None:
            opens = [frozenset(u) for u in opens]
            problems = validate_topology(opens, self.carrier)
            if problems:
                raise InputError("; ".join(str(p) for p in problems))
            _masks = frozenset(self._mask(u) for u in opens)
        self._open_masks = frozenset(_masks)

    @classmethod
    def from_neighbourhoods(cls, carrier, nbhd: dict) -> "FiniteSpace":
        """The space whose minimal neighbourhoods are ``nbhd`` (checked)."""
        carrier = tuple(carrier)
        index = {x: i for i, x in enumerate(carrier)}
        masks = []
        for x in carrier:
            n = frozenset(nbhd[x])
            if x not in n:
                raise InputError(f"neighbourhood of {x!r} does not contain it")
            for y in n:
                if not frozenset(nbhd[y]) <= n:
                    raise InputError(f"neighbourhoods are not nested at {x!r}, {y!r}")
            masks.append(sum(1 << index[y] for y in n))
        family = {0}
        for g in masks:
            family |= {f | g for f in family}
        return cls(carrier, _masks=family)

    # -- masks -----------------------------------------------------------------
    @cached_property
    def index(self) -> dict:
        if len(set(self.carrier)) != len(self.carrier):
            raise InputError("duplicate carrier element")
        return {x: i for i, x in enumerate(self.carrier)}

    @cached_property
    def _full(self) -> int:
        return (1 << len(self.carrier)) - 1

    def _mask(self, s) -> int:
        index = self.index
        m = 0
        for x in s:
            try:
                m |= 1 << index[x]
            except (KeyError, TypeError):
                raise InputError(f"unknown element {x!r}") from None
        return m

    def _set(self, m: int) -> frozenset:
        c = self.carrier
        return frozenset(c[i] for i in _bits(m))

    @cached_property
    def _nbhd(self) -> list:
        out = []
        for i in range(len(self.carrier)):
            n = self._full
            b = 1 << i
            for u in self._open_masks:
                if u & b:
                    n &= u
            out.append(n)
        return out

    @cached_property
    def _closure_masks(self) -> list:
        """``_closure_masks[i]``: bits of the closure of point ``i``."""
        out = [0] * len(self.carrier)
        for j, n in enumerate(self._nbhd):
            for i in _bits(n):
                out[i] |= 1 << j
        return out

    def _closure_mask(self, m: int) -> int:
        return sum(1 << j for j, n in enumerate(self._nbhd) if n & m)

    def _is_open_mask(self, m: int) -> bool:
        return all(self._nbhd[i] & ~m == 0 for i in _bits(m))

    def _irreducible_mask(self, m: int) -> bool:
        if not m:
            return False
        nb = self._nbhd
        idx = list(_bits(m))
        for a, i in enumerate(idx):
            ni = nb[i] & m
            for j in idx[a + 1:]:
                if not ni & nb[j]:
                    return False
        return True

    # -- identity --------------------------------------------------------------
    @cached_property
    def opens(self) -> frozenset:
        return frozenset(self._set(u) for u in self._open_masks)

    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return False
        if self.carrier == other.carrier:
            return self._open_masks == other._open_masks
        return set(self.carrier) == set(other.carrier) and self.opens == other.opens

    def __hash__(self):
        return hash((frozenset(self.carrier), len(self._open_masks)))

    def __repr__(self):
        return f"FiniteSpace(carrier={list(self.carrier)!r}, opens={len(self._open_masks)})"

    # -- canonical bookkeeping -------------------------------------------------
    @cached_property
    def whole(self) -> frozenset:
        return frozenset(self.carrier)

    def key(self, s) -> tuple:
        return _canon(self.index, s)

    def canonical_key(self, s):
        s = frozenset(s)
        return (len(s), self.key(s))

    def sorted_sets(self, family: Iterable) -> list:
        return sorted(family, key=self.key)

    def _check_subset(self, s) -> frozenset:
        s = frozenset(s)
        unknown = s - self.whole
        if unknown:
            raise InputError(f"unknown element(s) {sorted(map(str, unknown))}")
        return s

    # -- topology --------------------------------------------------------------
    @cached_property
    def _closed_sorted(self) -> list:
        masks = [self._full & ~u for u in self._open_masks]
        return sorted(masks, key=lambda m: tuple(_bits(m)))

    @cached_property
    def closed_family(self) -> frozenset:
        return frozenset(self._set(c) for c in self._closed_sorted)

    def closed_sets(self) -> list:
        return [self._set(c) for c in self._closed_sorted]

    def open_sets(self) -> list:
        return self.sorted_sets(self.opens)

    def is_open(self, s) -> bool:
        return self._is_open_mask(self._mask(s))

    def is_closed(self, s) -> bool:
        return self._is_open_mask(self._full & ~self._mask(s))

    def closure(self, s) -> frozenset:
        return self._set(self._closure_mask(self._mask(s)))

    def interior(self, s) -> frozenset:
        m = self._mask(s)
        return self._set(sum(1 << i for i, n in enumerate(self._nbhd) if n & ~m == 0))

    def complement(self, s) -> frozenset:
        return self.whole - frozenset(s)

    def make_set(self, items) -> frozenset:
        return self._check_subset(items)

    @cached_property
    def _point_closures(self) -> dict:
        return {x: self._set(self._closure_masks[i]) for i, x in enumerate(self.carrier)}

    def point_closure(self, x) -> frozenset:
        if x not in self.index:
            raise InputError(f"unknown element {x!r}")
        return self._point_closures[x]

    # -- order -----------------------------------------------------------------
    def points(self) -> tuple:
        return self.carrier

    def leq(self, x, y) -> bool:
        index = self.index
        if x not in index or y not in index:
            raise InputError(f"unknown element {x if x not in index else y!r}")
        return bool(self._nbhd[index[x]] >> index[y] & 1)

    @cached_property
    def t0_witness(self):
        seen = {}
        for i, x in enumerate(self.carrier):
            c = self._closure_masks[i]
            if c in seen:
                return (seen[c], x)
            seen[c] = x
        return None

    @property
    def is_t0(self) -> bool:
        return self.t0_witness is None

    def require_t0(self):
        if not self.is_t0:
            a, b = self.t0_witness
            raise ContractError(f"space is not T0: {a!r} and {b!r} have equal closures")

    def _upper_mask(self, m: int) -> int:
        ub = self._full
        for i in _bits(m):
            ub &= self._nbhd[i]
        return ub

    def upper_bounds(self, s) -> frozenset:
        return self._set(self._upper_mask(self._mask(s)))

    def sup(self, s):
        self.require_t0()
        ub = self._upper_mask(self._mask(s))
        for i in _bits(ub):
            if ub & ~self._nbhd[i] == 0:
                return self.carrier[i]
        return None

    def up_of(self, x) -> frozenset:
        return self._set(self._nbhd[self.index[x]])

    def upper_bounded(self, s) -> bool:
        return bool(self._upper_mask(self._mask(s)))

    def specialization_poset(self) -> FinitePoset:
        self.require_t0()
        pairs = {(x, y) for y in self.carrier for x in self._point_closures[y]}
        return FinitePoset(self.carrier, frozenset(pairs))

    # -- irreducibility --------------------------------------------------------
    def is_irreducible(self, s) -> bool:
        """Any two opens meeting ``s`` meet inside ``s``.

        Every open meeting ``s`` contains ``N(x)`` for some ``x`` in ``s``, so
        it suffices to test minimal neighbourhoods pairwise.
        """
        return self._irreducible_mask(self._mask(s))

    def is_irreducible_definitional(self, s) -> bool:
        """Literal definition: no two closed sets cover ``s`` without one containing it."""
        m = self._mask(s)
        if not m:
            return False
        closed = self._closed_sorted
        for a in closed:
            if m & ~a == 0:
                continue
            for b in closed:
                if m & ~(a | b) == 0 and m & ~b:
                    return False
        return True

    @cached_property
    def _irreducible_closed(self) -> list:
        return [self._set(c) for c in self._closed_sorted if self._irreducible_mask(c)]

    def irreducible_closed(self) -> list:
        return list(self._irreducible_closed)

    def irreducible_subsets(self) -> list:
        """Every irreducible subset, closed or not (exponential; for oracles)."""
        n = len(self.carrier)
        masks = [m for m in range(1, 1 << n) if self._irreducible_mask(m)]
        masks.sort(key=lambda m: (bin(m).count("1"), tuple(_bits(m))))
        return [self._set(m) for m in masks]

    # -- presentation ----------------------------------------------------------
    def describe_point(self, x):
        return x if isinstance(x, (str, int)) else _render(x)

    def describe(self, s):
        return [self.describe_point(x) for x in sorted(s, key=self.index.__getitem__)]


def _bits(m: int):
    i = 0
    while m:
        if m & 1:
            yield i
        m >>= 1
        i += 1


def _render(x):
    if isinstance(x, frozenset):
        return sorted((_render(y) for y in x), key=str)
    if isinstance(x, tuple):
        return [_render(y) for y in x]
    return x if isinstance(x, (str, int)) else str(x)


# -- module-level operations -----------------------------------------------------

def specialization_leq(space: FiniteSpace, x, y) -> bool:
    for e in (x, y):
        if e not in space.index:
            raise InputError(f"unknown element {e!r}")
    return space.leq(x, y)


def closure(space: FiniteSpace, s) -> frozenset:
    return space.closure(s)


def is_t0(space: FiniteSpace):
    """``(True, None)`` or ``(False, (a, b))`` with ``cl{a} == cl{b}``."""
    w = space.t0_witness
    return (w is None, w)


def sup(space: FiniteSpace, s):
    return space.sup(s)


def is_irreducible(space: FiniteSpace, s) -> bool:
    return space.is_irreducible(s)


@dataclass(frozen=True)
class IrreducibleRecord:
    members: frozenset
    sup: Hashable | None
    generic_point: Hashable | None

    @property
    def has_sup(self) -> bool:
        return self.sup is not None


def enumerate_irreducible_closed(space: Space) -> list[IrreducibleRecord]:
    """Irreducible closed sets annotated with supremum and generic point."""
    if isinstance(space, FiniteSpace):
        space.require_t0()
    return [
        IrreducibleRecord(f, space.sup(f), space.generic_point(f))
        for f in space.irreducible_closed()
    ]


def alexandroff(poset: FinitePoset) -> FiniteSpace:
    """All up-sets of ``poset``."""
    principal = [poset.up({x}) for x in poset.elements]
    return FiniteSpace(poset.elements, union_closure(principal))


def scott_finite(poset: FinitePoset, check_limit: int = 8) -> FiniteSpace:
    """Scott topology of a finite poset.

    An up-set ``U`` is Scott open iff every directed ``D`` with ``sup D`` in
    ``U`` meets ``U``.  In a finite poset a directed set contains its own
    maximum, so this is the Alexandroff topology.  Up to ``check_limit``
    elements the definition is evaluated over all directed subsets and the
    equality asserted.
    """
    alex = alexandroff(poset)
    if len(poset.elements) > check_limit:
        return alex
    directed = [
        frozenset(c)
        for r in range(1, len(poset.elements) + 1)
        for c in itertools.combinations(poset.elements, r)
        if poset.is_directed(c)
    ]
    scott = [u for u in alex.opens
             if not any(alex.sup(d) in u and not (d & u) for d in directed)]
    result = FiniteSpace(poset.elements, scott)
    assert result == alex, "finite Scott topology differs from Alexandroff"
    return result


def product(spaces: Sequence[FiniteSpace]) -> FiniteSpace:
    """Product topology on the cartesian product of the carriers.

    Opens are unions of boxes ``U1 x ... x Un``.  The specialization order of
    the result is checked to be the componentwise order.
    """
    spaces = list(spaces)
    if not spaces:
        raise InputError("product of an empty family of spaces")
    carrier = tuple(itertools.product(*(s.carrier for s in spaces)))
    # The smallest box around a point is the product of the factors' minimal
    # neighbourhoods; these boxes form a base.
    nbhd = {x: frozenset(itertools.product(*(s.up_of(a) for s, a in zip(spaces, x)))) for x in carrier}
    result = FiniteSpace.from_neighbourhoods(carrier, nbhd)
    if all(s.is_t0 for s in spaces):
        for x in carrier:
            for y in carrier:
                componentwise = all(f.leq(a, b) for f, a, b in zip(spaces, x, y))
                assert result.leq(x, y) == componentwise, "product order is not componentwise"
    return result


def discrete(carrier: Iterable) -> FiniteSpace:
    carrier = tuple(carrier)
    subsets = [frozenset(c) for r in range(len(carrier) + 1) for c in itertools.combinations(carrier, r)]
    return FiniteSpace(carrier, subsets)


def sierpinski() -> FiniteSpace:
    return FiniteSpace(("a", "b"), [(), ("b",), ("a", "b")])


def point_space(name="p") -> FiniteSpace:
    return FiniteSpace((name,), [(), (name,)])
