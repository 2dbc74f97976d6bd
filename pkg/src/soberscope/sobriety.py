"""SI-topology, the sobriety hierarchy, and map checks.

Every function works on any :class:`~soberscope.base.Space`.  Quantifiers
over irreducible subsets run over irreducible *closed* sets: a set and its
closure have the same supremum and meet the same open sets, so nothing is
lost.  For finite spaces the ``definitional=True`` switch quantifies over all
irreducible subsets instead, which the tests use as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Any

from .base import Space, window_irreducible
from .chain import ChainSpace
from .errors import ContractError, InputError
from .finite import FiniteSpace, IrreducibleRecord, product

PROPERTIES = ("sober", "bounded-sober", "k-bounded-sober")


def _require_order(space: Space):
    if isinstance(space, FiniteSpace):
        space.require_t0()


def _irreducibles(space: Space, definitional: bool):
    if definitional:
        if not isinstance(space, FiniteSpace):
            raise ContractError("definitional mode needs a finite space")
        return space.irreducible_subsets()
    return space.irreducible_closed()


# -- SI-open / SI-closed ---------------------------------------------------------

def is_si_closed(space: Space, c, definitional: bool = False) -> bool:
    """``c`` closed and every irreducible ``F`` inside ``c`` with a sup has it in ``c``."""
    _require_order(space)
    if not space.is_closed(c):
        raise ContractError(f"{space.describe(c)} is not closed")
    for f in _irreducibles(space, definitional):
        if f <= c:
            s = space.sup(f)
            if s is not None and s not in c:
                return False
    return True


def is_si_open(space: Space, u, definitional: bool = False) -> bool:
    """``u`` open and every irreducible ``F`` whose sup lies in ``u`` meets ``u``."""
    _require_order(space)
    c = space.complement(u)
    if not space.is_closed(c):
        raise ContractError(f"{space.describe(u)} is not open")
    if not definitional:
        return is_si_closed(space, c)
    for f in _irreducibles(space, True):
        s = space.sup(f)
        if s is not None and s in u and not (f & u):
            return False
    return True


def si_closed_sets(space: Space) -> list:
    return [c for c in space.closed_sets() if is_si_closed(space, c)]


class WindowSpace(Space):
    """A space given by an explicit window of closed sets over a symbolic base.

    Suprema are delegated to the base; the constructor checks on the window
    that the specialization order of the new closed family agrees with the
    base order, which is what makes the delegation sound.
    """

    def __init__(self, base: Space, closed: list, name: str):
        self.base = base
        self._closed = list(closed)
        self._closed_set = set(self._closed)
        self.name = name
        pts = base.points()
        for y in pts:
            cy = self.point_closure(y)
            for x in pts:
                if (x in cy) != base.leq(x, y):
                    raise ContractError(f"{name}: order differs from the base at ({x!r}, {y!r})")

    @property
    def mode(self):
        return self.base.mode

    def points(self):
        return self.base.points()

    def leq(self, x, y):
        return x in self.point_closure(y)

    def closed_sets(self):
        return list(self._closed)

    def is_closed(self, s):
        return s in self._closed_set

    def closure(self, s):
        supers = [c for c in self._closed if s <= c]
        if not supers:
            raise ContractError("no closed superset in the window")
        return reduce(lambda a, b: a & b, supers)

    def complement(self, s):
        return self.base.complement(s)

    def make_set(self, items):
        return self.base.make_set(items)

    def sup(self, s):
        return self.base.sup(s)

    def upper_bounded(self, s):
        return self.base.upper_bounded(s)

    def point_closure(self, x):
        return self.closure(self.base.make_set([x])) if hasattr(self.base, "make_set") else None

    def irreducible_closed(self):
        return window_irreducible(self, self._closed, self._closed)

    def describe_point(self, x):
        return self.base.describe_point(x)

    def describe(self, s):
        return self.base.describe(s)

    def canonical_key(self, s):
        return self.base.canonical_key(s)


@dataclass(frozen=True)
class DerivedSpace:
    base: Space
    si_closed: tuple
    space: Space

    @property
    def si_opens(self) -> list:
        return [self.base.complement(c) for c in self.si_closed]

    @property
    def unchanged(self) -> bool:
        return set(self.si_closed) == set(self.base.closed_sets())


def derive_si(space: Space) -> DerivedSpace:
    """The SI-topology of ``space``.

    Finite spaces yield a :class:`FiniteSpace`.  For the chain the window
    result is matched against the chain's Scott topology and, if equal, the
    exact Scott chain is returned as the derived space.
    """
    _require_order(space)
    closed = si_closed_sets(space)
    if isinstance(space, FiniteSpace):
        derived = FiniteSpace(space.carrier, [space.complement(c) for c in closed])
    elif isinstance(space, ChainSpace):
        scott = ChainSpace(space.top, "scott", space.bound, space.labels)
        if set(closed) == set(scott.closed_sets()):
            derived = scott
        else:
            derived = WindowSpace(space, closed, f"SI({space.name})")
    else:
        derived = WindowSpace(space, closed, f"SI({getattr(space, 'name', 'space')})")
    return DerivedSpace(space, tuple(closed), derived)


def si_is_idempotent(space: Space) -> bool:
    once = derive_si(space)
    twice = derive_si(once.space)
    return set(twice.si_closed) == set(once.si_closed)


# -- sobriety ---------------------------------------------------------------------

@dataclass(frozen=True)
class SobrietyVerdict:
    property: str
    holds: bool
    witness: IrreducibleRecord | None
    mode: str = "exhaustive"

    def __bool__(self):
        return self.holds


def check_sobriety(space: Space, property: str = "k-bounded-sober") -> SobrietyVerdict:
    """Decide sobriety, bounded sobriety or k-bounded sobriety.

    The witness on failure is the canonically least irreducible closed set
    meeting the property's side condition that has no generic point.
    """
    if property not in PROPERTIES:
        raise InputError(f"unknown sobriety property {property!r}; expected one of {PROPERTIES}")
    _require_order(space)
    bad = []
    for f in space.irreducible_closed():
        s = space.sup(f)
        if property == "sober":
            relevant = True
        elif property == "bounded-sober":
            relevant = space.upper_bounded(f)
        else:
            relevant = s is not None
        if not relevant:
            continue
        g = space.generic_point(f)
        if g is None:
            bad.append(IrreducibleRecord(f, s, None))
        elif isinstance(space, FiniteSpace):
            gens = [x for x in space.carrier if space.point_closure(x) == f]
            assert gens == [g], "generic point is not unique in a T0 space"
    if not bad:
        return SobrietyVerdict(property, True, None, space.mode)
    witness = min(bad, key=lambda r: space.canonical_key(r.members))
    return SobrietyVerdict(property, False, witness, space.mode)


def revalidate_witness(space: Space, verdict: SobrietyVerdict) -> bool:
    """Re-derive a failing verdict from its witness without the fast paths.

    The witness must be closed, irreducible by the literal definition (finite
    spaces) or by the window, meet the property's side condition, and differ
    from every point closure.
    """
    if verdict.holds or verdict.witness is None:
        return False
    f = verdict.witness.members
    if not space.is_closed(f):
        return False
    if isinstance(space, FiniteSpace):
        if not space.is_irreducible_definitional(f):
            return False
        bounds = [y for y in space.carrier if all(space.leq(x, y) for x in f)]
        least = [y for y in bounds if all(space.leq(y, z) for z in bounds)]
        if verdict.property == "bounded-sober" and not bounds:
            return False
        if verdict.property == "k-bounded-sober" and not least:
            return False
    else:
        if f not in space.irreducible_closed():
            return False
        if verdict.property == "bounded-sober" and not space.upper_bounded(f):
            return False
        if verdict.property == "k-bounded-sober" and space.sup(f) is None:
            return False
    return all(space.point_closure(x) != f for x in space.points())


def sobriety_chain(space: Space) -> dict:
    """All three verdicts; raises if the implication chain is violated."""
    out = {p: check_sobriety(space, p) for p in PROPERTIES}
    if out["sober"].holds and not out["bounded-sober"].holds:
        raise AssertionError("sober but not bounded sober")
    if out["bounded-sober"].holds and not out["k-bounded-sober"].holds:
        raise AssertionError("bounded sober but not k-bounded sober")
    return out


def check_prop_2_6(space: Space) -> bool:
    """(k-bounded sober) iff (every closed set is SI-closed)."""
    ksober = check_sobriety(space, "k-bounded-sober").holds
    return ksober == derive_si(space).unchanged


# -- maps -------------------------------------------------------------------------

def is_continuous(f) -> tuple[bool, Any]:
    """``(True, None)`` or ``(False, witness)``.

    The witness is a target open set with non-open preimage (its closed
    complement when the target cannot complement sets).
    """
    for c in f.target.closed_sets():
        pre = f.preimage(c)
        if not f.source.is_closed(pre):
            try:
                return False, f.target.complement(c)
            except NotImplementedError:
                return False, c
    return True, None


def preserves_irreducible_sups(f, definitional: bool = False) -> tuple[bool, Any]:
    """Check ``f(sup F) == sup f(F)`` for irreducible ``F`` with a supremum."""
    _require_order(f.source)
    _require_order(f.target)
    for F in _irreducibles(f.source, definitional):
        s = f.source.sup(F)
        if s is None:
            continue
        image = f.image(F) if definitional else f.image_closure(F)
        t = f.target.sup(image)
        if t is None or t != f(s):
            return False, F
    return True, None


def check_prop_2_4(f) -> bool:
    """Continuity between the SI-spaces iff preservation of irreducible sups."""
    ok, witness = is_continuous(f)
    if not ok:
        raise ContractError(f"map {getattr(f, 'name', '')} is not continuous (witness {witness!r})")
    si_map = f.with_spaces(derive_si(f.source).space, derive_si(f.target).space)
    lhs = is_continuous(si_map)[0]
    rhs = preserves_irreducible_sups(f)[0]
    return lhs == rhs


def check_prop_2_8(spaces) -> bool:
    """The product of k-bounded sober factors is k-bounded sober."""
    for s in spaces:
        if not check_sobriety(s, "k-bounded-sober").holds:
            raise ContractError("factor is not k-bounded sober")
    return check_sobriety(product(spaces), "k-bounded-sober").holds
