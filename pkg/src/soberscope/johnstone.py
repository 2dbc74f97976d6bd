"""Johnstone's dcpo and the posets P, X, Y built on top of it.

Points of ``J = N x (N u {inf})`` are pairs ``(m, n)`` with ``m, n >= 1`` and
``n`` possibly ``INF``; apexes are the strings ``"top"`` (P), ``"top1"``,
``"top2"`` (X and Y) and ``"top3"`` (Y only).  Inside ``J``::

    (m1, n1) <= (m2, n2)  iff  m1 == m2 and n1 <= n2,
                           or  n2 == INF and n1 <= m2.

Scott-closed sets are handled through :class:`Descriptor`, a finite
description "everything up to height ``strip`` in every column, some columns
taller (``extras``), some columns complete (``tops``), optionally all of
``J``, plus apexes".  Scott-closed sets with unbounded column heights and no
tops are not representable; their only upper bounds are apexes, so they
never have a supremum in X or Y.

Families of descriptors are infinite; :class:`JAmbient` enumerates them for
parameters up to a bound and every fact derived that way is reported as a
bounded verification.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

import numpy as np

from .base import Space
from .chain import INF
from .errors import ContractError, InputError

APEXES = {
    "J": (),
    "P": ("top",),
    "X": ("top1", "top2"),
    "Y": ("top1", "top2", "top3"),
}
AMBIENTS = tuple(APEXES)
_APEX_NAMES = {"top": "⊤", "top1": "⊤1", "top2": "⊤2", "top3": "⊤3"}


def _is_pos(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 1


def check_element(kind: str, e) -> None:
    if kind not in APEXES:
        raise InputError(f"unknown ambient {kind!r}")
    if isinstance(e, str):
        if e not in APEXES[kind]:
            raise InputError(f"{e!r} is not an apex of {kind}")
        return
    if (isinstance(e, tuple) and len(e) == 2 and _is_pos(e[0])
            and (_is_pos(e[1]) or e[1] == INF)):
        return
    raise InputError(f"{e!r} is not an element of {kind}")


def is_apex(e) -> bool:
    return isinstance(e, str)


def apex_leq(kind: str, a: str, b: str) -> bool:
    return a == b or (kind == "Y" and b == "top3")


def j_leq(kind: str, a, b) -> bool:
    check_element(kind, a)
    check_element(kind, b)
    if a == b:
        return True
    if is_apex(b):
        return (not is_apex(a)) or apex_leq(kind, a, b)
    if is_apex(a):
        return False
    (m1, n1), (m2, n2) = a, b
    return (m1 == m2 and n1 <= n2) or (n2 == INF and n1 <= m2)


def render_element(e) -> str:
    if is_apex(e):
        return _APEX_NAMES[e]
    m, n = e
    return f"({m},{'∞' if n == INF else n})"


def parse_element(text: str):
    """Inverse of :func:`render_element`; also accepts ``inf`` and ASCII apex names."""
    t = text.strip()
    for k, v in _APEX_NAMES.items():
        if t in (k, v):
            return k
    if t.startswith("(") and t.endswith(")"):
        parts = [p.strip() for p in t[1:-1].split(",")]
        if len(parts) == 2:
            try:
                m = int(parts[0])
                n = INF if parts[1] in ("∞", "inf") else int(parts[1])
                return (m, n)
            except ValueError:
                pass
    raise InputError(f"cannot parse Johnstone element {text!r}")


# -- descriptors ----------------------------------------------------------------------

@dataclass(frozen=True)
class Descriptor:
    """Finite description of a (candidate) Scott-closed subset.

    Fields are stored canonically (sorted tuples); :meth:`make` additionally
    drops redundant ``extras``.  Construction does not enforce down-closure,
    so invalid descriptors can be built and rejected by :func:`is_scott_closed`.
    """

    whole: bool = False
    strip: int = 0
    extras: tuple = ()
    tops: frozenset = frozenset()
    apexes: frozenset = frozenset()

    def __post_init__(self):
        extras = tuple(sorted(dict(self.extras).items()))
        object.__setattr__(self, "extras", extras)
        object.__setattr__(self, "tops", frozenset(self.tops))
        object.__setattr__(self, "apexes", frozenset(self.apexes))
        if self.whole:
            object.__setattr__(self, "strip", 0)
            object.__setattr__(self, "extras", ())
            object.__setattr__(self, "tops", frozenset())

    @classmethod
    def make(cls, whole=False, strip=0, extras=None, tops=(), apexes=()) -> "Descriptor":
        tops = frozenset(tops)
        extras = {m: h for m, h in dict(extras or {}).items() if h > strip and m not in tops}
        return cls(whole, strip, tuple(extras.items()), tops, frozenset(apexes))

    @property
    def extras_map(self) -> dict:
        return dict(self.extras)

    def height(self, m: int):
        if self.whole or m in self.tops:
            return INF
        return self.extras_map.get(m, self.strip)

    def __contains__(self, e) -> bool:
        if is_apex(e):
            return e in self.apexes
        m, n = e
        if self.whole or m in self.tops:
            return True
        if n == INF:
            return False
        return n <= self.strip or n <= self.extras_map.get(m, 0)

    def contains_many(self, ms: np.ndarray, ns: np.ndarray) -> np.ndarray:
        """Vectorised membership for J-points; ``ns`` uses ``-1`` for infinity."""
        if self.whole:
            return np.ones(ms.shape, dtype=bool)
        inf = ns < 0
        out = np.isin(ms, list(self.tops))
        fin = ~inf & (ns <= self.strip)
        extra_h = np.zeros(ms.shape, dtype=np.int64)
        for m, h in self.extras:
            extra_h[ms == m] = h
        fin |= ~inf & (ns <= extra_h)
        return out | fin

    def is_empty(self) -> bool:
        return not (self.whole or self.strip or self.extras or self.tops or self.apexes)

    def params(self) -> int:
        vals = [self.strip, *self.tops, *(m for m, _ in self.extras), *(h for _, h in self.extras)]
        return max(vals, default=0)

    def profile(self) -> "Profile":
        explicit = dict(self.extras)
        explicit.update({t: INF for t in self.tops})
        return Profile(self.whole, explicit, self.strip, self.strip, self.apexes)

    def __le__(self, other) -> bool:
        return self.profile() <= _as_profile(other)

    def __or__(self, other: "Descriptor") -> "Descriptor":
        if not isinstance(other, Descriptor):
            return NotImplemented
        apexes = self.apexes | other.apexes
        if self.whole or other.whole:
            return Descriptor(True, apexes=apexes)
        strip = max(self.strip, other.strip)
        extras = {}
        for m in set(self.extras_map) | set(other.extras_map):
            extras[m] = max(self.height(m), other.height(m))
        return Descriptor.make(False, strip, extras, self.tops | other.tops, apexes)

    def __and__(self, other: "Descriptor") -> "Descriptor":
        if not isinstance(other, Descriptor):
            return NotImplemented
        apexes = self.apexes & other.apexes
        if self.whole and other.whole:
            return Descriptor(True, apexes=apexes)
        if self.whole:
            return Descriptor.make(False, other.strip, other.extras_map, other.tops, apexes)
        if other.whole:
            return Descriptor.make(False, self.strip, self.extras_map, self.tops, apexes)
        strip = min(self.strip, other.strip)
        tops = self.tops & other.tops
        extras = {}
        for m in set(self.extras_map) | set(other.extras_map) | self.tops | other.tops:
            if m not in tops:
                extras[m] = min(self.height(m), other.height(m))
        return Descriptor.make(False, strip, extras, tops, apexes)

    def j_part(self) -> "Descriptor":
        return Descriptor(self.whole, self.strip, self.extras, self.tops, frozenset())


def whole_j(apexes: Iterable = ()) -> Descriptor:
    return Descriptor(True, apexes=frozenset(apexes))


EMPTY = Descriptor()


def render_descriptor(d: Descriptor) -> str:
    if d.is_empty():
        return "∅"
    parts = []
    if d.whole:
        parts.append("J")
    else:
        if d.strip:
            parts.append(f"strip≤{d.strip}")
        for m, h in d.extras:
            parts.append(f"col{m}≤{h}")
        for t in sorted(d.tops):
            parts.append(f"col{t}≤∞")
    if d.apexes:
        parts.append("{" + ",".join(_APEX_NAMES[a] for a in sorted(d.apexes)) + "}")
    return " ∪ ".join(parts)


def descriptor_contains(kind: str, d: Descriptor, e) -> bool:
    check_element(kind, e)
    return e in d


def is_scott_closed(kind: str, d: Descriptor) -> tuple[bool, str | None]:
    """``(True, None)`` or ``(False, reason)``.

    A represented set is closed under directed suprema automatically: every
    column trace is finite unless the column is complete.  What can fail is
    down-closure, which this decides exactly.
    """
    apexes = APEXES[kind]
    for a in d.apexes:
        if a not in apexes:
            return False, f"apex {a!r} does not belong to {kind}"
    if d.strip < 0 or any(not _is_pos(t) for t in d.tops):
        return False, "invalid parameters"
    for m, h in d.extras:
        if not _is_pos(m) or not _is_pos(h):
            return False, "invalid parameters"
    for t in sorted(d.tops):
        if d.strip < t:
            return False, f"not down-closed: ({t},∞) needs strip ≥ {t}, have {d.strip}"
    for a in sorted(d.apexes):
        if a in ("top", "top1", "top2") and not d.whole:
            return False, f"not down-closed: {_APEX_NAMES[a]} lies above all of J"
        if a == "top3" and not {"top1", "top2"} <= d.apexes:
            return False, "not down-closed: ⊤3 lies above ⊤1 and ⊤2"
    return True, None


def down_close(kind: str, d: Descriptor) -> Descriptor:
    """Smallest Scott-closed descriptor containing ``d``."""
    apexes = set(d.apexes)
    if "top3" in apexes:
        apexes |= {"top1", "top2"}
    if apexes:
        return Descriptor(True, apexes=frozenset(apexes))
    if d.whole:
        return d
    strip = max([d.strip, *d.tops])
    return Descriptor.make(False, strip, d.extras_map, d.tops, ())


def point_closure(kind: str, e) -> Descriptor:
    check_element(kind, e)
    if is_apex(e):
        return Descriptor(True, apexes=frozenset(a for a in APEXES[kind] if apex_leq(kind, a, e)))
    m, n = e
    if n == INF:
        return Descriptor.make(False, m, {}, {m}, ())
    return Descriptor.make(False, 0, {m: n}, (), ())


# -- column profiles (used for explicit splits) ------------------------------------------

@dataclass(frozen=True)
class Profile:
    """Column heights with separate defaults for even and odd columns.

    Strictly more general than :class:`Descriptor`; used to write down the
    two halves of a reducible set, which need not be descriptors.
    """

    whole: bool
    explicit: dict = field(hash=False)
    even: int = 0
    odd: int = 0
    apexes: frozenset = frozenset()

    def height(self, m: int):
        if self.whole:
            return INF
        if m in self.explicit:
            return self.explicit[m]
        return self.even if m % 2 == 0 else self.odd

    def __contains__(self, e) -> bool:
        if is_apex(e):
            return e in self.apexes
        m, n = e
        return n <= self.height(m)

    def __le__(self, other: "Profile") -> bool:
        if not self.apexes <= other.apexes:
            return False
        if other.whole:
            return True
        if self.whole:
            return False
        if self.even > other.even or self.odd > other.odd:
            return False
        return all(self.height(m) <= other.height(m) for m in set(self.explicit) | set(other.explicit))

    def __or__(self, other: "Profile") -> "Profile":
        if self.whole or other.whole:
            return Profile(True, {}, 0, 0, self.apexes | other.apexes)
        keys = set(self.explicit) | set(other.explicit)
        return Profile(False, {m: max(self.height(m), other.height(m)) for m in keys},
                       max(self.even, other.even), max(self.odd, other.odd), self.apexes | other.apexes)

    def same_set(self, other: "Profile") -> bool:
        return self <= other and other <= self

    def is_closed(self, kind: str) -> bool:
        if any(a not in APEXES[kind] for a in self.apexes):
            return False
        if any(a in ("top", "top1", "top2") for a in self.apexes) and not self.whole:
            return False
        if "top3" in self.apexes and not {"top1", "top2"} <= self.apexes:
            return False
        if self.whole:
            return True
        if self.even == INF or self.odd == INF:
            return False
        for m, h in self.explicit.items():
            if h == INF and (self.even < m or self.odd < m or any(h2 < m for h2 in self.explicit.values())):
                return False
        return True


def _as_profile(x) -> Profile:
    return x.profile() if isinstance(x, Descriptor) else x


# -- upper bounds and suprema -------------------------------------------------------------

@dataclass(frozen=True)
class UpperBounds:
    """Upper bounds of a descriptor.

    ``tops_from``: every ``(k, ∞)`` with ``k >= tops_from`` (``None``: none of
    that form); ``tops_extra``: further ``(k, ∞)``; ``column``: ``(k, n0)``
    meaning every ``(k, n)`` with ``n >= n0``; ``apexes``: apex upper bounds.
    """

    tops_from: int | None
    tops_extra: frozenset
    column: tuple | None
    apexes: frozenset

    def __contains__(self, e) -> bool:
        if is_apex(e):
            return e in self.apexes
        m, n = e
        if n == INF:
            return (self.tops_from is not None and m >= self.tops_from) or m in self.tops_extra or (
                self.column is not None and self.column[0] == m)
        return self.column is not None and self.column[0] == m and n >= self.column[1]

    def is_empty(self) -> bool:
        return self.tops_from is None and not self.tops_extra and self.column is None and not self.apexes

    def describe(self) -> str:
        parts = []
        if self.column:
            parts.append(f"({self.column[0]},n) for n≥{self.column[1]}")
        if self.tops_from is not None:
            parts.append(f"(k,∞) for k≥{self.tops_from}")
        parts.extend(f"({k},∞)" for k in sorted(self.tops_extra))
        parts.extend(_APEX_NAMES[a] for a in sorted(self.apexes))
        return "{" + ", ".join(parts) + "}"


def upper_bounds(kind: str, d: Descriptor) -> UpperBounds:
    ok, why = is_scott_closed(kind, d)
    if not ok:
        raise ContractError(f"descriptor is not Scott-closed: {why}")
    if d.is_empty():
        raise ContractError("upper bounds of the empty descriptor are not described")
    apexes = frozenset(a for a in APEXES[kind] if all(apex_leq(kind, b, a) for b in d.apexes))
    if d.whole:
        return UpperBounds(None, frozenset(), None, apexes)
    extras = d.extras_map
    g = d.strip
    if len(d.tops) >= 2:
        return UpperBounds(None, frozenset(), None, apexes)
    if len(d.tops) == 1:
        (t,) = d.tops
        ok = g <= t and all(h <= t for m, h in extras.items() if m != t)
        return UpperBounds(None, frozenset({t}) if ok else frozenset(), None, apexes)
    k0 = max([g, *extras.values()])
    tops_from = max(k0, 1)
    extra = frozenset(
        k for k in extras
        if k < tops_from and g <= k and all(h <= k for m, h in extras.items() if m != k)
    )
    column = None
    if g == 0 and len(extras) == 1:
        ((k, h),) = extras.items()
        column = (k, h)
    return UpperBounds(tops_from, extra, column, apexes)


def sup_of(kind: str, d: Descriptor):
    """Least upper bound of a nonempty Scott-closed descriptor, or ``None``."""
    ub = upper_bounds(kind, d)
    if ub.column is not None:
        return ub.column
    if ub.tops_from is not None or len(ub.tops_extra) >= 2:
        return None
    if len(ub.tops_extra) == 1:
        (t,) = ub.tops_extra
        return (t, INF)
    least = [a for a in ub.apexes if all(apex_leq(kind, a, b) for b in ub.apexes)]
    return least[0] if least else None


# -- ambients as spaces ---------------------------------------------------------------------

def iter_descriptors(kind: str, bound: int, pair_bound: int = 5) -> Iterator[Descriptor]:
    """All Scott-closed descriptors of ``kind`` in the bounded window.

    The window holds every descriptor with at most one special column (an
    extra height or a complete column) and all parameters ``<= bound``, plus
    every descriptor with up to two special columns and parameters
    ``<= pair_bound``, plus the sets containing all of J.
    """
    seen = set()

    def emit(d):
        if d not in seen:
            seen.add(d)
            return True
        return False

    for g in range(bound + 1):
        d = Descriptor.make(False, g)
        if emit(d):
            yield d
        for m in range(1, bound + 1):
            if m <= g:
                d = Descriptor.make(False, g, {}, {m})
                if emit(d):
                    yield d
            for h in range(g + 1, bound + 1):
                d = Descriptor.make(False, g, {m: h})
                if emit(d):
                    yield d
    b = min(pair_bound, bound)
    for g in range(b + 1):
        cols = range(1, b + 1)
        for m1, m2 in itertools.combinations(cols, 2):
            opts1 = [("top", None)] * (m1 <= g) + [("x", h) for h in range(g + 1, b + 1)]
            opts2 = [("top", None)] * (m2 <= g) + [("x", h) for h in range(g + 1, b + 1)]
            for (k1, h1), (k2, h2) in itertools.product(opts1, opts2):
                tops = {m for m, k in ((m1, k1), (m2, k2)) if k == "top"}
                extras = {m: h for m, k, h in ((m1, k1, h1), (m2, k2, h2)) if k == "x"}
                d = Descriptor.make(False, g, extras, tops)
                if emit(d):
                    yield d
    apexes = APEXES[kind]
    for r in range(len(apexes) + 1):
        for combo in itertools.combinations(apexes, r):
            d = Descriptor(True, apexes=frozenset(combo))
            if is_scott_closed(kind, d)[0] and emit(d):
                yield d


@dataclass(frozen=True, eq=False)
class JAmbient(Space):
    """P, X, Y (or bare J) with the Scott topology, windowed at ``bound``."""

    kind: str = "P"
    bound: int = 40
    pair_bound: int = 5
    topology: str = "scott"

    def __post_init__(self):
        if self.kind not in APEXES:
            raise InputError(f"unknown Johnstone ambient {self.kind!r}")
        if self.topology not in ("scott", "alexandroff"):
            raise InputError(f"unknown topology {self.topology!r}")

    @property
    def name(self):
        suffix = "" if self.topology == "scott" else "/alexandroff"
        return f"johnstone-{self.kind}{suffix}"

    def scott(self) -> "JAmbient":
        return JAmbient(self.kind, self.bound, self.pair_bound, "scott")

    def _require_scott(self):
        # Alexandroff-closed sets are arbitrary down-sets, far outside the
        # descriptor class.
        if self.topology != "scott":
            raise ContractError("closed sets of the Alexandroff topology on J are not enumerable")

    @property
    def mode(self):
        return f"bounded B={self.bound}"

    def __eq__(self, other):
        return isinstance(other, JAmbient) and (self.kind, self.topology) == (other.kind, other.topology)

    def __hash__(self):
        return hash(("JAmbient", self.kind, self.topology))

    def points(self, bound: int | None = None):
        b = self.bound if bound is None else bound
        pts = [(m, n) for m in range(1, b + 1) for n in range(1, b + 1)]
        pts += [(m, INF) for m in range(1, b + 1)]
        return pts + list(APEXES[self.kind])

    def is_point(self, e) -> bool:
        try:
            check_element(self.kind, e)
            return True
        except InputError:
            return False

    def leq(self, x, y) -> bool:
        return j_leq(self.kind, x, y)

    def closed_sets(self):
        self._require_scott()
        return list(iter_descriptors(self.kind, self.bound, self.pair_bound))

    def is_closed(self, s) -> bool:
        self._require_scott()
        return is_scott_closed(self.kind, s)[0]

    def closure(self, s):
        return down_close(self.kind, s)

    def sup(self, s):
        if s.is_empty():
            return None
        return sup_of(self.kind, s)

    def upper_bounded(self, s) -> bool:
        return s.is_empty() or not upper_bounds(self.kind, s).is_empty()

    def point_closure(self, x):
        return point_closure(self.kind, x)

    def irreducible_closed(self):
        self._require_scott()
        out = [point_closure(self.kind, e) for e in self.points()]
        out.append(whole_j())
        return out

    def describe_point(self, x):
        return render_element(x)

    def describe(self, s):
        return render_descriptor(s)

    def canonical_key(self, s):
        return (s.whole, len(s.apexes), sorted(s.apexes), s.strip, sorted(s.tops), s.extras)


# -- classification of irreducible closed sets --------------------------------------------------

def is_listed_irreducible(kind: str, d: Descriptor) -> bool:
    """Point closures and J itself."""
    if d.is_empty():
        return False
    if d.whole:
        if not d.apexes:
            return True
        return any(point_closure(kind, a) == d for a in APEXES[kind])
    if d.tops:
        if len(d.tops) == 1 and not d.extras:
            (t,) = d.tops
            return d.strip == t
        return False
    return d.strip == 0 and len(d.extras) == 1


def explicit_split(kind: str, d: Descriptor) -> tuple[Profile, Profile]:
    """Two closed sets covering ``d`` with neither containing it."""
    if d.whole:
        maximal = [a for a in d.apexes if not any(a != b and apex_leq(kind, a, b) for b in d.apexes)]
        if len(maximal) < 2:
            raise ContractError("descriptor is irreducible")
        a, rest = maximal[0], maximal[1:]
        first = point_closure(kind, a).profile()
        second = point_closure(kind, rest[0]).profile()
        for r in rest[1:]:
            second = second | point_closure(kind, r).profile()
        return first, second
    tops = sorted(d.tops)
    g0 = tops[-1] if tops else 0
    gens = [(t, INF) for t in tops] + list(d.extras)
    if d.strip > g0:
        explicit = dict(d.extras)
        explicit.update({t: INF for t in tops})
        return (Profile(False, dict(explicit), d.strip, g0, frozenset()),
                Profile(False, dict(explicit), g0, d.strip, frozenset()))
    if len(gens) < 2:
        raise ContractError("descriptor is irreducible or empty")
    first = point_closure(kind, gens[0]).profile()
    second = point_closure(kind, gens[1]).profile()
    for e in gens[2:]:
        second = second | point_closure(kind, e).profile()
    return first, second


def verify_split(kind: str, d: Descriptor, split) -> bool:
    a, b = split
    whole = d.profile()
    return (a.is_closed(kind) and b.is_closed(kind)
            and whole.same_set(a | b) and not whole <= a and not whole <= b)


@dataclass
class ClassificationReport:
    kind: str
    bound: int
    listed: list
    checked: int = 0
    splits_verified: int = 0
    lemma_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures

    @property
    def mode(self) -> str:
        return f"bounded B={self.bound}"


def classify_irreducible_closed(kind: str, bound: int = 40, pair_bound: int = 5):
    """Irreducible Scott-closed sets of ``kind``: point closures and J.

    Verified in the window: every other nonempty descriptor is split
    explicitly into two closed sets, and every proper closed subset of J
    misses ``(k, ∞)`` for all ``k`` beyond its parameters (so two of them
    never cover J, which makes J irreducible).
    """
    if kind == "OmegaPlusOne":
        from .chain import omega_plus_one
        space = omega_plus_one("alexandroff", bound)
        return space.irreducible_closed(), None
    listed = ["↓e for every element e", "J"]
    report = ClassificationReport(kind, bound, listed)
    for d in iter_descriptors(kind, bound, pair_bound):
        report.checked += 1
        if d.is_empty():
            continue
        if not d.whole:
            report.lemma_checked += 1
            beyond = range(d.params() + 1, 2 * bound + 1)
            if any((k, INF) in d for k in beyond):
                report.failures.append(("lemma", d))
        if is_listed_irreducible(kind, d):
            continue
        try:
            split = explicit_split(kind, d)
        except ContractError:
            report.failures.append(("no split", d))
            continue
        if verify_split(kind, d, split):
            report.splits_verified += 1
        else:
            report.failures.append(("bad split", d))
    return listed, report


@dataclass
class SIReport:
    kind: str
    bound: int
    removed: list
    splits_verified: int
    k_bounded_sober: bool

    @property
    def mode(self) -> str:
        return f"bounded B={self.bound}"


def is_si_closed_descriptor(kind: str, d: Descriptor) -> bool:
    """SI-closedness in the Scott space of ``kind``.

    The irreducible closed sets are point closures and J; a point closure
    inside ``d`` has its sup in ``d``, so only J can fail.
    """
    if not d.whole:
        return True
    s = sup_of(kind, whole_j())
    return s is None or s in d


def si_of_scott_ambient(kind: str, bound: int = 40, pair_bound: int = 5) -> SIReport:
    """The SI-topology of the Scott space of ``kind`` and its k-bounded sobriety.

    Closed sets lost are reported.  Every split used by the classification
    is re-checked to consist of SI-closed sets, so the irreducible SI-closed
    sets are again point closures (J itself is no longer closed when it is
    removed); each point closure has its generic point.
    """
    window = list(iter_descriptors(kind, bound, pair_bound))
    removed = [d for d in window if not is_si_closed_descriptor(kind, d)]
    kept = [d for d in window if is_si_closed_descriptor(kind, d)]
    verified = 0
    ok = True
    for d in kept:
        if d.is_empty() or is_listed_irreducible(kind, d):
            continue
        a, b = explicit_split(kind, d)
        if a.whole or b.whole:
            parts_ok = all(is_si_closed_descriptor(kind, Descriptor(True, apexes=p.apexes))
                           for p in (a, b) if p.whole)
        else:
            parts_ok = True
        if parts_ok and verify_split(kind, d, (a, b)):
            verified += 1
        else:
            ok = False
    listed = [d for d in kept if is_listed_irreducible(kind, d)]
    for d in listed:
        s = sup_of(kind, d)
        if s is not None and point_closure(kind, s) != d:
            ok = False
    return SIReport(kind, bound, removed, verified, ok)


# -- piecewise maps -------------------------------------------------------------------------------

NAMED_MAPS = {
    "f-case1": ("P", "X", {"top": "top1"}),
    "f-case2": ("P", "Y", {"top": "top3"}),
    "g-collapse": ("Y", "Y", {"top1": "top3", "top2": "top3", "top3": "top3"}),
}


@dataclass(frozen=True, eq=False)
class JPiecewiseMap:
    """Identity on J, apexes sent to apexes by ``apex_rule``."""

    name: str
    source: JAmbient
    target: JAmbient
    apex_rule: dict

    def __post_init__(self):
        for a in APEXES[self.source.kind]:
            if a not in self.apex_rule:
                raise InputError(f"map {self.name} has no rule for apex {a!r}")
        for a, b in self.apex_rule.items():
            if a not in APEXES[self.source.kind] or b not in APEXES[self.target.kind]:
                raise InputError(f"map {self.name}: bad apex rule {a!r} -> {b!r}")

    def __call__(self, e):
        check_element(self.source.kind, e)
        return self.apex_rule[e] if is_apex(e) else e

    def preimage(self, d: Descriptor) -> Descriptor:
        apexes = frozenset(a for a, b in self.apex_rule.items() if b in d.apexes)
        return Descriptor(d.whole, d.strip, d.extras, d.tops, apexes)

    def image(self, d: Descriptor) -> Descriptor:
        return Descriptor(d.whole, d.strip, d.extras, d.tops,
                          frozenset(self.apex_rule[a] for a in d.apexes))

    def image_closure(self, d: Descriptor) -> Descriptor:
        return down_close(self.target.kind, self.image(d))

    def with_spaces(self, source=None, target=None, name=None):
        return JPiecewiseMap(name or self.name, source or self.source, target or self.target, self.apex_rule)


def named_map(name: str, bound: int = 40):
    if name == "xi-omega":
        from .chain import xi_map
        return xi_map(min(bound, 40))
    if name not in NAMED_MAPS:
        raise InputError(f"unknown named map {name!r}")
    src, tgt, rule = NAMED_MAPS[name]
    return JPiecewiseMap(name, JAmbient(src, bound), JAmbient(tgt, bound), dict(rule))


def paper_map_eval(f: JPiecewiseMap, e):
    return f(e)


@dataclass
class MapReport:
    name: str
    facts: dict
    witnesses: dict
    mode: str


def check_map_properties(f: JPiecewiseMap, bound: int = 40, monotone_bound: int = 8) -> MapReport:
    """Totality, monotonicity, Scott continuity and sup preservation of ``f``."""
    from .sobriety import preserves_irreducible_sups

    facts, wit = {}, {}
    src, tgt = f.source.kind, f.target.kind
    facts["total"] = all(a in f.apex_rule for a in APEXES[src])
    pts = f.source.points(monotone_bound)
    bad = next(((x, y) for x in pts for y in pts
                if j_leq(src, x, y) and not j_leq(tgt, f(x), f(y))), None)
    facts["monotone"] = bad is None
    if bad:
        wit["monotone"] = bad
    cont_bad = None
    for d in iter_descriptors(tgt, bound, f.target.pair_bound):
        ok, _ = is_scott_closed(src, f.preimage(d))
        if not ok:
            cont_bad = d
            break
    facts["scott-continuous"] = cont_bad is None
    if cont_bad is not None:
        wit["scott-continuous"] = render_descriptor(cont_bad)
    ok, w = preserves_irreducible_sups(f.with_spaces(JAmbient(src, bound), JAmbient(tgt, bound)))
    facts["preserves-irreducible-sups"] = ok
    if not ok:
        wit["preserves-irreducible-sups"] = render_descriptor(w)
    return MapReport(f.name, facts, wit, f"bounded B={bound}")


def compose_equals(outer, inner, kind: str, coord_bound: int) -> tuple[bool, Any]:
    """``outer o inner == inner`` on every point with coordinates ``<= coord_bound``."""
    for e in JAmbient(kind, coord_bound).points():
        if outer(inner(e)) != inner(e):
            return False, e
    return True, None


# -- random descriptors --------------------------------------------------------------------

def random_descriptor(rng: random.Random, kind: str, bound: int, valid: bool = True) -> Descriptor:
    """A random descriptor with parameters ``<= bound``; ``valid=False`` may break down-closure."""
    apexes = APEXES[kind]
    if rng.random() < 0.08:
        combos = [frozenset(c) for r in range(len(apexes) + 1) for c in itertools.combinations(apexes, r)]
        if valid:
            combos = [c for c in combos if is_scott_closed(kind, Descriptor(True, apexes=c))[0]]
        return Descriptor(True, apexes=rng.choice(combos))
    g = rng.randint(0, bound)
    ntops = rng.choice([0, 0, 1, 1, 2, 3])
    if valid:
        pool = list(range(1, g + 1))
    else:
        pool = list(range(1, bound + 1))
    tops = set(rng.sample(pool, min(ntops, len(pool)))) if pool else set()
    extras = {}
    if g < bound:
        for _ in range(rng.choice([0, 1, 1, 2, 3])):
            m = rng.randint(1, bound)
            if m not in tops:
                extras[m] = rng.randint(g + 1, bound)
    bad_apexes = frozenset()
    if not valid and apexes and rng.random() < 0.2:
        bad_apexes = frozenset({rng.choice(apexes)})
    return Descriptor.make(False, g, extras, tops, bad_apexes)
