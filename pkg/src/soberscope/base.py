"""The closed-set interface shared by finite and symbolic spaces.

Every algorithm in :mod:`soberscope.sobriety` and
:mod:`soberscope.constructions` talks to a space only through the methods
below.  Set objects are whatever the space uses natively (``frozenset`` for
finite spaces, :class:`~soberscope.chain.EvSet` for the countable chain,
:class:`~soberscope.johnstone.Descriptor` for the Johnstone family); they only
need ``in``, ``<=``, ``|``, ``&``, equality and hashing.

Finite spaces answer every query exhaustively.  Symbolic spaces enumerate a
*window*: all closed sets and points whose parameters are at most ``bound``.
Each individual set is still exact (membership, inclusion and suprema are
computed symbolically), only families are truncated.  ``mode`` says which
regime a result came from and is copied into reports.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Hashable, Iterable, Sequence


class Space(ABC):
    mode: str = "exhaustive"
    is_finite: bool = False

    @abstractmethod
    def points(self) -> Sequence[Hashable]:
        """All points (finite) or the window of points (symbolic)."""

    @abstractmethod
    def leq(self, x, y) -> bool:
        """Specialization order."""

    @abstractmethod
    def closed_sets(self) -> Sequence[Any]:
        ...

    @abstractmethod
    def is_closed(self, s) -> bool:
        ...

    @abstractmethod
    def sup(self, s):
        """Least upper bound of ``s`` or ``None``."""

    @abstractmethod
    def upper_bounded(self, s) -> bool:
        ...

    @abstractmethod
    def point_closure(self, x):
        ...

    @abstractmethod
    def irreducible_closed(self) -> Sequence[Any]:
        ...

    def closure(self, s):
        raise NotImplementedError(f"{type(self).__name__} has no closure operator")

    def complement(self, s):
        raise NotImplementedError(f"{type(self).__name__} cannot complement sets")

    def make_set(self, items: Iterable):
        raise NotImplementedError(f"{type(self).__name__} cannot build sets from points")

    def describe_point(self, x) -> Any:
        return str(x)

    def describe(self, s) -> Any:
        return repr(s)

    def canonical_key(self, s):
        """Sort key used for deterministic witness selection."""
        return repr(self.describe(s))

    def generic_point(self, f):
        """The point whose closure is the closed set ``f``, or ``None``.

        A closure ``cl{x}`` has ``x`` as its maximum, so the only candidate is
        the supremum, and it qualifies iff it lies in ``f``.
        """
        s = self.sup(f)
        if s is not None and s in f:
            return s
        return None


def window_irreducible(space: Space, candidates: Sequence, closed: Sequence) -> list:
    """Members of ``candidates`` not split by any pair from ``closed``.

    Exact for finite spaces.  For symbolic windows a set is accepted when no
    split exists inside the window.
    """
    out = []
    for f in candidates:
        if _is_empty(f):
            continue
        proper = [a for a in closed if not f <= a]
        split = False
        for i, a in enumerate(proper):
            for b in proper[i:]:
                if f <= (a | b):
                    split = True
                    break
            if split:
                break
        if not split:
            out.append(f)
    return out


def _is_empty(s) -> bool:
    try:
        return len(s) == 0
    except TypeError:
        return s.is_empty()
