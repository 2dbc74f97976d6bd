"""Sobrification, the space KB(X) of irreducible closed sets with a supremum,
its quotient by "same supremum", and the universal maps out of them.

Finite bases give materialised :class:`FiniteSpace` results.  Symbolic bases
(the chain) are handled through a *window model*: the finitely many
irreducible closed sets inside the window become the points of a finite
space.  Reports carry the mode so bounded results are never mistaken for
exhaustive ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any

from .base import Space
from .chain import INF, ChainMap, ChainSpace, EvSet, sobrification_of_omega
from .errors import ContractError, LibraryBugError
from .finite import FiniteSpace, product
from .maps import SpaceMap
from .sobriety import (SobrietyVerdict, check_sobriety, derive_si, is_continuous,
                       preserves_irreducible_sups)

EXHAUSTIVE_LIMIT = 10 ** 6


def _finite_family(space: Space, closed: list, points: list) -> FiniteSpace:
    """A finite space on ``points`` whose closed sets are ``closed``."""
    whole = frozenset(points)
    return FiniteSpace(tuple(points), {whole - frozenset(c) for c in closed})


def _window_note(space: Space) -> str:
    return "exhaustive" if isinstance(space, FiniteSpace) else space.mode


# -- sobrification ---------------------------------------------------------------------

@dataclass
class SobrifiedSpace:
    base: Space
    points: list
    opens: list
    unit: dict
    space: FiniteSpace
    mode: str
    checks: dict = field(default_factory=dict)

    def unit_map(self) -> SpaceMap:
        return SpaceMap(self.base, self.space, self.unit, "unit") if isinstance(self.base, FiniteSpace) else None


def _open_window(space: Space) -> list:
    return [space.complement(c) for c in space.closed_sets()]


def sobrify(space: Space) -> SobrifiedSpace:
    """Irreducible closed sets with opens ``U^S = {A : A meets U}``.

    For the chain ``N`` the window model is also matched against the chain
    ``N^S`` of directed lower sets (``down(n) <-> n``, ``N <-> inf``).
    """
    if isinstance(space, FiniteSpace):
        space.require_t0()
    points = list(space.irreducible_closed())
    opens = []
    for u in _open_window(space):
        opens.append(frozenset(a for a in points if not _empty(a & u)))
    result = FiniteSpace(tuple(points), set(opens))
    unit = {x: space.point_closure(x) for x in space.points()}
    checks = {}
    if isinstance(space, FiniteSpace):
        checks["sober"] = check_sobriety(result, "sober").holds
        checks["points-are-point-closures"] = set(points) == set(unit.values())
        ok, _ = embedding_check(SpaceMap(space, result, unit, "unit"))
        checks["unit-embedding"] = ok
    elif isinstance(space, ChainSpace) and not space.top:
        checks["matches-N^S"] = _matches_ns(space, result)
    return SobrifiedSpace(space, points, opens, unit, result, _window_note(space), checks)


def _matches_ns(base: ChainSpace, model: FiniteSpace) -> bool:
    ns = sobrification_of_omega(base.bound)

    def label(a: EvSet):
        return INF if a == EvSet.naturals() else max(a.head)

    relabel = {a: label(a) for a in model.carrier}
    if sorted(relabel.values(), key=lambda x: (x == INF, x)) != ns.points():
        return False
    mapped = {frozenset(relabel[a] for a in u) for u in model.opens}
    window = {frozenset(x for x in ns.points() if x in u) for u in ns.open_sets()}
    return mapped == window


def _empty(s) -> bool:
    try:
        return len(s) == 0
    except TypeError:
        return s.is_empty()


# -- KB(X) -------------------------------------------------------------------------------

@dataclass
class KBSpace:
    base: Space
    points: list
    k_sets: dict          # base closed set F -> K_F
    space: FiniteSpace
    mode: str
    checks: dict = field(default_factory=dict)

    def k(self, f) -> frozenset:
        return frozenset(a for a in self.points if a <= f)


def kb_space(space: Space, verify: bool = True) -> KBSpace:
    """Irreducible closed sets having a sup, closed sets ``K_F = {A : A <= F}``."""
    if isinstance(space, FiniteSpace):
        space.require_t0()
    points = [a for a in space.irreducible_closed() if space.sup(a) is not None]
    closed = space.closed_sets()
    k_sets = {f: frozenset(a for a in points if a <= f) for f in closed}
    result = _finite_family(space, list(k_sets.values()), points)
    kb = KBSpace(space, points, k_sets, result, _window_note(space))
    if verify:
        kb.checks = _kb_laws(kb)
    return kb


def _kb_laws(kb: KBSpace) -> dict:
    fam = set(kb.k_sets.values())
    allpts = frozenset(kb.points)
    items = list(kb.k_sets.items())
    checks = {
        "contains-empty-and-all": frozenset() in fam and allpts in fam,
        "closed-under-union": all(a | b in fam for a in fam for b in fam),
        "closed-under-intersection": all(a & b in fam for a in fam for b in fam),
        "intersection-law": all(kb.k(f & g) == (kf & kg) for f, kf in items for g, kg in items),
        "union-law": all(kb.k(f | g) == (kf | kg) for f, kf in items for g, kg in items),
    }
    checks["k-bounded-sober"] = check_sobriety(kb.space, "k-bounded-sober").holds
    return checks


# -- KB(X)/~ ---------------------------------------------------------------------------------

@dataclass
class KBQuotient:
    kb: KBSpace
    classes: dict         # sup point -> members
    closed: list          # quotient-closed sets, as sets of class keys
    space: Space
    route: str
    checks: dict = field(default_factory=dict)

    def q(self, a):
        return self.kb.base.sup(a)

    @property
    def base(self) -> Space:
        return self.kb.base


def _saturated(kb: KBSpace, classes: dict) -> list:
    """Base closed sets ``F`` with ``K_F`` a union of classes."""
    base = kb.base
    return [f for f, kf in kb.k_sets.items()
            if all(set(classes[base.sup(a)]) <= kf for a in kf)]


def _quotient_closed_by_saturation(kb: KBSpace, classes: dict) -> list:
    """Images ``{sup A : A in K_F}`` of saturated ``K_F``: exactly the quotient-closed sets."""
    base = kb.base
    return _dedupe([frozenset(base.sup(a) for a in kb.k_sets[f]) for f in _saturated(kb, classes)])


def _quotient_closed_by_filtering(kb: KBSpace, classes: dict) -> list:
    keys = list(classes)
    kfam = set(kb.k_sets.values())
    out = []
    for r in range(len(keys) + 1):
        for combo in itertools.combinations(keys, r):
            pre = frozenset(a for k in combo for a in classes[k])
            if pre in kfam:
                out.append(frozenset(combo))
    return out


def _dedupe(items: list) -> list:
    seen, out = set(), []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def kb_quotient(space: Space, kb: KBSpace | None = None) -> KBQuotient:
    """Identify members of KB(X) with equal supremum.

    Classes are keyed by their common supremum.  The quotient-closed sets are
    found by filtering every set of classes through ``q^-1`` (finite, at most
    16 classes) or as images of the saturated ``K_F``.  Both directions of the
    SI-closed characterisation are checked: a set of keys is quotient-closed
    iff it is an SI-closed subset of the base.
    """
    kb = kb or kb_space(space, verify=False)
    classes: dict = {}
    for a in kb.points:
        classes.setdefault(space.sup(a), []).append(a)
    finite = isinstance(space, FiniteSpace)
    checks = {"classes-cover-points": set(classes) == set(space.points())}
    si = derive_si(space)
    if finite:
        if len(classes) <= 16:
            closed, route = _quotient_closed_by_filtering(kb, classes), "filter"
            checks["routes-agree"] = set(closed) == set(_quotient_closed_by_saturation(kb, classes))
        else:
            closed, route = _quotient_closed_by_saturation(kb, classes), "saturation"
        qspace = FiniteSpace(tuple(classes), {frozenset(classes) - c for c in closed})
        got, si_sets = set(closed), set(si.si_closed)
    elif isinstance(space, ChainSpace):
        # Window points stand for classes; a saturated K_F is identified with
        # F once its image {sup A} is seen to trace F on the window.
        route = "saturation"
        closed = _saturated(kb, classes)
        pts = space.points()
        checks["image-is-trace"] = all(
            {space.sup(a) for a in kb.k_sets[f]} == {x for x in pts if x in f} for f in closed)
        scott = ChainSpace(space.top, "scott", space.bound, space.labels)
        if set(closed) == set(scott.closed_sets()):
            qspace = scott
        else:
            from .sobriety import WindowSpace
            qspace = WindowSpace(space, closed, f"KB({space.name})/~")
        got, si_sets = set(closed), set(si.si_closed)
    else:
        raise ContractError("quotient needs a finite or chain base")
    checks["closed-sets-are-si-closed"] = got <= si_sets
    checks["si-closed-sets-are-closed"] = si_sets <= got
    return KBQuotient(kb, classes, closed, qspace, route, checks)


@dataclass
class HomeomorphismReport:
    holds: bool
    bijection: dict
    checks: dict
    mode: str


def thm_4_2_witness(space: Space) -> HomeomorphismReport:
    """``[A] -> sup A`` from KB(X)/~ onto SI(X): bijective, continuous and closed."""
    quot = kb_quotient(space)
    si = derive_si(space)
    bijection = {k: space.sup(members[0]) for k, members in quot.classes.items()}
    checks = dict(quot.checks)
    checks["well-defined"] = all(space.sup(a) == k for k, ms in quot.classes.items() for a in ms)
    checks["bijective"] = sorted(map(repr, bijection.values())) == sorted(map(repr, space.points()))
    if isinstance(space, FiniteSpace):
        image = lambda c: frozenset(bijection[k] for k in c)  # noqa: E731
        preimage = lambda c: frozenset(k for k in quot.classes if bijection[k] in c)  # noqa: E731
    else:
        image = preimage = lambda c: c  # noqa: E731
    qclosed = set(quot.closed) if isinstance(space, FiniteSpace) else set(quot.space.closed_sets())
    checks["continuous"] = all(preimage(c) in qclosed for c in si.si_closed)
    checks["closed-map"] = all(si.space.is_closed(image(c)) for c in qclosed)
    holds = all(checks.values())
    if not holds:
        bad = sorted(k for k, v in checks.items() if not v)
        raise LibraryBugError(f"quotient and SI-space disagree: {bad}")
    return HomeomorphismReport(True, bijection, checks, _window_note(space))


# -- qk-bounded sobriety -------------------------------------------------------------------------

def is_qk_bounded_sober(space) -> SobrietyVerdict:
    """k-bounded sobriety of KB(X)/~.

    For Johnstone ambients with the Alexandroff topology the quotient is
    identified with the Scott space through ``SI(P, Alexandroff) = (P, Scott)``;
    a failing witness is reported as the quotient-closed set of classes
    ``{[down x] : x in F}`` for the base witness ``F``.
    """
    from .johnstone import JAmbient, render_descriptor
    if isinstance(space, JAmbient):
        if space.topology == "alexandroff":
            verdict = check_sobriety(space.scott(), "k-bounded-sober")
            if verdict.holds:
                return SobrietyVerdict("qk-bounded-sober", True, None, verdict.mode + " via SI=Scott")
            label = "[" + render_descriptor(verdict.witness.members) + "]"
            return SobrietyVerdict("qk-bounded-sober", False, label, verdict.mode + " via SI=Scott")
        from .johnstone import si_of_scott_ambient
        rep = si_of_scott_ambient(space.kind, space.bound)
        return SobrietyVerdict("qk-bounded-sober", rep.k_bounded_sober, None, rep.mode)
    quot = kb_quotient(space)
    verdict = check_sobriety(quot.space, "k-bounded-sober")
    direct = check_sobriety(derive_si(space).space, "k-bounded-sober")
    if verdict.holds != direct.holds:
        raise LibraryBugError("quotient and SI-space disagree on k-bounded sobriety")
    witness = None
    if not verdict.holds:
        witness = "[" + str(quot.space.describe(verdict.witness.members)) + "]"
    return SobrietyVerdict("qk-bounded-sober", verdict.holds, witness, verdict.mode)


# -- universal maps ------------------------------------------------------------------------------

@dataclass
class UniversalReport:
    holds: bool
    extension: Any
    checks: dict
    uniqueness_mode: str
    witnesses: dict = field(default_factory=dict)


def _require_kbs_map(f):
    ok, w = is_continuous(f)
    if not ok:
        raise ContractError(f"map {f.name} is not continuous (witness {w!r})")
    ok, w = preserves_irreducible_sups(f)
    if not ok:
        raise ContractError(f"map {f.name} does not preserve the supremum of {w!r}")
    if isinstance(f.target, (FiniteSpace, ChainSpace)):
        v = check_sobriety(f.target, "k-bounded-sober")
        if not v.holds:
            raise ContractError(f"target is not k-bounded sober (witness {v.witness.members!r})")


def _extensions(source: FiniteSpace, target: FiniteSpace, fixed: dict):
    """Every map agreeing with ``fixed``; count of all candidate maps."""
    free = [x for x in source.carrier if x not in fixed]
    total = len(target.carrier) ** len(source.carrier)
    def gen():
        for values in itertools.product(target.carrier, repeat=len(free)):
            table = dict(fixed)
            table.update(zip(free, values))
            yield SpaceMap(source, target, table)
    return total, gen()


def _unique_continuous(source: FiniteSpace, target: FiniteSpace, fixed: dict, expected: dict):
    """Exhaustive or generated-points uniqueness of a continuous extension."""
    total, cands = _extensions(source, target, fixed)
    if total > EXHAUSTIVE_LIMIT:
        return all(expected[x] == v for x, v in fixed.items()), "generated-points"
    ok = True
    for g in cands:
        if is_continuous(g)[0] and g.table != expected:
            ok = False
            break
    return ok, "exhaustive"


def kb_universal_map(space: FiniteSpace, f: SpaceMap) -> UniversalReport:
    """``fbar(F) = f(sup F)`` on KB(X) with ``fbar o xi = f`` for ``xi(x) = down x``."""
    _require_kbs_map(f)
    kb = kb_space(space, verify=False)
    fbar = SpaceMap(kb.space, f.target, {a: f(space.sup(a)) for a in kb.points}, f"{f.name}-bar")
    xi = {x: space.point_closure(x) for x in space.carrier}
    checks = {}
    checks["continuous"] = is_continuous(fbar)[0]
    checks["preimage-law"] = all(
        fbar.preimage(b) == kb.k(f.preimage(b)) for b in f.target.closed_sets())
    checks["commutes"] = all(fbar(xi[x]) == f(x) for x in space.carrier)
    fixed = {xi[x]: f(x) for x in space.carrier}
    checks["unique"], mode = _unique_continuous(kb.space, f.target, fixed, fbar.table)
    return UniversalReport(all(checks.values()), fbar, checks, mode)


def reflector(space, f) -> UniversalReport:
    """``eta(x) = [down x]`` and ``fbar([A]) = f(sup A)``.

    Classes are keyed by their supremum, so ``eta`` is the identity on keys
    and ``fbar`` agrees with ``f`` on them.  The laws are checked anyway:
    continuity and sup preservation of ``eta``, continuity of ``fbar``,
    ``fbar o eta = f`` and uniqueness.
    """
    _require_kbs_map(f)
    quot = kb_quotient(space)
    if not check_sobriety(quot.space, "k-bounded-sober").holds:
        raise ContractError("source is not qk-bounded sober")
    checks = {}
    if isinstance(space, FiniteSpace):
        qs = quot.space
        eta = SpaceMap(space, qs, {x: space.sup(space.point_closure(x)) for x in space.carrier}, "eta")
        fbar = SpaceMap(qs, f.target, {k: f(space.sup(ms[0])) for k, ms in quot.classes.items()},
                        f"{f.name}-bar")
        pts = space.carrier
    elif isinstance(space, ChainSpace):
        qs = quot.space
        eta = ChainMap(space, qs, {}, 0, ("shift", 0), INF, "eta")
        fbar = f.with_spaces(source=qs, name=f"{f.name}-bar")
        pts = space.points()
    else:
        raise ContractError("reflector needs a finite or chain base")
    checks["eta-continuous"] = is_continuous(eta)[0]
    checks["eta-preserves-sups"] = preserves_irreducible_sups(eta)[0]
    checks["fbar-continuous"] = is_continuous(fbar)[0]
    checks["commutes"] = all(fbar(eta(x)) == f(x) for x in pts)
    if isinstance(space, FiniteSpace):
        fixed = {eta(x): f(x) for x in pts}
        if isinstance(f.target, FiniteSpace):
            checks["unique"], mode = _unique_continuous(qs, f.target, fixed, fbar.table)
        else:
            checks["unique"], mode = all(fbar(k) == v for k, v in fixed.items()), "generated-points"
    else:
        generated = {eta(x) for x in pts}
        checks["unique"] = generated == set(qs.points())
        mode = "generated-points"
    return UniversalReport(all(checks.values()), fbar, checks, mode)


def ns_universal_map(f: ChainMap) -> UniversalReport:
    """Extension of ``f: (omega+1, Alexandroff) -> Y`` along ``xi`` to ``N^S``.

    ``fbar(A) = sup f(A)``; checks ``fbar^-1(V) = (f^-1(V) n N)^S`` for opens
    ``V`` with nonempty preimage (and emptiness otherwise), ``fbar o xi = f``
    and uniqueness on the generated points ``down n``.
    """
    _require_kbs_map(f)
    src, tgt = f.source, f.target
    ns = sobrification_of_omega(src.bound)
    lower = {n: EvSet.down(n) for n in range(src.bound + 1)}
    lower[INF] = EvSet.naturals()
    table = {}
    for label, a in lower.items():
        s = tgt.sup(f.image(a))
        if s is None:
            raise ContractError(f"sup f({a!r}) does not exist")
        table[label] = s
    checks = {}
    checks["commutes"] = all(table[x] == f(x) for x in src.points())
    law = True
    for c in tgt.closed_sets():
        v = tgt.complement(c)
        pre_v = f.preimage(v)
        lhs = {x for x in ns.points() if table[x] in v}
        if _empty(pre_v):
            law &= not lhs
        else:
            nat = pre_v & EvSet.naturals()
            law &= lhs == {x for x, a in lower.items() if not _empty(a & nat)}
    checks["preimage-law"] = law
    fbar = ChainMap(ns, tgt, {n: table[n] for n in range(src.bound + 1)}, src.bound + 1,
                    ("const", table[src.bound]), table[INF], f"{f.name}-bar")
    checks["continuous"] = is_continuous(fbar)[0]
    checks["unique"] = all(table[n] == f(n) for n in range(src.bound + 1))
    return UniversalReport(all(checks.values()), table, checks, "generated-points")


# -- embeddings ------------------------------------------------------------------------------------

def embedding_check(f) -> tuple[bool, Any]:
    """Whether ``f`` is a homeomorphism onto its image (subspace topology).

    Witness on failure: a source open ``U`` whose image is not of the form
    ``V n f(X)`` for an open ``V`` of the target.
    """
    src, tgt = f.source, f.target
    if isinstance(src, FiniteSpace) and not f.is_injective():
        raise ContractError(f"map {f.name} is not injective")
    ok, w = is_continuous(f)
    if not ok:
        raise ContractError(f"map {f.name} is not continuous (witness {w!r})")
    whole_image = f.image(_whole(src))
    traces = {tgt.complement(c) & whole_image for c in tgt.closed_sets()}
    for c in sorted(src.closed_sets(), key=src.canonical_key, reverse=True):
        u = src.complement(c)
        if f.image(u) not in traces:
            return False, u
    return True, None


def _whole(space):
    return space.whole


# -- products ------------------------------------------------------------------------------------

def product_irreducibles_match(spaces) -> bool:
    """Irreducible closed sets of the product are products of irreducible closed sets."""
    prod = product(spaces)
    expected = {frozenset(itertools.product(*fs))
                for fs in itertools.product(*(s.irreducible_closed() for s in spaces))}
    return set(prod.irreducible_closed()) == expected
