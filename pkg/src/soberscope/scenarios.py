"""Fact bundles around Johnstone's dcpo and the chain omega+1.

Each scenario runs a list of decidable checks and returns a
:class:`~soberscope.report.CheckReport` whose facts say what was verified
and in which mode.
"""

from __future__ import annotations

import time

import numpy as np

from .chain import INF, ChainMap, EvSet, omega, omega_plus_one, xi_map
from .constructions import (embedding_check, is_qk_bounded_sober, ns_universal_map, reflector,
                            sobrify, thm_4_2_witness)
from .errors import InputError
from .finite import sierpinski
from .fuzz import random_poset_space, random_t0_space, sample_rng
from .johnstone import (JAmbient, check_map_properties, classify_irreducible_closed,
                        compose_equals, is_scott_closed, iter_descriptors, named_map,
                        si_of_scott_ambient, sup_of, upper_bounds, whole_j)
from .oracles import naive_members, truncated_poset
from .report import CheckReport, Fact, from_facts
from .sobriety import check_sobriety, derive_si, is_continuous, preserves_irreducible_sups

SCENARIOS = ("thm3.3-case1", "thm3.3-case2", "prop3.9", "ex3.6", "ex4.4", "ex4.6")


def ex36_map(bound: int = 16) -> ChainMap:
    """``(omega+1, Alexandroff) -> Sierpinski``: ``n < 3 -> a``, otherwise ``b``."""
    src = omega_plus_one("alexandroff", bound)
    return ChainMap(src, sierpinski(), {0: "a", 1: "a", 2: "a"}, 3, ("const", "b"), "b", "ex3.6-f")


def named_any_map(name: str, bound: int = 40):
    if name == "ex3.6-f":
        return ex36_map(min(bound, 40))
    return named_map(name, bound)


# -- shared pieces ----------------------------------------------------------------------------

def _bounded(b: int) -> str:
    return f"bounded B={b}"


def _a_facts(b: int) -> list:
    a = whole_j()
    closed, why = is_scott_closed("P", a)
    _, rep = classify_irreducible_closed("P", b)
    return [
        Fact("A = J is Scott-closed in P", closed, why),
        Fact("A is irreducible", rep.holds and rep.lemma_checked > 0,
             {"splits": rep.splits_verified, "lemma-checked": rep.lemma_checked}, _bounded(b)),
        Fact("sup A = ⊤ in P", sup_of("P", a) == "top", sup_of("P", a)),
    ]


def _ksober_fact(kind: str, b: int) -> Fact:
    v = check_sobriety(JAmbient(kind, b), "k-bounded-sober")
    _, rep = classify_irreducible_closed(kind, b)
    return Fact(f"{kind} is k-bounded sober", v.holds and rep.holds,
                None if v.holds else v.witness.members, _bounded(b))


def _map_facts(name: str, b: int) -> list:
    r = check_map_properties(named_map(name, b), b)
    out = [Fact(f"{name} is total", r.facts["total"]),
           Fact(f"{name} is monotone", r.facts["monotone"], r.witnesses.get("monotone"), "sampled"),
           Fact(f"{name} is Scott continuous", r.facts["scott-continuous"],
                r.witnesses.get("scott-continuous"), _bounded(b))]
    f = named_map(name, b)
    ident = all(f(e) == e for e in JAmbient(f.source.kind, b).points() if not isinstance(e, str))
    out.append(Fact(f"{name} is the identity on J", ident, None, _bounded(b)))
    return out


def _ub_fact(kind: str, expected: set) -> list:
    ub = upper_bounds(kind, whole_j())
    exact = ub.apexes == frozenset(expected) and ub.tops_from is None \
        and not ub.tops_extra and ub.column is None
    s = sup_of(kind, whole_j())
    return [Fact(f"upper bounds of f(A) in {kind} are exactly {{{','.join(sorted(expected))}}}",
                 exact, ub.describe()),
            Fact(f"sup f(A) does not exist in {kind}", s is None, s)]


# -- scenarios ---------------------------------------------------------------------------------

def _thm33_case1(b: int) -> list:
    facts = _a_facts(b)
    facts.append(_ksober_fact("X", b))
    facts += _map_facts("f-case1", b)
    facts += _ub_fact("X", {"top1", "top2"})
    return facts


def _thm33_case2(b: int) -> list:
    facts = _a_facts(b)
    facts.append(_ksober_fact("Y", b))
    facts += _map_facts("f-case2", b)
    facts += _ub_fact("Y", {"top1", "top2", "top3"})
    g, f = named_map("g-collapse", b), named_map("f-case2", b)
    facts += _map_facts("g-collapse", b)[:3]
    ok, bad = compose_equals(g, f, "P", 2 * b)
    facts.append(Fact(f"g o f = f on coordinates <= {2 * b}", ok, bad, _bounded(2 * b)))
    idem = all(g(g(e)) == g(e) for e in JAmbient("Y", b).points())
    facts.append(Fact("g is idempotent", idem, None, _bounded(b)))
    facts.append(Fact("g moves ⊤1 and ⊤2", g("top1") != "top1" and g("top2") != "top2",
                      {"top1": g("top1"), "top2": g("top2")}))
    return facts


def _scott_in_alexandroff(b: int) -> Fact:
    """Every Scott-closed descriptor (parameters <= b) is a down-set of the truncation 2b."""
    t = truncated_poset("P", 2 * b)
    descs = list(iter_descriptors("P", b))
    leqf = t.leq.astype(np.float32)
    bad = None
    for start in range(0, len(descs), 1024):
        chunk = descs[start:start + 1024]
        mem = np.stack([naive_members(t, d) for d in chunk], axis=1)
        down = (leqf @ mem.astype(np.float32)) > 0
        viol = (down & ~mem).any(axis=0)
        if viol.any():
            bad = chunk[int(np.flatnonzero(viol)[0])]
            break
    return Fact("Scott-closed sets of P are Alexandroff-closed", bad is None, bad,
                f"bounded B={b}, truncation {2 * b}")


def _prop39(b: int) -> list:
    facts = _a_facts(b)
    small = min(b, 12)
    facts.append(_scott_in_alexandroff(small))
    for kind, name in (("X", "f-case1"), ("Y", "f-case2")):
        facts.append(_ksober_fact(kind, b))
        facts += _map_facts(name, b)[2:3]
    facts += _ub_fact("X", {"top1", "top2"})
    facts += _ub_fact("Y", {"top1", "top2", "top3"})
    v = check_sobriety(JAmbient("P", b), "k-bounded-sober")
    facts.append(Fact("Scott space of P is not k-bounded sober", not v.holds,
                      v.witness.members if v.witness else None, _bounded(b)))
    return facts


def _ex36(b: int) -> list:
    bound = min(b, 40)
    w = omega_plus_one("alexandroff", bound)
    v = check_sobriety(w, "k-bounded-sober")
    facts = [Fact("(omega+1, Alexandroff) is not k-bounded sober", not v.holds and
                  v.witness.members == EvSet.naturals(), v.witness.members if v.witness else None, w.mode)]
    so = sobrify(omega(bound))
    facts.append(Fact("N^S is the sobrification of N", all(so.checks.values()), None, so.mode))
    xi = xi_map(bound)
    facts.append(Fact("xi is continuous", is_continuous(xi)[0], None, w.mode))
    facts.append(Fact("xi preserves irreducible sups", preserves_irreducible_sups(xi)[0], None, w.mode))
    emb, wit = embedding_check(xi)
    facts.append(Fact("xi is not an embedding", not emb and wit == EvSet.finite({INF}), wit, w.mode))
    u = ns_universal_map(ex36_map(bound))
    facts.append(Fact("fbar(A) = sup f(A) extends f along xi", u.holds, u.checks, u.uniqueness_mode))
    r = reflector(w, xi)
    facts.append(Fact("reflector of xi commutes and is unique", r.holds, r.checks, r.uniqueness_mode))
    return facts


def _si_alexandroff_is_scott(samples: int = 60, seed: int = 44) -> Fact:
    ok = derive_si(omega_plus_one("alexandroff", 16)).space == omega_plus_one("scott", 16)
    for i in range(samples):
        s = random_poset_space(sample_rng(seed, i), 5)
        ok &= derive_si(s).unchanged
    return Fact("SI of an Alexandroff space is the Scott space", ok,
                {"finite posets": samples, "chain": "omega+1"}, "sampled")


def _ex44(b: int) -> list:
    facts = [_si_alexandroff_is_scott()]
    _, rep = classify_irreducible_closed("P", b)
    facts.append(Fact("irreducible Scott-closed sets of P are point closures and J", rep.holds,
                      {"splits": rep.splits_verified}, _bounded(b)))
    v = check_sobriety(JAmbient("P", b), "k-bounded-sober")
    facts.append(Fact("Scott space of P is not k-bounded sober", not v.holds,
                      v.witness.members if v.witness else None, _bounded(b)))
    q = is_qk_bounded_sober(JAmbient("P", b, topology="alexandroff"))
    facts.append(Fact("KB(P, Alexandroff)/~ is not k-bounded sober", not q.holds and q.witness == "[J]",
                      q.witness, q.mode))
    h = thm_4_2_witness(omega_plus_one("alexandroff", min(b, 40)))
    facts.append(Fact("KB/~ is homeomorphic to SI on omega+1", h.holds, None, h.mode))
    return facts


def _ex46(b: int) -> list:
    ok, bad = True, None
    for i in range(50):
        s = random_t0_space(sample_rng(46, i), 5)
        if check_sobriety(s, "k-bounded-sober").holds and not is_qk_bounded_sober(s).holds:
            ok, bad = False, s
            break
    scott = is_qk_bounded_sober(omega_plus_one("scott", min(b, 40)))
    facts = [Fact("k-bounded sober spaces are qk-bounded sober", ok and scott.holds, bad,
                  "sampled N=50 finite + omega+1 Scott")]
    p = is_qk_bounded_sober(JAmbient("P", b))
    rep = si_of_scott_ambient("P", b)
    facts.append(Fact("Scott space of P is qk-bounded sober", p.holds,
                      {"si-removed": rep.removed, "splits": rep.splits_verified}, p.mode))
    w = is_qk_bounded_sober(omega_plus_one("alexandroff", min(b, 40)))
    facts.append(Fact("(omega+1, Alexandroff) is qk-bounded sober", w.holds, None, w.mode))
    return facts


_RUNNERS = {
    "thm3.3-case1": _thm33_case1,
    "thm3.3-case2": _thm33_case2,
    "prop3.9": _prop39,
    "ex3.6": _ex36,
    "ex4.4": _ex44,
    "ex4.6": _ex46,
}


def scenario(name: str, bound: int = 40) -> CheckReport:
    if name not in _RUNNERS:
        raise InputError(f"unknown scenario {name!r}; expected one of {', '.join(SCENARIOS)}")
    if bound < 2:
        raise InputError("bound must be at least 2")
    t = time.perf_counter()
    facts = _RUNNERS[name](bound)
    return from_facts(name, facts, _bounded(bound), (time.perf_counter() - t) * 1000)
