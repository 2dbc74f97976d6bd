"""Seeded random finite T0 spaces and property sweeps over them.

Each sample draws from its own generator seeded by ``(seed, index)``, so a
sweep gives the same verdicts in the same order whatever the worker count.
``SOBERSCOPE_THREADS`` caps the process pool (default 1: run inline).
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

from .constructions import (kb_space, kb_universal_map, product_irreducibles_match,
                            reflector, thm_4_2_witness)
from .errors import InputError
from .finite import FinitePoset, FiniteSpace, alexandroff, union_closure
from .maps import SpaceMap, all_maps
from .sobriety import (PROPERTIES, check_prop_2_4, check_prop_2_6, check_prop_2_8,
                       check_sobriety, derive_si, is_continuous, is_si_closed, is_si_open,
                       preserves_irreducible_sups, si_is_idempotent)


def _labels(n: int) -> tuple:
    return tuple("abcdefghijklmnopqrstuvwxyz"[i] for i in range(n))


def random_poset_space(rng: random.Random, n: int) -> FiniteSpace:
    """Alexandroff topology of a random order on ``n`` points."""
    pts = _labels(n)
    p = rng.choice([0.15, 0.3, 0.5])
    pairs = [(pts[i], pts[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    perm = list(pts)
    rng.shuffle(perm)
    relabel = dict(zip(pts, perm))
    poset = FinitePoset.generated(pts, [(relabel[a], relabel[b]) for a, b in pairs])
    return alexandroff(poset)


def random_subbase_space(rng: random.Random, n: int, tries: int = 40) -> FiniteSpace | None:
    """Topology generated by random subsets; ``None`` if no T0 draw is found."""
    pts = _labels(n)
    for _ in range(tries):
        k = rng.randint(1, max(1, 2 * n))
        sub = [frozenset(x for x in pts if rng.random() < 0.5) for _ in range(k)]
        meets = set(sub) | {frozenset(pts)}
        changed = True
        while changed:
            changed = False
            for a, b in itertools.combinations(list(meets), 2):
                c = a & b
                if c not in meets:
                    meets.add(c)
                    changed = True
        opens = union_closure(meets) | {frozenset(), frozenset(pts)}
        space = FiniteSpace(pts, opens)
        if space.is_t0:
            return space
    return None


def random_t0_space(rng: random.Random, carrier_max: int, carrier_min: int = 1) -> FiniteSpace:
    n = rng.randint(carrier_min, carrier_max)
    if rng.random() < 0.5:
        space = random_subbase_space(rng, n)
        if space is not None:
            return space
    return random_poset_space(rng, n)


def random_continuous_map(rng: random.Random, source: FiniteSpace, target: FiniteSpace,
                          need_sups: bool = True, tries: int = 200) -> SpaceMap:
    """A random continuous map (preserving irreducible sups when asked).

    Falls back to a constant map, which always qualifies.
    """
    for _ in range(tries):
        table = {x: rng.choice(target.carrier) for x in source.carrier}
        f = SpaceMap(source, target, table, "f")
        if not is_continuous(f)[0]:
            continue
        if need_sups and not preserves_irreducible_sups(f)[0]:
            continue
        return f
    return SpaceMap(source, target, {x: target.carrier[0] for x in source.carrier}, "f")


# -- sweeps ----------------------------------------------------------------------------------

@dataclass
class SampleResult:
    index: int
    holds: bool
    witness: Any = None
    mode: str = "exhaustive"


def _collapse(rng, cmax):
    s = random_t0_space(rng, cmax)
    closures = set(s._point_closures.values())
    if any(f not in closures for f in s.irreducible_closed()):
        return False, s
    if not all(check_sobriety(s, p).holds for p in PROPERTIES):
        return False, s
    if not derive_si(s).unchanged or not check_prop_2_6(s):
        return False, s
    return True, None


def _prop_2_6(rng, cmax):
    s = random_t0_space(rng, cmax)
    return check_prop_2_6(s), s


def _prop_2_4(rng, cmax):
    a = random_t0_space(rng, min(cmax, 4))
    b = random_t0_space(rng, min(cmax, 4))
    maps = list(all_maps(a, b))
    if len(maps) > 256:
        maps = rng.sample(maps, 256)
    for f in maps:
        if is_continuous(f)[0] and not check_prop_2_4(f):
            return False, f.table
    return True, None


def _pair(rng, cmax):
    return random_t0_space(rng, min(cmax, 4)), random_t0_space(rng, min(cmax, 4))


def _prop_2_8(rng, cmax):
    a, b = _pair(rng, cmax)
    return check_prop_2_8([a, b]), (a, b)


def _lemma_2_7(rng, cmax):
    a, b = _pair(rng, cmax)
    return product_irreducibles_match([a, b]), (a, b)


def _products(rng, cmax):
    a, b = _pair(rng, cmax)
    ok = check_prop_2_8([a, b]) and product_irreducibles_match([a, b])
    return ok, (a, b)


def _thm_4_2(rng, cmax):
    s = random_t0_space(rng, cmax)
    return thm_4_2_witness(s).holds, s


def _reflector(rng, cmax):
    s = random_t0_space(rng, cmax)
    t = random_t0_space(rng, min(cmax, 4))
    f = random_continuous_map(rng, s, t)
    r = reflector(s, f)
    u = kb_universal_map(s, f)
    return r.holds and u.holds, (s, f.table) if not (r.holds and u.holds) else None


def _kb_laws(rng, cmax):
    s = random_t0_space(rng, cmax)
    kb = kb_space(s)
    return all(kb.checks.values()), s


def _si_duality(rng, cmax):
    s = random_t0_space(rng, cmax)
    for c in s.closed_sets():
        if is_si_closed(s, c) != is_si_open(s, s.complement(c)):
            return False, c
    return si_is_idempotent(s), s


def _definitional(rng, cmax):
    s = random_t0_space(rng, min(cmax, 5))
    for r in range(len(s.carrier) + 1):
        for combo in itertools.combinations(s.carrier, r):
            if s.is_irreducible(combo) != s.is_irreducible_definitional(combo):
                return False, frozenset(combo)
    for c in s.closed_sets():
        if is_si_closed(s, c) != is_si_closed(s, c, definitional=True):
            return False, c
    for u in s.open_sets():
        if is_si_open(s, u) != is_si_open(s, u, definitional=True):
            return False, u
    return True, None


SWEEPS: dict[str, Callable] = {
    "sobriety-collapse": _collapse,
    "prop-2-6": _prop_2_6,
    "prop-2-4": _prop_2_4,
    "prop-2-8": _prop_2_8,
    "lemma-2-7": _lemma_2_7,
    "products": _products,
    "thm-4-2": _thm_4_2,
    "reflector": _reflector,
    "kb-laws": _kb_laws,
    "si-duality": _si_duality,
    "definitional": _definitional,
}


def sample_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def _run_one(args) -> SampleResult:
    name, seed, index, cmax = args
    ok, witness = SWEEPS[name](sample_rng(seed, index), cmax)
    return SampleResult(index, bool(ok), None if ok else witness)


def worker_count() -> int:
    raw = os.environ.get("SOBERSCOPE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"SOBERSCOPE_THREADS must be an integer, got {raw!r}") from None
    return max(1, min(n, os.cpu_count() or 1))


def run_sweep(name: str, samples: int, seed: int, carrier_max: int) -> list[SampleResult]:
    if name not in SWEEPS:
        raise InputError(f"unknown sweep {name!r}; expected one of {', '.join(SWEEPS)}")
    if carrier_max < 1:
        raise InputError("carrier-max must be at least 1")
    jobs = [(name, seed, i, carrier_max) for i in range(samples)]
    workers = worker_count()
    if workers == 1 or samples < 8:
        results = [_run_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=max(1, samples // (4 * workers))))
    return sorted(results, key=lambda r: r.index)
