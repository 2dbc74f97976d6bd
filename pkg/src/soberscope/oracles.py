"""Brute-force cross-checks on coordinate-truncated Johnstone posets.

The truncation keeps every point with coordinates ``<= T`` (plus the
apexes).  Its order matrix is built directly from the order rule, without
descriptor arithmetic, and all set operations are matrix products.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .chain import INF
from .johnstone import (APEXES, Descriptor, is_scott_closed, j_leq, random_descriptor,
                        sup_of)

_INF_CODE = -1


@dataclass
class Truncation:
    kind: str
    size: int
    elements: list
    ms: np.ndarray       # column, 0 for apexes
    ns: np.ndarray       # height, -1 for infinity, 0 for apexes
    leq: np.ndarray      # leq[i, j] iff elements[i] <= elements[j]

    @property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}


def truncated_poset(kind: str, size: int) -> Truncation:
    elements = [(m, n) for m in range(1, size + 1) for n in range(1, size + 1)]
    elements += [(m, INF) for m in range(1, size + 1)]
    apexes = list(APEXES[kind])
    elements += apexes
    nj = len(elements) - len(apexes)
    ms = np.array([e[0] if not isinstance(e, str) else 0 for e in elements])
    ns = np.array([(_INF_CODE if e[1] == INF else e[1]) if not isinstance(e, str) else 0 for e in elements])
    m1, m2 = ms[:nj, None], ms[None, :nj]
    n1, n2 = ns[:nj, None], ns[None, :nj]
    fin1 = n1 != _INF_CODE
    inf2 = n2 == _INF_CODE
    same_col = (m1 == m2) & (fin1 | (n1 == n2)) & ((n1 <= n2) & fin1 & ~inf2 | inf2)
    via_top = inf2 & fin1 & (n1 <= m2)
    leq = np.zeros((len(elements), len(elements)), dtype=bool)
    leq[:nj, :nj] = same_col | via_top
    for j, a in enumerate(apexes):
        leq[:nj, nj + j] = True
        for i, b in enumerate(apexes):
            leq[nj + i, nj + j] = b == a or (kind == "Y" and a == "top3")
    return Truncation(kind, size, elements, ms, ns, leq)


def spot_check_order(t: Truncation, samples: int, rng: random.Random) -> int:
    """Disagreements between the matrix and :func:`j_leq` on random pairs."""
    bad = 0
    n = len(t.elements)
    for _ in range(samples):
        i, j = rng.randrange(n), rng.randrange(n)
        if bool(t.leq[i, j]) != j_leq(t.kind, t.elements[i], t.elements[j]):
            bad += 1
    return bad


def generators(t: Truncation, d: Descriptor) -> np.ndarray:
    """Indicator of a generating set of ``d`` within the truncation."""
    gen = np.zeros(len(t.elements), dtype=bool)
    isj = t.ms > 0
    if d.whole:
        gen |= isj & (t.ns == _INF_CODE)
    else:
        if d.strip:
            gen |= isj & (t.ns == d.strip)
        for m, h in d.extras:
            gen |= (t.ms == m) & (t.ns == h)
        for m in d.tops:
            gen |= (t.ms == m) & (t.ns == _INF_CODE)
    for a in d.apexes:
        gen[t.index[a]] = True
    return gen


def naive_members(t: Truncation, d: Descriptor) -> np.ndarray:
    """Raw membership read off the fields, with no closure applied."""
    out = np.zeros(len(t.elements), dtype=bool)
    isj = t.ms > 0
    fin = isj & (t.ns != _INF_CODE)
    if d.whole:
        out |= isj
    out |= fin & (t.ns <= d.strip)
    for m, h in d.extras:
        out |= fin & (t.ms == m) & (t.ns <= h)
    for m in d.tops:
        out |= isj & (t.ms == m)
    for a in d.apexes:
        if a in t.index:
            out[t.index[a]] = True
    return out


@dataclass
class OracleReport:
    descriptors: int = 0
    membership: int = 0
    scott: int = 0
    sups_compared: int = 0
    sup: int = 0
    order: int = 0
    examples: list = field(default_factory=list)

    @property
    def disagreements(self) -> int:
        return self.membership + self.scott + self.sup + self.order


def _least(t: Truncation, ub: np.ndarray):
    idx = np.flatnonzero(ub)
    if idx.size == 0:
        return None
    sub = t.leq[np.ix_(idx, idx)]
    least = idx[sub.all(axis=1)]
    return t.elements[least[0]] if least.size else None


def run_oracle(kind: str, bound: int, samples: int, seed: int, batch: int = 512,
               sup_fn=sup_of, closed_fn=is_scott_closed) -> OracleReport:
    """Compare membership, Scott-closedness and sups against the truncation ``2 * bound``.

    Membership: the library's vectorised and scalar membership against the
    down-closure of the generators.  Scott-closedness: on valid and
    deliberately broken descriptors, against "down-closed, and a complete
    column contains its top".  Sups: against the least upper bound in the
    truncation whenever the symbolic answer has coordinates ``<= bound``.
    ``sup_fn`` and ``closed_fn`` can be swapped out to check the oracle bites.
    """
    rng = random.Random(seed)
    t = truncated_poset(kind, 2 * bound)
    rep = OracleReport()
    rep.order = spot_check_order(t, 2000, rng)
    leqf = t.leq.astype(np.float32)
    isj = t.ms > 0
    jm, jn = t.ms[isj], t.ns[isj]
    napex = len(APEXES[kind])
    done = 0
    while done < samples:
        k = min(batch, samples - done)
        descs = [random_descriptor(rng, kind, bound, valid=rng.random() < 0.8) for _ in range(k)]
        done += k
        gens = np.stack([generators(t, d) for d in descs], axis=1).astype(np.float32)
        down = (leqf @ gens) > 0
        naive = np.stack([naive_members(t, d) for d in descs], axis=1)
        naive_down = (leqf @ naive.astype(np.float32)) > 0
        counts = naive.astype(np.float32).T @ leqf
        for c, d in enumerate(descs):
            rep.descriptors += 1
            valid, _ = closed_fn(kind, d)
            col = naive[:, c]
            truth_closed = bool((naive_down[:, c] <= col).all())
            if truth_closed:
                for m in range(1, t.size + 1):
                    column = isj & (t.ms == m)
                    fin = column & (t.ns != _INF_CODE)
                    if col[fin].all() and not col[column & (t.ns == _INF_CODE)].all():
                        truth_closed = False
                        break
            if valid != truth_closed:
                rep.scott += 1
                rep.examples.append(("scott", d))
            if not (valid and truth_closed):
                continue
            lib = np.zeros(len(t.elements), dtype=bool)
            lib[isj] = d.contains_many(jm, jn)
            lib[len(lib) - napex:] = [a in d.apexes for a in APEXES[kind]]
            picks = [rng.randrange(len(t.elements)) for _ in range(16)]
            scalar_ok = all((t.elements[i] in d) == lib[i] for i in picks)
            if not (lib == down[:, c]).all() or not scalar_ok:
                rep.membership += 1
                rep.examples.append(("membership", d))
            if d.is_empty():
                continue
            s = sup_fn(kind, d)
            if s is not None and not isinstance(s, str) and max(s[0], 0 if s[1] == INF else s[1]) > bound:
                continue
            ub = counts[c] >= col.sum() - 0.5
            truth = _least(t, ub)
            rep.sups_compared += 1
            if truth != s:
                rep.sup += 1
                rep.examples.append(("sup", d))
    return rep
