import random

import numpy as np
import pytest

from soberscope.chain import INF
from soberscope.johnstone import is_scott_closed, j_leq, sup_of
from soberscope.oracles import run_oracle, spot_check_order, truncated_poset


def test_truncated_order_matches_rule_everywhere():
    t = truncated_poset("Y", 6)
    for i, a in enumerate(t.elements):
        for j, b in enumerate(t.elements):
            assert bool(t.leq[i, j]) == j_leq("Y", a, b)


def test_truncated_order_is_a_partial_order():
    t = truncated_poset("P", 12)
    leq = t.leq
    assert leq.diagonal().all()
    assert not (leq & leq.T & ~np.eye(len(leq), dtype=bool)).any()
    closure = (leq.astype(np.int32) @ leq.astype(np.int32)) > 0
    assert (closure <= leq).all()


def test_spot_check_finds_no_disagreement():
    assert spot_check_order(truncated_poset("X", 20), 5000, random.Random(0)) == 0


@pytest.mark.parametrize("kind", ["P", "X", "Y"])
def test_oracle_agrees(kind):
    rep = run_oracle(kind, 10, 1500, seed=3)
    assert rep.disagreements == 0, rep.examples[:3]
    assert rep.sups_compared > 100 and rep.descriptors == 1500


def test_oracle_catches_a_wrong_sup():
    def off_by_one(kind, d):
        s = sup_of(kind, d)
        if isinstance(s, tuple) and s[1] != INF:
            return (s[0], s[1] + 1)
        return s

    rep = run_oracle("P", 10, 1500, seed=3, sup_fn=off_by_one)
    assert rep.sup > 0


def test_oracle_catches_a_lax_closedness_test():
    def ignores_tops(kind, d):
        ok, why = is_scott_closed(kind, d)
        if not ok and why and "strip" in why:
            return True, None
        return ok, why

    rep = run_oracle("P", 10, 1500, seed=3, closed_fn=ignores_tops)
    assert rep.scott > 0
