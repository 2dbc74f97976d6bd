import random

import pytest

from soberscope.chain import INF, EvSet, omega, omega_plus_one, xi_map
from soberscope.constructions import (embedding_check, is_qk_bounded_sober, kb_quotient, kb_space,
                                      kb_universal_map, ns_universal_map, product_irreducibles_match,
                                      reflector, sobrify, thm_4_2_witness)
from soberscope.errors import ContractError
from soberscope.finite import discrete, point_space, sierpinski
from soberscope.fuzz import random_continuous_map, random_t0_space, run_sweep, sample_rng
from soberscope.johnstone import JAmbient
from soberscope.maps import SpaceMap, constant_map, identity_map
from soberscope.scenarios import ex36_map
from soberscope.sobriety import check_sobriety, derive_si


def S(*xs):
    return frozenset(xs)


W = omega_plus_one("alexandroff", 16)


# -- sobrification ------------------------------------------------------------------------

def test_sobrify_sierpinski():
    so = sobrify(sierpinski())
    assert set(so.points) == {S("a"), S("a", "b")}
    assert all(so.checks.values())
    relabel = {S("a"): "a", S("a", "b"): "b"}
    assert {frozenset(relabel[p] for p in u) for u in so.space.opens} == sierpinski().opens


def test_sobrify_point():
    assert len(sobrify(point_space()).points) == 1


def test_sobrify_omega_matches_directed_lower_sets():
    so = sobrify(omega(16))
    assert so.checks == {"matches-N^S": True}
    assert EvSet.naturals() in so.points


def test_unit_of_sobrification_is_an_embedding():
    for i in range(40):
        s = random_t0_space(sample_rng(30, i), 5)
        so = sobrify(s)
        assert embedding_check(so.unit_map())[0]


# -- KB(X) and its quotient -----------------------------------------------------------------

def test_kb_of_sierpinski():
    kb = kb_space(sierpinski())
    ca, cb = S("a"), S("a", "b")
    assert set(kb.points) == {ca, cb}
    assert set(kb.k_sets.values()) == {S(), S(ca), S(ca, cb)}
    assert all(kb.checks.values())


def test_kb_of_discrete_pair():
    kb = kb_space(discrete("ab"))
    assert len(kb.points) == 2
    assert len(kb.space.opens) == 4


def test_kb_of_chain_has_two_points_above_naturals():
    kb = kb_space(W, verify=False)
    assert EvSet.naturals() in kb.points and W.whole in kb.points
    assert W.sup(EvSet.naturals()) == W.sup(W.whole) == INF


def test_quotient_of_chain_merges_naturals_and_whole():
    q = kb_quotient(W)
    assert set(q.classes[INF]) == {EvSet.naturals(), W.whole}
    assert all(len(v) == 1 for k, v in q.classes.items() if k != INF)
    assert q.space == omega_plus_one("scott", 16)
    assert all(q.checks.values())


def test_quotient_of_finite_space_is_trivial():
    for i in range(60):
        s = random_t0_space(sample_rng(31, i), 5)
        q = kb_quotient(s)
        assert all(len(v) == 1 for v in q.classes.values())
        assert all(q.checks.values())
    assert len(kb_quotient(sierpinski()).classes) == 2


def test_thm_4_2_examples():
    assert thm_4_2_witness(W).holds
    assert thm_4_2_witness(sierpinski()).holds
    h = thm_4_2_witness(point_space())
    assert h.holds and h.bijection == {"p": "p"}


def test_thm_4_2_sweep():
    assert all(r.holds for r in run_sweep("thm-4-2", 100, 5, 5))


def test_qk_examples():
    for i in range(40):
        s = random_t0_space(sample_rng(32, i), 5)
        assert is_qk_bounded_sober(s).holds
    assert is_qk_bounded_sober(W).holds
    v = is_qk_bounded_sober(JAmbient("P", 20, topology="alexandroff"))
    assert not v.holds and v.witness == "[J]"


def test_qk_of_chain_agrees_with_si_space():
    assert check_sobriety(derive_si(W).space).holds


# -- universal maps ---------------------------------------------------------------------------

def test_reflector_identity_gives_homeomorphism():
    s = sierpinski()
    r = reflector(s, identity_map(s))
    assert r.holds and r.uniqueness_mode == "exhaustive"
    assert r.extension.table == {"a": "a", "b": "b"}


def test_reflector_on_point():
    p = point_space()
    assert reflector(p, identity_map(p)).holds


def test_reflector_for_xi():
    r = reflector(W, xi_map(16))
    assert r.holds and r.uniqueness_mode == "generated-points"


def test_reflector_sweep():
    assert all(r.holds for r in run_sweep("reflector", 100, 11, 5))


def test_reflector_rejects_discontinuous_map():
    s = sierpinski()
    with pytest.raises(ContractError):
        reflector(s, SpaceMap(s, s, {"a": "b", "b": "a"}))


def test_kb_universal_map_examples():
    s = sierpinski()
    r = kb_universal_map(s, identity_map(s))
    assert r.holds
    assert r.extension.table == {S("a"): "a", S("a", "b"): "b"}
    c = kb_universal_map(s, constant_map(s, s, "b"))
    assert c.holds and set(c.extension.table.values()) == {"b"}


def test_kb_universal_map_on_random_pairs():
    for i in range(40):
        rng = sample_rng(33, i)
        s = random_t0_space(rng, 4)
        t = random_t0_space(rng, 3)
        assert kb_universal_map(s, random_continuous_map(rng, s, t)).holds


def test_extension_along_xi():
    u = ns_universal_map(ex36_map(16))
    assert u.holds
    assert u.extension[INF] == "b"
    assert [u.extension[n] for n in range(5)] == ["a", "a", "a", "b", "b"]


# -- embeddings and products ------------------------------------------------------------------

def test_xi_is_not_an_embedding():
    ok, witness = embedding_check(xi_map(16))
    assert not ok and witness == EvSet.finite({INF})


def test_identity_is_an_embedding():
    assert embedding_check(identity_map(sierpinski())) == (True, None)


def test_product_irreducibles():
    assert product_irreducibles_match([sierpinski(), sierpinski()])
    assert all(r.holds for r in run_sweep("lemma-2-7", 60, 2, 4))


def test_identity_extension_picks_generic_points_by_brute_force():
    for i in range(40):
        s = random_t0_space(random.Random(500 + i), 5)
        whole = frozenset(s.carrier)
        closed = [whole - u for u in s.opens]

        def closure_of_point(x):
            out = whole
            for c in closed:
                if x in c:
                    out &= c
            return out

        r = kb_universal_map(s, identity_map(s))
        for f, value in r.extension.table.items():
            assert [x for x in s.carrier if closure_of_point(x) == f] == [value]
