import numpy as np
import pytest

from soberscope.chain import INF, EvSet
from soberscope.errors import ContractError, InputError
from soberscope.johnstone import (APEXES, Descriptor, JAmbient, check_map_properties,
                                  classify_irreducible_closed, compose_equals, descriptor_contains,
                                  explicit_split, is_listed_irreducible, is_scott_closed,
                                  iter_descriptors, j_leq, named_map, paper_map_eval,
                                  parse_element, point_closure, render_element, si_of_scott_ambient,
                                  sup_of, upper_bounds, whole_j)
from soberscope.oracles import truncated_poset
from soberscope.sobriety import check_sobriety


# -- order ------------------------------------------------------------------------------------

def test_order_examples():
    assert j_leq("P", (2, 3), (2, INF))
    assert j_leq("P", (2, 3), (5, INF))
    assert not j_leq("P", (3, INF), (5, INF))
    assert not j_leq("P", (2, 6), (5, INF))
    assert j_leq("P", (7, 9), "top")


def test_apex_order():
    assert j_leq("Y", "top1", "top3") and j_leq("Y", "top2", "top3")
    assert not j_leq("X", "top1", "top2") and not j_leq("X", "top2", "top1")
    with pytest.raises(InputError):
        j_leq("X", (1, 1), "top3")


def test_element_rendering_round_trip():
    for e in [(2, 3), (4, INF), "top1"]:
        assert parse_element(render_element(e)) == e


# -- descriptors --------------------------------------------------------------------------------

def test_membership_examples():
    assert descriptor_contains("P", Descriptor.make(strip=3), (7, 2))
    assert descriptor_contains("P", Descriptor.make(strip=4, tops={4}), (4, 100))
    assert not descriptor_contains("P", Descriptor(), (1, 1))
    assert not descriptor_contains("P", Descriptor(), "top")


def test_scott_closed_examples():
    assert is_scott_closed("P", whole_j())[0]
    for h in (5, 50, 500):
        assert is_scott_closed("P", Descriptor.make(extras={3: h}))[0]
    ok, why = is_scott_closed("P", Descriptor.make(strip=2, tops={5}))
    assert not ok and "not down-closed" in why
    assert not is_scott_closed("Y", Descriptor(True, apexes={"top3"}))[0]
    assert not is_scott_closed("X", Descriptor.make(strip=2, apexes={"top1"}))[0]


def test_upper_bounds_examples():
    ub = upper_bounds("P", whole_j())
    assert ub.apexes == {"top"} and sup_of("P", whole_j()) == "top"
    ub = upper_bounds("X", whole_j())
    assert ub.apexes == {"top1", "top2"} and ub.tops_from is None
    assert sup_of("X", whole_j()) is None
    for e in [(3, 7), (2, INF)]:
        assert sup_of("P", point_closure("P", e)) == e


def test_upper_bounds_of_empty_rejected():
    with pytest.raises(ContractError):
        upper_bounds("P", Descriptor())


# -- classification -----------------------------------------------------------------------------

def _profile_members(t, prof):
    out = np.zeros(len(t.elements), dtype=bool)
    for i, e in enumerate(t.elements):
        out[i] = e in prof
    return out


def _descriptor_members(t, d):
    return np.array([e in d for e in t.elements])


@pytest.mark.parametrize("kind", ["P", "X", "Y"])
def test_explicit_splits_hold_on_truncation(kind):
    """Every unlisted descriptor is covered by two closed sets, neither containing it.

    Checked independently of the profile arithmetic: membership on the
    truncation at 2B, down-closure through the order matrix.
    """
    bound = 8
    t = truncated_poset(kind, 2 * bound)
    leq = t.leq.astype(np.int32)
    checked = 0
    for d in iter_descriptors(kind, bound, pair_bound=3):
        if d.is_empty() or is_listed_irreducible(kind, d):
            continue
        a, b = explicit_split(kind, d)
        whole = _descriptor_members(t, d)
        ma, mb = _profile_members(t, a), _profile_members(t, b)
        for m in (ma, mb):
            assert not ((leq @ m.astype(np.int32) > 0) & ~m).any(), d
        assert ((ma | mb) == whole).all(), d
        assert (whole & ~ma).any() and (whole & ~mb).any(), d
        checked += 1
    assert checked > 100


def test_listed_sets_are_point_closures_or_j():
    for d in iter_descriptors("P", 6, 3):
        if is_listed_irreducible("P", d):
            s = sup_of("P", d)
            assert d == whole_j() or (s is not None and point_closure("P", s) == d)


def test_strip_alone_is_reducible():
    d = Descriptor.make(strip=2)
    assert not is_listed_irreducible("P", d)
    a, b = explicit_split("P", d)
    assert (2, 2) in a and (1, 2) not in a
    assert (1, 2) in b and (2, 2) not in b


def test_classification_report_passes():
    for kind in ("P", "X", "Y"):
        _, rep = classify_irreducible_closed(kind, 20)
        assert rep.holds and rep.splits_verified > 0 and rep.lemma_checked > 0


def test_classification_of_omega_plus_one():
    listed, rep = classify_irreducible_closed("OmegaPlusOne", 12)
    assert rep is None
    assert EvSet.naturals() in listed
    assert EvSet.down(4) in listed
    assert any(EvSet.finite({INF}) <= s for s in listed)


# -- sobriety of the ambients -------------------------------------------------------------------

def test_sobriety_of_ambients():
    v = check_sobriety(JAmbient("P", 20), "k-bounded-sober")
    assert not v.holds and v.witness.members == whole_j()
    assert check_sobriety(JAmbient("X", 20), "k-bounded-sober").holds
    assert check_sobriety(JAmbient("Y", 20), "k-bounded-sober").holds


def test_si_of_scott_p_removes_only_j():
    rep = si_of_scott_ambient("P", 20)
    assert rep.removed == [whole_j()] and rep.k_bounded_sober


def test_alexandroff_ambient_has_no_closed_set_listing():
    with pytest.raises(ContractError):
        JAmbient("P", 10, topology="alexandroff").closed_sets()


# -- maps -----------------------------------------------------------------------------------------

def test_named_map_values():
    f1, f2, g = named_map("f-case1", 10), named_map("f-case2", 10), named_map("g-collapse", 10)
    assert paper_map_eval(f1, "top") == "top1"
    assert paper_map_eval(f1, (3, 4)) == (3, 4)
    assert paper_map_eval(f2, "top") == "top3"
    assert {g(a) for a in APEXES["Y"]} == {"top3"}
    assert compose_equals(g, f2, "P", 20)[0]


def test_named_maps_identity_on_j_and_idempotent():
    g = named_map("g-collapse", 10)
    pts = JAmbient("Y", 10).points()
    assert all(g(g(e)) == g(e) for e in pts)
    for name in ("f-case1", "f-case2"):
        f = named_map(name, 10)
        assert all(f(e) == e for e in JAmbient("P", 10).points() if not isinstance(e, str))


def test_map_properties():
    r1 = check_map_properties(named_map("f-case1", 20), 20)
    assert r1.facts["scott-continuous"] and r1.facts["monotone"]
    assert not r1.facts["preserves-irreducible-sups"]
    r2 = check_map_properties(named_map("f-case2", 20), 20)
    assert r2.facts["scott-continuous"] and not r2.facts["preserves-irreducible-sups"]
    rg = check_map_properties(named_map("g-collapse", 20), 20)
    assert all(rg.facts.values())


def test_unknown_map():
    with pytest.raises(InputError):
        named_map("h", 10)
