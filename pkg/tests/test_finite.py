import itertools

import pytest

from soberscope.errors import ContractError, InputError
from soberscope.finite import (FinitePoset, FiniteSpace, alexandroff, closure, discrete,
                               enumerate_irreducible_closed, is_irreducible, is_t0, point_space,
                               product, scott_finite, sierpinski, specialization_leq, sup,
                               validate_topology)
from soberscope.fuzz import random_poset_space, random_t0_space, sample_rng


def S(*xs):
    return frozenset(xs)


def all_subsets(carrier):
    return [frozenset(c) for r in range(len(carrier) + 1) for c in itertools.combinations(carrier, r)]


def brute_is_topology(carrier, family):
    fam = set(family)
    if S() not in fam or frozenset(carrier) not in fam:
        return False
    return all(a & b in fam and a | b in fam for a in fam for b in fam)


# -- validate_topology ---------------------------------------------------------------

def test_sierpinski_is_a_topology():
    assert validate_topology([[], ["b"], ["a", "b"]], ["a", "b"]) == []


def test_missing_union_reported():
    problems = validate_topology([[], ["a"], ["b"]], ["a", "b"])
    assert any(p.axiom == "union" and p.witness[-1] == S("a", "b") for p in problems)


def test_missing_carrier_is_a_union_violation():
    problems = validate_topology([[], ["b"]], ["a", "b"])
    assert [p.axiom for p in problems] == ["union"]
    assert "union axiom" in str(problems[0])


def test_point_space_valid():
    assert validate_topology([[], ["a"]], ["a"]) == []


def test_missing_intersection_reported():
    carrier = ["a", "b", "c"]
    opens = [[], ["a", "b"], ["b", "c"], ["a", "b", "c"]]
    problems = validate_topology(opens, carrier)
    assert any(p.axiom == "intersection" and p.witness[-1] == S("b") for p in problems)


def test_validation_agrees_with_brute_force_on_all_families_of_three_points():
    carrier = ["a", "b", "c"]
    subsets = all_subsets(carrier)
    for r in range(len(subsets) + 1):
        for fam in itertools.combinations(subsets, r):
            assert (validate_topology(fam, carrier) == []) == brute_is_topology(carrier, fam)


def test_duplicate_carrier_rejected():
    with pytest.raises(InputError):
        validate_topology([[]], ["a", "a"])


def test_constructor_rejects_non_topology():
    with pytest.raises(InputError):
        FiniteSpace(("a", "b"), [(), ("a",), ("b",)])


# -- order, closure, T0, sup ---------------------------------------------------------

def test_sierpinski_order():
    s = sierpinski()
    assert specialization_leq(s, "a", "b")
    assert not specialization_leq(s, "b", "a")
    for x in s.carrier:
        assert specialization_leq(s, x, x)


def test_closures():
    s = sierpinski()
    assert closure(s, S()) == S()
    assert closure(s, S("b")) == S("a", "b")
    assert closure(s, s.whole) == s.whole


def test_t0():
    assert is_t0(sierpinski()) == (True, None)
    indiscrete = FiniteSpace(("a", "b"), [(), ("a", "b")])
    ok, witness = is_t0(indiscrete)
    assert not ok and set(witness) == {"a", "b"}
    assert is_t0(point_space())[0]


def test_sup():
    s = sierpinski()
    assert sup(s, S("a", "b")) == "b"
    assert sup(discrete("ab"), S("a", "b")) is None
    assert sup(s, S("a")) == "a"


def test_sup_of_non_t0_is_contract_error():
    with pytest.raises(ContractError):
        FiniteSpace(("a", "b"), [(), ("a", "b")]).sup(S("a"))


def test_sup_matches_closure_sup_on_random_spaces():
    for i in range(60):
        s = random_t0_space(sample_rng(3, i), 5)
        for sub in all_subsets(s.carrier):
            assert s.sup(sub) == s.sup(s.closure(sub))


def test_order_from_closures_on_random_spaces():
    for i in range(60):
        s = random_t0_space(sample_rng(4, i), 5)
        for x in s.carrier:
            for y in s.carrier:
                assert s.leq(x, y) == (x in s.closure(S(y)))


# -- constructors ----------------------------------------------------------------------

def test_alexandroff_examples():
    chain = FinitePoset.generated("ab", [("a", "b")])
    assert alexandroff(chain).opens == {S(), S("b"), S("a", "b")}
    anti = FinitePoset.generated("ab", [])
    assert alexandroff(anti) == discrete("ab")
    vee = FinitePoset.generated("abc", [("a", "c"), ("b", "c")])
    assert alexandroff(vee).opens == {S(), S("c"), S("a", "c"), S("b", "c"), S("a", "b", "c")}


def test_alexandroff_opens_are_exactly_up_sets():
    for i in range(40):
        s = random_poset_space(sample_rng(5, i), 5)
        order = s.specialization_poset()
        ups = {u for u in all_subsets(s.carrier) if order.up(u) == u}
        assert s.opens == ups


def test_scott_equals_alexandroff_on_finite_posets():
    assert scott_finite(FinitePoset.generated("ab", [("a", "b")])) == sierpinski()
    assert scott_finite(FinitePoset.generated("abc", [])) == discrete("abc")
    for i in range(40):
        p = random_poset_space(sample_rng(6, i), 6).specialization_poset()
        assert scott_finite(p) == alexandroff(p)


def test_poset_rejects_cycles():
    with pytest.raises(InputError):
        FinitePoset.generated("ab", [("a", "b"), ("b", "a")])


def test_product_of_sierpinski_is_diamond():
    p = product([sierpinski(), sierpinski()])
    assert len(p.carrier) == 4
    bottom, top = ("a", "a"), ("b", "b")
    for x in p.carrier:
        assert p.leq(bottom, x) and p.leq(x, top)
    assert not p.leq(("a", "b"), ("b", "a")) and not p.leq(("b", "a"), ("a", "b"))


def test_product_with_point_is_homeomorphic():
    s = sierpinski()
    p = product([s, point_space()])
    relabelled = {frozenset(x for x, _ in u) for u in p.opens}
    assert relabelled == s.opens


def test_product_opens_are_unions_of_boxes():
    for i in range(20):
        a = random_t0_space(sample_rng(8, i), 3)
        b = random_t0_space(sample_rng(9, i), 3)
        p = product([a, b])
        boxes = [frozenset(itertools.product(u, v)) for u in a.opens for v in b.opens]
        unions = set()
        for r in range(len(boxes) + 1):
            if r > 3:
                break
            for combo in itertools.combinations(boxes, r):
                unions.add(frozenset().union(*combo))
        assert unions <= p.opens
        for u in p.opens:
            assert u == frozenset().union(*[bx for bx in boxes if bx <= u])


# -- irreducibility ----------------------------------------------------------------------

def test_irreducible_examples():
    s = sierpinski()
    assert all(is_irreducible(s, S(x)) for x in s.carrier)
    assert not is_irreducible(discrete("ab"), S("a", "b"))
    assert is_irreducible(s, S("a", "b"))
    assert not is_irreducible(s, S())


def test_irreducible_criterion_matches_definition():
    for i in range(80):
        s = random_t0_space(sample_rng(10, i), 6)
        for sub in all_subsets(s.carrier):
            assert s.is_irreducible(sub) == s.is_irreducible_definitional(sub)


def test_enumerate_irreducible_closed_examples():
    recs = enumerate_irreducible_closed(sierpinski())
    assert {r.members for r in recs} == {S("a"), S("a", "b")}
    assert all(r.generic_point is not None for r in recs)
    d = discrete("abcd")
    assert {r.members for r in enumerate_irreducible_closed(d)} == {S(x) for x in "abcd"}


def test_finite_irreducible_closed_sets_are_point_closures():
    for i in range(200):
        s = random_t0_space(sample_rng(11, i), 6)
        closures = {s.point_closure(x) for x in s.carrier}
        assert set(s.irreducible_closed()) == closures


def test_enumeration_requires_t0():
    with pytest.raises(ContractError):
        enumerate_irreducible_closed(FiniteSpace(("a", "b"), [(), ("a", "b")]))
