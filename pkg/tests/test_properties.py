import random

from hypothesis import given, settings
from hypothesis import strategies as st

from soberscope.chain import INF, EvSet
from soberscope.fuzz import random_t0_space
from soberscope.johnstone import (APEXES, Descriptor, down_close, is_scott_closed, j_leq,
                                  random_descriptor, sup_of, upper_bounds)


def _element(rng, kind, big):
    if rng.random() < 0.05:
        return rng.choice(APEXES[kind]) if APEXES[kind] else (1, INF)
    hi = big if rng.random() < 0.5 else 5
    m = rng.randint(1, hi)
    n = INF if rng.random() < 0.3 else rng.randint(1, hi)
    return (m, n)


def test_j_order_is_a_partial_order_on_random_triples():
    rng = random.Random(2024)
    for i in range(100_000):
        kind = ("P", "X", "Y")[i % 3]
        a, b, c = (_element(rng, kind, 1000) for _ in range(3))
        assert j_leq(kind, a, a)
        if j_leq(kind, a, b) and j_leq(kind, b, a):
            assert a == b
        if j_leq(kind, a, b) and j_leq(kind, b, c):
            assert j_leq(kind, a, c)


coord = st.integers(min_value=1, max_value=1000)
height = st.one_of(st.integers(min_value=1, max_value=1000), st.just(INF))
j_point = st.tuples(coord, height)


@given(j_point, j_point)
def test_order_rule_by_cases(a, b):
    (m1, n1), (m2, n2) = a, b
    expected = (m1 == m2 and (n2 == INF or (n1 != INF and n1 <= n2))) or \
        (n2 == INF and n1 != INF and n1 <= m2)
    assert j_leq("P", a, b) == expected


@st.composite
def descriptors(draw, kind="P"):
    seed = draw(st.integers(min_value=0, max_value=2**32))
    return random_descriptor(random.Random(seed), kind, 12)


@given(descriptors(), descriptors())
def test_union_and_intersection_of_closed_sets_stay_closed(a, b):
    for d in (a | b, a & b):
        assert is_scott_closed("P", d)[0]


@given(descriptors(), st.lists(st.tuples(st.integers(1, 30), st.integers(1, 30)), max_size=20))
def test_union_membership(a, pts):
    b = down_close("P", Descriptor.make(strip=3, extras={5: 9}))
    for e in pts:
        assert (e in (a | b)) == (e in a or e in b)
        assert (e in (a & b)) == (e in a and e in b)


@given(descriptors())
def test_sup_is_least_upper_bound_when_it_exists(d):
    if d.is_empty():
        return
    s = sup_of("P", d)
    ub = upper_bounds("P", d)
    if s is None:
        return
    assert s in ub
    probe = [(m, n) for m in range(1, 30) for n in list(range(1, 30)) + [INF]] + ["top"]
    for x in probe:
        if x in ub:
            assert j_leq("P", s, x)


@given(descriptors())
def test_down_close_is_idempotent(d):
    c = down_close("P", d)
    assert down_close("P", c) == c


@st.composite
def evsets(draw):
    cut = draw(st.integers(min_value=0, max_value=10))
    head = draw(st.frozensets(st.integers(min_value=0, max_value=max(cut - 1, 0)), max_size=cut))
    return EvSet(frozenset(h for h in head if h < cut), cut, draw(st.booleans()), draw(st.booleans()))


@given(evsets(), evsets(), evsets())
def test_evset_boolean_algebra(a, b, c):
    assert a | (b & c) == (a | b) & (a | c)
    assert a & (b | c) == (a & b) | (a & c)
    assert (a - b) | (a & b) == a
    assert (a <= b) == ((a | b) == b)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_closure_operator_laws(seed):
    s = random_t0_space(random.Random(seed), 5)
    subsets = s.closed_sets() + s.open_sets()
    for a in subsets:
        ca = s.closure(a)
        assert a <= ca and s.closure(ca) == ca and s.is_closed(ca)
        for b in subsets[:6]:
            assert s.closure(a | b) == ca | s.closure(b)
