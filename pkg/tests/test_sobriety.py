import itertools

import pytest

from soberscope.chain import INF, ChainMap, EvSet, omega_plus_one, xi_map
from soberscope.errors import ContractError, InputError
from soberscope.finite import FiniteSpace, discrete, point_space, product, sierpinski
from soberscope.fuzz import random_t0_space, run_sweep, sample_rng
from soberscope.maps import SpaceMap, all_maps, constant_map, identity_map
from soberscope.sobriety import (PROPERTIES, check_prop_2_4, check_prop_2_6, check_prop_2_8,
                                 check_sobriety, derive_si, is_continuous, is_si_closed,
                                 is_si_open, preserves_irreducible_sups, revalidate_witness,
                                 si_is_idempotent, sobriety_chain)


def S(*xs):
    return frozenset(xs)


W = omega_plus_one("alexandroff", 16)


# -- SI-open / SI-closed -----------------------------------------------------------------

def test_si_open_on_chain():
    assert not is_si_open(W, EvSet.finite({INF}))
    assert is_si_open(W, W.whole)
    for n in range(10):
        assert is_si_open(W, EvSet.up(n))


def test_si_closed_on_chain():
    assert not is_si_closed(W, EvSet.naturals())
    assert is_si_closed(W, EvSet.empty()) and is_si_closed(W, W.whole)
    for n in range(10):
        assert is_si_closed(W, EvSet.down(n))


def test_si_closed_needs_a_closed_set():
    with pytest.raises(ContractError):
        is_si_closed(sierpinski(), S("b"))


def test_si_closed_fast_path_matches_definition():
    for i in range(80):
        s = random_t0_space(sample_rng(20, i), 5)
        for c in s.closed_sets():
            assert is_si_closed(s, c) == is_si_closed(s, c, definitional=True)
        for u in s.open_sets():
            assert is_si_open(s, u) == is_si_open(s, u, definitional=True)


# -- derive_si ---------------------------------------------------------------------------

def test_derive_si_examples():
    assert derive_si(sierpinski()).unchanged
    assert derive_si(discrete("abc")).space == discrete("abc")
    d = derive_si(W)
    assert d.space == omega_plus_one("scott", 16)
    opens = set(d.si_opens)
    assert opens == set(omega_plus_one("scott", 16).open_sets())
    assert all(u == EvSet.empty() or any(u == EvSet.up(n) for n in range(20)) for u in opens)
    assert EvSet.up(0) == W.whole and EvSet.empty() in opens


def test_si_is_idempotent_on_random_spaces():
    for i in range(60):
        assert si_is_idempotent(random_t0_space(sample_rng(21, i), 5))
    assert si_is_idempotent(W)


# -- sobriety ----------------------------------------------------------------------------

def test_finite_t0_spaces_are_sober():
    for i in range(100):
        s = random_t0_space(sample_rng(22, i), 6)
        for p in PROPERTIES:
            assert check_sobriety(s, p).holds


def test_chain_witness_is_naturals():
    v = check_sobriety(W, "k-bounded-sober")
    assert not v.holds
    assert v.witness.members == EvSet.naturals()
    assert v.witness.sup == INF
    assert revalidate_witness(W, v)


def test_scott_chain_is_k_bounded_sober():
    assert check_sobriety(omega_plus_one("scott", 16), "k-bounded-sober").holds


def test_sobriety_chain_of_implications():
    out = sobriety_chain(W)
    assert [out[p].holds for p in PROPERTIES] == [False, False, False]


def test_unknown_property():
    with pytest.raises(InputError):
        check_sobriety(sierpinski(), "very-sober")


def test_non_t0_rejected():
    with pytest.raises(ContractError):
        check_sobriety(FiniteSpace(("a", "b"), [(), ("a", "b")]))


def test_prop_2_6_examples():
    assert check_prop_2_6(sierpinski())
    assert check_prop_2_6(W)
    assert not check_sobriety(W).holds and not derive_si(W).unchanged


def test_prop_2_6_sweep():
    assert all(r.holds for r in run_sweep("prop-2-6", 500, 7, 5))


# -- maps --------------------------------------------------------------------------------

def test_continuity_examples():
    s = sierpinski()
    assert is_continuous(identity_map(s)) == (True, None)
    assert is_continuous(constant_map(s, s, "a"))[0]
    swap = SpaceMap(s, s, {"a": "b", "b": "a"}, "swap")
    assert is_continuous(swap) == (False, S("b"))


def test_sup_preservation_examples():
    assert preserves_irreducible_sups(identity_map(sierpinski()))[0]
    assert preserves_irreducible_sups(xi_map(16))[0]


def test_collapsing_the_top_breaks_sup_preservation():
    # omega+1 -> Sierpinski: every natural to the bottom, inf to the top
    f = ChainMap(W, sierpinski(), {}, 0, ("const", "a"), "b", "collapse")
    assert is_continuous(f)[0]
    ok, witness = preserves_irreducible_sups(f)
    assert not ok and witness == EvSet.naturals()


def test_sup_preservation_fast_path_matches_definition():
    for i in range(30):
        a = random_t0_space(sample_rng(23, i), 4)
        b = random_t0_space(sample_rng(24, i), 3)
        for f in itertools.islice(all_maps(a, b), 64):
            if is_continuous(f)[0]:
                assert preserves_irreducible_sups(f)[0] == \
                    preserves_irreducible_sups(f, definitional=True)[0]


def test_prop_2_4_examples():
    assert check_prop_2_4(identity_map(sierpinski()))
    assert check_prop_2_4(xi_map(16))


def test_prop_2_4_needs_continuity():
    s = sierpinski()
    with pytest.raises(ContractError):
        check_prop_2_4(SpaceMap(s, s, {"a": "b", "b": "a"}, "swap"))


def test_prop_2_4_exhaustive_on_small_spaces():
    for i in range(15):
        a = random_t0_space(sample_rng(25, i), 4)
        b = random_t0_space(sample_rng(26, i), 3)
        for f in all_maps(a, b):
            if is_continuous(f)[0]:
                assert check_prop_2_4(f)


def test_prop_2_8_examples():
    assert check_prop_2_8([sierpinski(), sierpinski()])
    assert check_prop_2_8([point_space(), sierpinski()])
    assert check_sobriety(product([sierpinski(), discrete("xy")])).holds


def test_prop_2_8_sweep():
    assert all(r.holds for r in run_sweep("prop-2-8", 100, 3, 4))
