import pytest

from soberscope.chain import EvSet, INF
from soberscope.errors import InputError
from soberscope.scenarios import SCENARIOS, named_any_map, scenario


def facts_by_name(report):
    return {f.name: f for f in report.facts}


@pytest.mark.parametrize("name", ["thm3.3-case1", "thm3.3-case2", "prop3.9"])
def test_johnstone_scenarios_pass_at_small_bound(name):
    r = scenario(name, 12)
    assert r.holds, [f.name for f in r.facts if not f.holds]
    assert r.mode == "bounded B=12"


def test_case_two_compares_composition_up_to_twice_the_bound():
    facts = facts_by_name(scenario("thm3.3-case2", 12))
    assert "g o f = f on coordinates <= 24" in facts


def test_ex36_reports_the_top_as_embedding_witness():
    r = scenario("ex3.6", 40)
    assert r.holds
    f = facts_by_name(r)["xi is not an embedding"]
    assert f.detail == EvSet.finite({INF})


def test_ex44_reports_class_of_j():
    r = scenario("ex4.4", 40)
    assert r.holds
    assert facts_by_name(r)["KB(P, Alexandroff)/~ is not k-bounded sober"].detail == "[J]"


def test_ex46_passes():
    assert scenario("ex4.6", 40).holds


def test_unknown_scenario():
    with pytest.raises(InputError):
        scenario("thm9.9", 10)


def test_every_scenario_is_listed():
    assert set(SCENARIOS) == {"thm3.3-case1", "thm3.3-case2", "prop3.9", "ex3.6", "ex4.4", "ex4.6"}


def test_ex36_map_values():
    f = named_any_map("ex3.6-f", 16)
    assert [f(n) for n in range(5)] == ["a", "a", "a", "b", "b"]
    assert f(INF) == "b"
