import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import LA, LB, connected_graphs, oracle_specs
from mlstp.exact import PilotConfig, astar, branching_order, brute_force, first_stage_labels, pilot
from mlstp.graph import DisconnectedError, build_graph, restricted_components
from mlstp.heuristics import TieBreak, mvca_revised, solve_variant, A12
from mlstp.instances import InstanceSpec, generate


def test_astar_monochromatic(mono):
    colors, stats = astar(mono)
    assert colors == {0}
    assert stats.nodes_expanded <= 2


def test_astar_trap(trap):
    colors, _ = astar(trap)
    assert colors == {1, 2} == brute_force(trap)


def test_astar_four(four):
    assert astar(four)[0] == {LA, LB}
    assert brute_force(four) == {LA, LB}


def test_astar_rejects_infeasible_bound(trap):
    with pytest.raises(DisconnectedError):
        astar(trap, initial_upper_bound={0})


def test_astar_single_vertex():
    g = build_graph(1, 2, [])
    assert astar(g)[0] == frozenset()
    assert brute_force(g) == frozenset()


def test_brute_force_guard():
    g = build_graph(2, 21, [(0, 1, 20)])
    with pytest.raises(ValueError):
        brute_force(g)


def test_n20_dense_class_optima():
    # Table I lists optima 2 and 3 for every n = l = 20, d = 0.8 instance
    for i in range(1, 11):
        g = generate(InstanceSpec(20, 20, 0.8, 0, i))
        assert len(astar(g)[0]) in (2, 3)


def test_oracle_agreement_small_generated():
    for spec in oracle_specs(60, seed=7):
        g = generate(spec)
        assert len(astar(g)[0]) == len(brute_force(g))


@settings(max_examples=200, deadline=None)
@given(connected_graphs(max_l=7), st.integers(0, 1000))
def test_astar_matches_oracle(g, seed):
    opt = len(brute_force(g))
    colors, stats = astar(g)
    assert len(colors) == opt
    assert restricted_components(g, colors).count == 1
    assert len(astar(g, frequency_prune=False)[0]) == opt
    assert len(astar(g, heuristic_bound=False)[0]) == opt
    ub = solve_variant(g, A12, seed).colors
    assert len(astar(g, initial_upper_bound=ub)[0]) == opt
    assert len(astar(g, initial_upper_bound=range(g.l))[0]) == opt
    assert min(stats.nodes_expanded, stats.pruned_by_bound, stats.pruned_by_frequency) >= 0


def test_pilot_config_parse():
    assert PilotConfig.parse("first=all,rec=greedy") == PilotConfig("all_labels", "single_greedy")
    assert PilotConfig.parse("first=minimizers,rec=all") == PilotConfig("comp_minimizers", "all_minimizers")
    cfg = PilotConfig.parse("first=frac0.1,rec=greedy")
    assert cfg.first_stage == "top_fraction" and cfg.fraction == 0.1
    assert str(cfg) == "first=frac0.1,rec=greedy"
    assert PilotConfig.parse("") == PilotConfig()
    for bad in ("first=some", "rec=half", "depth=2", "first=frac1.5"):
        with pytest.raises(ValueError):
            PilotConfig.parse(bad)


def test_top_fraction_selection():
    # frequencies: label 0 -> 1, label 1 -> 3, labels 2, 3 -> 2 each
    g = build_graph(
        5, 4, [(0, 1, 0), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 2, 2), (1, 3, 2), (0, 4, 3), (2, 4, 3)]
    )
    assert branching_order(g) == [1, 2, 3, 0]
    assert first_stage_labels(g, PilotConfig("top_fraction", fraction=0.25)) == [1]
    # ceil(0.3 * 4) = 2; tie between 2 and 3 goes to the lower id
    assert first_stage_labels(g, PilotConfig("top_fraction", fraction=0.3)) == [1, 2]
    assert first_stage_labels(g, PilotConfig("all_labels")) == [0, 1, 2, 3]


def test_pilot_monochromatic(mono):
    for text in ("first=all,rec=greedy", "first=minimizers,rec=all", "first=frac0.1,rec=greedy", "first=all,rec=all"):
        assert pilot(mono, PilotConfig.parse(text))[0] == {0}


def test_pilot_trap(trap):
    colors, _ = pilot(trap, PilotConfig("all_labels", "single_greedy"))
    assert colors == {1, 2}
    assert first_stage_labels(trap, PilotConfig("comp_minimizers")) == [0, 1, 2]


@settings(max_examples=200, deadline=None)
@given(connected_graphs(max_l=7), st.integers(0, 100))
def test_pilot_bounds(g, seed):
    opt = len(astar(g)[0])
    results = {}
    for first in ("all", "minimizers", "frac0.3"):
        for rec in ("greedy", "all"):
            cfg = PilotConfig.parse(f"first={first},rec={rec}")
            colors, _ = pilot(g, cfg, TieBreak.UNIFORM_RANDOM, seed)
            assert restricted_components(g, colors).count == 1
            assert len(colors) >= opt
            results[(first, rec)] = len(colors)
    assert results[("all", "all")] <= results[("minimizers", "all")]
    assert results[("all", "all")] <= results[("all", "greedy")]
    assert results[("minimizers", "all")] <= mvca_revised(g).objective
