import math
import random
from itertools import combinations

import pytest

from hapdisc.classify import (
    Classification,
    SkipSet,
    UnsupportedSizeError,
    classify,
    classify_size3,
    classify_size4,
    reduce_set,
)
from hapdisc.pattern import format_pattern, realize
from hapdisc.realizability import valid_odd_cycle
from hapdisc.skipgraph import build_graph, two_color


def oracle_forces(skips) -> bool:
    return two_color(build_graph(skips)) is None


def test_skip_set_construction():
    s = SkipSet.of([6, 2, 4])
    assert s.elements == (2, 4, 6)
    assert s.reduction_factor == 2
    with pytest.raises(ValueError):
        SkipSet.of([])
    with pytest.raises(ValueError):
        SkipSet.of([0, 1])


@pytest.mark.parametrize(
    "values,reduced,factor",
    [([2, 4, 6], (1, 2, 3), 2), ([1, 2, 3], (1, 2, 3), 1), ([6, 10, 16], (3, 5, 8), 2)],
)
def test_reduce_set(values, reduced, factor):
    rs, f = reduce_set(SkipSet.of(values))
    assert rs.elements == reduced
    assert f == factor


def test_classify_size3_forcing_triple():
    result = classify_size3(SkipSet.of([1, 2, 3]))
    assert result.forces and result.rule == "size3"
    assert result.labeling == {"a": 2, "b": 1, "c": 3}
    assert format_pattern(result.predicted_cycle) == "[+2 +1 -3]"
    assert result.predicted_start == 0


def test_classify_size3_same_class_sum():
    # 1 + 3 = 4 but 1 and 3 share a 2-adic class
    result = classify_size3(SkipSet.of([1, 3, 4]))
    assert not result.forces
    assert not oracle_forces([1, 3, 4])


def test_classify_size3_no_sum():
    result = classify_size3(SkipSet.of([2, 3, 7]))
    assert not result.forces
    assert not oracle_forces([2, 3, 7])


def test_classify_size4_seven_cycle():
    result = classify_size4(SkipSet.of([1, 3, 5, 8]))
    assert result.forces and result.rule == "size4-bullet-4"
    assert result.labeling == {"a": 8, "x": 3, "y": 5, "z": 1}
    assert result.predicted_start == 48
    assert len(result.predicted_cycle) == 7


def test_classify_size4_five_cycle_two_even():
    result = classify_size4(SkipSet.of([1, 2, 7, 10]))
    assert result.forces and result.rule == "size4-bullet-2"
    assert format_pattern(result.predicted_cycle) == "[+2 -10 +2 +7 -1]"
    assert oracle_forces([1, 2, 7, 10])


def test_classify_size4_matches_oracle_spot():
    for s in ([1, 4, 6, 9], [2, 3, 7, 8], [1, 2, 4, 6], [3, 5, 7, 9], [1, 3, 9, 11]):
        assert classify_size4(SkipSet.of(s)).forces == oracle_forces(s), s


def test_classify_size4_unreduced_triple_inside_reduced_set():
    # {2,4,6} scaled from {1,2,3} forces even though no even+odd=odd triple exists
    result = classify_size4(SkipSet.of([1, 2, 4, 6]))
    assert result.forces and result.rule == "size4-bullet-1"
    assert result.labeling == {"a": 4, "b": 2, "c": 6}


def test_classify_dispatch():
    assert not classify([7]).forces
    assert not classify([4, 9]).forces
    scaled = classify([2, 4, 6])
    assert scaled.forces and scaled.rule == "size3"
    assert scaled.labeling == {"a": 4, "b": 2, "c": 6}
    assert format_pattern(scaled.predicted_cycle) == "[+4 +2 -6]"
    with pytest.raises(UnsupportedSizeError):
        classify([3, 9, 16, 18, 19, 20])


def test_classify_requires_reduced_for_direct_entry_points():
    with pytest.raises(ValueError):
        classify_size3(SkipSet.of([2, 4, 6]))
    with pytest.raises(ValueError):
        classify_size4(SkipSet.of([2, 4, 6, 8]))


def test_predicted_cycles_validate_with_concrete_starts():
    rng = random.Random(23)
    seen_forcing = 0
    while seen_forcing < 40:
        size = rng.choice((3, 4))
        values = rng.sample(range(1, 25), size)
        result = classify(values)
        if not result.forces:
            continue
        seen_forcing += 1
        verdict = valid_odd_cycle(result.predicted_cycle)
        assert verdict.valid
        assert verdict.witness_start == result.predicted_start
        assert set(result.predicted_cycle.skips) <= set(values)
        walk = realize(result.predicted_cycle, result.predicted_start)
        assert walk.is_parity_valid and walk.is_closed


def test_classification_scaling_invariance():
    rng = random.Random(40)
    for _ in range(120):
        size = rng.choice((3, 4))
        values = rng.sample(range(1, 21), size)
        base = classify(values)
        for d in (2, 3):
            scaled = classify([d * v for v in values])
            assert scaled.forces == base.forces
            assert scaled.rule == base.rule


def test_small_sweep_against_oracle_size3():
    for s in combinations(range(1, 16), 3):
        if math.gcd(*s) != 1:
            continue
        assert classify_size3(SkipSet.of(s)).forces == oracle_forces(s), s


def test_small_sweep_against_oracle_size4():
    for s in combinations(range(1, 13), 4):
        if math.gcd(*s) != 1:
            continue
        assert classify_size4(SkipSet.of(s)).forces == oracle_forces(s), s


def test_satisfied_bullets_diagnostic():
    result = classify_size4(SkipSet.of([1, 3, 5, 8]))
    assert result.satisfied_bullets == ("size4-bullet-4",)
    assert classify_size4(SkipSet.of([3, 5, 7, 9])).satisfied_bullets == ()


def test_to_json_dict_shape():
    data = classify([1, 2, 3]).to_json_dict()
    assert data["forces"] is True
    assert data["rule"] == "size3"
    assert data["cycle"] == {"pattern": "[+2 +1 -3]", "start": 0}
    data = classify([4, 9]).to_json_dict()
    assert data == {"forces": False, "rule": "none", "labeling": None}
