import random

import pytest
from hypothesis import given, settings, strategies as st

from tritile import (
    Tiling, apply_flip, base_tiling, build_box, build_torus,
    build_voxel_region, count_tilings, deserialize_tiling, diff_cycles,
    enumerate_tilings, find_flips, refine_region, refine_tiling,
    serialize_tiling,
)
from support import count_matchings, pinwheel_N1, pinwheel_N2


def test_enumeration_counts_match_permanent_oracle():
    for build, args in ((build_box, (2, 2, 1)), (build_box, (2, 2, 2)),
                        (build_box, (3, 3, 2)), (build_box, (4, 2, 1)),
                        (build_torus, (2, 2, 2)), (build_torus, (2, 2, 4))):
        r = build(*args)
        expected = count_matchings(r.cells, periods=r.periods)
        assert count_tilings(r) == expected, (build.__name__, args)


def test_enumeration_count_on_voxel_region():
    cells = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0), (2, 0, 0), (3, 0, 0)]
    r = build_voxel_region(cells)
    assert count_tilings(r) == count_matchings(cells) == 2


def test_enumeration_order_independent():
    r = build_box(3, 3, 2)
    reference = {t.hash64 for t in enumerate_tilings(r)}
    rng = random.Random(3)
    for _ in range(3):
        order = list(range(6))
        rng.shuffle(order)
        assert {t.hash64 for t in enumerate_tilings(r, order)} == reference


def test_enumeration_hashes_distinct_and_valid():
    r = build_box(3, 3, 2)
    seen = set()
    for t in enumerate_tilings(r):
        assert t.hash64 not in seen
        seen.add(t.hash64)
        covered = sorted(c for d in t.dimers for c in (d.white, d.black))
        assert covered == sorted(r.cells)
    assert len(seen) == 229


def test_base_tiling_box():
    t = base_tiling(build_box(3, 3, 2), 2)
    assert len(t.dimers) == 9
    assert all(d.axis == 2 for d in t.dimers)
    assert all({d.white[2], d.black[2]} == {0, 1} for d in t.dimers)


def test_base_tiling_torus_pairs_low_and_high():
    t = base_tiling(build_torus(4, 4, 4), 0)
    assert len(t.dimers) == 32
    assert all(d.axis == 0 for d in t.dimers)
    assert {tuple(sorted((d.white[0], d.black[0]))) for d in t.dimers} == \
        {(0, 1), (2, 3)}


def test_base_tiling_odd_extent_rejected():
    with pytest.raises(ValueError, match="odd extent along axis x"):
        base_tiling(build_box(3, 3, 2), 0)


def test_from_cell_pairs_validation():
    r = build_box(2, 2, 1)
    good = [((0, 0, 0), (1, 0, 0)), ((1, 1, 0), (0, 1, 0))]
    t = Tiling.from_cell_pairs(r, good)
    assert len(t.dimers) == 2
    with pytest.raises(ValueError, match="cell covered twice"):
        Tiling.from_cell_pairs(r, [((0, 0, 0), (1, 0, 0)),
                                   ((1, 0, 0), (1, 1, 0))])
    with pytest.raises(ValueError, match="not in the region"):
        Tiling.from_cell_pairs(r, [((0, 0, 0), (1, 0, 0)),
                                   ((1, 1, 0), (1, 2, 0))])
    with pytest.raises(ValueError, match="same-color"):
        Tiling.from_cell_pairs(r, [((0, 0, 0), (1, 1, 0)),
                                   ((1, 0, 0), (0, 1, 0))])


def test_dimer_direction_is_unit_step():
    r = build_box(3, 3, 2)
    for t in (base_tiling(r, 2), pinwheel_N1()):
        for d in t.dimers:
            assert sorted(abs(v) for v in d.direction) == [0, 0, 1]
            assert tuple(d.white[k] + d.direction[k] for k in range(3)) == d.black


def test_period2_direction_representative_is_positive():
    # the stored representative on a period-2 axis is the +axis step,
    # whichever coordinate the white cell sits at
    t = base_tiling(build_torus(2, 2, 4), 0)
    assert {d.direction for d in t.dimers} == {(1, 0, 0)}
    assert {d.white[0] for d in t.dimers} == {0, 1}


def test_period2_geometric_steps_do_not_wrap():
    # the geometric lift used by windings is the raw coordinate delta
    r = build_torus(2, 2, 4)
    t = base_tiling(r, 0)
    for d, (wi, bi) in zip(t.dimers, t.pairs):
        expected = d.black[0] - d.white[0]
        assert t.steps[wi][0] == expected
        assert t.steps[bi][0] == -expected


def test_diff_cycles_self_all_trivial():
    t = base_tiling(build_box(3, 3, 2), 2)
    cs = diff_cycles(t, t)
    assert all(len(c.cells) == 2 for c in cs.cycles)
    assert cs.nontrivial == ()


def test_diff_cycles_flip_pair_one_square():
    t = base_tiling(build_box(2, 2, 1), 0)
    other = apply_flip(t, find_flips(t)[0])
    cs = diff_cycles(other, t)
    nontrivial = [c for c in cs.cycles if len(c.cells) > 2]
    assert len(nontrivial) == 1
    assert len(nontrivial[0].cells) == 4


def test_diff_cycles_no_flip_pair():
    cs = diff_cycles(pinwheel_N1(), pinwheel_N2())
    assert len(cs.cycles) == 3
    assert sum(1 for c in cs.cycles if len(c.cells) == 2) == 1


def test_diff_cycles_alternate_and_even():
    cs = diff_cycles(pinwheel_N1(), pinwheel_N2())
    for c in cs.cycles:
        assert len(c.cells) % 2 == 0
        for m in range(len(c.cells)):
            assert c.sources[m] != c.sources[(m + 1) % len(c.cells)]


def test_diff_cycles_cover_disagreement():
    t1, t0 = pinwheel_N1(), pinwheel_N2()
    cs = diff_cycles(t1, t0)
    in_cycles = {c for cy in cs.cycles for c in cy.cells}
    assert in_cycles == set(t1.region.cells)


def test_refine_identity():
    t = base_tiling(build_box(3, 3, 2), 2)
    assert refine_tiling(t, 0) is t


def test_refine_base_tiling():
    t = refine_tiling(base_tiling(build_box(3, 3, 2), 2), 1)
    assert t.region.dims == (15, 15, 10)
    assert len(t.dimers) == 1125
    assert all(d.axis == 2 for d in t.dimers)
    assert t == base_tiling(t.region, 2)


def test_refine_parallel_and_covering():
    t = pinwheel_N1()
    fine = refine_tiling(t, 1)
    assert fine.region == refine_region(t.region, 1)
    assert len(fine.dimers) == 125 * len(t.dimers)
    covered = sorted(c for d in fine.dimers for c in (d.white, d.black))
    assert covered == sorted(fine.region.cells)
    axes = {d.axis for d in t.dimers}
    assert {d.axis for d in fine.dimers} == axes


def test_serialize_round_trip_base():
    r = build_box(3, 3, 2)
    t = base_tiling(r, 2)
    assert deserialize_tiling(serialize_tiling(t), r).hash64 == t.hash64


def test_deserialize_rejects_bad_matchings():
    import json
    r = build_box(2, 2, 1)
    doc = json.loads(serialize_tiling(base_tiling(r, 0)))
    doc["dimers"] = [[[1, 0, 0], [0, 0, 0]], [[0, 1, 0], [0, 0, 0]]]
    with pytest.raises(ValueError, match="cell covered twice"):
        deserialize_tiling(json.dumps(doc), r)
    doc["dimers"] = [[[1, 0, 0], [0, 0, 0]]]
    with pytest.raises(ValueError, match="cell uncovered"):
        deserialize_tiling(json.dumps(doc), r)


def test_deserialize_region_mismatch():
    t = base_tiling(build_box(2, 2, 1), 0)
    with pytest.raises(ValueError, match="disagrees"):
        deserialize_tiling(serialize_tiling(t), build_box(2, 2, 2))


def _random_state(region, seed: int) -> Tiling:
    rng = random.Random(seed)
    axis = next(k for k in range(3)
                if (region.dims or region.periods)[k] % 2 == 0)
    t = base_tiling(region, axis)
    for _ in range(12):
        flips = find_flips(t)
        if not flips:
            break
        t = apply_flip(t, rng.choice(flips))
    return t


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 9))
def test_serialize_round_trip_random(seed):
    region = build_box(3, 3, 2) if seed % 2 else build_torus(2, 2, 4)
    t = _random_state(region, seed)
    back = deserialize_tiling(serialize_tiling(t), region)
    assert back == t and back.hash64 == t.hash64


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 9))
def test_flip_is_an_involution(seed):
    t = _random_state(build_box(3, 3, 2), seed)
    flips = find_flips(t)
    if not flips:
        return
    m = flips[seed % len(flips)]
    assert apply_flip(apply_flip(t, m), m.reversed()) == t
