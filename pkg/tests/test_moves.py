import pytest

from tritile import (
    TritMove, apply_flip, apply_trit, base_tiling, bfs_trit_labeling,
    build_box, enumerate_tilings, find_flips, find_trits, move_graph, twist,
)
from support import pinwheel_N1, pinwheel_N2, tiling_tA, tiling_tB


def test_no_flip_tilings_have_no_flips():
    assert find_flips(pinwheel_N1()) == []
    assert find_flips(pinwheel_N2()) == []


def test_flip_counts_on_base_tilings():
    assert len(find_flips(base_tiling(build_box(2, 2, 2), 0))) == 4
    assert len(find_flips(base_tiling(build_box(2, 2, 1), 0))) == 1


def test_flip_swaps_orientation_on_smallest_box():
    t = base_tiling(build_box(2, 2, 1), 0)
    u = apply_flip(t, find_flips(t)[0])
    assert {d.axis for d in t.dimers} == {0}
    assert {d.axis for d in u.dimers} == {1}
    assert apply_flip(u, find_flips(u)[0]) == t


def test_flip_moves_are_invertible():
    t = tiling_tB()
    for m in find_flips(t):
        u = apply_flip(t, m)
        back = m.reversed()
        assert back in find_flips(u)
        assert apply_flip(u, back) == t


def test_stale_flip_rejected():
    t = base_tiling(build_box(2, 2, 2), 0)
    m = find_flips(t)[0]
    u = apply_flip(t, m)
    with pytest.raises(ValueError, match="stale move"):
        apply_flip(u, m)


def test_no_trits_in_the_222_box():
    for t in enumerate_tilings(build_box(2, 2, 2)):
        assert find_trits(t) == []


def test_base_tilings_have_no_trits():
    assert find_trits(base_tiling(build_box(3, 3, 2), 2)) == []
    assert find_trits(base_tiling(build_box(4, 4, 4), 1)) == []


def test_trits_of_the_trio_fixture():
    # the central z-dimer completes a one-per-axis trio in all four cubes
    trits = find_trits(tiling_tA())
    assert sorted(m.anchor for m in trits) == \
        [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0)]
    assert all(m.sign == 1 for m in trits)


def test_positive_trit_raises_twist_by_one():
    tA = tiling_tA()
    for m in find_trits(tA):
        after = apply_trit(tA, m)
        assert twist(after, 2) - twist(tA, 2) == m.sign == 1


def test_trit_moves_fixture_to_its_image():
    tA = tiling_tA()
    m = next(m for m in find_trits(tA) if m.anchor == (0, 0, 0))
    assert apply_trit(tA, m) == tiling_tB()


def test_trit_reversal_negates_sign():
    tA = tiling_tA()
    m = find_trits(tA)[0]
    back = m.reversed()
    assert back.sign == -m.sign
    u = apply_trit(tA, m)
    assert back in find_trits(u)
    assert apply_trit(u, back) == tA


def test_stale_trit_rejected():
    tA = tiling_tA()
    m = find_trits(tA)[0]
    u = apply_trit(tA, m)
    with pytest.raises(ValueError, match="stale move"):
        apply_trit(u, m)


def test_flip_components_332():
    tilings = list(enumerate_tilings(build_box(3, 3, 2)))
    g = move_graph(tilings, "flip")
    assert g.component_sizes() == [227, 1, 1]
    singles = [comp[0] for comp in g.components() if len(comp) == 1]
    assert {g.tilings[h] for h in singles} == {pinwheel_N1(), pinwheel_N2()}


def test_fliptrit_component_332():
    tilings = list(enumerate_tilings(build_box(3, 3, 2)))
    assert move_graph(tilings, "flip+trit").component_sizes() == [229]


def test_flip_components_smallest_box():
    tilings = list(enumerate_tilings(build_box(2, 2, 1)))
    assert move_graph(tilings, "flip").component_sizes() == [2]


def test_move_graph_rejects_partial_enumeration():
    tilings = list(enumerate_tilings(build_box(2, 2, 2)))
    with pytest.raises(ValueError, match="missing from the enumerated set"):
        move_graph(tilings[:5], "flip")


def test_trit_labeling_matches_twist():
    tilings = list(enumerate_tilings(build_box(3, 3, 2)))
    g = move_graph(tilings, "flip+trit")
    base = base_tiling(build_box(3, 3, 2), 2)
    labels, consistent = bfs_trit_labeling(g, base.hash64)
    assert consistent
    assert labels[base.hash64] == 0
    for t in tilings:
        assert labels[t.hash64] == twist(t, 2) - twist(base, 2)


def test_trit_labels_of_the_no_flip_pair():
    tilings = list(enumerate_tilings(build_box(3, 3, 2)))
    g = move_graph(tilings, "flip+trit")
    base = base_tiling(build_box(3, 3, 2), 2)
    labels, _ = bfs_trit_labeling(g, base.hash64)
    v1 = labels[pinwheel_N1().hash64]
    v2 = labels[pinwheel_N2().hash64]
    assert v1 != 0 and v2 == -v1


def test_flip_only_labels_are_zero():
    tilings = list(enumerate_tilings(build_box(2, 2, 2)))
    g = move_graph(tilings, "flip")
    labels, consistent = bfs_trit_labeling(g, tilings[0].hash64)
    assert consistent
    assert set(labels.values()) == {0}


def test_trit_edge_count_332():
    tilings = list(enumerate_tilings(build_box(3, 3, 2)))
    g = move_graph(tilings, "flip+trit")
    kinds = {e.kind for e in g.edges}
    assert kinds == {"flip", "trit"}
    for e in g.edges:
        if e.kind == "trit":
            assert e.sign in (-1, 1)
        else:
            assert e.sign == 0


def test_trit_move_fields():
    m = find_trits(tiling_tA())[0]
    assert isinstance(m, TritMove)
    assert len(m.removed) == 3 and len(m.inserted) == 3
    assert {d.axis for d in m.removed} == {0, 1, 2}
    assert {d.axis for d in m.inserted} == {0, 1, 2}
    removed_cells = {c for d in m.removed for c in (d.white, d.black)}
    inserted_cells = {c for d in m.inserted for c in (d.white, d.black)}
    assert removed_cells == inserted_cells
