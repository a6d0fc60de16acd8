"""Cross-cutting invariants fuzzed over randomly generated graded posets."""

import networkx as nx

from hypothesis import given, settings, strategies as st

from azsperner import (
    build_poset,
    check_normal,
    dual_dilworth_decompose,
    is_k_sperner,
    lym_sum,
    max_antichain,
)
from azsperner.az import _compute_w_mask
from azsperner.properties import build_chain_covering, verify_chain_covering
from azsperner.errors import NotNormalError


@st.composite
def graded_posets(draw):
    """Small graded posets: random level sizes, covers patched so that no
    minimal element sits above rank 0 and no maximal element below the top."""
    n_levels = draw(st.integers(min_value=1, max_value=4))
    sizes = [draw(st.integers(min_value=1, max_value=4)) for _ in range(n_levels)]
    ids = []
    ranks = []
    for r, size in enumerate(sizes):
        for _ in range(size):
            ranks.append(r)
            ids.append(len(ids))
    levels = []
    offset = 0
    for size in sizes:
        levels.append(list(range(offset, offset + size)))
        offset += size
    covers = set()
    for r in range(n_levels - 1):
        for x in levels[r]:
            for y in levels[r + 1]:
                if draw(st.booleans()):
                    covers.add((x, y))
        for y in levels[r + 1]:
            if not any((x, y) in covers for x in levels[r]):
                covers.add((draw(st.sampled_from(levels[r])), y))
        for x in levels[r]:
            if not any((x, y) in covers for y in levels[r + 1]):
                covers.add((x, draw(st.sampled_from(levels[r + 1]))))
    return build_poset(list(zip(ids, ranks)), sorted(covers), name="random")


@st.composite
def poset_and_family(draw):
    poset = draw(graded_posets())
    members = draw(
        st.sets(st.integers(min_value=0, max_value=poset.n - 1), min_size=1)
    )
    return poset, frozenset(members)


@given(graded_posets())
@settings(max_examples=60, deadline=None)
def test_chain_counts_consistent_per_level(poset):
    counts = poset.count_maximal_chains()
    for i in range(poset.height + 1):
        assert counts.through_level_sum(poset, i) == counts.total
    chains = poset.enumerate_maximal_chains()
    assert len(chains) == counts.total
    assert all(len(c) == poset.height + 1 for c in chains)


@given(graded_posets())
@settings(max_examples=40, deadline=None)
def test_leq_matches_graph_reachability(poset):
    g = nx.DiGraph(poset.covers)
    g.add_nodes_from(range(poset.n))
    for a in range(poset.n):
        reach = nx.descendants(g, a) | {a}
        for b in range(poset.n):
            assert poset.leq(a, b) == (b in reach)


@given(poset_and_family())
@settings(max_examples=60, deadline=None)
def test_upset_idempotent_and_monotone(pf):
    poset, fam = pf
    up = poset.upset(fam)
    assert poset.upset(up) == up
    assert fam <= up
    smaller = frozenset(list(fam)[: max(1, len(fam) // 2)])
    assert poset.upset(smaller) <= up


@given(poset_and_family())
@settings(max_examples=80, deadline=None)
def test_w_equals_boundary_group_size(pf):
    poset, fam = pf
    fam_mask = 0
    for a in fam:
        fam_mask |= 1 << a
    grouped = poset.boundary_edges(fam)
    for x in range(poset.n):
        if poset.ranks[x] == 0:
            continue
        assert _compute_w_mask(poset, fam_mask, x) == len(grouped.get(x, ()))


@given(graded_posets())
@settings(max_examples=40, deadline=None)
def test_normal_modes_agree_and_covering_matches(poset):
    flow = check_normal(poset, mode="flow")
    enum = check_normal(poset, mode="enumerate")
    assert flow.holds == enum.holds
    try:
        covering = build_chain_covering(poset)
        built = True
    except NotNormalError:
        built = False
    assert built == flow.holds
    if built:
        assert verify_chain_covering(poset, covering).holds


@given(graded_posets())
@settings(max_examples=40, deadline=None)
def test_lym_at_most_one_on_normal_posets(poset):
    if not check_normal(poset).holds:
        return
    antichain = max_antichain(poset)
    assert lym_sum(poset, antichain) <= 1


@given(poset_and_family())
@settings(max_examples=60, deadline=None)
def test_dilworth_decomposition_roundtrip(pf):
    poset, fam = pf
    parts = dual_dilworth_decompose(poset, fam)
    assert frozenset().union(*parts) == fam
    assert all(poset.is_antichain(p) for p in parts)
    ok, _ = is_k_sperner(poset, fam, len(parts))
    assert ok
    if len(parts) > 1:
        ok_short, _ = is_k_sperner(poset, fam, len(parts) - 1)
        assert not ok_short


@given(graded_posets())
@settings(max_examples=60, deadline=None)
def test_antichain_enumeration_routes_agree(poset):
    from azsperner.sperner import (
        enumerate_maximum_antichains,
        enumerate_maximum_k_sperner,
    )

    size_m, fams_m = enumerate_maximum_antichains(poset)
    size_b, fams_b = enumerate_maximum_k_sperner(poset, 1)
    assert size_m == size_b
    assert set(fams_m) == set(fams_b)


@given(poset_and_family())
@settings(max_examples=40, deadline=None)
def test_gamma_composition_through_levels(pf):
    poset, fam = pf
    top_rank = max(poset.ranks[a] for a in fam)
    for i in range(top_rank, poset.height + 1):
        mid = poset.gamma_up_to_level(fam, i)
        for j in range(i, poset.height + 1):
            assert poset.gamma_up_to_level(mid, j) == poset.gamma_up_to_level(fam, j)
