import pytest

from snc_lab.blowup import BlowupMap, blow_up_oriented, blow_up_pair
from snc_lab.pair_properties import (
    DigraphPair,
    Variant,
    WeightVector,
    check_identity_hypothesis,
    product_inequality_report,
    wsnp_report,
)
from snc_lab.relation import Relation
from snc_lab.utils.errors import DimensionError, PreconditionError


def test_blowup_map_ranges_partition_copies():
    """Test that the copy ranges of a blow-up map partition the new vertices."""
    mapping = BlowupMap((2, 1, 3))
    assert mapping.total == 6
    assert [list(mapping.copies(v)) for v in range(3)] == [[0, 1], [2], [3, 4, 5]]
    assert [mapping.origin(c) for c in range(6)] == [0, 0, 1, 2, 2, 2]
    assert mapping.class_mask(2) == 0b111000
    with pytest.raises(IndexError):
        mapping.origin(6)


def test_single_vertex_becomes_isolated_copies():
    """Test that an isolated vertex blows up to isolated copies."""
    blown, mapping = blow_up_oriented(Relation.empty(1), [5])
    assert blown.n == 5
    assert blown.edge_count() == 0
    assert mapping.total == 5


def test_single_edge_becomes_complete_bipartite():
    """Test that an edge becomes all edges between the two copy sets."""
    blown, mapping = blow_up_oriented(Relation.from_edges(2, [(0, 1)]), [2, 3])
    assert blown.edge_count() == 6
    assert all(mapping.origin(u) == 0 and mapping.origin(v) == 1 for u, v in blown.edges())
    assert blown.is_oriented()


def test_blow_up_rejects_bad_weights():
    """Test that bad weights, a wrong length and looped graphs are refused."""
    graph = Relation.from_edges(2, [(0, 1)])
    with pytest.raises(PreconditionError):
        blow_up_oriented(graph, [0, 1])
    with pytest.raises(PreconditionError):
        blow_up_oriented(graph, [WeightVector.uniform(2)[0], 1])
    with pytest.raises(DimensionError):
        blow_up_oriented(graph, [1])
    with pytest.raises(PreconditionError):
        blow_up_oriented(Relation.identity(2), [1, 1])


def test_wsnp_matches_snp_of_blow_up(rng, random_oriented):
    """Test that the weighted property of a graph matches the plain property of its blow-up."""
    for _ in range(200):
        n = rng.randint(1, 6)
        graph = random_oriented(rng, n)
        weights = [rng.randint(1, 4) for _ in range(n)]
        blown, mapping = blow_up_oriented(graph, weights)
        assert blown.n == sum(weights)
        assert blown.is_oriented()
        weighted = wsnp_report(graph, WeightVector(tuple(weights)))
        snp = wsnp_report(blown)
        for v in range(n):
            copies = [snp.records[c].satisfied for c in mapping.copies(v)]
            assert all(copies) == weighted.records[v].satisfied, f"Copies of vertex {v} disagree with the weighted verdict."
            assert len(set(copies)) == 1


def test_fixture_one_blows_up_to_36_vertices(fixture_one):
    """Test that the first table becomes an unweighted counterexample on 36 vertices."""
    blown, mapping = blow_up_pair(fixture_one.pair, fixture_one.weights.as_integers())
    assert blown.n == 36, "Table 1 should blow up to 36 vertices."
    assert check_identity_hypothesis(blown)
    report = product_inequality_report(blown, None, Variant.PRODUCT)
    assert not report.holds
    assert set(report.margins()) == {-1}, "Every copy should miss the product inequality by one."


def test_fixture_two_blows_up_to_64_vertices(fixture_two):
    """Test that the second table becomes an unweighted counterexample on 64 vertices."""
    blown, mapping = blow_up_pair(fixture_two.pair, fixture_two.weights.as_integers())
    assert mapping.total == 64, "Table 2 should blow up to 64 vertices."
    assert check_identity_hypothesis(blown)
    assert set(product_inequality_report(blown, None, Variant.PRODUCT).margins()) == {-1}


def test_unit_weights_leave_pair_unchanged(fixture_one):
    """Test that all-one weights give back the same pair."""
    blown, _ = blow_up_pair(fixture_one.pair, [1] * 6)
    assert blown == fixture_one.pair


def test_loops_become_one_loop_per_copy():
    """Test that a loop becomes one loop per copy rather than a complete block."""
    pair = DigraphPair(Relation.identity(1), Relation.identity(1))
    blown, _ = blow_up_pair(pair, [3])
    assert blown.a == Relation.identity(3)
    assert blown.b == Relation.identity(3)


def test_pair_blow_up_requires_identity_hypothesis():
    """Test that pair blow-ups need loops on every vertex."""
    with pytest.raises(PreconditionError):
        blow_up_pair(DigraphPair(Relation.empty(2), Relation.empty(2)), [1, 1])


def test_margin_correspondence(rng, random_identity_pair):
    """Test that copy margins equal the weighted margins of the original vertex."""
    for _ in range(100):
        n = rng.randint(1, 5)
        pair = random_identity_pair(rng, n)
        weights = tuple(rng.randint(1, 4) for _ in range(n))
        blown, mapping = blow_up_pair(pair, weights)
        assert mapping.total == sum(weights)
        assert check_identity_hypothesis(blown)
        for variant in (Variant.PRODUCT, Variant.UNION):
            weighted = product_inequality_report(pair, WeightVector(weights), variant)
            unweighted = product_inequality_report(blown, None, variant)
            for copy in range(mapping.total):
                assert unweighted.records[copy].margin == weighted.records[mapping.origin(copy)].margin, f"Copy {copy} margin differs from its origin."


def test_scaled_weights_scale_size_and_margins(rng, random_identity_pair):
    """Test that scaling weights by k scales vertex count and margins by k."""
    for _ in range(20):
        n = rng.randint(1, 4)
        pair = random_identity_pair(rng, n)
        weights = tuple(rng.randint(1, 3) for _ in range(n))
        k = rng.randint(2, 3)
        scaled = tuple(k * w for w in weights)
        blown, mapping = blow_up_pair(pair, scaled)
        assert mapping.total == k * sum(weights)
        base = product_inequality_report(pair, WeightVector(weights), Variant.UNION)
        report = product_inequality_report(blown, None, Variant.UNION)
        for copy in range(mapping.total):
            assert report.records[copy].margin == k * base.records[mapping.origin(copy)].margin
