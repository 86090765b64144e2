from fractions import Fraction

import pytest

from snc_lab.pair_properties import (
    DigraphPair,
    Variant,
    WeightVector,
    check_identity_hypothesis,
    check_tournament_pair,
    product_inequality_report,
    reduce_pair,
    wsnp_report,
)
from snc_lab.relation import Relation
from snc_lab.utils.errors import DimensionError, PreconditionError


def test_identity_hypothesis():
    """Test that the identity hypothesis needs every loop in A."""
    assert check_identity_hypothesis(DigraphPair(Relation.identity(4), Relation.identity(4)))
    loops = Relation.identity(2)
    forbidden = DigraphPair(
        loops | Relation.from_edges(2, [(0, 1)]), loops | Relation.from_edges(2, [(1, 0)])
    )
    assert not check_identity_hypothesis(forbidden)
    # a missing loop is also a violation
    assert not check_identity_hypothesis(DigraphPair(Relation.empty(1), Relation.identity(1)))


def test_identity_hypothesis_on_fixtures(fixture_one, fixture_two):
    """Test that both tables meet the identity hypothesis."""
    assert check_identity_hypothesis(fixture_one.pair)
    assert check_identity_hypothesis(fixture_two.pair)


def test_tournament_pair(rng, random_tournament, looped, fixture_one):
    """Test the tournament-pair check on looped tournaments and on the first table."""
    for _ in range(20):
        a = looped(random_tournament(rng, rng.randint(1, 6)))
        assert check_tournament_pair(DigraphPair(a, a))
    # (4, 6) is neither in A nor in B^T
    assert not check_tournament_pair(fixture_one.pair)
    pair = fixture_one.pair
    assert not pair.a.has_edge(3, 5)
    assert not pair.b.transpose().has_edge(3, 5)
    assert not check_tournament_pair(DigraphPair(Relation.identity(2), Relation.identity(2)))


def test_pair_rejects_mismatched_sizes():
    """Test that A and B must have the same number of vertices."""
    with pytest.raises(DimensionError):
        DigraphPair(Relation.identity(2), Relation.identity(3))


def test_reduce_pair_on_fixtures(fixture_one, fixture_two):
    """Test that reducing a table gives the intersection and the union."""
    one = fixture_one.pair
    assert reduce_pair(one) == one
    two = fixture_two.pair
    assert reduce_pair(two) == DigraphPair(two.b, two.a)


def test_reduce_pair_properties(rng, random_identity_pair, random_weights):
    """Test that reduction is idempotent and never gains vertices satisfying the product inequality."""
    for _ in range(100):
        n = rng.randint(1, 6)
        pair = random_identity_pair(rng, n)
        reduced = reduce_pair(pair)
        assert reduce_pair(reduced) == reduced
        assert reduced.a <= reduced.b
        assert check_identity_hypothesis(reduced)
        assert reduced.union_product() <= pair.union_product()
        assert reduced.a.strip_loops().is_oriented()

        weights = random_weights(rng, n)
        for v in range(n):
            before = weights.of_mask(pair.a.rows[v]) + weights.of_mask(pair.b.rows[v])
            after = weights.of_mask(reduced.a.rows[v]) + weights.of_mask(reduced.b.rows[v])
            assert before == after

        original = set(product_inequality_report(pair, weights).satisfying_vertices)
        assert set(product_inequality_report(reduced, weights).satisfying_vertices) <= original


def test_reduce_pair_keeps_tournament_hypothesis(rng, random_tournament_pair):
    """Test that reduction keeps a tournament pair a tournament pair."""
    for _ in range(50):
        reduced = reduce_pair(random_tournament_pair(rng, rng.randint(1, 6)))
        assert check_tournament_pair(reduced)


def test_reduce_pair_requires_identity_hypothesis():
    """Test that reduction is refused without loops in A."""
    with pytest.raises(PreconditionError):
        reduce_pair(DigraphPair(Relation.empty(2), Relation.empty(2)))


def test_products_contain_both_factors(rng, random_identity_pair):
    """Test that AB contains A and B when A holds every loop."""
    for _ in range(50):
        pair = random_identity_pair(rng, rng.randint(1, 6))
        ab, ba = pair.product(), pair.reverse_product()
        assert pair.a <= ab and pair.b <= ab
        assert pair.a <= ba and pair.b <= ba


def test_product_variant_fails_everywhere_on_fixture_one(fixture_one):
    """Test that the first table violates the product inequality at every vertex."""
    report = product_inequality_report(fixture_one.pair, fixture_one.weights, Variant.PRODUCT)
    assert not report.holds
    assert report.satisfying_vertices == (), "No vertex of table 1 should satisfy the product inequality."
    assert report.margins() == (Fraction(-1),) * 6, "Every product margin should be -1."
    first = report.records[0]
    assert (first.lhs, first.rhs) == (36, 37)


def test_product_variant_fails_everywhere_on_fixture_two(fixture_two):
    """Test that the second table violates the product inequality at every vertex."""
    report = product_inequality_report(fixture_two.pair, fixture_two.weights, Variant.PRODUCT)
    assert report.margins() == (Fraction(-1),) * 6, "Every product margin should be -1."


def test_union_variant_holds_at_vertex_four(fixture_one):
    """Test that the union inequality holds at vertex 4 of the first table."""
    report = product_inequality_report(fixture_one.pair, fixture_one.weights, Variant.UNION)
    assert report.holds
    assert 3 in report.satisfying_vertices, "Vertex 4 should satisfy the union inequality."
    record = report.records[3]
    assert (record.lhs, record.rhs) == (36, 26)
    assert fixture_one.pair.reverse_product().out_set(3) == frozenset(range(6))


def test_union_variant_holds_on_fixture_two(fixture_two):
    """Test that the union inequality holds somewhere on the second table."""
    report = product_inequality_report(fixture_two.pair, fixture_two.weights, Variant.UNION)
    assert 1 in report.satisfying_vertices


def test_single_vertex_report():
    """Test both inequalities on a single looped vertex."""
    pair = DigraphPair(Relation.identity(1), Relation.identity(1))
    report = product_inequality_report(pair, WeightVector((1,)), Variant.PRODUCT)
    record = report.records[0]
    assert (record.lhs, record.rhs, record.satisfied) == (1, 1, True)


def test_unweighted_report_is_all_ones(fixture_one):
    """Test that a report without weights uses weight 1 everywhere."""
    pair = fixture_one.pair
    unweighted = product_inequality_report(pair, None, Variant.PRODUCT)
    ones = product_inequality_report(pair, WeightVector.ones(6), Variant.PRODUCT)
    assert not unweighted.weighted
    assert unweighted.margins() == ones.margins()


def test_report_rejects_wrong_length(fixture_one):
    """Test that a weight vector of the wrong length is refused."""
    with pytest.raises(DimensionError):
        product_inequality_report(fixture_one.pair, WeightVector.ones(5))


def test_uniform_weights_need_a_vertex():
    """Test that uniform weights need at least one vertex."""
    assert WeightVector.uniform(4).total == 1
    with pytest.raises(PreconditionError):
        WeightVector.uniform(0)


def test_weights_reject_floats_and_negatives():
    """Test that weights must be non-negative exact numbers."""
    with pytest.raises(PreconditionError):
        WeightVector((0.5,))
    with pytest.raises(PreconditionError):
        WeightVector((Fraction(-1, 2),))


def test_scaling_weights_keeps_verdicts(rng, random_identity_pair, random_weights):
    """Test that scaling all weights leaves every verdict unchanged."""
    for _ in range(50):
        n = rng.randint(1, 6)
        pair = random_identity_pair(rng, n)
        weights = random_weights(rng, n)
        factor = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        for variant in (Variant.PRODUCT, Variant.UNION):
            base = product_inequality_report(pair, weights, variant)
            scaled = product_inequality_report(pair, weights.scaled(factor), variant)
            assert base.satisfying_vertices == scaled.satisfying_vertices
            assert scaled.margins() == tuple(m * factor for m in base.margins())


def test_union_variant_specialises_to_wsnp(rng, random_oriented, looped, random_weights):
    """Test that the union inequality on (A, A) with A looped is the weighted neighbourhood property."""
    for _ in range(100):
        n = rng.randint(1, 7)
        graph = random_oriented(rng, n)
        a = looped(graph)
        weights = random_weights(rng, n)
        union = product_inequality_report(DigraphPair(a, a), weights, Variant.UNION)
        wsnp = wsnp_report(graph, weights)
        assert union.satisfying_vertices == wsnp.satisfying_vertices
        for v in range(n):
            nb = graph.neighbourhoods(v)
            assert union.records[v].lhs == weights[v] + weights.of(nb.out) + weights.of(nb.second_out)


def test_wsnp_report_small_cases(three_cycle, transitive_triangle):
    """Test the weighted neighbourhood property on two triangles."""
    cycle = wsnp_report(three_cycle, WeightVector.uniform(3))
    assert cycle.satisfying_vertices == (0, 1, 2)
    transitive = wsnp_report(transitive_triangle)
    assert 2 in transitive.satisfying_vertices
    assert transitive.variant == Variant.WSNP


def test_wsnp_requires_oriented_graph():
    """Test that graphs with 2-cycles are refused."""
    with pytest.raises(PreconditionError):
        wsnp_report(Relation.identity(2))


def test_every_small_tournament_has_an_snp_vertex():
    """Test by enumeration that every tournament on up to 5 vertices has a vertex with the property."""
    # plain exhaustive enumeration of orientations, n <= 5
    for n in range(1, 6):
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        for bits in range(1 << len(pairs)):
            edges = [(u, v) if bits >> i & 1 else (v, u) for i, (u, v) in enumerate(pairs)]
            assert wsnp_report(Relation.from_edges(n, edges)).holds, f"Tournament {edges} has no SNP vertex."
