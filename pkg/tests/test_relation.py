import pytest

from snc_lab.relation import Relation, iter_bits, mask_of
from snc_lab.utils.errors import DimensionError, VertexOutOfRangeError


def triple_loop_product(r: Relation, s: Relation) -> Relation:
    """Boolean matrix product by brute force."""
    n = r.n
    m, t = r.to_matrix(), s.to_matrix()
    return Relation.from_matrix(
        [[any(m[u][w] and t[w][v] for w in range(n)) for v in range(n)] for u in range(n)]
    )


def test_identity_has_exactly_the_loops():
    """Test that the identity relation holds only loops."""
    identity = Relation.identity(3)
    assert set(identity.edges()) == {(0, 0), (1, 1), (2, 2)}
    assert identity.edge_count() == 3


def test_identity_on_zero_vertices_is_empty():
    """Test the identity relation on no vertices."""
    identity = Relation.identity(0)
    assert identity.n == 0
    assert identity.rows == ()
    assert list(identity.edges()) == []


def test_identity_is_neutral_for_compose(rng, random_relation):
    """Test that composing with the identity changes nothing."""
    for _ in range(50):
        n = rng.randint(1, 7)
        r = random_relation(rng, n)
        assert Relation.identity(n) @ r == r
        assert r @ Relation.identity(n) == r


def test_transpose_reverses_edges(fixture_one):
    """Test that transposing reverses every edge."""
    a = fixture_one.pair.a
    # table row of vertex 1 lists 2 in A(1)
    assert 1 in a.out_set(0)
    assert 0 in a.transpose().out_set(1)
    assert Relation.identity(4).transpose() == Relation.identity(4)


def test_transpose_is_an_involution(rng, random_relation):
    """Test that transposing twice gives the original relation."""
    for _ in range(100):
        r = random_relation(rng, rng.randint(0, 8))
        assert r.transpose().transpose() == r


def test_compose_matches_printed_column_for_vertex_two(fixture_one):
    """Test a composition row against the printed table."""
    pair = fixture_one.pair
    assert pair.product().out_set(1) == frozenset({0, 1, 2, 3, 4})


def test_compose_matches_triple_loop(rng, random_relation):
    """Test bitset composition against a brute-force boolean product."""
    for _ in range(100):
        r = random_relation(rng, 5)
        s = random_relation(rng, 5)
        assert r @ s == triple_loop_product(r, s), f"Bitset product disagrees with brute force for {r} and {s}."


def test_compose_applies_first_factor_first():
    """Test that A @ B follows an A edge and then a B edge."""
    r = Relation.from_edges(3, [(0, 1)])
    s = Relation.from_edges(3, [(1, 2)])
    assert set((r @ s).edges()) == {(0, 2)}, "A @ B should follow the A edge first."
    assert list((s @ r).edges()) == []


def test_compose_rejects_mismatched_sizes():
    """Test that relations of different sizes cannot be composed."""
    with pytest.raises(DimensionError):
        Relation.identity(2) @ Relation.identity(3)
    with pytest.raises(DimensionError):
        Relation.identity(2) | Relation.identity(3)


def test_boolean_operations(rng, random_relation, fixture_one):
    """Test union, intersection, difference and inclusion on bitsets."""
    for _ in range(30):
        r = random_relation(rng, 5)
        s = random_relation(rng, 5)
        assert r | r == r
        assert r & r == r
        assert (r - s) & s == Relation.empty(5)
        assert (r & s) <= r
        assert r <= (r | s)
        assert r.equals(r)

    pair = fixture_one.pair
    assert pair.a <= pair.b
    assert pair.a & pair.b.transpose() == Relation.identity(6)


def test_out_set(fixture_one):
    """Test out-sets against a row of the first table."""
    # row "5 ... 2,5,6" in 1-based labels
    assert fixture_one.pair.a.out_set(4) == frozenset({1, 4, 5})
    assert Relation.identity(4).out_set(2) == frozenset({2})


def test_out_set_of_product_unfolds_definition(rng, random_relation):
    """Test that a product out-set is the union of B out-sets over A out-neighbours."""
    for _ in range(50):
        a = random_relation(rng, 6)
        b = random_relation(rng, 6)
        ab = a @ b
        for v in range(6):
            expected = frozenset().union(*(b.out_set(w) for w in a.out_set(v)))
            assert ab.out_set(v) == expected, f"AB({v}) should be the union of B over A({v})."


def test_out_set_rejects_bad_vertex():
    """Test that vertices outside the relation are refused."""
    with pytest.raises(VertexOutOfRangeError):
        Relation.identity(3).out_set(3)
    with pytest.raises(VertexOutOfRangeError):
        Relation.identity(3).neighbourhoods(-1)
    with pytest.raises(VertexOutOfRangeError):
        Relation.from_edges(2, [(0, 2)])


def test_neighbourhoods_of_three_cycle(three_cycle):
    """Test first and second neighbourhoods of the directed triangle."""
    nb = three_cycle.neighbourhoods(0)
    assert nb.out == frozenset({1})
    assert nb.in_ == frozenset({2})
    assert nb.second_out == frozenset({2})
    assert nb.second_in == frozenset({1})
    assert (nb.d_plus, nb.d_minus, nb.d_plus_plus, nb.d_minus_minus) == (1, 1, 1, 1)


def test_neighbourhoods_of_transitive_triangle(transitive_triangle):
    """Test first and second neighbourhoods of the transitive triangle."""
    sink = transitive_triangle.neighbourhoods(2)
    assert sink.out == frozenset()
    assert sink.second_out == frozenset()
    source = transitive_triangle.neighbourhoods(0)
    assert source.out == frozenset({1, 2})
    assert source.second_out == frozenset()
    assert sink.in_ == frozenset({0, 1})


def test_second_neighbourhood_keeps_v_when_loops_allow_it():
    """Test that a looped vertex stays in its own neighbourhood sets."""
    # with loops, v is reachable from itself in two steps but lies in N+(v) already
    looped = Relation.from_edges(2, [(0, 0), (0, 1), (1, 0)])
    assert looped.neighbourhoods(1).second_out == frozenset({1})


def test_strip_loops(fixture_one, rng, random_relation):
    """Test that stripping loops removes the diagonal only."""
    assert Relation.identity(5).strip_loops() == Relation.empty(5)
    assert fixture_one.pair.a.strip_loops().edge_count() == 12
    for _ in range(30):
        r = random_relation(rng, 6)
        once = r.strip_loops()
        assert once.strip_loops() == once
        assert once.loops_mask() == 0


def test_is_oriented(three_cycle, fixture_one):
    """Test orientation on a triangle and on a table with 2-cycles."""
    assert not Relation.identity(2).is_oriented()
    assert three_cycle.is_oriented()
    assert not Relation.from_edges(2, [(0, 1), (1, 0)]).is_oriented()
    assert fixture_one.pair.a.strip_loops().is_oriented()
    assert fixture_one.pair.b.strip_loops().is_oriented()


def test_transpose_of_product_reverses_factors(rng, random_relation):
    """Test that the transpose of AB is the product of the transposes in reverse order."""
    for _ in range(50):
        r = random_relation(rng, 6)
        s = random_relation(rng, 6)
        assert (r @ s).transpose() == s.transpose() @ r.transpose()


def test_compose_is_associative(rng, random_relation):
    """Test that composition is associative."""
    for _ in range(50):
        r, s, t = (random_relation(rng, 5) for _ in range(3))
        assert (r @ s) @ t == r @ (s @ t)
        assert (r @ s) @ t == triple_loop_product(triple_loop_product(r, s), t)


def test_oriented_second_neighbourhood_is_disjoint(rng, random_oriented):
    """Test that second neighbourhoods miss v and its out-neighbours."""
    for _ in range(50):
        graph = random_oriented(rng, rng.randint(1, 8))
        for v in range(graph.n):
            nb = graph.neighbourhoods(v)
            assert v not in nb.second_out, f"Vertex {v} lies in its own second neighbourhood."
            assert not nb.out & nb.second_out


def test_square_of_looped_graph_counts_both_neighbourhoods(rng, random_oriented, looped):
    """Test that the square of a looped graph is v plus both neighbourhoods."""
    for _ in range(50):
        graph = random_oriented(rng, rng.randint(1, 8))
        a = looped(graph)
        aa = a @ a
        for v in range(graph.n):
            nb = graph.neighbourhoods(v)
            assert len(aa.out_set(v)) == 1 + nb.d_plus + nb.d_plus_plus
            assert len(a.out_set(v)) == 1 + nb.d_plus
            squared_holds = len(aa.out_set(v)) >= 2 * len(a.out_set(v)) - 1
            assert squared_holds == (nb.d_plus_plus >= nb.d_plus)


def test_induced_relabels_in_order():
    """Test that induced subgraphs renumber the kept vertices in order."""
    r = Relation.from_edges(4, [(0, 3), (3, 1), (2, 2)])
    sub = r.induced([3, 1])
    # kept vertices 1, 3 become 0, 1
    assert set(sub.edges()) == {(1, 0)}


def test_row_validation():
    """Test that rows with bits beyond n are refused."""
    with pytest.raises(DimensionError):
        Relation(2, (0,))
    with pytest.raises(DimensionError):
        Relation(2, (0b100, 0))


def test_bit_helpers():
    """Test the bitset helper functions."""
    assert list(iter_bits(0b10110)) == [1, 2, 4]
    assert mask_of([0, 3]) == 0b1001
