import pytest

from snc_lab.fixtures import FIXTURE_IDS, load_fixture, verify_fixture
from snc_lab.utils.data import PairDocument
from snc_lab.utils.errors import PreconditionError


def test_fixture_one_table(fixture_one):
    """Test that the first 6-vertex table loads with its rows and weights."""
    assert fixture_one.pair.n == 6
    assert fixture_one.pair.a.out_set(2) == frozenset({0, 2, 3, 4})
    assert fixture_one.weights[2] == 11
    assert fixture_one.weights.total == 36, "Table 1 weights should sum to 36."
    assert fixture_one.inclusion == "A <= B"


def test_fixture_two_table(fixture_two):
    """Test that the second table loads and its pair satisfies its inclusion."""
    assert fixture_two.pair.b.out_set(5) == frozenset({1, 4, 5})
    assert fixture_two.weights[5] == 8
    assert fixture_two.weights.total == 64, "Table 2 weights should sum to 64."
    assert fixture_two.inclusion_holds()


def test_unknown_fixture():
    """Test that only fixtures 1 and 2 exist."""
    with pytest.raises(PreconditionError):
        load_fixture(3)


def test_checksums_match_canonical_text():
    """Test the canonical text and sha256 checksums of both tables."""
    fixture = load_fixture(1)
    assert fixture.canonical_text().splitlines()[0] == "1|7|1,2,5,6|1,2,5,6|1,2,3,4,5,6"
    assert fixture.checksum == "907c35d5c1285d4a26f6ac57bdcb938b2384cf868f498357e8cab8e77dcc7cc5"
    assert load_fixture(2).checksum == "c93134dc63dfae73142200658b97b5059257ee37ec4133a19b6ea7df0363461e"


def test_printed_ab_matches_product(fixture_one, fixture_two):
    """Test that the printed AB column equals the computed composition."""
    assert fixture_one.printed_ab == fixture_one.pair.product()
    assert fixture_two.printed_ab == fixture_two.pair.product()


@pytest.mark.parametrize("fixture_id, vertices", [(1, 36), (2, 64)])
def test_verify_fixture(fixture_id, vertices):
    """Test that every named check passes and the blow-up size is the weight total."""
    result = verify_fixture(fixture_id)
    assert result.ok, [c.detail for c in result.failures]
    assert result.blow_up_vertices == vertices, f"Blow-up of fixture {fixture_id} should have {vertices} vertices."
    assert not result.tournament_pair
    assert f"{vertices} blow-up vertices" in result.summary()
    names = [c.name for c in result.checks]
    assert "product-fails-everywhere" in names and "union-holds" in names


def test_verification_serialises():
    """Test the JSON shape of a fixture verification."""
    data = verify_fixture(1).to_dict()
    assert data["ok"] is True
    assert data["blow_up_vertices"] == 36
    assert all(check["ok"] for check in data["checks"])


@pytest.mark.parametrize("fixture_id", FIXTURE_IDS)
def test_fixture_document_round_trip(fixture_id):
    """Test that a fixture survives conversion to a pair document and back."""
    fixture = load_fixture(fixture_id)
    document = PairDocument.from_json(fixture.to_document().to_json())
    assert document.extra == {"fixture": fixture_id}
    assert document.to_pair() == fixture.pair
    assert document.to_weights() == fixture.weights
