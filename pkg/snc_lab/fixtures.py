"""
The two weighted 6-vertex counterexamples to the product-only inequality.

Each table row holds ``(weight, A(v), B(v), AB(v))`` with 1-based labels,
exactly as printed. The printed ``AB`` column is kept as data and compared
with the recomputed product, never trusted.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from loguru import logger

from snc_lab.blowup import blow_up_pair
from snc_lab.pair_properties import (
    DigraphPair,
    Variant,
    WeightVector,
    check_identity_hypothesis,
    check_tournament_pair,
    product_inequality_report,
)
from snc_lab.relation import Relation
from snc_lab.utils.data import PairDocument
from snc_lab.utils.errors import PreconditionError, SNCLabError

FIXTURE_IDS = (1, 2)

_TABLES = {
    1: (
        (7, (1, 2, 5, 6), (1, 2, 5, 6), (1, 2, 3, 4, 5, 6)),
        (3, (2, 3), (2, 3, 4), (1, 2, 3, 4, 5)),
        (11, (1, 3, 4, 5), (1, 3, 4, 5), (1, 2, 3, 4, 5, 6)),
        (3, (1, 4), (1, 4, 6), (1, 2, 4, 5, 6)),
        (3, (2, 5, 6), (2, 4, 5, 6), (2, 3, 4, 5, 6)),
        (9, (2, 3, 6), (2, 3, 6), (1, 2, 3, 4, 5, 6)),
    ),
    2: (
        (17, (1, 2, 5, 6), (1, 2, 5, 6), (1, 2, 3, 4, 5, 6)),
        (11, (2, 3, 4), (2, 3, 4), (1, 2, 3, 4, 5)),
        (15, (1, 3, 6), (1, 3), (1, 2, 3, 5, 6)),
        (8, (1, 3, 4, 5), (3, 4, 5), (1, 2, 3, 4, 5, 6)),
        (5, (2, 3, 5), (2, 3, 5), (1, 2, 3, 4, 5)),
        (8, (2, 4, 5, 6), (2, 5, 6), (2, 3, 4, 5, 6)),
    ),
}

# sha256 of the canonical table text, see Fixture.canonical_text
_CHECKSUMS = {
    1: "907c35d5c1285d4a26f6ac57bdcb938b2384cf868f498357e8cab8e77dcc7cc5",
    2: "c93134dc63dfae73142200658b97b5059257ee37ec4133a19b6ea7df0363461e",
}

# fixture 1 has A <= B, fixture 2 has B <= A
_INCLUSION = {1: "A <= B", 2: "B <= A"}


def _relation(rows: list[tuple[int, ...]]) -> Relation:
    return Relation.from_adjacency([[v - 1 for v in row] for row in rows])


@dataclass(frozen=True)
class Fixture:
    id: int
    table: tuple[tuple, ...]

    @property
    def pair(self) -> DigraphPair:
        return DigraphPair(
            _relation([row[1] for row in self.table]), _relation([row[2] for row in self.table])
        )

    @property
    def weights(self) -> WeightVector:
        return WeightVector(tuple(row[0] for row in self.table))

    @property
    def printed_ab(self) -> Relation:
        return _relation([row[3] for row in self.table])

    @property
    def inclusion(self) -> str:
        return _INCLUSION[self.id]

    def inclusion_holds(self) -> bool:
        pair = self.pair
        if self.id == 1:
            return pair.a <= pair.b
        return pair.b <= pair.a

    def canonical_text(self) -> str:
        """One ``v|weight|A|B|AB`` line per vertex, no trailing newline."""
        return "\n".join(
            f"{v}|{w}|{','.join(map(str, a))}|{','.join(map(str, b))}|{','.join(map(str, ab))}"
            for v, (w, a, b, ab) in enumerate(self.table, start=1)
        )

    @property
    def checksum(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()

    def to_document(self) -> PairDocument:
        document = PairDocument.from_pair(self.pair, self.weights)
        document.extra["fixture"] = self.id
        return document


def load_fixture(fixture_id: int) -> Fixture:
    """Return fixture 1 or 2.

    Raises:
        PreconditionError: unknown fixture id.
        SNCLabError: the embedded table no longer matches its checksum.
    """
    if fixture_id not in _TABLES:
        raise PreconditionError(f"Unknown fixture id {fixture_id!r}; expected one of {FIXTURE_IDS}.")
    fixture = Fixture(id=fixture_id, table=_TABLES[fixture_id])
    if fixture.checksum != _CHECKSUMS[fixture_id]:
        logger.error(f"Fixture {fixture_id} table does not match its checksum.")
        raise SNCLabError(f"fixture {fixture_id} data is corrupted (checksum mismatch)")
    return fixture


@dataclass
class FixtureCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class FixtureVerification:
    fixture_id: int
    checks: list[FixtureCheck] = field(default_factory=list)
    blow_up_vertices: int = 0
    tournament_pair: bool = False

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)

    @property
    def failures(self) -> list[FixtureCheck]:
        return [check for check in self.checks if not check.ok]

    def summary(self) -> str:
        lines = [f"fixture {self.fixture_id}: {'OK' if self.ok else 'FAILED'}"]
        for check in self.checks:
            lines.append(f"  [{'ok' if check.ok else 'FAIL'}] {check.name}: {check.detail}")
        lines.append(f"  {self.blow_up_vertices} blow-up vertices")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "fixture": self.fixture_id,
            "ok": self.ok,
            "blow_up_vertices": self.blow_up_vertices,
            "tournament_pair": self.tournament_pair,
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
        }


def verify_fixture(fixture_id: int) -> FixtureVerification:
    """Re-derive every claim made about a fixture from its raw table."""
    fixture = load_fixture(fixture_id)
    pair = fixture.pair
    weights = fixture.weights
    result = FixtureVerification(fixture_id=fixture_id)
    result.tournament_pair = check_tournament_pair(pair)

    result.checks.append(
        FixtureCheck("identity-hypothesis", check_identity_hypothesis(pair), "A & B^T == I")
    )
    result.checks.append(FixtureCheck("inclusion", fixture.inclusion_holds(), fixture.inclusion))
    result.checks.append(
        FixtureCheck(
            "no-2-cycles",
            pair.a.strip_loops().is_oriented() and pair.b.strip_loops().is_oriented(),
            "A and B without loops are oriented",
        )
    )

    recomputed = pair.product()
    printed = fixture.printed_ab
    mismatches = [
        f"v{v + 1}: recomputed {sorted(u + 1 for u in recomputed.out_set(v))} "
        f"vs printed {sorted(u + 1 for u in printed.out_set(v))}"
        for v in range(pair.n)
        if recomputed.rows[v] != printed.rows[v]
    ]
    result.checks.append(
        FixtureCheck(
            "ab-column",
            not mismatches,
            "; ".join(mismatches) if mismatches else "recomputed AB matches the table",
        )
    )

    product = product_inequality_report(pair, weights, Variant.PRODUCT)
    margins = ", ".join(f"v{r.vertex + 1}: {r.margin}" for r in product.records)
    result.checks.append(
        FixtureCheck("product-fails-everywhere", not product.holds, f"margins {margins}")
    )

    union = product_inequality_report(pair, weights, Variant.UNION)
    result.checks.append(
        FixtureCheck(
            "union-holds",
            union.holds,
            f"satisfying vertices {[v + 1 for v in union.satisfying_vertices]}",
        )
    )

    blown, mapping = blow_up_pair(pair, weights.as_integers())
    result.blow_up_vertices = mapping.total
    blown_report = product_inequality_report(blown, None, Variant.PRODUCT)
    margins_match = all(
        blown_report.records[copy].margin == product.records[mapping.origin(copy)].margin
        for copy in range(mapping.total)
    )
    blow_up_ok = (
        mapping.total == weights.total
        and check_identity_hypothesis(blown)
        and not blown_report.holds
        and margins_match
    )
    result.checks.append(
        FixtureCheck(
            "blow-up",
            blow_up_ok,
            f"{mapping.total} vertices, unweighted product-only check satisfied at "
            f"{len(blown_report.satisfying_vertices)} of them",
        )
    )

    if result.ok:
        logger.info(f"Fixture {fixture_id} verified ({result.blow_up_vertices} blow-up vertices).")
    else:
        logger.error(
            f"Fixture {fixture_id} verification FAILED: {[c.name for c in result.failures]}"
        )
    return result
