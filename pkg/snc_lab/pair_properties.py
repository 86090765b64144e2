"""
Pairs of digraphs on a shared vertex set and the inequalities asked of them.

For a pair ``(A, B)`` and weights ``w`` the per-vertex inequality is::

    w(C(v)) >= w(A(v)) + w(B(v)) - w(v)

with ``C = AB`` (product-only variant, refuted by the fixtures) or
``C = AB | BA`` (union variant). For a single oriented graph the WSNP report
compares ``w(N++(v))`` against ``w(N+(v))``. All verdicts are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional

from loguru import logger

from snc_lab.relation import Relation, iter_bits
from snc_lab.utils.rationals import format_rational
from snc_lab.utils.errors import DimensionError, PreconditionError


class Variant(str, Enum):
    PRODUCT = "ab"
    UNION = "union"
    WSNP = "wsnp"


@dataclass(frozen=True)
class WeightVector:
    """Exact non-negative rational weights, one per vertex."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        converted = []
        for v, value in enumerate(self.values):
            if isinstance(value, float):
                raise PreconditionError(
                    f"Weight of vertex {v} is a float ({value}); use ints, Fractions or 'p/q' strings."
                )
            value = Fraction(value)
            if value < 0:
                raise PreconditionError(f"Weight of vertex {v} is negative ({value}).")
            converted.append(value)
        object.__setattr__(self, "values", tuple(converted))

    @classmethod
    def ones(cls, n: int) -> WeightVector:
        return cls((Fraction(1),) * n)

    @classmethod
    def uniform(cls, n: int) -> WeightVector:
        """The probability vector with all entries ``1/n``."""
        if n < 1:
            raise PreconditionError(f"A uniform weight vector needs at least one vertex, got n = {n}.")
        return cls((Fraction(1, n),) * n)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]

    def __iter__(self):
        return iter(self.values)

    def of(self, vertices: Iterable[int]) -> Fraction:
        """Weight of a set of vertices."""
        return sum((self.values[v] for v in vertices), Fraction(0))

    def of_mask(self, mask: int) -> Fraction:
        return sum((self.values[v] for v in iter_bits(mask)), Fraction(0))

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, value in enumerate(self.values) if value > 0)

    def scaled(self, factor: Fraction | int) -> WeightVector:
        return WeightVector(tuple(value * factor for value in self.values))

    def normalized(self) -> WeightVector:
        total = self.total
        if total == 0:
            raise PreconditionError("Cannot normalize an all-zero weight vector.")
        return self.scaled(1 / total)

    def is_integral(self) -> bool:
        return all(value.denominator == 1 for value in self.values)

    def as_integers(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise PreconditionError(f"Weights {self.to_strings()} are not all integers.")
        return tuple(value.numerator for value in self.values)

    def restricted(self, vertices: Iterable[int]) -> WeightVector:
        return WeightVector(tuple(self.values[v] for v in sorted(set(vertices))))

    def to_strings(self) -> list[str]:
        return [format_rational(value) for value in self.values]


@dataclass(frozen=True)
class DigraphPair:
    """Two relations ``A`` and ``B`` on the same vertex set."""

    a: Relation
    b: Relation

    def __post_init__(self):
        if self.a.n != self.b.n:
            raise DimensionError(
                f"Pair members have different vertex counts: A has {self.a.n}, B has {self.b.n}."
            )

    @property
    def n(self) -> int:
        return self.a.n

    def product(self) -> Relation:
        """``AB``."""
        return self.a @ self.b

    def reverse_product(self) -> Relation:
        """``BA``."""
        return self.b @ self.a

    def union_product(self) -> Relation:
        """``AB | BA``."""
        return self.product() | self.reverse_product()

    def combined(self, variant: Variant) -> Relation:
        if variant == Variant.PRODUCT:
            return self.product()
        if variant == Variant.UNION:
            return self.union_product()
        raise ValueError(f"Variant {variant!r} does not define a pair product.")

    def swapped(self) -> DigraphPair:
        return DigraphPair(self.b, self.a)

    def induced(self, vertices: Iterable[int]) -> DigraphPair:
        keep = sorted(set(vertices))
        return DigraphPair(self.a.induced(keep), self.b.induced(keep))

    def __str__(self) -> str:
        return f"<DigraphPair n={self.n} |A|={self.a.edge_count()} |B|={self.b.edge_count()}>"


@dataclass(frozen=True)
class VertexRecord:
    vertex: int
    lhs: Fraction
    rhs: Fraction

    @property
    def margin(self) -> Fraction:
        return self.lhs - self.rhs

    @property
    def satisfied(self) -> bool:
        return self.margin >= 0

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex + 1,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "margin": format_rational(self.margin),
            "satisfied": self.satisfied,
        }


@dataclass(frozen=True)
class InequalityReport:
    variant: Variant
    weighted: bool
    records: tuple[VertexRecord, ...]

    @property
    def satisfying_vertices(self) -> tuple[int, ...]:
        return tuple(r.vertex for r in self.records if r.satisfied)

    @property
    def holds(self) -> bool:
        """True iff at least one vertex satisfies the inequality."""
        return any(r.satisfied for r in self.records)

    def margins(self) -> tuple[Fraction, ...]:
        return tuple(r.margin for r in self.records)

    def to_dict(self) -> dict:
        return {
            "variant": self.variant.value,
            "weighting": "weighted" if self.weighted else "unweighted",
            "holds": self.holds,
            "satisfying_vertices": [v + 1 for v in self.satisfying_vertices],
            "records": [r.to_dict() for r in self.records],
        }


def _resolve_weights(n: int, weights: Optional[WeightVector]) -> tuple[WeightVector, bool]:
    if weights is None:
        return WeightVector.ones(n), False
    if not isinstance(weights, WeightVector):
        weights = WeightVector(tuple(weights))
    if len(weights) != n:
        raise DimensionError(f"Weight vector has {len(weights)} entries for {n} vertices.")
    return weights, True


def check_identity_hypothesis(pair: DigraphPair) -> bool:
    """``A & B^T == I``; in particular every vertex carries a loop in both A and B."""
    return (pair.a & pair.b.transpose()) == Relation.identity(pair.n)


def check_tournament_pair(pair: DigraphPair) -> bool:
    """``A & B^T == I`` and ``A | B^T == V x V``."""
    b_t = pair.b.transpose()
    return (pair.a & b_t) == Relation.identity(pair.n) and (pair.a | b_t) == Relation.full(
        pair.n
    )


def reduce_pair(pair: DigraphPair) -> DigraphPair:
    """Replace ``(A, B)`` by ``(A & B, A | B)``.

    The result has ``A' <= B'``, keeps both hypotheses, keeps every row weight
    sum ``w(A(v)) + w(B(v))`` and satisfies ``A'B' | B'A' <= AB | BA``.
    """
    if not check_identity_hypothesis(pair):
        raise PreconditionError("reduce_pair requires A & B^T == I.")
    reduced = DigraphPair(pair.a & pair.b, pair.a | pair.b)
    logger.trace(f"Reduced {pair} to {reduced}.")
    return reduced


def product_inequality_report(
    pair: DigraphPair,
    weights: Optional[WeightVector] = None,
    variant: Variant = Variant.UNION,
) -> InequalityReport:
    """Per-vertex check of ``w(C(v)) >= w(A(v)) + w(B(v)) - w(v)``.

    ``weights=None`` is the unweighted check (all ones).
    """
    weights, weighted = _resolve_weights(pair.n, weights)
    c = pair.combined(variant)
    records = tuple(
        VertexRecord(
            vertex=v,
            lhs=weights.of_mask(c.rows[v]),
            rhs=weights.of_mask(pair.a.rows[v]) + weights.of_mask(pair.b.rows[v]) - weights[v],
        )
        for v in range(pair.n)
    )
    report = InequalityReport(variant=variant, weighted=weighted, records=records)
    logger.debug(
        f"{variant.value} report on {pair}: satisfying vertices {[v + 1 for v in report.satisfying_vertices]}"
    )
    return report


def wsnp_report(graph: Relation, weights: Optional[WeightVector] = None) -> InequalityReport:
    """Per-vertex check of ``w(N++(v)) >= w(N+(v))``; all ones gives the SNP check."""
    if not graph.is_oriented():
        raise PreconditionError("WSNP is defined for oriented graphs only.")
    weights, weighted = _resolve_weights(graph.n, weights)
    records = tuple(
        VertexRecord(
            vertex=v,
            lhs=weights.of_mask(graph.second_out_mask(v)),
            rhs=weights.of_mask(graph.rows[v]),
        )
        for v in range(graph.n)
    )
    return InequalityReport(variant=Variant.WSNP, weighted=weighted, records=records)
