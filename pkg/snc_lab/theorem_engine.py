"""
Certificates for the tournament-pair theorem.

For ``A & B^T == I`` and ``A | B^T == V x V`` and any weights ``w`` there is a
vertex with ``w((AB | BA)(v)) >= w(A(v)) + w(B(v)) - w(v)``. The argument first
assumes ``A <= B``. It takes a losing density ``l`` of the oriented graph
``G = A`` minus loops and, for every ``v``, splits ``V`` into

    S1    = A^T(v) - {v}
    S2    = C^T(v) - B^T(v)
    Bonly = B^T(v) - A^T(v)
    Q     = (V - C^T(v)) | {v}

with ``C = AB | BA``, then shows ``l(S2) >= l(S1)``. Summing that against ``w``
gives the non-negative aggregate, and the aggregate forces a witness. The
general case goes through :func:`reduce_pair`, whose union product only
shrinks, so a witness of the reduced pair is a witness of the original.

Every step is recomputed on the concrete instance. A failed step raises
:class:`TheoremViolatedError` carrying the instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from loguru import logger

from snc_lab.losing_density import Density, compute_losing_density, verify_density
from snc_lab.pair_properties import (
    DigraphPair,
    Variant,
    WeightVector,
    check_identity_hypothesis,
    check_tournament_pair,
    product_inequality_report,
    reduce_pair,
)
from snc_lab.relation import Relation, VertexSet, iter_bits, mask_of, vertex_set
from snc_lab.utils.data import PairDocument
from snc_lab.utils.errors import (
    DimensionError,
    PreconditionError,
    TheoremViolatedError,
    VertexOutOfRangeError,
)
from snc_lab.utils.rationals import format_rational


def _labels(vertices: VertexSet) -> list[int]:
    return sorted(v + 1 for v in vertices)


def _instance(pair: DigraphPair, weights: Optional[WeightVector] = None) -> dict:
    return PairDocument.from_pair(pair, weights).to_dict()


def _mass(values: Sequence[Fraction], vertices) -> Fraction:
    return sum((values[v] for v in vertices), Fraction(0))


@dataclass(frozen=True)
class VertexPartition:
    vertex: int
    s1: VertexSet
    s2: VertexSet
    b_only: VertexSet
    q: VertexSet

    def parts(self) -> tuple[VertexSet, ...]:
        return (self.s1, self.s2, self.b_only, self.q)

    def is_partition_of(self, n: int) -> bool:
        parts = self.parts()
        disjoint = sum(len(p) for p in parts) == len(frozenset().union(*parts))
        return disjoint and frozenset().union(*parts) == frozenset(range(n))

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex + 1,
            "s1": _labels(self.s1),
            "s2": _labels(self.s2),
            "b_only": _labels(self.b_only),
            "q": _labels(self.q),
        }


@dataclass(frozen=True)
class DensityInequality:
    """``l(S2) >= l(S1)`` at one vertex."""

    vertex: int
    l_s1: Fraction
    l_s2: Fraction

    @property
    def holds(self) -> bool:
        return self.l_s2 >= self.l_s1

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex + 1,
            "l_s1": format_rational(self.l_s1),
            "l_s2": format_rational(self.l_s2),
            "holds": self.holds,
        }


@dataclass(frozen=True)
class ProofStep:
    """The vertex ``u`` of ``Q`` used when ``l(Q) > 0``, and the two containments checked at it.

    ``in_contains``:  ``N_G^-(u) >= N_Q^-(u) | S1``
    ``out_contained``: ``N_G^+(u) <= N_Q^+(u) | S2``
    """

    vertex: int
    u: int
    l_q_in: Fraction
    l_q_out: Fraction
    in_contains: bool
    out_contained: bool

    @property
    def holds(self) -> bool:
        return self.l_q_in >= self.l_q_out and self.in_contains and self.out_contained

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex + 1,
            "u": self.u + 1,
            "l_q_in": format_rational(self.l_q_in),
            "l_q_out": format_rational(self.l_q_out),
            "in_contains": self.in_contains,
            "out_contained": self.out_contained,
        }


@dataclass(frozen=True)
class TheoremCertificate:
    pair: DigraphPair
    reduced: DigraphPair
    weights: WeightVector
    density: Density
    partitions: tuple[VertexPartition, ...]
    inequalities: tuple[DensityInequality, ...]
    proof_steps: tuple[Optional[ProofStep], ...]
    aggregate: Fraction
    support_vertex: int
    witness: int
    witness_lhs: Fraction
    witness_rhs: Fraction

    def to_dict(self) -> dict:
        return {
            "n": self.pair.n,
            "weights": self.weights.to_strings(),
            "density": self.density.to_dict(),
            "aggregate": format_rational(self.aggregate),
            "support_vertex": self.support_vertex + 1,
            "witness": self.witness + 1,
            "witness_lhs": format_rational(self.witness_lhs),
            "witness_rhs": format_rational(self.witness_rhs),
            "vertices": [
                {
                    **partition.to_dict(),
                    "l_s1": format_rational(inequality.l_s1),
                    "l_s2": format_rational(inequality.l_s2),
                    "proof_step": step.to_dict() if step is not None else None,
                }
                for partition, inequality, step in zip(
                    self.partitions, self.inequalities, self.proof_steps
                )
            ],
        }


def _require_reduced(pair: DigraphPair) -> None:
    if not check_identity_hypothesis(pair):
        raise PreconditionError("The pair must satisfy A & B^T == I.")
    if not pair.a <= pair.b:
        raise PreconditionError("The pair must satisfy A <= B; apply reduce_pair first.")


def _partition(pair: DigraphPair, c_t: Relation, a_t: Relation, b_t: Relation, v: int) -> VertexPartition:
    everything = (1 << pair.n) - 1
    a_in = a_t.rows[v]
    b_in = b_t.rows[v]
    c_in = c_t.rows[v]
    return VertexPartition(
        vertex=v,
        s1=vertex_set(a_in & ~(1 << v)),
        s2=vertex_set(c_in & ~b_in),
        b_only=vertex_set(b_in & ~a_in),
        q=vertex_set((everything & ~c_in) | (1 << v)),
    )


def partition_for_vertex(pair: DigraphPair, v: int) -> VertexPartition:
    """Split ``V`` into ``S1``, ``S2``, ``Bonly`` and ``Q`` around ``v``.

    Requires ``A & B^T == I`` and ``A <= B``.
    """
    _require_reduced(pair)
    if not 0 <= v < pair.n:
        raise VertexOutOfRangeError(f"Vertex {v} is out of range for a pair on {pair.n} vertices.")
    c_t = pair.union_product().transpose()
    partition = _partition(pair, c_t, pair.a.transpose(), pair.b.transpose(), v)
    if not partition.is_partition_of(pair.n) or not _b_t_inside_c_t(pair, c_t, v):
        raise TheoremViolatedError(
            f"sets around vertex {v + 1} do not partition V", _instance(pair)
        )
    return partition


def _b_t_inside_c_t(pair: DigraphPair, c_t: Relation, v: int) -> bool:
    """``B^T(v) <= C^T(v)``, which holds because both factors carry every loop."""
    b_in = pair.b.in_mask(v)
    return b_in & ~c_t.rows[v] == 0


def _require_density(pair: DigraphPair, density: Density) -> Relation:
    if not check_tournament_pair(pair):
        raise PreconditionError("The pair must satisfy A & B^T == I and A | B^T == V x V.")
    _require_reduced(pair)
    graph = pair.a.strip_loops()
    check = verify_density(graph, density)
    if not check:
        raise PreconditionError(
            f"Not a losing density of A without loops: {check.violations}"
        )
    return graph


def density_inequality_check(pair: DigraphPair, density: Density) -> tuple[DensityInequality, ...]:
    """``l(S2)`` against ``l(S1)`` at every vertex of a reduced tournament pair."""
    _require_density(pair, density)
    c_t = pair.union_product().transpose()
    a_t, b_t = pair.a.transpose(), pair.b.transpose()
    records = []
    for v in range(pair.n):
        partition = _partition(pair, c_t, a_t, b_t, v)
        records.append(
            DensityInequality(
                vertex=v,
                l_s1=_mass(density.values, partition.s1),
                l_s2=_mass(density.values, partition.s2),
            )
        )
    return tuple(records)


def aggregate_sum(pair: DigraphPair, weights: WeightVector, density: Density) -> Fraction:
    """``sum_v l(v) * (w(C(v) - B(v)) - w(A(v) - {v}))``.

    The transposed form ``sum_v w(v) * (l(C^T(v) - B^T(v)) - l(A^T(v) - {v}))``
    is computed separately and must agree exactly.
    """
    _require_density(pair, density)
    if len(weights) != pair.n:
        raise DimensionError(f"Weight vector has {len(weights)} entries for {pair.n} vertices.")
    c = pair.union_product()
    c_t, a_t, b_t = c.transpose(), pair.a.transpose(), pair.b.transpose()
    l = density.values

    direct = Fraction(0)
    transposed = Fraction(0)
    for v in range(pair.n):
        not_v = ~(1 << v)
        direct += l[v] * (
            weights.of_mask(c.rows[v] & ~pair.b.rows[v]) - weights.of_mask(pair.a.rows[v] & not_v)
        )
        transposed += weights[v] * (
            _mass(l, iter_bits(c_t.rows[v] & ~b_t.rows[v])) - _mass(l, iter_bits(a_t.rows[v] & not_v))
        )
    if direct != transposed:
        raise TheoremViolatedError(
            f"aggregate {direct} differs from its transposed form {transposed}",
            _instance(pair, weights),
        )
    logger.trace(f"Aggregate sum on {pair}: {direct}")
    return direct


def double_count_check(graph: Relation, q: VertexSet, l: Sequence[Fraction]) -> bool:
    """``sum_{v in Q} l(v) l(N_Q^-(v)) == sum_{v in Q} l(v) l(N_Q^+(v))`` on the subgraph induced by ``Q``."""
    q_mask = mask_of(q)
    reverse = graph.transpose()
    incoming = Fraction(0)
    outgoing = Fraction(0)
    for v in iter_bits(q_mask):
        incoming += l[v] * _mass(l, iter_bits(reverse.rows[v] & q_mask))
        outgoing += l[v] * _mass(l, iter_bits(graph.rows[v] & q_mask))
    return incoming == outgoing


def proof_step(pair: DigraphPair, v: int, density: Density) -> Optional[ProofStep]:
    """The ``l(Q) > 0`` case at ``v``: pick ``u`` and check both containments.

    Returns None when ``l(Q) == 0``.
    """
    graph = _require_density(pair, density)
    partition = partition_for_vertex(pair, v)
    return _proof_step(graph, partition, density.values)


def _proof_step(graph: Relation, partition: VertexPartition, l: Sequence[Fraction]) -> Optional[ProofStep]:
    if _mass(l, partition.q) == 0:
        return None
    q_mask = mask_of(partition.q)
    reverse = graph.transpose()
    for u in sorted(partition.q):
        if l[u] <= 0:
            continue
        q_in = reverse.rows[u] & q_mask
        q_out = graph.rows[u] & q_mask
        l_in = _mass(l, iter_bits(q_in))
        l_out = _mass(l, iter_bits(q_out))
        if l_in >= l_out:
            s1 = mask_of(partition.s1)
            s2 = mask_of(partition.s2)
            return ProofStep(
                vertex=partition.vertex,
                u=u,
                l_q_in=l_in,
                l_q_out=l_out,
                in_contains=(q_in | s1) & ~reverse.rows[u] == 0,
                out_contained=graph.rows[u] & ~(q_out | s2) == 0,
            )
    return None


def find_witness(pair: DigraphPair, weights: Optional[WeightVector] = None) -> TheoremCertificate:
    """Build a full certificate and a witness vertex for a tournament pair.

    ``A <= B`` is not required: the pair is reduced internally and the witness
    is checked against the original pair. Among satisfying vertices the
    smallest id is chosen.

    Raises:
        PreconditionError: the pair is not a tournament pair, or is empty.
        TheoremViolatedError: any proof step fails on this instance.
    """
    if pair.n < 1:
        raise PreconditionError("The theorem needs at least one vertex.")
    if not check_tournament_pair(pair):
        raise PreconditionError("find_witness requires A & B^T == I and A | B^T == V x V.")
    if weights is None:
        weights = WeightVector.ones(pair.n)
    elif not isinstance(weights, WeightVector):
        weights = WeightVector(tuple(weights))
    if len(weights) != pair.n:
        raise DimensionError(f"Weight vector has {len(weights)} entries for {pair.n} vertices.")

    reduced = reduce_pair(pair)
    graph = reduced.a.strip_loops()
    density = compute_losing_density(graph)
    l = density.values

    c = reduced.union_product()
    c_t, a_t, b_t = c.transpose(), reduced.a.transpose(), reduced.b.transpose()
    partitions = []
    for v in range(pair.n):
        partition = _partition(reduced, c_t, a_t, b_t, v)
        if not partition.is_partition_of(pair.n) or not _b_t_inside_c_t(reduced, c_t, v):
            raise TheoremViolatedError(
                f"sets around vertex {v + 1} do not partition V", _instance(pair, weights)
            )
        if not double_count_check(graph, partition.q, l):
            raise TheoremViolatedError(
                f"double counting fails on Q around vertex {v + 1}", _instance(pair, weights)
            )
        partitions.append(partition)

    inequalities = density_inequality_check(reduced, density)
    failed = [r.vertex + 1 for r in inequalities if not r.holds]
    if failed:
        raise TheoremViolatedError(f"l(S2) < l(S1) at vertices {failed}", _instance(pair, weights))

    steps = tuple(_proof_step(graph, partition, l) for partition in partitions)
    broken = [
        p.vertex + 1
        for p, step in zip(partitions, steps)
        if _mass(l, p.q) > 0 and (step is None or not step.holds)
    ]
    if broken:
        raise TheoremViolatedError(
            f"proof step fails in Q around vertices {broken}", _instance(pair, weights)
        )

    aggregate = aggregate_sum(reduced, weights, density)
    if aggregate < 0:
        raise TheoremViolatedError(f"aggregate sum is negative ({aggregate})", _instance(pair, weights))

    terms = [
        weights.of_mask(c.rows[v] & ~reduced.b.rows[v])
        - weights.of_mask(reduced.a.rows[v] & ~(1 << v))
        for v in range(pair.n)
    ]
    # B(v) <= C(v) and v in A(v), so a term is >= 0 exactly where the reduced inequality holds
    reduced_report = product_inequality_report(reduced, weights, Variant.UNION)
    mismatched = [
        v + 1 for v in range(pair.n) if (terms[v] >= 0) != reduced_report.records[v].satisfied
    ]
    if mismatched:
        raise TheoremViolatedError(
            f"aggregate terms disagree with the reduced inequality at vertices {mismatched}",
            _instance(pair, weights),
        )
    support_vertex = next((v for v in density.support if terms[v] >= 0), None)
    if support_vertex is None:
        raise TheoremViolatedError(
            "no vertex in the support of l has a non-negative term", _instance(pair, weights)
        )

    report = product_inequality_report(pair, weights, Variant.UNION)
    if not report.records[support_vertex].satisfied:
        raise TheoremViolatedError(
            f"support vertex {support_vertex + 1} does not satisfy the union inequality",
            _instance(pair, weights),
        )
    if not report.holds:
        raise TheoremViolatedError("no vertex satisfies the union inequality", _instance(pair, weights))
    witness = report.satisfying_vertices[0]
    record = report.records[witness]

    logger.debug(
        f"Certificate for {pair}: witness {witness + 1}, aggregate {aggregate}, support vertex {support_vertex + 1}"
    )
    return TheoremCertificate(
        pair=pair,
        reduced=reduced,
        weights=weights,
        density=density,
        partitions=tuple(partitions),
        inequalities=inequalities,
        proof_steps=steps,
        aggregate=aggregate,
        support_vertex=support_vertex,
        witness=witness,
        witness_lhs=record.lhs,
        witness_rhs=record.rhs,
    )
