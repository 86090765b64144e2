"""
Blow-ups: replace each vertex ``v`` by ``w(v)`` copies.

Non-loop edges ``(u, v)`` become every edge ``(u_i, v_j)``. For oriented graphs
this is the whole construction. For pairs satisfying ``A & B^T == I`` a loop
``(v, v)`` becomes one loop per copy and nothing else: joining the copies of
``v`` to each other would put non-loop pairs into ``A & B^T``. With that rule
the unweighted margin of every copy ``v_i`` equals the weighted margin of
``v``.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Sequence

from loguru import logger

from snc_lab.pair_properties import DigraphPair, WeightVector, check_identity_hypothesis
from snc_lab.relation import Relation, iter_bits
from snc_lab.utils.errors import DimensionError, PreconditionError


@dataclass(frozen=True)
class BlowupMap:
    """Copy counts per original vertex; copies of ``v`` occupy a contiguous id range."""

    counts: tuple[int, ...]

    @property
    def original_n(self) -> int:
        return len(self.counts)

    @property
    def offsets(self) -> tuple[int, ...]:
        return (0,) + tuple(accumulate(self.counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def copies(self, v: int) -> range:
        offsets = self.offsets
        return range(offsets[v], offsets[v + 1])

    def origin(self, copy: int) -> int:
        if not 0 <= copy < self.total:
            raise IndexError(f"Copy id {copy} outside 0..{self.total - 1}.")
        return bisect_right(self.offsets, copy) - 1

    def class_mask(self, v: int) -> int:
        r = self.copies(v)
        return ((1 << len(r)) - 1) << r.start

    def to_dict(self) -> dict:
        return {
            "original_n": self.original_n,
            "total": self.total,
            "copies": {
                str(v + 1): [self.copies(v).start + 1, self.copies(v).stop]
                for v in range(self.original_n)
            },
        }


def _copy_counts(weights: WeightVector | Sequence[int | Fraction], n: int) -> tuple[int, ...]:
    values = tuple(weights)
    if len(values) != n:
        raise DimensionError(f"Blow-up needs {n} weights, got {len(values)}.")
    counts = []
    for v, value in enumerate(values):
        if isinstance(value, float):
            raise PreconditionError(f"Weight of vertex {v + 1} is a float ({value}).")
        value = Fraction(value)
        if value.denominator != 1 or value < 1:
            raise PreconditionError(
                f"Blow-up weights must be positive integers; vertex {v + 1} has weight {value}."
            )
        counts.append(value.numerator)
    return tuple(counts)


def _blow_up_rows(relation: Relation, mapping: BlowupMap, loops_per_copy: bool) -> Relation:
    class_masks = [mapping.class_mask(v) for v in range(relation.n)]
    rows = []
    for v, row in enumerate(relation.rows):
        target = 0
        for w in iter_bits(row & ~(1 << v)):
            target |= class_masks[w]
        has_loop = bool(row >> v & 1)
        for copy in mapping.copies(v):
            if has_loop and loops_per_copy:
                rows.append(target | (1 << copy))
            else:
                rows.append(target)
    return Relation(mapping.total, tuple(rows))


def blow_up_oriented(
    graph: Relation, weights: WeightVector | Sequence[int]
) -> tuple[Relation, BlowupMap]:
    """Blow up an oriented graph; ``v`` satisfies WSNP iff every copy of ``v`` satisfies SNP."""
    if not graph.is_oriented():
        raise PreconditionError("blow_up_oriented requires an oriented graph.")
    mapping = BlowupMap(_copy_counts(weights, graph.n))
    blown = _blow_up_rows(graph, mapping, loops_per_copy=False)
    logger.debug(f"Blew up {graph} into {blown}.")
    return blown, mapping


def blow_up_pair(
    pair: DigraphPair, weights: WeightVector | Sequence[int]
) -> tuple[DigraphPair, BlowupMap]:
    """Blow up both members of a pair with the same copy counts.

    Loops become one loop per copy, so ``A & B^T == I`` survives.
    """
    if not check_identity_hypothesis(pair):
        raise PreconditionError("blow_up_pair requires A & B^T == I.")
    mapping = BlowupMap(_copy_counts(weights, pair.n))
    blown = DigraphPair(
        _blow_up_rows(pair.a, mapping, loops_per_copy=True),
        _blow_up_rows(pair.b, mapping, loops_per_copy=True),
    )
    logger.debug(f"Blew up {pair} into {blown} ({mapping.total} vertices).")
    return blown, mapping
