"""
Digraphs as binary relations on a finite vertex set.

A :class:`Relation` on ``n`` vertices is a subset of ``V x V`` with
``V = {0, ..., n-1}``. Row ``u`` is stored as an integer bitset whose bit ``v``
is set iff ``(u, v)`` is an edge, so set operations on relations are row-wise
integer operations and the product of two relations is a union of rows.

Self-loops are allowed. Vertex ids are 0-based everywhere in the library;
1-based labels only appear in files and reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from snc_lab.utils.errors import DimensionError, VertexOutOfRangeError

VertexSet = frozenset


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertex_set(mask: int) -> VertexSet:
    return frozenset(iter_bits(mask))


@dataclass(frozen=True)
class Neighbourhoods:
    """First and second out/in neighbourhoods of one vertex."""

    vertex: int
    out: VertexSet
    in_: VertexSet
    second_out: VertexSet
    second_in: VertexSet

    @property
    def d_plus(self) -> int:
        return len(self.out)

    @property
    def d_minus(self) -> int:
        return len(self.in_)

    @property
    def d_plus_plus(self) -> int:
        return len(self.second_out)

    @property
    def d_minus_minus(self) -> int:
        return len(self.second_in)


@dataclass(frozen=True)
class Relation:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"Vertex count must be non-negative, got {self.n}.")
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != self.n:
            raise DimensionError(
                f"Relation on {self.n} vertices needs {self.n} rows, got {len(self.rows)}."
            )
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise DimensionError(
                    f"Row {u} references vertices outside 0..{self.n - 1}."
                )

    # --- construction ---

    @classmethod
    def empty(cls, n: int) -> Relation:
        return cls(n, (0,) * n)

    @classmethod
    def identity(cls, n: int) -> Relation:
        """The identity graph: exactly the ``n`` loops ``(v, v)``."""
        return cls(n, tuple(1 << v for v in range(n)))

    @classmethod
    def full(cls, n: int) -> Relation:
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Relation:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRangeError(
                    f"Edge ({u}, {v}) is outside a relation on {n} vertices."
                )
            rows[u] |= 1 << v
        return cls(n, tuple(rows))

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> Relation:
        """Build from 0-based out-neighbour lists, one per vertex."""
        n = len(adjacency)
        return cls.from_edges(n, ((u, v) for u, outs in enumerate(adjacency) for v in outs))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[bool]]) -> Relation:
        n = len(matrix)
        for u, row in enumerate(matrix):
            if len(row) != n:
                raise DimensionError(f"Matrix row {u} has length {len(row)}, expected {n}.")
        return cls(n, tuple(mask_of(v for v, bit in enumerate(row) if bit) for row in matrix))

    # --- inspection ---

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexOutOfRangeError(
                f"Vertex {v} is out of range for a relation on {self.n} vertices."
            )

    def _check_same_size(self, other: Relation) -> None:
        if other.n != self.n:
            raise DimensionError(
                f"Relations live on different vertex sets ({self.n} vs {other.n} vertices)."
            )

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in iter_bits(row):
                yield u, v

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def loops_mask(self) -> int:
        return mask_of(v for v in range(self.n) if self.rows[v] >> v & 1)

    def to_matrix(self) -> list[list[bool]]:
        return [[bool(row >> v & 1) for v in range(self.n)] for row in self.rows]

    def to_adjacency(self) -> list[list[int]]:
        return [list(iter_bits(row)) for row in self.rows]

    # --- algebra ---

    def transpose(self) -> Relation:
        """All edges reversed."""
        rows = [0] * self.n
        for u, row in enumerate(self.rows):
            bit = 1 << u
            for v in iter_bits(row):
                rows[v] |= bit
        return Relation(self.n, tuple(rows))

    def compose(self, other: Relation) -> Relation:
        """The product ``self other``: ``(u, v)`` iff ``u -> w`` in self and ``w -> v`` in other.

        The first factor is applied first, so the row of ``u`` is the union of
        ``other``'s rows over the out-neighbours of ``u`` in ``self``.
        """
        self._check_same_size(other)
        rows = []
        for row in self.rows:
            acc = 0
            for w in iter_bits(row):
                acc |= other.rows[w]
            rows.append(acc)
        return Relation(self.n, tuple(rows))

    def union(self, other: Relation) -> Relation:
        self._check_same_size(other)
        return Relation(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def intersection(self, other: Relation) -> Relation:
        self._check_same_size(other)
        return Relation(self.n, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def difference(self, other: Relation) -> Relation:
        self._check_same_size(other)
        return Relation(self.n, tuple(a & ~b for a, b in zip(self.rows, other.rows)))

    def is_subset(self, other: Relation) -> bool:
        self._check_same_size(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def equals(self, other: Relation) -> bool:
        self._check_same_size(other)
        return self.rows == other.rows

    __matmul__ = compose
    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = is_subset

    # --- neighbourhoods ---

    def out_mask(self, v: int) -> int:
        self._check_vertex(v)
        return self.rows[v]

    def in_mask(self, v: int) -> int:
        self._check_vertex(v)
        return mask_of(u for u, row in enumerate(self.rows) if row >> v & 1)

    def out_set(self, v: int) -> VertexSet:
        """``R(v)``, the row of ``v`` as a set."""
        return vertex_set(self.out_mask(v))

    def in_set(self, v: int) -> VertexSet:
        return vertex_set(self.in_mask(v))

    def second_out_mask(self, v: int) -> int:
        first = self.out_mask(v)
        reach = 0
        for u in iter_bits(first):
            reach |= self.rows[u]
        return reach & ~first

    def neighbourhoods(self, v: int) -> Neighbourhoods:
        """``N+``, ``N-``, ``N++`` and ``N--`` of ``v``, following the set formulas literally.

        With loops present ``v`` can belong to its own second neighbourhood;
        nothing extra is excluded.
        """
        reverse = self.transpose()
        return Neighbourhoods(
            vertex=v,
            out=vertex_set(self.out_mask(v)),
            in_=vertex_set(reverse.out_mask(v)),
            second_out=vertex_set(self.second_out_mask(v)),
            second_in=vertex_set(reverse.second_out_mask(v)),
        )

    # --- structure ---

    def strip_loops(self) -> Relation:
        return Relation(self.n, tuple(row & ~(1 << v) for v, row in enumerate(self.rows)))

    def is_oriented(self) -> bool:
        """No self-loops and no directed 2-cycles."""
        if self.loops_mask():
            return False
        reverse = self.transpose()
        return all(a & b == 0 for a, b in zip(self.rows, reverse.rows))

    def induced(self, vertices: Iterable[int]) -> Relation:
        """Sub-relation on ``vertices``, relabelled ``0..k-1`` in increasing order."""
        keep = sorted(set(vertices))
        for v in keep:
            self._check_vertex(v)
        return Relation(
            len(keep),
            tuple(
                mask_of(j for j, w in enumerate(keep) if self.rows[u] >> w & 1)
                for u in keep
            ),
        )

    def __str__(self) -> str:
        return f"<Relation n={self.n} edges={self.edge_count()}>"
