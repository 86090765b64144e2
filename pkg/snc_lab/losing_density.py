"""
Losing densities of oriented graphs.

A losing density of ``G`` is a probability vector ``l`` with
``l(N+(v)) >= l(N-(v))`` for every vertex, with equality wherever
``l(v) > 0``. It is an optimal mixed strategy of the skew-symmetric game
whose payoff matrix is the adjacency matrix minus its transpose; that game
has value zero, so the feasibility system below is never empty for an
oriented graph.

Equality on the support needs no constraint of its own: for any ``l >= 0``
the sum ``sum_v l(v) * (l(N+(v)) - l(N-(v)))`` is zero, because every edge
contributes once with each sign. A feasible ``l`` therefore has no room for a
strictly positive term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from loguru import logger

from snc_lab.pair_properties import WeightVector
from snc_lab.relation import Relation, iter_bits
from snc_lab.utils.errors import DensityNotFoundError, DimensionError, PreconditionError
from snc_lab.utils.rationals import format_rational
from snc_lab.utils.simplex import solve_standard_form

LOSING = "losing"
WINNING = "winning"


def _mass(values: Sequence[Fraction], mask: int) -> Fraction:
    return sum((values[u] for u in iter_bits(mask)), Fraction(0))


def _slacks(graph: Relation, values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    reverse = graph.transpose()
    return tuple(
        _mass(values, graph.rows[v]) - _mass(values, reverse.rows[v]) for v in range(graph.n)
    )


@dataclass(frozen=True)
class Density:
    """A density ``l`` with ``slack(v) = l(N+(v)) - l(N-(v))``."""

    values: tuple[Fraction, ...]
    slack: tuple[Fraction, ...]
    kind: str = LOSING

    @classmethod
    def for_graph(cls, graph: Relation, values: Sequence[Fraction], kind: str = LOSING) -> Density:
        values = tuple(Fraction(x) for x in values)
        if len(values) != graph.n:
            raise DimensionError(f"Density has {len(values)} entries for {graph.n} vertices.")
        return cls(values=values, slack=_slacks(graph, values), kind=kind)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, x in enumerate(self.values) if x > 0)

    def as_weights(self) -> WeightVector:
        return WeightVector(self.values)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "values": [format_rational(x) for x in self.values],
            "slack": [format_rational(x) for x in self.slack],
            "support": [v + 1 for v in self.support],
        }


@dataclass
class DensityCheck:
    """Outcome of :func:`verify_density`; truthy iff no violation was found."""

    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def density_payoff(graph: Relation, values: Sequence[Fraction]) -> Fraction:
    """``sum_v l(v) * (l(N+(v)) - l(N-(v)))``, which is 0 for every ``l`` on an oriented graph."""
    slack = _slacks(graph, values)
    return sum((Fraction(x) * s for x, s in zip(values, slack)), Fraction(0))


def compute_losing_density(graph: Relation) -> Density:
    """Return some losing density of an oriented graph, found by exact phase-1 simplex.

    Raises:
        PreconditionError: ``graph`` is not oriented or has no vertex.
        DensityNotFoundError: the feasibility system is empty (should never happen).
    """
    if not graph.is_oriented():
        raise PreconditionError("Losing densities are computed for oriented graphs only.")
    n = graph.n
    if n < 1:
        raise PreconditionError("A losing density needs at least one vertex.")

    # Variables: l_0..l_{n-1}, then one surplus s_v per vertex.
    #   sum_v l_v = 1
    #   l(N+(v)) - l(N-(v)) - s_v = 0
    reverse = graph.transpose()
    a_eq = [[Fraction(1)] * n + [Fraction(0)] * n]
    b_eq = [Fraction(1)]
    for v in range(n):
        row = [Fraction(0)] * (2 * n)
        for u in iter_bits(graph.rows[v]):
            row[u] += 1
        for u in iter_bits(reverse.rows[v]):
            row[u] -= 1
        row[n + v] = Fraction(-1)
        a_eq.append(row)
        b_eq.append(Fraction(0))

    result = solve_standard_form(a_eq, b_eq, [Fraction(0)] * (2 * n))
    if not result.is_optimal:
        logger.error(f"density-not-found: simplex returned '{result.status}' on {graph}.")
        raise DensityNotFoundError(
            f"density-not-found: no losing density for {graph} (simplex status '{result.status}')."
        )

    density = Density.for_graph(graph, result.x[:n])
    check = verify_density(graph, density)
    if not check:
        logger.error(f"Solver output failed verification: {check.violations}")
        raise DensityNotFoundError(
            f"density-not-found: solver output failed verification: {check.violations}"
        )
    logger.debug(
        f"Losing density of {graph} after {result.pivots} pivots: "
        f"{[format_rational(x) for x in density.values]}"
    )
    return density


def compute_winning_density(graph: Relation) -> Density:
    """A losing density of the reversed graph, i.e. ``l(N-(v)) >= l(N+(v))`` everywhere."""
    losing = compute_losing_density(graph.transpose())
    return Density.for_graph(graph, losing.values, kind=WINNING)


def verify_density(
    graph: Relation, density: Density | Sequence[Fraction], kind: str | None = None
) -> DensityCheck:
    """Re-check every density invariant from scratch, independently of the solver.

    Checked: non-negativity, total mass 1, the sign of each slack, and
    ``l(v) * slack(v) == 0``. For a :class:`Density` the stored slack is also
    compared with the recomputed one.
    """
    if isinstance(density, Density):
        values = density.values
        stored_slack = density.slack
        kind = kind or density.kind
    else:
        values = tuple(Fraction(x) for x in density)
        stored_slack = None
        kind = kind or LOSING
    if len(values) != graph.n:
        return DensityCheck(False, [f"density has {len(values)} entries for {graph.n} vertices"])

    violations = []
    slack = _slacks(graph, values)
    sign = 1 if kind == LOSING else -1
    for v in range(graph.n):
        label = v + 1
        if values[v] < 0:
            violations.append(f"vertex {label}: l(v) = {format_rational(values[v])} < 0")
        if sign * slack[v] < 0:
            violations.append(
                f"vertex {label}: l(N+) - l(N-) = {format_rational(slack[v])} has the wrong sign for a {kind} density"
            )
        if values[v] * slack[v] != 0:
            violations.append(
                f"vertex {label}: l(v) > 0 but l(N+) - l(N-) = {format_rational(slack[v])}"
            )
    total = sum(values, Fraction(0))
    if total != 1:
        violations.append(f"total mass is {format_rational(total)}, not 1")
    if stored_slack is not None and tuple(stored_slack) != slack:
        violations.append("stored slack does not match the recomputed slack")

    if violations:
        logger.debug(f"Density rejected on {graph}: {violations}")
    return DensityCheck(ok=not violations, violations=violations)
