"""
Exact two-phase simplex over rationals.

Problems are given in standard form::

    minimize    c . x
    subject to  A x = b
                x >= 0

All arithmetic uses ``fractions.Fraction``. Entering and leaving variables are
chosen with Bland's rule (smallest index first), so the method terminates on
degenerate problems and two runs on the same input pivot identically.

This is the single LP core of the package. It is used for the losing density
feasibility system and for the weight oracle of the search module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from loguru import logger

from snc_lab.utils.errors import DimensionError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] = ()
    objective: Fraction | None = None
    pivots: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


class ExactSimplex:
    """Two-phase tableau simplex with Bland's anti-cycling rule."""

    def __init__(
        self,
        a_eq: Sequence[Sequence[Fraction | int]],
        b_eq: Sequence[Fraction | int],
        c: Sequence[Fraction | int],
    ):
        self.num_vars = len(c)
        if len(a_eq) != len(b_eq):
            raise DimensionError(
                f"Constraint matrix has {len(a_eq)} rows but right-hand side has {len(b_eq)} entries."
            )
        for i, row in enumerate(a_eq):
            if len(row) != self.num_vars:
                raise DimensionError(
                    f"Constraint row {i} has {len(row)} coefficients, expected {self.num_vars}."
                )
        self.c = [Fraction(x) for x in c]
        self._rows: list[list[Fraction]] = []
        for row, rhs in zip(a_eq, b_eq):
            rhs = Fraction(rhs)
            coefs = [Fraction(x) for x in row]
            # phase 1 starts from the artificial basis, which needs b >= 0
            if rhs < 0:
                coefs = [-x for x in coefs]
                rhs = -rhs
            self._rows.append(coefs + [rhs])
        self._basis: list[int] = []
        self.pivots = 0

    def _pivot(self, row: int, col: int) -> None:
        tableau = self._rows
        pivot_row = tableau[row]
        p = pivot_row[col]
        pivot_row = [x / p for x in pivot_row]
        tableau[row] = pivot_row
        for i, other in enumerate(tableau):
            if i == row:
                continue
            f = other[col]
            if f != 0:
                tableau[i] = [a - f * b for a, b in zip(other, pivot_row)]
        self._basis[row] = col
        self.pivots += 1

    def _reduced_cost(self, cost: list[Fraction], col: int) -> Fraction:
        return cost[col] - sum(
            (cost[self._basis[i]] * row[col] for i, row in enumerate(self._rows)),
            Fraction(0),
        )

    def _iterate(self, cost: list[Fraction], num_cols: int) -> str:
        while True:
            basic = set(self._basis)
            entering = None
            for j in range(num_cols):
                if j not in basic and self._reduced_cost(cost, j) < 0:
                    entering = j
                    break
            if entering is None:
                return OPTIMAL

            best = None
            for i, row in enumerate(self._rows):
                if row[entering] > 0:
                    key = (row[-1] / row[entering], self._basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            logger.trace(
                f"Pivot: x{self._basis[best[1]]} leaves, x{entering} enters (ratio {best[0][0]})"
            )
            self._pivot(best[1], entering)

    def solve(self) -> LPResult:
        """Run both phases and return the solution in the original variables."""
        n = self.num_vars
        m = len(self._rows)

        # Phase 1: one artificial per row, minimise their sum.
        for i, row in enumerate(self._rows):
            rhs = row.pop()
            row.extend(Fraction(int(k == i)) for k in range(m))
            row.append(rhs)
        self._basis = list(range(n, n + m))
        phase1_cost = [Fraction(0)] * n + [Fraction(1)] * m
        self._iterate(phase1_cost, n + m)

        infeasibility = sum(
            (row[-1] for i, row in enumerate(self._rows) if self._basis[i] >= n),
            Fraction(0),
        )
        if infeasibility > 0:
            logger.debug(
                f"Phase 1 ended with infeasibility {infeasibility} after {self.pivots} pivots."
            )
            return LPResult(status=INFEASIBLE, pivots=self.pivots)

        # Drive remaining (zero-valued) artificials out of the basis.
        redundant = []
        for i in range(m):
            if self._basis[i] < n:
                continue
            col = next((j for j in range(n) if self._rows[i][j] != 0), None)
            if col is None:
                redundant.append(i)
            else:
                self._pivot(i, col)
        for i in reversed(redundant):
            del self._rows[i]
            del self._basis[i]
        if redundant:
            logger.trace(f"Dropped {len(redundant)} redundant equality rows.")

        self._rows = [row[:n] + [row[-1]] for row in self._rows]

        # Phase 2 on the original objective.
        status = self._iterate(self.c, n)
        if status == UNBOUNDED:
            return LPResult(status=UNBOUNDED, pivots=self.pivots)

        x = [Fraction(0)] * n
        for i, var in enumerate(self._basis):
            x[var] = self._rows[i][-1]
        objective = sum((ci * xi for ci, xi in zip(self.c, x)), Fraction(0))
        logger.trace(
            f"Simplex finished: {m} rows, {n} columns, {self.pivots} pivots, objective {objective}."
        )
        return LPResult(
            status=OPTIMAL, x=tuple(x), objective=objective, pivots=self.pivots
        )


def solve_standard_form(
    a_eq: Sequence[Sequence[Fraction | int]],
    b_eq: Sequence[Fraction | int],
    c: Sequence[Fraction | int],
) -> LPResult:
    """Convenience wrapper: build an :class:`ExactSimplex` and solve it."""
    return ExactSimplex(a_eq, b_eq, c).solve()
