"""Solver result value type shared by the exact and polynomial modules."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solver run.

    optimum is an int or Fraction for feasible runs and None otherwise;
    witness is the element subset / assignment / orientation realizing it.
    nodes_explored counts search effort and has no semantic weight.
    """

    status: str
    optimum: int | Fraction | None = None
    witness: Any = None
    nodes_explored: int = 0
    detail: str | None = None

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    @staticmethod
    def infeasible(detail: str | None = None, nodes: int = 0, optimum=None) -> "SolveResult":
        return SolveResult(INFEASIBLE, optimum=optimum, nodes_explored=nodes, detail=detail)

    @staticmethod
    def ok(optimum, witness, nodes: int = 0, detail: str | None = None) -> "SolveResult":
        return SolveResult(FEASIBLE, optimum=optimum, witness=witness, nodes_explored=nodes, detail=detail)
