"""Search outcomes and budget accounting shared by every exhaustive search."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

WITNESS = "witness"
EXHAUSTED_NO = "exhausted-no"
BUDGET_EXCEEDED = "budget-exceeded"

DEFAULT_MAX_NODES = 100_000_000
DEFAULT_MAX_SECONDS = 600.0


class BudgetExceededError(RuntimeError):
    """Raised internally when a search exhausts its node or time budget."""


@dataclass
class Budget:
    """Mutable node/time budget threaded through a search.

    ``tick`` is called once per explored search-tree node.  Time is only
    polled every 4096 nodes to keep the counter cheap.
    """

    max_nodes: int = DEFAULT_MAX_NODES
    max_seconds: Optional[float] = DEFAULT_MAX_SECONDS
    nodes: int = 0
    _deadline: Optional[float] = field(default=None, repr=False)

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceededError(f"node budget {self.max_nodes} exhausted")
        if self.max_seconds is not None and self.nodes % 4096 == 0:
            if self._deadline is None:
                self._deadline = time.monotonic() + self.max_seconds
            elif time.monotonic() > self._deadline:
                raise BudgetExceededError(f"time budget {self.max_seconds}s exhausted")

    def start_clock(self) -> None:
        if self.max_seconds is not None and self._deadline is None:
            self._deadline = time.monotonic() + self.max_seconds


@dataclass
class SearchOutcome:
    """Result of an exhaustive search: witness, certified no, or budget hit."""

    status: str
    witness: object = None
    nodes: int = 0

    @property
    def is_witness(self) -> bool:
        return self.status == WITNESS

    @property
    def is_no(self) -> bool:
        return self.status == EXHAUSTED_NO

    @property
    def is_budget(self) -> bool:
        return self.status == BUDGET_EXCEEDED


def witness_outcome(witness, budget: Budget) -> SearchOutcome:
    return SearchOutcome(WITNESS, witness=witness, nodes=budget.nodes)


def no_outcome(budget: Budget) -> SearchOutcome:
    return SearchOutcome(EXHAUSTED_NO, nodes=budget.nodes)


def budget_outcome(budget: Budget) -> SearchOutcome:
    return SearchOutcome(BUDGET_EXCEEDED, nodes=budget.nodes)
