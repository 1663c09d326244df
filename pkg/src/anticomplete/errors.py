"""Exceptions and the shared search budget."""

from __future__ import annotations

import os
import time


class CapExceeded(Exception):
    """A search hit one of its configured limits."""


class PreconditionError(ValueError):
    """Input does not satisfy the documented precondition."""


class TooManyOrders(CapExceeded):
    pass


class ModelTooSmall(PreconditionError):
    pass


class Cancelled(CapExceeded):
    pass


DEFAULT_NODES_ENV = "ANTICOMPLETE_BUDGET_NODES"
_FROM_ENV = object()


class Budget:
    """Node/time budget doubling as a cooperative cancellation token.

    Searches call :meth:`tick` in their inner loop; once the node count or
    wall-clock limit is exceeded, or :meth:`cancel` was called from outside,
    :class:`CapExceeded` is raised.
    """

    def __init__(self, nodes=_FROM_ENV, seconds: float | None = None):
        # nodes=None means unlimited; leaving it out reads the environment default
        if nodes is _FROM_ENV:
            env = os.environ.get(DEFAULT_NODES_ENV)
            nodes = int(env) if env else None
        self.nodes = nodes
        self.seconds = seconds
        self.used = 0
        self.cancelled = False
        self._deadline = None if seconds is None else time.monotonic() + seconds

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.cancelled:
            raise Cancelled("search cancelled")
        if self.nodes is not None and self.used > self.nodes:
            raise CapExceeded(f"node budget {self.nodes} exhausted")
        if self._deadline is not None and (self.used & 1023) == 0:
            if time.monotonic() > self._deadline:
                raise CapExceeded(f"time budget {self.seconds}s exhausted")

    def cancel(self) -> None:
        self.cancelled = True


def unlimited() -> Budget:
    return Budget(nodes=None, seconds=None)


def ensure(budget: Budget | None) -> Budget:
    return budget if budget is not None else Budget()
