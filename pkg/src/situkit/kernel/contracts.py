"""Interface contracts that fluent and action kinds conform to.

The kernel never imports a concrete fluent or action: it evaluates
whatever kinds have been registered against these contracts.  A library
or application plugs in new behaviour by subclassing and registering,
never by editing kernel code.

The fluent contract is split three ways so the kernel owns regression,
memoization, and non-ground enumeration generically:

* ``initially``  - truth at the initial situation,
* ``successor``  - one successor-state step given the action and the
  instance's prior truth,
* ``candidates`` - a finite superset of the ground instances that can
  hold in the given situation, enabling queries with variables.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Iterable, Union

from .query import QueryExpr
from .terms import ActionInstance, FluentInstance, Situation

if TYPE_CHECKING:  # pragma: no cover - import cycle guard, types only
    from .engine import Engine


class FluentKind(ABC):
    """A named fluent family; instances are ``FluentInstance(name, args)``."""

    name: str

    @abstractmethod
    def initially(self, instance: FluentInstance, kb) -> bool:
        """Truth of a ground instance at ``Initial``; ``kb`` is the provider
        registered under the initial situation's kb id."""

    @abstractmethod
    def successor(self, instance: FluentInstance, act: ActionInstance, held_before: bool) -> bool:
        """Truth after doing ``act``, given the instance's prior truth.

        Must cover the frame case: return ``held_before`` for unrelated
        actions.
        """

    @abstractmethod
    def candidates(self, situation: Situation) -> Iterable[FluentInstance]:
        """Finite set of ground instances covering everything that can hold
        in ``situation``.  May over-approximate, never under-approximate."""


class ActionKind(ABC):
    """A named action family; instances are ``ActionInstance(name, args)``.

    Subclasses state their precondition either declaratively, by overriding
    ``precondition`` to return a query expression (or a plain bool), or
    procedurally by overriding ``poss`` itself.
    """

    name: str

    def precondition(self, act: ActionInstance) -> Union[QueryExpr, bool]:
        """The possibility condition for ``act``; True means always possible."""
        return True

    def poss(self, act: ActionInstance, situation: Situation, engine: "Engine") -> bool:
        cond = self.precondition(act)
        if isinstance(cond, bool):
            return cond
        return engine.query_true(cond, situation)

    def rejection(self, act: ActionInstance, situation: Situation, engine: "Engine") -> str:
        """Reason code reported when ``poss`` is false; kinds with richer
        diagnostics override this."""
        return "not-possible"
