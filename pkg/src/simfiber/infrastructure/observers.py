"""Solver instrumentation hooks."""

from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable


@runtime_checkable
class UpdateObserver(Protocol):
    """Protocol for objects notified after every coordinate update of the AO loop.

    ``before`` and ``after`` are objective values J around the update.
    """

    def on_phase_update(
        self, layer: int, atom: int, before: float, after: float
    ) -> None:
        """Called after phase ``atom`` of unified layer ``layer`` was updated."""
        ...

    def on_alpha_update(self, before: float, after: float) -> None:
        """Called after the channel gain was updated."""
        ...


@dataclass(frozen=True)
class Transition:
    """One single-coordinate objective change. ``atom`` is None for alpha."""

    layer: int | None
    atom: int | None
    before: float
    after: float

    @property
    def increase(self) -> float:
        return self.after - self.before


@dataclass
class MonotonicityRecorder:
    """Collects every transition and reports those that increase J beyond ``slack``."""

    slack: float = 1e-12
    transitions: list[Transition] = field(default_factory=list)

    def on_phase_update(
        self, layer: int, atom: int, before: float, after: float
    ) -> None:
        self.transitions.append(Transition(layer, atom, before, after))

    def on_alpha_update(self, before: float, after: float) -> None:
        self.transitions.append(Transition(None, None, before, after))

    @property
    def violations(self) -> list[Transition]:
        return [t for t in self.transitions if t.increase > self.slack]

    @property
    def is_monotone(self) -> bool:
        return not self.violations
