"""Infrastructure modules for simfiber.

This subpackage contains cross-cutting infrastructure concerns:
- UpdateObserver: Protocol for per-coordinate solver instrumentation
- MonotonicityRecorder: observer that checks monotone descent
- Seed derivation for reproducible Monte Carlo runs
"""

from .observers import MonotonicityRecorder, Transition, UpdateObserver
from .seeding import derive_seed, make_rng

__all__ = [
    "UpdateObserver",
    "MonotonicityRecorder",
    "Transition",
    "derive_seed",
    "make_rng",
]
