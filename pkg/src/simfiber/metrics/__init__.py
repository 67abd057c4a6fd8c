"""Figures of merit for simfiber.

This subpackage contains every metric reported by the experiments:
- NMSE and off-diagonal energy of the equivalent channel
- Exact capacity, its upper bound and the zero-forcing capacity
- Monte Carlo and analytic QPSK bit error rate
- Per-layer energy attenuation
"""

from .attenuation import apply_attenuation, energy_loss, energy_retained
from .ber import BerConfig, ber_qpsk, qpsk_ber_theory
from .capacity import (
    CapacityInputs,
    capacity_exact,
    capacity_upper_bound,
    zf_capacity,
)
from .nmse import nmse, offdiagonal_energy_ratio

__all__ = [
    "nmse",
    "offdiagonal_energy_ratio",
    "CapacityInputs",
    "capacity_exact",
    "capacity_upper_bound",
    "zf_capacity",
    "BerConfig",
    "ber_qpsk",
    "qpsk_ber_theory",
    "apply_attenuation",
    "energy_retained",
    "energy_loss",
]
