"""
Spin lifting criteria, spin characters and canonical involutions.
"""

from spinlift.spin.calculus import (
    Gauge,
    GaugeFlipReport,
    HalfWeight,
    InvolutionReport,
    SpinCharacterReport,
    TorsionCharacter,
    choose_gauge,
    gauge_flip_test,
    involution,
    lifts_to_spin,
    multiplicity_blind_lifts,
    random_gauge,
    rho,
    spin_character,
    spin_report,
)

__all__ = [
    "Gauge",
    "GaugeFlipReport",
    "HalfWeight",
    "InvolutionReport",
    "SpinCharacterReport",
    "TorsionCharacter",
    "choose_gauge",
    "gauge_flip_test",
    "involution",
    "lifts_to_spin",
    "multiplicity_blind_lifts",
    "random_gauge",
    "rho",
    "spin_character",
    "spin_report",
]
