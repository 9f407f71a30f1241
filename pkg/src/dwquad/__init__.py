"""Arithmetic Dijkgraaf-Witten invariants of imaginary quadratic integer rings.

The public surface: FieldSpec fixes the field from signed primes, preset
names the quaternion/dihedral duality data, EtaleContext carries the cached
arithmetic, and compute_report runs the whole pipeline.
"""

from .duality import DualityData, build_duality_data, preset, semidirect_product
from .etale import EtaleContext
from .invariants import (
    InvariantReport,
    PaperObservationViolated,
    compute_report,
    duality_verdict,
    groupoid_mass,
    torsor_count,
    z_omega,
    z_omega_hat,
)
from .quadfield import ClassGroup, FieldSpec, QuadIdeal, QuadInt, two_torsion
from .relquad import RelElement, SearchExhausted, cup_eval, norm_equation_search

__version__ = "0.1.0"

__all__ = [
    "ClassGroup",
    "DualityData",
    "EtaleContext",
    "FieldSpec",
    "InvariantReport",
    "PaperObservationViolated",
    "QuadIdeal",
    "QuadInt",
    "RelElement",
    "SearchExhausted",
    "build_duality_data",
    "compute_report",
    "cup_eval",
    "duality_verdict",
    "groupoid_mass",
    "norm_equation_search",
    "preset",
    "semidirect_product",
    "torsor_count",
    "two_torsion",
    "z_omega",
    "z_omega_hat",
]
