"""Completion of linear constant-coefficient systems and their series solutions."""

from .completion import (CanonicalSystem, CompletionStats, InconsistentSystemError,
                         autoreduce_set, delta_polynomial, ideal_membership,
                         is_confluent, lrg, parametric_derivatives, weighted_ops)
from .serialize import ring_from_json, ring_to_json, system_from_json, system_to_json
from .series import NormalForm, SeriesSolution, param_name, power_series_solution

__all__ = [
    "CanonicalSystem", "CompletionStats", "InconsistentSystemError", "NormalForm",
    "SeriesSolution", "autoreduce_set", "delta_polynomial", "ideal_membership",
    "is_confluent", "lrg", "param_name", "parametric_derivatives",
    "power_series_solution", "ring_from_json", "ring_to_json", "system_from_json",
    "system_to_json", "weighted_ops",
]
