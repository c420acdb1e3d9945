"""Numerical laboratory for exponential Tauberian theorems."""

import json as _json

from ._core import (
    Regime,
    TauberError,
    UnifiedParams,
    ck_index,
    class_m_consistent,
    classify,
    d_variants,
    dual_exponent,
    log_transform,
    make_grid,
    predict_log_f,
    primal_exponent,
    recover_primal,
    saddle_location,
    sweep,
    to_unified,
    validate,
)
from ._core import verify as _verify


def verify(params, psi_min=10.0, psi_max=1000.0, n=16, perturbation="", k=0.0):
    """Equivalence report as a dict."""
    return _json.loads(_verify(params, psi_min, psi_max, n, perturbation, k))


__all__ = [
    "Regime",
    "TauberError",
    "UnifiedParams",
    "ck_index",
    "class_m_consistent",
    "classify",
    "d_variants",
    "dual_exponent",
    "log_transform",
    "make_grid",
    "predict_log_f",
    "primal_exponent",
    "recover_primal",
    "saddle_location",
    "sweep",
    "to_unified",
    "validate",
    "verify",
]
