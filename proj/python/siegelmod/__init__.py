"""Exact Fourier expansions of Siegel theta series and mod p singularity checks."""

from ._siegelmod import (
    Expansion,
    SiegelError,
    canonical,
    catalog_names,
    choose_t,
    harmonic_theta,
    is_mod_singular,
    p_rank,
    pipeline,
    read_sfex,
    report,
    scalar_theta,
    theorem_check,
    weyl_dimension,
)

__all__ = [
    "Expansion",
    "SiegelError",
    "canonical",
    "catalog_names",
    "choose_t",
    "harmonic_theta",
    "is_mod_singular",
    "p_rank",
    "pipeline",
    "read_sfex",
    "report",
    "scalar_theta",
    "theorem_check",
    "weyl_dimension",
]
