"""Tempo-tradition corpus analysis: clustering, drift regression, reports."""

from ._core import (
    DomainError,
    ParseError,
    __version__,
    analyze_to_json,
    chi_square_sf,
    kmeans_fit,
    ols_fit,
    p_two_tailed,
    pearson_r,
    silhouette,
    synth_corpus_csv,
    t_cdf,
    z_standardize,
)

__all__ = [
    "DomainError",
    "ParseError",
    "__version__",
    "analyze_to_json",
    "chi_square_sf",
    "kmeans_fit",
    "ols_fit",
    "p_two_tailed",
    "pearson_r",
    "silhouette",
    "synth_corpus_csv",
    "t_cdf",
    "z_standardize",
]
