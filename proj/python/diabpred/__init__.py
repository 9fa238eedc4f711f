"""Diabetes risk prediction on BRFSS health indicators."""

from ._core import (
    DiabpredError,
    LogisticModel,
    TreeModel,
    classification_report,
    error_kind_exit_code,
    fit_logistic,
    fit_tree,
    format_report,
    grid_search,
    load_csv,
    render_report,
    roc_auc,
    run,
    smote,
)

__all__ = [
    "DiabpredError",
    "LogisticModel",
    "TreeModel",
    "classification_report",
    "error_kind_exit_code",
    "fit_logistic",
    "fit_tree",
    "format_report",
    "grid_search",
    "load_csv",
    "render_report",
    "roc_auc",
    "run",
    "smote",
]
