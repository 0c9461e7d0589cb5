"""Exact q-series engine for elliptic genera, theta quotients and the forms f_s."""

__version__ = "0.1.0"

from .qcore import GaussianRational, Jet, QSeries, parse_series, render_series
from .theta import ThetaKind, theta_jet, theta_transform_table
from .charclass import ManifoldData, RootSystem, SymmetricSeries, parse_manifold_text
from .genus import elliptic_genus, eta_representative, f_s, f_s_closed, f_s_inverse, p_form
from .modcheck import GroupElement, check_modular_weight

__all__ = [
    "GaussianRational", "Jet", "QSeries", "parse_series", "render_series",
    "ThetaKind", "theta_jet", "theta_transform_table",
    "ManifoldData", "RootSystem", "SymmetricSeries", "parse_manifold_text",
    "elliptic_genus", "eta_representative", "f_s", "f_s_closed", "f_s_inverse", "p_form",
    "GroupElement", "check_modular_weight",
]
