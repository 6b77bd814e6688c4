"""Ricci flow on the a2 flag: fields, integration, equilibria, Darboux data, charts."""

from .charts import CHARTS, PRINTED_SYSTEMS, chart_diff, chart_field, chart_system, disk_projection
from .collapse import CollapseReport, collapse_diagnostics
from .darboux import DEGREE_ONE, TABLE1, DarbouxPair, completeness_sweep, darboux_search, darboux_verify
from .equilibria import Equilibrium, chart_equilibria, finite_equilibria, linearize
from .field import (
    DomainError,
    FlowState,
    Frame,
    PolyField,
    XYZ_FIELD,
    main_eq,
    mu_field,
    mu_to_xyz,
    poly_field,
    xyz_to_mu,
)
from .integrate import Trajectory, integrate
from .poly import Poly

__all__ = [
    "CHARTS", "PRINTED_SYSTEMS", "chart_diff", "chart_field", "chart_system", "disk_projection",
    "CollapseReport", "collapse_diagnostics",
    "DEGREE_ONE", "TABLE1", "DarbouxPair", "completeness_sweep", "darboux_search", "darboux_verify",
    "Equilibrium", "chart_equilibria", "finite_equilibria", "linearize",
    "DomainError", "FlowState", "Frame", "PolyField", "XYZ_FIELD",
    "main_eq", "mu_field", "mu_to_xyz", "poly_field", "xyz_to_mu",
    "Trajectory", "integrate", "Poly",
]
