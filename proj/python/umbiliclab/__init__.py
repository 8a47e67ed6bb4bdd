"""Near-Euclidean metric perturbations with prescribed umbilic structure.

Python bindings over the umbilic-lab C++ core: the planar and spherical
perturbation families, second-fundamental-form components on the adapted
null frame, winding-number umbilic indices, the residual identity suite,
and the L2 deviation budgets.
"""

from ._core import (
    BudgetReport,
    ConvexityScanResult,
    DegenerateNormalError,
    FlatParams,
    HalfInteger,
    IndexResult,
    InvalidParamsError,
    ResidualEntry,
    ResidualReport,
    ShapeData,
    SingularMetricError,
    SphereParams,
    Theorem1Report,
    Theorem2Report,
    UmbilicPoint,
    UmbilicReport,
    antipodal_coordinate,
    beta_antipodal,
    beta_flat,
    beta_sphere,
    convexity_scan,
    flat_budget_report,
    flat_deviation,
    flat_l2,
    flat_metric_components,
    flat_metric_det,
    flat_shape_data,
    flat_umbilic_index,
    lambda_budget_flat,
    lambda_budget_sphere,
    run_residual_suite_flat,
    run_residual_suite_sphere,
    sphere_budget_report,
    sphere_l2,
    sphere_metric_components,
    sphere_shape_data,
    sphere_umbilic_index,
    sphere_umbilic_scan,
    verify_theorem1,
    verify_theorem2,
    winding_number,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
