from ._core import (
    BasisFamily,
    BoundaryConfig,
    BoundaryOperator,
    Side,
    Spectrum,
    TheoremId,
    boundary_trace,
    certify,
    data_norms,
    energy_parseval,
    energy_quadrature,
    evaluate,
    evaluate_grid,
    fdm,
    lift_horizontal_data,
    rhs_bound,
    sharpness,
    solve_vertical_data,
    superpose,
)

__all__ = [
    "BasisFamily",
    "BoundaryConfig",
    "BoundaryOperator",
    "Side",
    "Spectrum",
    "TheoremId",
    "boundary_trace",
    "certify",
    "data_norms",
    "energy_parseval",
    "energy_quadrature",
    "evaluate",
    "evaluate_grid",
    "fdm",
    "lift_horizontal_data",
    "rhs_bound",
    "sharpness",
    "solve_vertical_data",
    "superpose",
]
