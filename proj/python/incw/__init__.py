"""Identification of incidence-function weights in a reaction-diffusion SIR model.

Thin Python layer over the C++ library. Fields are numpy arrays of shape (nx, nt).
"""

from ._core import (
    DivergenceError,
    GradcheckReport,
    IdentifyResult,
    IncidenceSpec,
    IterationRecord,
    ModelParams,
    NumericalError,
    Observations,
    OptimizerConfig,
    RCoupling,
    SpaceTimeGrid,
    ExperimentConfig,
    ForwardProblem,
    StateTrajectory,
    AdjointTrajectory,
    LinearizedTrajectory,
    CostReport,
    cmd_gradcheck,
    cmd_identify,
    cmd_make_obs,
    cmd_simulate,
    cost,
    gradient,
    identify,
    incidence_dI,
    incidence_dR,
    incidence_dS,
    incidence_value,
    load_config,
    load_observations,
    make_observations,
    parse_config,
    project_simplex,
    save_observations,
    simpson2d,
    solve_adjoint,
    solve_forward,
    solve_linearized,
)

__all__ = [name for name in dir() if not name.startswith("_")]
