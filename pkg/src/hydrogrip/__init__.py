"""Hydrostatic model, grasp analysis and bend-angle control of a
hydraulically driven soft gripper."""
from .errors import (
    CapacityError,
    DomainError,
    QuadratureError,
    SingularConfigurationError,
    UnboundedPayloadError,
)
from .model import (
    BendState,
    GripperParams,
    ReservoirState,
    balance_pressure,
    finger_volume,
    free_pressure,
    lambda_f,
    reservoir_state,
    zeta_f,
    zeta_r,
)
from .kinematics import (
    EffectiveJacobian,
    Finger,
    FingerChain,
    WeightVector,
    distribute_angles,
    fingertip_and_jacobian,
)
from .grasp import (
    GraspSolution,
    GridMap,
    contact_uv,
    friction_feasible,
    grasp_force,
    graspable_grid,
    max_payload,
    payload_curve,
    solve_fx,
)
from .control import (
    ControllerConfig,
    PlantConfig,
    PlantState,
    SimTrace,
    controller_step,
    plant_step,
    run_simulation,
)

__version__ = "0.1.0"
