"""
Parameter selection and error accounting for the U_alpha synthesis.

Given alpha, theta and a target precision eps:

- k1 pairs in the Grover register, so that gamma = arcsin(cos^(2 k1) theta) <= c * eps
- T Grover iterations, the integer with |pi/2 - (2T+1) gamma - alpha/2| < gamma
- k2 pairs per phase ancilla, from the per-use sigma_z budget of the chosen policy
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict

from src.qsim.angles import Angle, AngleLike, as_angle
from src.utils.exceptions import AngleDegeneracyError, BudgetInfeasibleError, PreconditionError

logger = logging.getLogger(__name__)

AncillaPolicy = Literal["shared", "fresh"]

# Relative slack when comparing a float bound against its budget
_BUDGET_SLACK = 1e-12
_MAX_K = 100_000


@dataclass(frozen=True)
class SynthesisConfig:
    """Knobs for parameter selection."""
    gamma_fraction: float = 1.0 / 8.0  # gamma <= gamma_fraction * eps
    policy: AncillaPolicy = "shared"
    max_materialized_gates: int = 2_000_000  # lowered circuits above this are counted, not built


class SynthesisParams(BaseModel):
    """Parameters chosen for one synthesis run."""

    model_config = ConfigDict(frozen=True)

    k1: int
    k2: int
    gamma: float
    grover_T: int
    policy: AncillaPolicy
    reflected: bool = False
    sigma_z_uses: int = 0

    @property
    def ancilla_policy(self) -> AncillaPolicy:
        return self.policy


def _require_basis_changing(theta: Angle) -> None:
    if theta.is_multiple_of_half_pi():
        raise AngleDegeneracyError(
            f"theta = {theta} is a multiple of pi/2; S is not basis-changing",
            angle=theta.radians,
            excluded_step="pi/2",
        )


def phase_plus_weight(theta: AngleLike) -> float:
    """cos^4 theta + sin^4 theta, the per-pair weight of the fixed component."""
    t = as_angle(theta).radians
    return math.cos(t) ** 4 + math.sin(t) ** 4


def sigma_z_bound(theta: AngleLike, k: int) -> float:
    """2 (cos^4 theta + sin^4 theta)^(k/2), the error of one sigma_z approximation."""
    return 2.0 * phase_plus_weight(theta) ** (k / 2.0)


def choose_k_sigma_z(theta: AngleLike, eps: float) -> int:
    """
    Smallest phase-ancilla size whose sigma_z approximation error is <= eps.

    Args:
        theta: Basis angle, not a multiple of pi/2
        eps: Error budget for one use, > 0

    Returns:
        k >= 1
    """
    angle = as_angle(theta)
    _require_basis_changing(angle)
    if not eps > 0.0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    q = phase_plus_weight(angle)
    if q >= 1.0:
        raise AngleDegeneracyError(
            f"theta = {angle} gives no contraction (cos^4 + sin^4 = {q})",
            angle=angle.radians,
            excluded_step="pi/2",
        )

    def fits(k: int) -> bool:
        return sigma_z_bound(angle, k) <= eps * (1.0 + _BUDGET_SLACK)

    k = max(1, math.ceil(2.0 * math.log(eps / 2.0) / math.log(q)))
    if k > _MAX_K:
        raise BudgetInfeasibleError(
            f"No phase ancilla of <= {_MAX_K} pairs reaches error {eps}",
            context={"eps": eps, "estimate": k},
        )
    while k > 1 and fits(k - 1):
        k -= 1
    while not fits(k):
        k += 1
    return k


def gamma_for(theta: AngleLike, k: int) -> float:
    """gamma = arcsin(cos^(2k) theta)."""
    c2 = math.cos(as_angle(theta).radians) ** 2
    return math.asin(c2 ** k)


def choose_k1(theta: AngleLike, gamma_target: float) -> int:
    """
    Smallest Grover-register size with gamma <= gamma_target.

    Args:
        theta: Basis angle, not a multiple of pi/2
        gamma_target: Largest acceptable gamma, > 0

    Returns:
        k1 >= 1
    """
    angle = as_angle(theta)
    _require_basis_changing(angle)
    if not gamma_target > 0.0:
        raise PreconditionError(f"gamma target must be positive, got {gamma_target}")
    c2 = math.cos(angle.radians) ** 2
    k = max(1, math.ceil(math.log(math.sin(min(gamma_target, math.pi / 2))) / math.log(c2)))
    if k > _MAX_K:
        raise BudgetInfeasibleError(
            f"No k1 <= {_MAX_K} reaches gamma <= {gamma_target}",
            context={"gamma_target": gamma_target, "estimate": k},
        )
    while k > 1 and gamma_for(angle, k - 1) <= gamma_target:
        k -= 1
    while gamma_for(angle, k) > gamma_target:
        k += 1
        if k > _MAX_K:
            raise BudgetInfeasibleError(
                f"No k1 <= {_MAX_K} reaches gamma <= {gamma_target}",
                context={"gamma_target": gamma_target},
            )
    return k


def grover_residual(alpha_half: float, gamma: float, t: int) -> float:
    return abs(math.pi / 2.0 - (2 * t + 1) * gamma - alpha_half)


def grover_iteration_count(alpha: AngleLike, gamma: float) -> int:
    """
    Number of Grover iterations for the target angle alpha/2.

    Args:
        alpha: Rotation angle; alpha/2 must satisfy 0 < gamma < pi/2 - alpha/2
        gamma: Half the per-iteration plane rotation

    Returns:
        T with |pi/2 - (2T+1) gamma - alpha/2| < gamma
    """
    alpha_half = as_angle(alpha).radians / 2.0
    return _iteration_count(alpha_half, gamma)


def _iteration_count(alpha_half: float, gamma: float) -> int:
    gap = math.pi / 2.0 - alpha_half
    if not 0.0 < gamma < gap:
        raise PreconditionError(
            f"Need 0 < gamma < pi/2 - alpha/2, got gamma={gamma}, pi/2 - alpha/2={gap}",
            context={"gamma": gamma, "gap": gap},
        )
    t0 = round((gap / gamma - 1.0) / 2.0)
    for t in (t0, t0 - 1, t0 + 1):
        if t >= 0 and grover_residual(alpha_half, gamma, t) < gamma:
            return t
    raise PreconditionError(
        f"No iteration count near {t0} satisfies the rotation inequality",
        context={"gamma": gamma, "alpha_half": alpha_half},
    )


def half_angle_target(alpha: AngleLike) -> Tuple[float, bool]:
    """
    The angle the Grover loop aims for, and whether the sign reflection follows.

    For alpha/2 >= pi/2 the loop prepares the angle pi - alpha/2 and a final
    reflection of |0...0> maps it onto alpha/2.

    Returns:
        (target angle in [0, pi/2], reflected)
    """
    angle = as_angle(alpha)
    half = angle.radians / 2.0
    if angle.pi_multiple is not None:
        reflected = angle.pi_multiple >= 1
    else:
        reflected = half >= math.pi / 2.0
    return (math.pi - half, True) if reflected else (half, False)


def grover_count_for(alpha: AngleLike, gamma: float) -> Tuple[int, bool]:
    """
    Grover iterations for W_{alpha/2}, including the reflected and boundary cases.

    When pi/2 - target <= gamma the start state is already within gamma of the
    target and the loop runs zero times.

    Returns:
        (T, reflected)
    """
    target, reflected = half_angle_target(alpha)
    if math.pi / 2.0 - target <= gamma:
        return 0, reflected
    return _iteration_count(target, gamma), reflected


def count_sigma_z_uses(grover_T: int, reflected: bool) -> int:
    """
    Z gates in the reflection-expanded W_alpha.

    One Z per reflection: two per Grover iteration plus the optional final one,
    in both W and its inverse, plus the sign gate D and the leading Z.
    """
    return 2 * (2 * grover_T + int(reflected)) + 2


def accumulation_bound(delta: float, uses: int) -> float:
    """Error after reusing one phase ancilla: delta (1 + 2 + ... + uses)."""
    if uses < 0:
        raise PreconditionError(f"uses must be >= 0, got {uses}")
    return delta * uses * (uses + 1) / 2.0


def preparation_bound(gamma: float) -> float:
    """Error of the approximate W_{alpha/2} on |0...0>."""
    return 2.0 * gamma


def error_bound(theta: AngleLike, params: SynthesisParams) -> float:
    """
    Bound on the restricted error of the sigma_z-level W_alpha.

    Two W_{alpha/2} uses contribute 4 gamma. The shared policy adds one sigma_z
    term (all uses see the same branch); the fresh policy adds one per use.
    """
    per_use = sigma_z_bound(theta, params.k2)
    uses = 1 if params.policy == "shared" else params.sigma_z_uses
    return 2.0 * preparation_bound(params.gamma) + uses * per_use


def select_params(
    alpha: AngleLike,
    theta: AngleLike,
    eps: float,
    policy: AncillaPolicy = "shared",
    config: SynthesisConfig | None = None,
) -> SynthesisParams:
    """
    Pick k1, T and k2 for a target precision.

    Args:
        alpha: Target rotation angle
        theta: Basis angle
        eps: Target restricted error, 0 < eps < 1
        policy: "shared" (one phase ancilla for every sigma_z) or "fresh"
        config: Selection knobs

    Returns:
        SynthesisParams
    """
    config = config or SynthesisConfig()
    theta = as_angle(theta)
    _require_basis_changing(theta)
    if not 0.0 < eps < 1.0:
        raise PreconditionError(f"eps must lie in (0, 1), got {eps}", context={"eps": eps})
    if policy not in ("shared", "fresh"):
        raise PreconditionError(f"Unknown ancilla policy {policy!r}")

    k1 = choose_k1(theta, config.gamma_fraction * eps)
    gamma = gamma_for(theta, k1)
    grover_T, reflected = grover_count_for(alpha, gamma)
    uses = count_sigma_z_uses(grover_T, reflected)
    if policy == "shared":
        k2 = choose_k_sigma_z(theta, gamma ** 3)
    else:
        k2 = choose_k_sigma_z(theta, (eps / 2.0) / uses)

    params = SynthesisParams(
        k1=k1,
        k2=k2,
        gamma=gamma,
        grover_T=grover_T,
        policy=policy,
        reflected=reflected,
        sigma_z_uses=uses,
    )
    logger.info(
        f"Parameters for alpha={as_angle(alpha)}, theta={theta}, eps={eps}: "
        f"k1={k1}, gamma={gamma:.3e}, T={grover_T}, k2={k2} ({policy}, {uses} sigma_z uses)"
    )
    return params
