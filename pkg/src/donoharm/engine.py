"""The asymmetric comparison rule and its three exact evaluators.

The deterministic evaluator applies the asymmetric rule inside the joint
(y0, y1) law and then integrates; the stochastic evaluator first collapses
each arm's within-unit randomness to an expected utility and only then
applies the asymmetric rule.  Outside the symmetric-weights special case
these two orderings do not commute, which is the whole point: the same
marginal survival probabilities can yield opposite recommendations.

All arithmetic here is exact; see :mod:`donoharm.simulate` for the
approximate Monte Carlo counterpart.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .model import (
    ArmOutcomeModel,
    AsymmetricUtilitySpec,
    ModelError,
    ONE,
    OutcomeUtility,
    PopulationModel,
    StrataDistribution,
    ZERO,
    validate_population,
)
from .strata import marginals_of, strata_from_independent_marginals

DEFAULT_UTILITY = OutcomeUtility()
DEFAULT_ASYMMETRY = AsymmetricUtilitySpec()


@dataclass(frozen=True)
class EvaluationResult:
    """Exact expected relative utility plus the pieces it is built from.

    classical_effect is the plain difference of per-arm expected utilities,
    which any symmetric rule would report; the gap between it and
    expected_relative_utility is exactly the asymmetry at work.
    """

    expected_relative_utility: Fraction
    parameterization: str  # "deterministic" | "stochastic" | "population"
    per_unit_breakdown: tuple[tuple[str, Fraction, Fraction], ...]
    classical_effect: Fraction


def asymmetric_relative_utility(
    u0: Fraction,
    u1: Fraction,
    spec: AsymmetricUtilitySpec = DEFAULT_ASYMMETRY,
) -> Fraction:
    """Value of arm 1 relative to arm 0 given their (realized or expected) utilities."""
    u0 = Fraction(u0)
    u1 = Fraction(u1)
    if u1 == u0:
        return spec.tie_value
    if u1 > u0:
        return spec.gain_weight * (u1 - u0)
    return -spec.loss_weight * (u0 - u1)


def classical_expected_utility(
    arm: ArmOutcomeModel, u: OutcomeUtility = DEFAULT_UTILITY
) -> Fraction:
    """Expected outcome utility under one arm's law."""
    p = arm.survival_prob
    return u.u1 * p + u.u0 * (ONE - p)


def evaluate_deterministic(
    d: StrataDistribution,
    u: OutcomeUtility = DEFAULT_UTILITY,
    spec: AsymmetricUtilitySpec = DEFAULT_ASYMMETRY,
) -> EvaluationResult:
    """Apply the asymmetric rule per joint class, then integrate over the law."""
    breakdown = []
    total = ZERO
    for (y0, y1), mass in d.items():
        value = asymmetric_relative_utility(u.of(y0), u.of(y1), spec)
        breakdown.append((f"({y0},{y1})", mass, value))
        total += mass * value
    p0, p1 = marginals_of(d)
    classical = (u.u1 * p1 + u.u0 * (ONE - p1)) - (u.u1 * p0 + u.u0 * (ONE - p0))
    return EvaluationResult(
        expected_relative_utility=total,
        parameterization="deterministic",
        per_unit_breakdown=tuple(breakdown),
        classical_effect=classical,
    )


def evaluate_stochastic_unit(
    arm0: ArmOutcomeModel,
    arm1: ArmOutcomeModel,
    u: OutcomeUtility = DEFAULT_UTILITY,
    spec: AsymmetricUtilitySpec = DEFAULT_ASYMMETRY,
) -> Fraction:
    """Collapse each arm to its expected utility, then compare asymmetrically."""
    return asymmetric_relative_utility(
        classical_expected_utility(arm0, u),
        classical_expected_utility(arm1, u),
        spec,
    )


def evaluate_population(
    m: PopulationModel,
    u: OutcomeUtility = DEFAULT_UTILITY,
    spec: AsymmetricUtilitySpec = DEFAULT_ASYMMETRY,
) -> EvaluationResult:
    """Weight-weighted asymmetric comparison, one term per unit type.

    Within-unit randomness is collapsed inside each unit type; only the
    variation across unit types is exposed to the asymmetric rule.
    """
    violations = validate_population(m)
    if violations:
        raise ModelError("invalid population: " + "; ".join(violations))
    breakdown = []
    total = ZERO
    classical = ZERO
    for t in m.unit_types:
        value = evaluate_stochastic_unit(t.arm0, t.arm1, u, spec)
        breakdown.append((t.label, t.weight, value))
        total += t.weight * value
        classical += t.weight * (
            classical_expected_utility(t.arm1, u) - classical_expected_utility(t.arm0, u)
        )
    return EvaluationResult(
        expected_relative_utility=total,
        parameterization="population",
        per_unit_breakdown=tuple(breakdown),
        classical_effect=classical,
    )


def population_marginals(m: PopulationModel) -> tuple[Fraction, Fraction]:
    """Population-level survival probabilities (arm 0, arm 1)."""
    p0 = sum((t.weight * t.arm0.survival_prob for t in m.unit_types), ZERO)
    p1 = sum((t.weight * t.arm1.survival_prob for t in m.unit_types), ZERO)
    return p0, p1


def deterministic_view_of(m: PopulationModel) -> StrataDistribution:
    """Aggregate joint (y0, y1) law implied by reading the model deterministically.

    Per unit type, uses the recorded cross-arm dependence when present and
    the independent product of the arm laws otherwise; the result is the
    weighted mixture over unit types.
    """
    violations = validate_population(m)
    if violations:
        raise ModelError("invalid population: " + "; ".join(violations))
    m11 = m00 = m10 = m01 = ZERO
    for t in m.unit_types:
        joint = t.cross_arm_dependence
        if joint is None:
            joint = strata_from_independent_marginals(
                t.arm0.survival_prob, t.arm1.survival_prob
            )
        m11 += t.weight * joint.mass_11
        m00 += t.weight * joint.mass_00
        m10 += t.weight * joint.mass_10
        m01 += t.weight * joint.mass_01
    return StrataDistribution(m11, m00, m10, m01)


def _recommendation(value: Fraction) -> str:
    if value > 0:
        return "switch"
    if value < 0:
        return "stay"
    return "indifferent"


def _contradicts(dominance: str, recommendation: str) -> bool:
    return (dominance == "arm1_dominates" and recommendation == "stay") or (
        dominance == "arm0_dominates" and recommendation == "switch"
    )


@dataclass(frozen=True)
class ParadoxReport:
    """Whether the recommendation fights the marginal dominance ordering.

    contradiction refers to the deterministic reading; the stochastic
    counterparts are carried alongside so reports can show that the same
    numbers, read stochastically, agree with dominance.
    """

    dominance_direction: str  # "arm1_dominates" | "arm0_dominates" | "tie"
    recommendation: str  # "switch" | "stay" | "indifferent"
    contradiction: bool
    deterministic_value: Fraction
    stochastic_value: Fraction
    stochastic_recommendation: str
    stochastic_contradiction: bool
    narrative: str


def paradox_report(
    m: PopulationModel,
    deterministic_view: StrataDistribution,
    u: OutcomeUtility = DEFAULT_UTILITY,
    spec: AsymmetricUtilitySpec = DEFAULT_ASYMMETRY,
) -> ParadoxReport:
    """Compare dominance with the deterministic recommendation and flag conflicts."""
    p0, p1 = population_marginals(m)
    v0, v1 = marginals_of(deterministic_view)
    if (v0, v1) != (p0, p1):
        raise ModelError(
            f"deterministic view marginals ({v0}, {v1}) do not match "
            f"population marginals ({p0}, {p1})"
        )
    if p1 > p0:
        dominance = "arm1_dominates"
    elif p0 > p1:
        dominance = "arm0_dominates"
    else:
        dominance = "tie"

    det = evaluate_deterministic(deterministic_view, u, spec).expected_relative_utility
    stoch = evaluate_population(m, u, spec).expected_relative_utility
    rec = _recommendation(det)
    stoch_rec = _recommendation(stoch)
    contradiction = _contradicts(dominance, rec)
    stoch_contradiction = _contradicts(dominance, stoch_rec)

    narrative = (
        f"marginal survival {p0} vs {p1} ({dominance}); "
        f"deterministic reading values the switch at {det} ({rec}); "
        f"stochastic reading values it at {stoch} ({stoch_rec})."
    )
    if contradiction:
        narrative += " The deterministic recommendation opposes dominance."
    return ParadoxReport(
        dominance_direction=dominance,
        recommendation=rec,
        contradiction=contradiction,
        deterministic_value=det,
        stochastic_value=stoch,
        stochastic_recommendation=stoch_rec,
        stochastic_contradiction=stoch_contradiction,
        narrative=narrative,
    )
