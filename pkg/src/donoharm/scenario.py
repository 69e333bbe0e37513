"""Scenario files, the built-in catalog, and report rendering.

Scenario files are JSON.  Every numeric literal must be an exact fraction
string "a/b" or an integer; decimals are rejected outright, because a silent
float conversion would break the exact-equality guarantees downstream.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .engine import ParadoxReport
from .lottery import Chance, CoherenceReport, Leaf, LotteryTree, PenaltySpec
from .model import (
    ArmOutcomeModel,
    AsymmetricUtilitySpec,
    Bernoulli,
    Degenerate,
    ModelError,
    OutcomeUtility,
    PopulationModel,
    StrataDistribution,
    UnitType,
    rational,
    validate_population,
)
from .simulate import SimulationEstimate
from .strata import (
    ChamberParameterization,
    marginals_of,
    strata_from_chambers,
    strata_from_joint,
)

KINDS = ("strata", "population", "chambers", "lottery_pair")
VARIATION_LOCI = ("within_unit", "across_unit", "mixed")


class ScenarioError(ValueError):
    """Malformed or invalid scenario document; message carries the field path."""


@dataclass(frozen=True)
class LotteryPair:
    left: LotteryTree
    right: LotteryTree
    penalty: PenaltySpec


Payload = Union[StrataDistribution, PopulationModel, ChamberParameterization, LotteryPair]


@dataclass(frozen=True)
class ScenarioFile:
    name: str
    kind: str
    payload: Payload
    utility: OutcomeUtility | None = None
    asymmetry: AsymmetricUtilitySpec | None = None
    variation_locus: str | None = None
    description: str | None = None


# ---------------------------------------------------------------------------
# parsing

_FRACTION_RE = re.compile(r"^-?\d+(/\d+)?$")


def _fraction(value: Any, path: str) -> Fraction:
    if isinstance(value, bool):
        raise ScenarioError(f"{path}: expected a fraction, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ScenarioError(f"{path}: decimal literal {value!r} rejected; use exact fractions")
    if isinstance(value, str):
        if _FRACTION_RE.match(value):
            try:
                return Fraction(value)
            except ZeroDivisionError:
                raise ScenarioError(f"{path}: zero denominator in {value!r}") from None
        raise ScenarioError(f"{path}: {value!r} is not 'a/b' or an integer; use exact fractions")
    raise ScenarioError(f"{path}: expected a fraction string or integer, got {type(value).__name__}")


def _require(obj: Any, keys: set[str], path: str, optional: set[str] = frozenset()) -> None:
    if not isinstance(obj, dict):
        raise ScenarioError(f"{path}: expected an object")
    missing = keys - obj.keys()
    if missing:
        raise ScenarioError(f"{path}: missing field(s) {sorted(missing)}")
    unknown = obj.keys() - keys - optional
    if unknown:
        raise ScenarioError(f"{path}: unknown field(s) {sorted(unknown)}")


def _parse_arm(obj: Any, path: str) -> ArmOutcomeModel:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ScenarioError(f"{path}: expected {{'degenerate': 0|1}} or {{'bernoulli': 'a/b'}}")
    ((key, value),) = obj.items()
    if key == "degenerate":
        if value not in (0, 1):
            raise ScenarioError(f"{path}.degenerate: expected 0 or 1, got {value!r}")
        return Degenerate(value)
    if key == "bernoulli":
        return Bernoulli(_fraction(value, f"{path}.bernoulli"))
    raise ScenarioError(f"{path}: unknown arm kind {key!r}")


def _parse_tree(obj: Any, path: str) -> LotteryTree:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ScenarioError(f"{path}: expected {{'leaf': ...}} or {{'chance': [...]}}")
    ((key, value),) = obj.items()
    if key == "leaf":
        return Leaf(_fraction(value, f"{path}.leaf"))
    if key == "chance":
        if not isinstance(value, list):
            raise ScenarioError(f"{path}.chance: expected a list of [prob, subtree] pairs")
        branches = []
        for i, item in enumerate(value):
            if not isinstance(item, list) or len(item) != 2:
                raise ScenarioError(f"{path}.chance[{i}]: expected a [prob, subtree] pair")
            prob = _fraction(item[0], f"{path}.chance[{i}][0]")
            branches.append((prob, _parse_tree(item[1], f"{path}.chance[{i}][1]")))
        try:
            return Chance(tuple(branches))
        except ModelError as exc:
            raise ScenarioError(f"{path}.chance: {exc}") from None
    raise ScenarioError(f"{path}: unknown tree node {key!r}")


def _parse_payload(kind: str, obj: Any, path: str) -> Payload:
    try:
        if kind == "chambers":
            _require(obj, {"phi0", "phi1"}, path)
            return ChamberParameterization(
                _fraction(obj["phi0"], f"{path}.phi0"),
                _fraction(obj["phi1"], f"{path}.phi1"),
            )
        if kind == "strata":
            _require(obj, {"s11", "s00", "s10", "s01"}, path)
            return strata_from_joint(
                _fraction(obj["s11"], f"{path}.s11"),
                _fraction(obj["s00"], f"{path}.s00"),
                _fraction(obj["s10"], f"{path}.s10"),
                _fraction(obj["s01"], f"{path}.s01"),
            )
        if kind == "population":
            _require(obj, {"unit_types"}, path, optional={"arm0_label", "arm1_label"})
            if not isinstance(obj["unit_types"], list) or not obj["unit_types"]:
                raise ScenarioError(f"{path}.unit_types: expected a non-empty list")
            units = []
            for i, t in enumerate(obj["unit_types"]):
                tpath = f"{path}.unit_types[{i}]"
                _require(t, {"label", "weight", "arm0", "arm1"}, tpath, optional={"dependence"})
                dep = None
                if "dependence" in t:
                    dpath = f"{tpath}.dependence"
                    _require(t["dependence"], {"s11", "s00", "s10", "s01"}, dpath)
                    dep = strata_from_joint(
                        _fraction(t["dependence"]["s11"], f"{dpath}.s11"),
                        _fraction(t["dependence"]["s00"], f"{dpath}.s00"),
                        _fraction(t["dependence"]["s10"], f"{dpath}.s10"),
                        _fraction(t["dependence"]["s01"], f"{dpath}.s01"),
                    )
                units.append(
                    UnitType(
                        label=str(t["label"]),
                        weight=_fraction(t["weight"], f"{tpath}.weight"),
                        arm0=_parse_arm(t["arm0"], f"{tpath}.arm0"),
                        arm1=_parse_arm(t["arm1"], f"{tpath}.arm1"),
                        cross_arm_dependence=dep,
                    )
                )
            model = PopulationModel(
                unit_types=tuple(units),
                arm0_label=str(obj.get("arm0_label", "control")),
                arm1_label=str(obj.get("arm1_label", "treatment")),
            )
            violations = validate_population(model)
            if violations:
                raise ScenarioError(f"{path}: " + "; ".join(violations))
            return model
        if kind == "lottery_pair":
            _require(obj, {"left", "right", "penalty"}, path)
            return LotteryPair(
                left=_parse_tree(obj["left"], f"{path}.left"),
                right=_parse_tree(obj["right"], f"{path}.right"),
                penalty=PenaltySpec(_fraction(obj["penalty"], f"{path}.penalty")),
            )
    except ModelError as exc:
        raise ScenarioError(f"{path}: {exc}") from None
    raise ScenarioError(f"kind: unknown kind {kind!r}; expected one of {KINDS}")


def parse_scenario(document: Union[str, dict]) -> ScenarioFile:
    """Parse a scenario from JSON text or an already-loaded object."""
    if isinstance(document, str):
        try:
            # parse_float trap: reject 0.5 etc. before it silently becomes a float
            obj = json.loads(document, parse_float=_reject_float)
        except ScenarioError:
            raise
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"malformed JSON: {exc}") from None
    else:
        obj = document
    _require(
        obj,
        {"name", "kind", "payload"},
        "$",
        optional={"utility", "asymmetry", "variation_locus", "description"},
    )
    kind = obj["kind"]
    if kind not in KINDS:
        raise ScenarioError(f"$.kind: unknown kind {kind!r}; expected one of {KINDS}")
    utility = None
    if "utility" in obj:
        _require(obj["utility"], {"u0", "u1"}, "$.utility")
        utility = OutcomeUtility(
            _fraction(obj["utility"]["u0"], "$.utility.u0"),
            _fraction(obj["utility"]["u1"], "$.utility.u1"),
        )
    asymmetry = None
    if "asymmetry" in obj:
        _require(obj["asymmetry"], {"gain", "loss"}, "$.asymmetry", optional={"tie"})
        try:
            asymmetry = AsymmetricUtilitySpec(
                gain_weight=_fraction(obj["asymmetry"]["gain"], "$.asymmetry.gain"),
                loss_weight=_fraction(obj["asymmetry"]["loss"], "$.asymmetry.loss"),
                tie_value=_fraction(obj["asymmetry"].get("tie", 0), "$.asymmetry.tie"),
            )
        except ModelError as exc:
            raise ScenarioError(f"$.asymmetry: {exc}") from None
    locus = obj.get("variation_locus")
    if locus is not None and locus not in VARIATION_LOCI:
        raise ScenarioError(
            f"$.variation_locus: {locus!r} not in {VARIATION_LOCI}"
        )
    return ScenarioFile(
        name=str(obj["name"]),
        kind=kind,
        payload=_parse_payload(kind, obj["payload"], "$.payload"),
        utility=utility,
        asymmetry=asymmetry,
        variation_locus=locus,
        description=obj.get("description"),
    )


def _reject_float(text: str) -> float:
    raise ScenarioError(f"decimal literal {text!r} rejected; use exact fractions")


def load_scenario(path: Union[str, Path]) -> ScenarioFile:
    return parse_scenario(Path(path).read_text())


# ---------------------------------------------------------------------------
# serialization (inverse of parse_scenario; round trip is the identity)


def fraction_str(q: Fraction) -> str:
    return str(q)


def _serialize_arm(arm: ArmOutcomeModel) -> dict:
    if isinstance(arm, Degenerate):
        return {"degenerate": arm.outcome}
    return {"bernoulli": fraction_str(arm.survival_prob)}


def _serialize_tree(t: LotteryTree) -> dict:
    if isinstance(t, Leaf):
        return {"leaf": fraction_str(t.utility)}
    return {"chance": [[fraction_str(p), _serialize_tree(sub)] for p, sub in t.branches]}


def _serialize_strata(d: StrataDistribution) -> dict:
    return {
        "s11": fraction_str(d.mass_11),
        "s00": fraction_str(d.mass_00),
        "s10": fraction_str(d.mass_10),
        "s01": fraction_str(d.mass_01),
    }


def serialize_scenario(sc: ScenarioFile) -> dict:
    payload: dict
    if sc.kind == "chambers":
        assert isinstance(sc.payload, ChamberParameterization)
        payload = {
            "phi0": fraction_str(sc.payload.phi0_loaded_prob),
            "phi1": fraction_str(sc.payload.phi1_loaded_prob),
        }
    elif sc.kind == "strata":
        assert isinstance(sc.payload, StrataDistribution)
        payload = _serialize_strata(sc.payload)
    elif sc.kind == "population":
        assert isinstance(sc.payload, PopulationModel)
        payload = {
            "arm0_label": sc.payload.arm0_label,
            "arm1_label": sc.payload.arm1_label,
            "unit_types": [
                {
                    "label": t.label,
                    "weight": fraction_str(t.weight),
                    "arm0": _serialize_arm(t.arm0),
                    "arm1": _serialize_arm(t.arm1),
                    **(
                        {"dependence": _serialize_strata(t.cross_arm_dependence)}
                        if t.cross_arm_dependence is not None
                        else {}
                    ),
                }
                for t in sc.payload.unit_types
            ],
        }
    else:
        assert isinstance(sc.payload, LotteryPair)
        payload = {
            "left": _serialize_tree(sc.payload.left),
            "right": _serialize_tree(sc.payload.right),
            "penalty": fraction_str(sc.payload.penalty.factor),
        }
    doc: dict = {"name": sc.name, "kind": sc.kind, "payload": payload}
    if sc.utility is not None:
        doc["utility"] = {"u0": fraction_str(sc.utility.u0), "u1": fraction_str(sc.utility.u1)}
    if sc.asymmetry is not None:
        doc["asymmetry"] = {
            "gain": fraction_str(sc.asymmetry.gain_weight),
            "loss": fraction_str(sc.asymmetry.loss_weight),
            "tie": fraction_str(sc.asymmetry.tie_value),
        }
    if sc.variation_locus is not None:
        doc["variation_locus"] = sc.variation_locus
    if sc.description is not None:
        doc["description"] = sc.description
    return doc


# ---------------------------------------------------------------------------
# canonicalization: every non-lottery scenario maps to a population model
# plus a deterministic (joint-law) view


def as_population(sc: ScenarioFile) -> PopulationModel:
    if sc.kind == "population":
        assert isinstance(sc.payload, PopulationModel)
        return sc.payload
    if sc.kind == "chambers":
        assert isinstance(sc.payload, ChamberParameterization)
        d = strata_from_chambers(sc.payload)
    elif sc.kind == "strata":
        d = sc.payload
        assert isinstance(d, StrataDistribution)
    else:
        raise ScenarioError(f"scenario {sc.name!r} (kind {sc.kind}) has no population model")
    p0, p1 = marginals_of(d)
    return PopulationModel(
        unit_types=(
            UnitType(
                label="everyone",
                weight=rational(1),
                arm0=Bernoulli(p0),
                arm1=Bernoulli(p1),
                cross_arm_dependence=d,
            ),
        )
    )


def as_deterministic_view(sc: ScenarioFile) -> StrataDistribution:
    from .engine import deterministic_view_of

    if sc.kind == "chambers":
        assert isinstance(sc.payload, ChamberParameterization)
        return strata_from_chambers(sc.payload)
    if sc.kind == "strata":
        assert isinstance(sc.payload, StrataDistribution)
        return sc.payload
    if sc.kind == "population":
        assert isinstance(sc.payload, PopulationModel)
        return deterministic_view_of(sc.payload)
    raise ScenarioError(f"scenario {sc.name!r} (kind {sc.kind}) has no joint-law view")


# ---------------------------------------------------------------------------
# built-in catalog


def _roulette_scenario() -> ScenarioFile:
    return ScenarioFile(
        name="russian_roulette",
        kind="chambers",
        payload=ChamberParameterization(rational(1, 6), rational(1, 7)),
        variation_locus="within_unit",
        description=(
            "Two revolver games: the status quo kills with chance 1/6, the "
            "alternative with chance 1/7; each pull is a fresh spin."
        ),
    )


def _snakebite_scenario() -> ScenarioFile:
    units = (
        UnitType("immune_to_neither_condition", rational(30, 42), Degenerate(1), Degenerate(1)),
        UnitType("has_both_conditions", rational(1, 42), Degenerate(0), Degenerate(0)),
        UnitType("has_new_antidote_condition_only", rational(5, 42), Degenerate(1), Degenerate(0)),
        UnitType("has_current_antidote_condition_only", rational(6, 42), Degenerate(0), Degenerate(1)),
    )
    return ScenarioFile(
        name="snakebite",
        kind="population",
        payload=PopulationModel(units, "current_antidote", "new_antidote"),
        variation_locus="across_unit",
        description=(
            "Antidote choice where failure is a fixed genetic attribute of each "
            "patient: 1/6 of the population fails on the current antidote, an "
            "independent 1/7 fails on the proposed one."
        ),
    )


def _ssn_scenario() -> ScenarioFile:
    units = tuple(
        UnitType(
            label=f"ssn_residue_{r:02d}_mod_42",
            weight=rational(1, 42),
            arm0=Degenerate(0 if r % 6 == 0 else 1),
            arm1=Degenerate(0 if r % 7 == 0 else 1),
        )
        for r in range(1, 43)
    )
    return ScenarioFile(
        name="ssn_divisibility",
        kind="population",
        payload=PopulationModel(units, "status_quo", "intervention"),
        variation_locus="across_unit",
        description=(
            "Customers are lost when their ID is divisible by 6 (status quo) or "
            "by 7 (intervention).  Mathematically deterministic, but the strata carry "
            "no distinguishing characteristics, so a stochastic reading is also "
            "defensible."
        ),
    )


def _migraine_scenario() -> ScenarioFile:
    # Numeric parameters are an implementer-chosen instantiation of a mixed
    # within/across-unit story; they are not canonical values.
    units = (
        UnitType(
            "migraine",
            rational(3, 10),
            arm0=Degenerate(0),
            arm1=Bernoulli(rational(1, 2)),
        ),
        UnitType(
            "non_migraine",
            rational(7, 10),
            arm0=Bernoulli(rational(4, 5)),
            arm1=Bernoulli(rational(7, 10)),
        ),
    )
    return ScenarioFile(
        name="migraine_mixed",
        kind="population",
        payload=PopulationModel(units, "current_treatment", "new_treatment"),
        variation_locus="mixed",
        description=(
            "Headache patients of two latent kinds: for migraine patients the "
            "current treatment never works and the new one sometimes does; for "
            "the rest the new treatment trades away some efficacy.  Parameters "
            "are illustrative, chosen by the implementers."
        ),
    )


def _nm_incoherence_scenario() -> ScenarioFile:
    option_a = Chance(((rational(3, 5), Leaf(rational(1))), (rational(2, 5), Leaf(rational(0)))))
    option_b = Chance(
        (
            (rational(1, 2), Leaf(rational(1))),
            (
                rational(1, 2),
                Chance(((rational(1, 5), Leaf(rational(1))), (rational(4, 5), Leaf(rational(0))))),
            ),
        )
    )
    return ScenarioFile(
        name="nm_incoherence",
        kind="lottery_pair",
        payload=LotteryPair(option_a, option_b, PenaltySpec(rational(9, 10))),
        description=(
            "Two lotteries with identical outcome distributions; a 10% "
            "uncertainty penalty at each chance node values them differently."
        ),
    )


def builtin_scenarios() -> list[ScenarioFile]:
    """The shipped catalog, one scenario per canonical worked example."""
    return [
        _roulette_scenario(),
        _snakebite_scenario(),
        _ssn_scenario(),
        _migraine_scenario(),
        _nm_incoherence_scenario(),
    ]


def builtin(name: str) -> ScenarioFile:
    for sc in builtin_scenarios():
        if sc.name == name:
            return sc
    raise ScenarioError(f"no built-in scenario named {name!r}")


# ---------------------------------------------------------------------------
# reports


def decimal_str(q: Fraction, significant_digits: int = 20) -> str:
    """Decimal rendering of an exact rational to the given significance."""
    with localcontext() as ctx:
        ctx.prec = significant_digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


@dataclass(frozen=True)
class Report:
    """Everything one evaluation run produced, ready for rendering."""

    scenario: str
    results: dict[str, Fraction] = field(default_factory=dict)
    variation_locus: str | None = None
    simulation: SimulationEstimate | None = None
    paradox: ParadoxReport | None = None
    lottery: CoherenceReport | None = None


def _render_text(r: Report) -> str:
    lines = [f"scenario: {r.scenario}"]
    if r.variation_locus is not None:
        lines.append(f"variation: {r.variation_locus}")
    for evaluator, value in r.results.items():
        lines.append(f"{evaluator}: {value} ({decimal_str(value)})")
    if r.simulation is not None:
        s = r.simulation
        target = "" if s.exact_target is None else f" target={s.exact_target}"
        lines.append(
            f"simulation: mean={s.mean!r} stderr={s.standard_error!r} "
            f"replications={s.replications}{target}"
        )
    if r.paradox is not None:
        p = r.paradox
        lines.append(
            f"paradox: dominance={p.dominance_direction} recommendation={p.recommendation} "
            f"contradiction={'true' if p.contradiction else 'false'}"
        )
        lines.append(f"note: {p.narrative}")
    if r.lottery is not None:
        c = r.lottery
        lines.append(
            f"lottery: nm_left={c.nm_left} nm_right={c.nm_right} "
            f"penalized_left={c.penalized_left} penalized_right={c.penalized_right} "
            f"violation={'true' if c.violation else 'false'}"
        )
    return "\n".join(lines) + "\n"


def _render_structured(r: Report) -> str:
    doc: dict = {"scenario": r.scenario}
    if r.variation_locus is not None:
        doc["variation_locus"] = r.variation_locus
    if r.results:
        doc["results"] = {
            evaluator: {"fraction": fraction_str(v), "decimal": decimal_str(v)}
            for evaluator, v in r.results.items()
        }
    if r.simulation is not None:
        s = r.simulation
        doc["simulation"] = {
            "mean": s.mean,
            "stderr": s.standard_error,
            "replications": s.replications,
        }
        if s.exact_target is not None:
            doc["simulation"]["target"] = fraction_str(s.exact_target)
    if r.paradox is not None:
        p = r.paradox
        doc["paradox"] = {
            "dominance": p.dominance_direction,
            "recommendation": p.recommendation,
            "contradiction": p.contradiction,
            "deterministic_value": fraction_str(p.deterministic_value),
            "stochastic_value": fraction_str(p.stochastic_value),
            "stochastic_recommendation": p.stochastic_recommendation,
            "stochastic_contradiction": p.stochastic_contradiction,
        }
    if r.lottery is not None:
        c = r.lottery
        doc["lottery"] = {
            "same_distribution": c.same_distribution,
            "nm_left": fraction_str(c.nm_left),
            "nm_right": fraction_str(c.nm_right),
            "penalized_left": fraction_str(c.penalized_left),
            "penalized_right": fraction_str(c.penalized_right),
            "violation": c.violation,
        }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_report(r: Report, format: str = "text") -> str:
    if format == "text":
        return _render_text(r)
    if format == "structured":
        return _render_structured(r)
    raise ScenarioError(f"unknown report format {format!r}")
