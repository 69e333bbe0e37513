import json
from fractions import Fraction

import pytest

from donoharm import (
    Degenerate,
    Report,
    ScenarioError,
    as_deterministic_view,
    as_population,
    builtin,
    builtin_scenarios,
    evaluate_deterministic,
    evaluate_population,
    nm_value,
    parse_scenario,
    render_report,
    serialize_scenario,
    strata_from_independent_marginals,
    validate_population,
)
from donoharm.scenario import LotteryPair, decimal_str

F = Fraction

ROULETTE_DOC = """
{
  "name": "roulette",
  "kind": "chambers",
  "payload": {"phi0": "1/6", "phi1": "1/7"},
  "variation_locus": "within_unit"
}
"""


class TestParsing:
    def test_chambers_document(self):
        sc = parse_scenario(ROULETTE_DOC)
        assert sc.kind == "chambers"
        assert sc.payload.phi0_loaded_prob == F(1, 6)
        assert sc.payload.phi1_loaded_prob == F(1, 7)

    def test_decimal_string_rejected(self):
        doc = {"name": "x", "kind": "chambers", "payload": {"phi0": "0.5", "phi1": "1/7"}}
        with pytest.raises(ScenarioError, match="use exact fractions"):
            parse_scenario(doc)

    def test_float_literal_rejected(self):
        text = '{"name": "x", "kind": "chambers", "payload": {"phi0": 0.5, "phi1": "1/7"}}'
        with pytest.raises(ScenarioError, match="use exact fractions"):
            parse_scenario(text)

    def test_decimal_weight_rejected_with_path(self):
        doc = {
            "name": "x",
            "kind": "population",
            "payload": {
                "unit_types": [
                    {"label": "a", "weight": "0.5", "arm0": {"degenerate": 1}, "arm1": {"degenerate": 1}}
                ]
            },
        }
        with pytest.raises(ScenarioError, match=r"unit_types\[0\]\.weight"):
            parse_scenario(doc)

    def test_unknown_kind(self):
        with pytest.raises(ScenarioError, match="unknown kind"):
            parse_scenario({"name": "x", "kind": "mystery", "payload": {}})

    def test_malformed_json(self):
        with pytest.raises(ScenarioError, match="malformed"):
            parse_scenario("{not json")

    def test_missing_field_reported_with_path(self):
        with pytest.raises(ScenarioError, match=r"\$\.payload.*phi1"):
            parse_scenario({"name": "x", "kind": "chambers", "payload": {"phi0": "1/6"}})

    def test_strata_sum_violation_surfaces(self):
        doc = {
            "name": "x",
            "kind": "strata",
            "payload": {"s11": "1/2", "s00": "1/2", "s10": "1/42", "s01": "0"},
        }
        with pytest.raises(ScenarioError, match="sum"):
            parse_scenario(doc)

    def test_lottery_pair_document(self):
        doc = {
            "name": "pair",
            "kind": "lottery_pair",
            "payload": {
                "left": {"chance": [["3/5", {"leaf": "1"}], ["2/5", {"leaf": "0"}]]},
                "right": {"leaf": "3/5"},
                "penalty": "9/10",
            },
        }
        sc = parse_scenario(doc)
        assert isinstance(sc.payload, LotteryPair)
        assert nm_value(sc.payload.left) == F(3, 5)

    def test_round_trip_identity(self):
        for sc in builtin_scenarios():
            assert parse_scenario(serialize_scenario(sc)) == sc

    def test_round_trip_through_json_text(self):
        sc = parse_scenario(ROULETTE_DOC)
        text = json.dumps(serialize_scenario(sc))
        assert parse_scenario(text) == sc

    def test_utility_and_asymmetry_overrides(self):
        doc = {
            "name": "x",
            "kind": "strata",
            "payload": {"s11": "1", "s00": "0", "s10": "0", "s01": "0"},
            "utility": {"u0": "0", "u1": "2"},
            "asymmetry": {"gain": "1/3", "loss": "2", "tie": "0"},
        }
        sc = parse_scenario(doc)
        assert sc.utility.u1 == 2
        assert sc.asymmetry.gain_weight == F(1, 3)
        assert sc.asymmetry.loss_weight == 2


class TestBuiltins:
    def test_catalog_names(self):
        names = [sc.name for sc in builtin_scenarios()]
        assert names == [
            "russian_roulette",
            "snakebite",
            "ssn_divisibility",
            "migraine_mixed",
            "nm_incoherence",
        ]

    def test_every_builtin_validates_and_evaluates(self):
        for sc in builtin_scenarios():
            if sc.kind == "lottery_pair":
                assert nm_value(sc.payload.left) == nm_value(sc.payload.right)
                continue
            m = as_population(sc)
            assert validate_population(m) == []
            evaluate_population(m)
            evaluate_deterministic(as_deterministic_view(sc))

    def test_ssn_matches_residue_enumeration(self):
        # Independent oracle: count residues 1..42 by divisibility pattern.
        counts = {"both": 0, "six_only": 0, "seven_only": 0, "neither": 0}
        for r in range(1, 43):
            by6, by7 = r % 6 == 0, r % 7 == 0
            key = (
                "both" if by6 and by7
                else "six_only" if by6
                else "seven_only" if by7
                else "neither"
            )
            counts[key] += 1
        assert counts == {"both": 1, "six_only": 6, "seven_only": 5, "neither": 30}
        view = as_deterministic_view(builtin("ssn_divisibility"))
        assert view.mass((1, 1)) == F(counts["neither"], 42)
        assert view.mass((0, 0)) == F(counts["both"], 42)
        assert view.mass((1, 0)) == F(counts["seven_only"], 42)
        assert view.mass((0, 1)) == F(counts["six_only"], 42)

    def test_ssn_and_roulette_same_strata_different_locus(self):
        ssn = builtin("ssn_divisibility")
        roulette = builtin("russian_roulette")
        assert as_deterministic_view(ssn) == as_deterministic_view(roulette)
        assert ssn.variation_locus != roulette.variation_locus

    def test_snakebite_deterministic_value(self):
        view = as_deterministic_view(builtin("snakebite"))
        assert evaluate_deterministic(view).expected_relative_utility == F(-1, 21)

    def test_snakebite_arms_are_degenerate(self):
        m = as_population(builtin("snakebite"))
        assert all(
            isinstance(t.arm0, Degenerate) and isinstance(t.arm1, Degenerate)
            for t in m.unit_types
        )

    def test_migraine_value(self):
        m = as_population(builtin("migraine_mixed"))
        assert evaluate_population(m).expected_relative_utility == F(1, 200)


class TestRendering:
    def _roulette_report(self):
        return Report(
            scenario="russian_roulette",
            variation_locus="within_unit",
            results={"deterministic": F(-1, 21), "stochastic": F(1, 84)},
        )

    def test_text_golden(self):
        expected = (
            "scenario: russian_roulette\n"
            "variation: within_unit\n"
            "deterministic: -1/21 (-0.047619047619047619048)\n"
            "stochastic: 1/84 (0.011904761904761904762)\n"
        )
        assert render_report(self._roulette_report(), "text") == expected

    def test_text_contains_required_lines(self):
        text = render_report(self._roulette_report(), "text")
        assert "deterministic: -1/21" in text
        assert "stochastic: 1/84" in text

    def test_structured_round_trips_fractions(self):
        doc = json.loads(render_report(self._roulette_report(), "structured"))
        assert F(doc["results"]["deterministic"]["fraction"]) == F(-1, 21)
        assert F(doc["results"]["stochastic"]["fraction"]) == F(1, 84)

    def test_empty_sections_omitted(self):
        doc = json.loads(render_report(Report(scenario="x", results={"a": F(0)}), "structured"))
        assert "simulation" not in doc and "paradox" not in doc and "lottery" not in doc

    def test_decimal_rendering_precision(self):
        assert decimal_str(F(1, 3)) == "0.33333333333333333333"
        assert decimal_str(F(-1, 21)).startswith("-0.047619047619047619")

    def test_unknown_format_rejected(self):
        with pytest.raises(ScenarioError):
            render_report(self._roulette_report(), "yaml")


class TestCanonicalization:
    def test_chambers_population_is_single_unit(self):
        m = as_population(builtin("russian_roulette"))
        assert len(m.unit_types) == 1
        t = m.unit_types[0]
        assert t.arm0.survival_prob == F(5, 6)
        assert t.arm1.survival_prob == F(6, 7)
        assert t.cross_arm_dependence == strata_from_independent_marginals(F(5, 6), F(6, 7))

    def test_lottery_has_no_population(self):
        with pytest.raises(ScenarioError):
            as_population(builtin("nm_incoherence"))
