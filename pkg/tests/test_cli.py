"""Command-line surface: payloads, exit codes, determinism, schemas."""

import json

import jsonschema
import pytest

from bundlecalc.cli import run
from bundlecalc.registry import default_document, load_schema


def run_json(argv, stdin=None):
    code, out = run(argv, stdin)
    return code, json.loads(out)


class TestExpressionCommands:
    def test_normalize_lambda_pair(self):
        code, payload = run_json(["normalize", "lam^2 * lam^-2"])
        assert code == 0
        assert payload["normal_form"] == "1"

    def test_dim(self):
        code, payload = run_json(["dim", "rho*sigma"])
        assert code == 0
        assert payload == {"input": "rho*sigma", "rank": 12, "real": False}

    def test_conj(self):
        code, payload = run_json(["conj", "lam^3"])
        assert code == 0
        assert payload["conjugate"] == "lam^-3"

    def test_syntax_error_is_exit_two(self):
        code, payload = run_json(["normalize", "lam^^"])
        assert code == 2
        assert "error" in payload

    def test_domain_error_is_exit_one(self):
        code, payload = run_json(["normalize", "ext2(conn(U1))"])
        assert code == 1
        assert "connection" in payload["error"]


class TestBreakCommand:
    def test_formal_strong_connection(self):
        code, payload = run_json(
            ["break", "--mode", "formal", "--gauge", "SU3", "conn(SU3)"]
        )
        assert code == 0
        assert payload["result"] == "8*Tstar"

    def test_spontaneous_generation(self):
        code, payload = run_json(
            ["break", "--mode", "spontaneous", "iota*sigmaL + ext2(iota)*sigmaR"]
        )
        assert code == 0
        assert payload["result"] == "sigmaL + lam*sigmaL + lam*sigmaR"

    def test_formal_needs_gauge(self):
        code, payload = run_json(["break", "--mode", "formal", "iota"])
        assert code == 2

    def test_spontaneous_refusals(self):
        code, payload = run_json(
            ["break", "--mode", "spontaneous", "--gauge", "U1", "lam"]
        )
        assert code == 1
        assert payload["error"] == "none: too strong"
        code, payload = run_json(
            ["break", "--mode", "spontaneous", "--gauge", "SU3", "rho"]
        )
        assert code == 1
        assert payload["error"] == "none: much too strong"

    def test_formal_ew_registry_refused(self):
        code, payload = run_json(
            ["break", "--mode", "formal", "--gauge", "U2", "registry"]
        )
        assert code == 1
        assert payload["error"] == "of no interest"

    def test_registry_target_strong(self):
        code, payload = run_json(
            ["break", "--mode", "formal", "--gauge", "SU3", "registry"]
        )
        assert code == 0
        symbols = {s["symbol"] for s in payload["species"]}
        assert {"u_1", "u_2", "u_3"} <= symbols
        jsonschema.validate(payload, load_schema("species_list"))


class TestBindCommand:
    def test_meson(self):
        code, payload = run_json(
            ["bind", '[{"symbol":"u","count":1},{"symbol":"u~","count":1}]']
        )
        assert code == 0
        assert payload["classification"] == "Meson"
        jsonschema.validate(payload, load_schema("bound_verdict"))

    def test_not_bound_is_exit_zero(self):
        code, payload = run_json(["bind", '[{"symbol":"u","count":2}]'])
        assert code == 0
        assert payload["classification"] == "NotBound"
        assert payload["target"] is None

    def test_stdin_composite(self):
        code, payload = run_json(["bind"], stdin='[{"symbol":"e"},{"symbol":"e~"}]')
        assert code == 0
        assert payload["classification"] == "Atomlike"

    def test_bad_json_is_exit_two(self):
        code, _ = run_json(["bind", "not json"])
        assert code == 2

    def test_unknown_symbol_is_exit_one(self):
        code, payload = run_json(["bind", '[{"symbol":"X17"}]'])
        assert code == 1

    def test_carrier_composite_is_exit_one(self):
        code, payload = run_json(["bind", '[{"symbol":"gamma"}]'])
        assert code == 1


class TestCarriersCommand:
    @pytest.mark.parametrize(
        "kind, names",
        [
            ("electromagnetic", ["gamma"]),
            ("strong", [f"g{i}" for i in range(1, 9)]),
            ("electroweak", ["gamma", "W-", "W+", "Z0"]),
        ],
    )
    def test_entries(self, kind, names):
        code, payload = run_json(["carriers", kind])
        assert code == 0
        assert [e["name"] for e in payload["entries"]] == names
        jsonschema.validate(payload, load_schema("carrier_report"))


class TestCouplingCommand:
    def test_family(self):
        code, payload = run_json(["coupling", "family"])
        assert code == 0
        assert payload == {"family_dimension": 2}

    def test_check_default_config(self):
        code, payload = run_json(["coupling", "check"])
        assert code == 0
        assert payload["ad_invariant"] is True
        jsonschema.validate(payload, load_schema("coupling_result"))

    def test_angle_round_trip(self):
        code, payload = run_json(["coupling", "angle", "--g", "0.9", "--theta", "0.4"])
        assert code == 0
        assert payload["weinberg_angle"] == pytest.approx(0.4, abs=1e-9)
        jsonschema.validate(payload, load_schema("coupling_result"))

    def test_angle_from_gram(self):
        code, payload = run_json(
            ["coupling", "angle", "--gram", "[[4,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"]
        )
        assert code == 0
        assert payload["weinberg_angle"] == pytest.approx(0.4636476090008061)

    def test_check_non_invariant_gram(self):
        code, payload = run_json(
            ["coupling", "check", "--gram", "[[5,0,0,0],[0,1,0,0],[0,0,2,0],[0,0,0,3]]"]
        )
        assert code == 0
        assert payload["ad_invariant"] is False


class TestListCommand:
    def test_particles(self):
        code, payload = run_json(["list", "particles"])
        assert code == 0
        assert len(payload["species"]) == 36
        jsonschema.validate(payload, load_schema("species_list"))

    def test_carriers(self):
        code, payload = run_json(["list", "carriers"])
        assert code == 0
        assert len(payload["species"]) == 12

    def test_massive_neutrino_model_flag(self):
        code, payload = run_json(["--model", "massive-neutrinos", "list", "particles"])
        assert code == 0
        by_symbol = {s["symbol"]: s for s in payload["species"]}
        assert by_symbol["nu_e"]["interacting_bundle"] == "sigmaL + sigmaR"

    def test_registry_override(self, tmp_path, monkeypatch):
        doc = default_document()
        doc["species"] = [r for r in doc["species"] if r["generation"] in (None, 1)]
        path = tmp_path / "registry.json"
        path.write_text(json.dumps(doc))
        code, payload = run_json(["--registry", str(path), "list", "particles"])
        assert code == 0
        assert len(payload["species"]) == 12 + 8

        monkeypatch.setenv("BUNDLECALC_REGISTRY", str(path))
        code, payload = run_json(["list", "particles"])
        assert code == 0
        assert len(payload["species"]) == 20


class TestOutputDiscipline:
    def test_byte_identical_repeats(self):
        for argv in (
            ["normalize", "conj(rho)*iota + lam^2"],
            ["bind", '[{"symbol":"u","count":2},{"symbol":"d","count":1}]'],
            ["carriers", "electroweak"],
            ["coupling", "angle", "--g", "0.7", "--theta", "0.5"],
            ["list", "particles"],
        ):
            first = run(argv)
            second = run(argv)
            assert first == second

    def test_text_format(self):
        code, out = run(["--format", "text", "normalize", "lam^2*lam^-2"])
        assert code == 0
        assert out == "1\n"

    def test_expression_result_schema(self):
        for argv in (
            ["normalize", "iota*rho"],
            ["dim", "Tstar"],
            ["conj", "sigmaL"],
            ["break", "--mode", "spontaneous", "iota"],
        ):
            _, payload = run_json(argv)
            jsonschema.validate(payload, load_schema("expression_result"))

    def test_usage_error_exit_two(self):
        code, _ = run(["frobnicate"])
        assert code == 2
        code, _ = run([])
        assert code == 2
