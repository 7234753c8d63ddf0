"""Default catalog contents, document validation, and catalog queries."""

import json

import pytest

from bundlecalc.expr import GenKind, normalize
from bundlecalc.grammar import parse
from bundlecalc.registry import (
    ColorCharge,
    Interaction,
    RegistryError,
    Statistics,
    antiparticle,
    can_interact,
    default_document,
    default_registry,
    load_registry,
    statistics_of,
    GaugeStructure,
    SU3_GAUGE,
    U1_GAUGE,
    U2_GAUGE,
)
from bundlecalc.expr import GaugeKind, Generator


class TestDefaultCatalog:
    def test_eight_gluons(self, catalog):
        gluons = [s for s in catalog if s.name.startswith("gluon")]
        assert len(gluons) == 8
        assert {s.symbol for s in gluons} == {f"g{i}" for i in range(1, 9)}

    def test_lepton_generations(self, catalog):
        pairs = {
            (s.generation, s.symbol)
            for s in catalog
            if not s.is_carrier and s.color is None and "~" not in s.symbol
        }
        assert pairs == {
            (1, "e"), (1, "nu_e"),
            (2, "mu"), (2, "nu_mu"),
            (3, "tau"), (3, "nu_tau"),
        }

    def test_carrier_count_is_twelve(self, catalog):
        assert len(catalog.carriers()) == 12

    def test_six_quark_flavors_plus_antis(self, catalog):
        quarks = [s for s in catalog if s.color is ColorCharge.QUARK]
        antiquarks = [s for s in catalog if s.color is ColorCharge.ANTIQUARK]
        assert len(quarks) == 6
        assert len(antiquarks) == 6

    def test_species_total(self, catalog):
        assert len(catalog) == 36

    def test_charge_convention(self, catalog):
        assert catalog.find("e").charge_thirds == 3
        assert catalog.find("e~").charge_thirds == -3
        assert catalog.find("u").charge_thirds == -2
        assert catalog.find("d").charge_thirds == 1
        # proton uud mirrors the electron charge; hydrogen is neutral
        proton = 2 * catalog.find("u").charge_thirds + catalog.find("d").charge_thirds
        assert proton == -3
        assert proton + catalog.find("e").charge_thirds == 0

    def test_quark_bundles(self, catalog):
        u = catalog.find("u")
        assert normalize(u.interacting_bundle) == normalize(parse("rho*sigma"))
        ubar = catalog.find("u~")
        assert normalize(ubar.interacting_bundle) == normalize(
            parse("conj(rho*sigma)")
        )

    def test_massive_neutrino_variant(self):
        massive = default_registry(massive_neutrinos=True)
        assert massive.massive_neutrinos
        nu = massive.find("nu_e")
        assert normalize(nu.interacting_bundle) == normalize(parse("sigma"))
        massless = default_registry()
        assert normalize(massless.find("nu_e").interacting_bundle) == normalize(
            parse("sigmaL")
        )


class TestAntiparticle:
    def test_electron_positron(self, catalog):
        e = catalog.find("e")
        positron = antiparticle(e, catalog)
        assert positron.symbol == "e~"
        assert positron.charge_thirds == -3

    def test_photon_self_conjugate(self, catalog):
        gamma = catalog.find("gamma")
        assert antiparticle(gamma, catalog) is gamma
        # its bundle expression is conjugation-invariant
        assert normalize(parse("conj(conn(U1))")) == normalize(parse("conn(U1)"))

    def test_quark_color_flips(self, catalog):
        u = catalog.find("u")
        ubar = antiparticle(u, catalog)
        assert ubar.symbol == "u~"
        assert ubar.color is ColorCharge.ANTIQUARK

    def test_w_pair(self, catalog):
        assert antiparticle(catalog.find("W-"), catalog).symbol == "W+"
        assert antiparticle(catalog.find("W+"), catalog).symbol == "W-"

    def test_involution_over_catalog(self, catalog):
        for s in catalog:
            assert antiparticle(antiparticle(s, catalog), catalog) == s

    def test_closure_over_catalog(self, catalog):
        for s in catalog:
            assert antiparticle(s, catalog) in list(catalog)


class TestCanInteract:
    def test_neutrino_not_electromagnetic(self, catalog):
        nu = catalog.find("nu_e")
        assert not can_interact(nu, Interaction.ELECTROMAGNETIC)
        # its interacting bundle carries lambda exponent zero throughout
        assert {
            m.lambda_exp for m in normalize(nu.interacting_bundle).monomials
        } == {0}

    def test_leptons_not_strong(self, catalog):
        assert not can_interact(catalog.find("e"), Interaction.STRONG)

    def test_quarks_strong(self, catalog):
        assert can_interact(catalog.find("u"), Interaction.STRONG)

    def test_all_matter_weak(self, catalog):
        for s in catalog.matter():
            assert can_interact(s, Interaction.WEAK)

    def test_electroweak_not_a_capability_kind(self, catalog):
        with pytest.raises(ValueError):
            can_interact(catalog.find("e"), Interaction.ELECTROWEAK)


class TestStatistics:
    def test_lookups(self, catalog):
        assert statistics_of(catalog.find("e")) is Statistics.FERMION
        assert statistics_of(catalog.find("gamma")) is Statistics.BOSON
        assert statistics_of(catalog.find("u")) is Statistics.FERMION
        assert statistics_of(catalog.find("Z0")) is Statistics.BOSON


class TestGaugeStructures:
    def test_table(self):
        assert (U1_GAUGE.fibre_dim, U1_GAUGE.dim_g) == (1, 1)
        assert (U2_GAUGE.fibre_dim, U2_GAUGE.dim_g) == (2, 4)
        assert (SU3_GAUGE.fibre_dim, SU3_GAUGE.dim_g) == (3, 8)
        assert U1_GAUGE.delta.kind is GenKind.LAMBDA
        assert U2_GAUGE.delta.kind is GenKind.IOTA
        assert SU3_GAUGE.delta.kind is GenKind.RHO

    def test_geometry_tags(self):
        assert SU3_GAUGE.geometry == {"hermitian_metric", "unit_det_section"}
        assert U1_GAUGE.geometry == {"hermitian_metric"}
        assert U2_GAUGE.geometry == {"hermitian_metric"}

    def test_no_other_instances(self):
        with pytest.raises(ValueError):
            GaugeStructure(
                GaugeKind.U1,
                Generator(GenKind.IOTA),
                2,
                4,
                frozenset({"hermitian_metric"}),
            )


class TestLoading:
    def test_duplicate_symbol_rejected(self):
        doc = default_document()
        doc["species"].append(dict(doc["species"][-1]))
        with pytest.raises(RegistryError, match="duplicate"):
            load_registry(doc)

    def test_schema_violation_rejected(self):
        doc = default_document()
        doc["species"][0]["statistics"] = "anyon"
        with pytest.raises(RegistryError, match="invalid"):
            load_registry(doc)

    def test_quark_needs_one_rho_factor(self):
        doc = default_document()
        for record in doc["species"]:
            if record["symbol"] == "u":
                record["interacting_bundle"] = "sigma"
        with pytest.raises(RegistryError, match="rho factor"):
            load_registry(doc)

    def test_charge_exponent_consistency_enforced(self):
        doc = default_document()
        for record in doc["species"]:
            if record["symbol"] == "e":
                record["interacting_bundle"] = "lam^2*sigma"
        with pytest.raises(RegistryError, match="do not match charge"):
            load_registry(doc)

    def test_conjugation_closure_enforced(self):
        doc = default_document()
        doc["species"] = [r for r in doc["species"] if r["symbol"] != "e~"]
        with pytest.raises(RegistryError, match="antiparticle"):
            load_registry(doc)

    def test_bad_bundle_string_rejected(self):
        doc = default_document()
        doc["species"][0]["free_bundle"] = "lam^^"
        with pytest.raises(RegistryError, match="free_bundle"):
            load_registry(doc)

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "registry.json"
        path.write_text(json.dumps(default_document()))
        catalog = load_registry(path)
        assert len(catalog) == 36

    def test_find_unknown_symbol(self, catalog):
        with pytest.raises(RegistryError, match="no species"):
            catalog.find("X17")
