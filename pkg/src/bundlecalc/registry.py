"""Catalog of particle species and their bundle assignments.

Species records pair taxonomy data (statistics, charge, color class,
generation) with two bundle expressions: the free-particle bundle and the
interacting-particle bundle.  Charges are stored as integer thirds of the
electron's charge, electron = +3, so the up quark is -2, the down quark
+1, and a proton (uud) is -3.

Interaction carriers are catalog entries too; they carry no interacting
bundle (carriers are not matter) and their free bundle is the slot they
occupy after breaking: the photon in the connection space of the
electromagnetic line bundle, the W pair in the charged cotangent slot and
its conjugate, the Z and the gluons in cotangent slots.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterator, Mapping, Sequence

import jsonschema

from . import grammar
from .expr import (
    BundleError,
    BundleExpr,
    Conj,
    GaugeKind,
    GenKind,
    Generator,
    NormalForm,
    normalize,
)


class RegistryError(BundleError):
    """Invalid registry document or a species violating an invariant."""


class Statistics(Enum):
    BOSON = "boson"
    FERMION = "fermion"


class ColorCharge(Enum):
    QUARK = "quark"
    ANTIQUARK = "antiquark"


class Interaction(Enum):
    STRONG = "strong"
    ELECTROMAGNETIC = "electromagnetic"
    WEAK = "weak"
    ELECTROWEAK = "electroweak"


@dataclass(frozen=True)
class Species:
    name: str
    symbol: str
    statistics: Statistics
    charge_thirds: int
    color: ColorCharge | None
    generation: int | None
    free_bundle: BundleExpr
    interacting_bundle: BundleExpr | None
    is_carrier: bool


_GAUGE_TABLE = {
    GaugeKind.U1: (Generator(GenKind.LAMBDA, power=1), 1, 1, frozenset({"hermitian_metric"})),
    GaugeKind.U2: (Generator(GenKind.IOTA), 2, 4, frozenset({"hermitian_metric"})),
    GaugeKind.SU3: (
        Generator(GenKind.RHO),
        3,
        8,
        frozenset({"hermitian_metric", "unit_det_section"}),
    ),
}


@dataclass(frozen=True)
class GaugeStructure:
    """One of the three gauge structures of the model; no others exist."""

    group: GaugeKind
    delta: Generator
    fibre_dim: int
    dim_g: int
    geometry: frozenset[str]

    def __post_init__(self) -> None:
        expected = _GAUGE_TABLE.get(self.group)
        if expected != (self.delta, self.fibre_dim, self.dim_g, self.geometry):
            raise ValueError(f"not a recognized gauge structure for {self.group}")


def gauge_structure(group: GaugeKind) -> GaugeStructure:
    delta, n, dim_g, geometry = _GAUGE_TABLE[group]
    return GaugeStructure(group, delta, n, dim_g, geometry)


U1_GAUGE = gauge_structure(GaugeKind.U1)
U2_GAUGE = gauge_structure(GaugeKind.U2)
SU3_GAUGE = gauge_structure(GaugeKind.SU3)

INTERACTION_GAUGE = {
    Interaction.ELECTROMAGNETIC: U1_GAUGE,
    Interaction.ELECTROWEAK: U2_GAUGE,
    Interaction.STRONG: SU3_GAUGE,
}


@dataclass(frozen=True)
class Catalog:
    """Immutable species catalog; safe to share between threads."""

    species: tuple[Species, ...]
    massive_neutrinos: bool = False

    def __iter__(self) -> Iterator[Species]:
        return iter(self.species)

    def __len__(self) -> int:
        return len(self.species)

    def __getitem__(self, index: int) -> Species:
        return self.species[index]

    def find(self, symbol: str) -> Species:
        for s in self.species:
            if s.symbol == symbol:
                return s
        raise RegistryError(f"no species with symbol {symbol!r}")

    def carriers(self) -> tuple[Species, ...]:
        return tuple(s for s in self.species if s.is_carrier)

    def matter(self) -> tuple[Species, ...]:
        return tuple(s for s in self.species if not s.is_carrier)


# --------------------------------------------------------------------------
# Default catalog data

_LEPTON_GENERATIONS = [
    ("electron", "e", "electron neutrino", "nu_e"),
    ("muon", "mu", "muon neutrino", "nu_mu"),
    ("tau lepton", "tau", "tau neutrino", "nu_tau"),
]

# flavor, charge in thirds, generation
_QUARK_FLAVORS = [
    ("up", "u", -2, 1),
    ("down", "d", 1, 1),
    ("charm", "c", -2, 2),
    ("strange", "s", 1, 2),
    ("top", "t", -2, 3),
    ("bottom", "b", 1, 3),
]


def _carrier(name, symbol, charge, free):
    return {
        "name": name,
        "symbol": symbol,
        "statistics": "boson",
        "charge_thirds": charge,
        "color": None,
        "generation": None,
        "free_bundle": free,
        "interacting_bundle": None,
        "is_carrier": True,
    }


def _matter(name, symbol, charge, color, generation, free, interacting):
    return {
        "name": name,
        "symbol": symbol,
        "statistics": "fermion",
        "charge_thirds": charge,
        "color": color,
        "generation": generation,
        "free_bundle": free,
        "interacting_bundle": interacting,
        "is_carrier": False,
    }


def default_document(massive_neutrinos: bool = False) -> dict:
    """The built-in registry document (plain JSON-compatible data)."""
    species = [
        _carrier("photon", "gamma", 0, "conn(U1)"),
        _carrier("W minus", "W-", 3, "lam*Tstar"),
        _carrier("W plus", "W+", -3, "lam^-1*Tstar"),
        _carrier("Z zero", "Z0", 0, "Tstar"),
    ]
    species.extend(_carrier(f"gluon {i}", f"g{i}", 0, "Tstar") for i in range(1, 9))

    nu_free = "sigma" if massive_neutrinos else "sigmaL"
    nu_bar_free = "sigma" if massive_neutrinos else "sigmaR"
    for gen, (lname, lsym, nname, nsym) in enumerate(_LEPTON_GENERATIONS, start=1):
        species.append(_matter(lname, lsym, 3, None, gen, "sigma", "lam*sigma"))
        species.append(_matter(nname, nsym, 0, None, gen, nu_free, nu_free))
        species.append(
            _matter(f"anti-{lname}", f"{lsym}~", -3, None, gen, "sigma", "lam^-1*sigma")
        )
        species.append(
            _matter(f"anti-{nname}", f"{nsym}~", 0, None, gen, nu_bar_free, nu_bar_free)
        )

    for fname, fsym, charge, gen in _QUARK_FLAVORS:
        species.append(
            _matter(f"{fname} quark", fsym, charge, "quark", gen, "sigma", "rho*sigma")
        )
        species.append(
            _matter(
                f"anti-{fname} quark",
                f"{fsym}~",
                -charge,
                "antiquark",
                gen,
                "sigma",
                "conj(rho)*sigma",
            )
        )

    return {
        "model": {"massive_neutrinos": massive_neutrinos},
        "species": species,
    }


# --------------------------------------------------------------------------
# Loading and validation

_SCHEMA_CACHE: dict[str, dict] = {}


def load_schema(name: str) -> dict:
    if name not in _SCHEMA_CACHE:
        text = (
            resources.files("bundlecalc.schemas")
            .joinpath(f"{name}.schema.json")
            .read_text()
        )
        _SCHEMA_CACHE[name] = json.loads(text)
    return _SCHEMA_CACHE[name]


def _parse_bundle(text: str, symbol: str, field: str) -> BundleExpr:
    try:
        return grammar.parse(text)
    except grammar.ExprSyntaxError as err:
        raise RegistryError(f"species {symbol!r}: bad {field}: {err}") from err


def _rho_counts(nf: NormalForm) -> tuple[int, int]:
    """Per-monomial (rho, conjugate-rho) atom counts; must be uniform."""
    seen = set()
    for mono in nf.monomials:
        plain = sum(1 for a in mono.atoms if a.kind is GenKind.RHO and not a.conjugated)
        barred = sum(1 for a in mono.atoms if a.kind is GenKind.RHO and a.conjugated)
        seen.add((plain, barred))
    if not seen:
        return (0, 0)
    if len(seen) > 1:
        raise RegistryError("interacting bundle mixes color contents across monomials")
    return seen.pop()


def _validate_species(s: Species) -> None:
    if s.interacting_bundle is None:
        if not s.is_carrier:
            raise RegistryError(f"matter species {s.symbol!r} needs an interacting bundle")
        return
    nf = normalize(s.interacting_bundle)
    plain, barred = _rho_counts(nf)
    if s.color is ColorCharge.QUARK and (plain, barred) != (1, 0):
        raise RegistryError(
            f"quark {s.symbol!r} must carry exactly one rho factor per monomial"
        )
    if s.color is ColorCharge.ANTIQUARK and (plain, barred) != (0, 1):
        raise RegistryError(
            f"antiquark {s.symbol!r} must carry exactly one conjugate rho factor "
            "per monomial"
        )
    if s.color is None and (plain, barred) != (0, 0):
        raise RegistryError(f"colorless species {s.symbol!r} carries rho factors")
    # Charge consistency is only expressible for whole multiples of the
    # electron charge; quark thirds live outside the integer lambda grading.
    if s.charge_thirds % 3 == 0:
        from . import breaking

        broken = normalize(breaking.ew_break(s.interacting_bundle))
        exponents = {m.lambda_exp for m in broken.monomials}
        ew_presentation = any(
            a.kind in (GenKind.IOTA, GenKind.IOTA_DET) for a in nf.atoms()
        )
        if ew_presentation:
            # A whole-generation bundle houses several charges; this
            # species' own slot must at least be present.
            if s.charge_thirds // 3 not in exponents:
                raise RegistryError(
                    f"species {s.symbol!r}: no summand carries its charge "
                    f"{s.charge_thirds}/3"
                )
        elif not broken.is_zero() and exponents != {s.charge_thirds // 3}:
            raise RegistryError(
                f"species {s.symbol!r}: lambda exponents {sorted(exponents)} do not "
                f"match charge {s.charge_thirds}/3"
            )


def _species_from_record(record: Mapping) -> Species:
    symbol = record["symbol"]
    interacting = record.get("interacting_bundle")
    return Species(
        name=record["name"],
        symbol=symbol,
        statistics=Statistics(record["statistics"]),
        charge_thirds=record["charge_thirds"],
        color=ColorCharge(record["color"]) if record.get("color") else None,
        generation=record.get("generation"),
        free_bundle=_parse_bundle(record["free_bundle"], symbol, "free_bundle"),
        interacting_bundle=(
            _parse_bundle(interacting, symbol, "interacting_bundle")
            if interacting is not None
            else None
        ),
        is_carrier=record["is_carrier"],
    )


def load_registry(source: Mapping | str | Path) -> Catalog:
    """Load a registry document (parsed mapping or a JSON file path)."""
    if isinstance(source, (str, Path)):
        with open(source) as handle:
            document = json.load(handle)
    else:
        document = source

    try:
        jsonschema.validate(document, load_schema("registry_document"))
    except jsonschema.ValidationError as err:
        raise RegistryError(f"registry document invalid: {err.message}") from err

    records = document["species"]
    symbols = [r["symbol"] for r in records]
    for symbol in symbols:
        if symbols.count(symbol) > 1:
            raise RegistryError(f"duplicate species symbol {symbol!r}")

    species = tuple(_species_from_record(r) for r in records)
    for s in species:
        _validate_species(s)

    catalog = Catalog(
        species=species,
        massive_neutrinos=document.get("model", {}).get("massive_neutrinos", False),
    )
    for s in species:
        antiparticle(s, catalog)  # conjugation closure; raises when absent
    return catalog


def default_registry(massive_neutrinos: bool = False) -> Catalog:
    return load_registry(default_document(massive_neutrinos))


# --------------------------------------------------------------------------
# Catalog queries


def _conjugate_fingerprint(s: Species) -> tuple:
    conj_free = normalize(Conj(s.free_bundle))
    if s.interacting_bundle is None:
        conj_interacting = None
    else:
        conj_interacting = normalize(Conj(s.interacting_bundle))
    flipped = {
        ColorCharge.QUARK: ColorCharge.ANTIQUARK,
        ColorCharge.ANTIQUARK: ColorCharge.QUARK,
        None: None,
    }[s.color]
    return (
        conj_free,
        conj_interacting,
        -s.charge_thirds,
        flipped,
        s.statistics,
        s.generation,
        s.is_carrier,
    )


def _fingerprint(s: Species) -> tuple:
    return (
        normalize(s.free_bundle),
        None if s.interacting_bundle is None else normalize(s.interacting_bundle),
        s.charge_thirds,
        s.color,
        s.statistics,
        s.generation,
        s.is_carrier,
    )


def antiparticle(s: Species, catalog: Catalog | Sequence[Species]) -> Species:
    """The catalog entry whose bundles are the normalized conjugates of
    ``s``'s, with negated charge and flipped color class."""
    wanted = _conjugate_fingerprint(s)
    candidates = [c for c in catalog if _fingerprint(c) == wanted]
    if not candidates:
        raise RegistryError(f"catalog has no antiparticle entry for {s.symbol!r}")
    if s in candidates:
        return s  # self-conjugate
    paired = {s.symbol + "~", s.symbol.rstrip("~")}
    for c in candidates:
        if c.symbol in paired:
            return c
    if len(candidates) == 1:
        return candidates[0]
    raise RegistryError(f"ambiguous antiparticle for {s.symbol!r}")


def can_interact(s: Species, kind: Interaction) -> bool:
    if kind is Interaction.STRONG:
        return s.color is not None
    if kind is Interaction.ELECTROMAGNETIC:
        return s.charge_thirds != 0
    if kind is Interaction.WEAK:
        return not s.is_carrier
    raise ValueError("interaction capability is defined for strong, "
                     "electromagnetic, and weak")


def statistics_of(s: Species) -> Statistics:
    return s.statistics
