"""Bound-state decisions for composites of interacting particles.

A composite is a multiset of species.  Its tensor product of interacting
bundles maps onto a natural bundle when three independent gates pass:
electric neutrality (the charge sum vanishes), color cancellation (the
3-space factors can be consumed by pairings and determinant sections),
and exchange statistics (the skew or symmetric multiplicity over the
color factor of every group of identical particles is nonzero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .expr import (
    BundleError,
    BundleExpr,
    GenKind,
    Monomial,
    NormalForm,
    normalize,
    tensor_of,
)
from .grammar import format_normal
from .registry import Catalog, ColorCharge, Species, Statistics


class BoundStateError(BundleError):
    """The composite is outside the bound-state rules."""


class Classification(Enum):
    MESON = "Meson"
    BARYON_PROPER = "BaryonProper"
    ANTIBARYON = "Antibaryon"
    ATOMLIKE = "Atomlike"
    NOT_BOUND = "NotBound"


@dataclass(frozen=True)
class TraceStep:
    rule: str
    count: int


@dataclass(frozen=True)
class BoundVerdict:
    em_ok: bool
    color_ok: bool
    statistics_ok: bool
    target: BundleExpr | None
    classification: Classification
    cancellation_trace: tuple[TraceStep, ...]


def _species_color_factors(s: Species) -> tuple[int, int]:
    """(rho, conjugate-rho) factors per monomial of the interacting bundle."""
    if s.interacting_bundle is None:
        return (0, 0)
    counts = set()
    for mono in normalize(s.interacting_bundle).monomials:
        plain = sum(1 for a in mono.atoms if a.kind is GenKind.RHO and not a.conjugated)
        barred = sum(1 for a in mono.atoms if a.kind is GenKind.RHO and a.conjugated)
        counts.add((plain, barred))
    if not counts:
        return (0, 0)
    if len(counts) > 1:
        raise BoundStateError(
            f"species {s.symbol!r} mixes color contents across monomials"
        )
    return counts.pop()


@dataclass(frozen=True)
class Composite:
    """A multiset of species standing for the tensor product of their
    interacting bundles, with identical members grouped."""

    members: tuple[tuple[Species, int], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Species, int]]) -> "Composite":
        merged: dict[Species, int] = {}
        for species, count in pairs:
            if count < 1:
                raise ValueError("member counts must be positive")
            merged[species] = merged.get(species, 0) + count
        if not merged:
            raise ValueError("a composite needs at least one member")
        ordered = sorted(merged.items(), key=lambda sc: sc[0].symbol)
        return cls(tuple(ordered))

    @classmethod
    def of(cls, *species: Species) -> "Composite":
        return cls.from_pairs((s, 1) for s in species)

    @classmethod
    def from_symbols(
        cls, catalog: Catalog, pairs: Iterable[tuple[str, int]]
    ) -> "Composite":
        return cls.from_pairs((catalog.find(sym), count) for sym, count in pairs)

    @property
    def n(self) -> int:
        return sum(count for _, count in self.members)

    @property
    def charge_sum_thirds(self) -> int:
        return sum(s.charge_thirds * count for s, count in self.members)

    @property
    def n_rho(self) -> int:
        return sum(_species_color_factors(s)[0] * count for s, count in self.members)

    @property
    def n_rho_bar(self) -> int:
        return sum(_species_color_factors(s)[1] * count for s, count in self.members)


def composite_from_json(catalog: Catalog, data: object) -> Composite:
    """Build a composite from the JSON list-of-{symbol, count} format.

    Shape problems raise ValueError (malformed input); unknown symbols
    surface as registry errors.
    """
    if not isinstance(data, list) or not data:
        raise ValueError("composite must be a non-empty JSON list")
    pairs = []
    for item in data:
        if not isinstance(item, Mapping) or "symbol" not in item:
            raise ValueError(
                'composite entries must be objects like {"symbol": "u", "count": 1}'
            )
        count = item.get("count", 1)
        if not isinstance(count, int) or count < 1:
            raise ValueError("composite counts must be positive integers")
        pairs.append((item["symbol"], count))
    return Composite.from_symbols(catalog, pairs)


# --------------------------------------------------------------------------
# The three gates


def em_boundable(c: Composite) -> bool:
    """Electric neutrality: the charge sum over all members vanishes."""
    return c.charge_sum_thirds == 0


def color_cancellable(n_rho: int, n_rho_bar: int) -> bool:
    """Whether pairings and determinant triples can consume all color
    factors: n_rho = a + 3b and n_rho_bar = a + 3c for some a, b, c >= 0,
    equivalently equal counts mod 3."""
    if n_rho < 0 or n_rho_bar < 0:
        raise ValueError("color factor counts must be non-negative")
    return (n_rho - n_rho_bar) % 3 == 0


def statistics_multiplicity(rank: int, k: int, statistics: Statistics) -> int:
    """Dimension of the symmetric (bosons) or exterior (fermions) power of
    a rank-``rank`` space over ``k`` identical particles; 0 means the
    configuration is excluded."""
    if rank < 0:
        raise ValueError("rank must be non-negative")
    if k < 1:
        raise ValueError("the identical-particle count must be positive")
    if statistics is Statistics.BOSON:
        return math.comb(rank + k - 1, k)
    return math.comb(rank, k) if k <= rank else 0


def classify(c: Composite) -> Classification:
    """Meson, baryon proper, antibaryon (pure quark content), atomlike for
    any other neutral color-cancellable system, otherwise not bound."""
    quarks = sum(count for s, count in c.members if s.color is ColorCharge.QUARK)
    antiquarks = sum(
        count for s, count in c.members if s.color is ColorCharge.ANTIQUARK
    )
    pure = quarks + antiquarks == c.n
    if pure and (quarks, antiquarks) == (1, 1):
        return Classification.MESON
    if pure and (quarks, antiquarks) == (3, 0):
        return Classification.BARYON_PROPER
    if pure and (quarks, antiquarks) == (0, 3):
        return Classification.ANTIBARYON
    if color_cancellable(c.n_rho, c.n_rho_bar) and em_boundable(c):
        return Classification.ATOMLIKE
    return Classification.NOT_BOUND


# --------------------------------------------------------------------------
# The full verdict

_NATURAL_ATOMS = {GenKind.SIGMA_L, GenKind.SIGMA_R, GenKind.COTANGENT}


def _check_supported(c: Composite) -> None:
    for s, _ in c.members:
        if s.interacting_bundle is None:
            raise BoundStateError(
                f"species {s.symbol!r} carries no interacting bundle; "
                "composites of carriers are unsupported"
            )
        for a in normalize(s.interacting_bundle).atoms():
            if a.kind in (GenKind.IOTA, GenKind.IOTA_DET, GenKind.CONN):
                raise BoundStateError(
                    f"species {s.symbol!r} carries unbroken electroweak or "
                    "connection factors; no bound-state rule applies"
                )


def _statistics_gate(c: Composite) -> bool:
    for s, count in c.members:
        if count < 2 or s.color is None:
            continue
        if statistics_multiplicity(3, count, s.statistics) == 0:
            return False
    return True


def _strip_cancelled(nf: NormalForm) -> NormalForm:
    out: dict[Monomial, int] = {}
    for mono, mult in nf.monomials.items():
        atoms = tuple(a for a in mono.atoms if a.kind is not GenKind.RHO)
        key = Monomial(0, atoms)
        out[key] = out.get(key, 0) + mult
    return NormalForm(out)


def bound_state_target(c: Composite) -> BoundVerdict:
    """Run the three gates and, when all pass, compute the natural target
    bundle with the trace of cancellations used."""
    _check_supported(c)

    em_ok = em_boundable(c)
    color_ok = color_cancellable(c.n_rho, c.n_rho_bar)
    statistics_ok = _statistics_gate(c)
    classification = classify(c)

    trace: list[TraceStep] = []
    pairs = min(c.n_rho, c.n_rho_bar)
    if pairs:
        trace.append(TraceStep("rho_pair", pairs))
    left, left_bar = c.n_rho - pairs, c.n_rho_bar - pairs
    if color_ok:
        if left:
            trace.append(TraceStep("theta_triple", left // 3))
        if left_bar:
            trace.append(TraceStep("theta_bar_triple", left_bar // 3))

    target: BundleExpr | None = None
    if em_ok and color_ok and statistics_ok:
        lambda_members = sum(
            count
            for s, count in c.members
            if any(
                m.lambda_exp != 0
                for m in normalize(s.interacting_bundle).monomials
            )
        )
        if lambda_members:
            trace.append(TraceStep("lambda_metric", lambda_members))
        product = normalize(
            tensor_of(
                *(
                    s.interacting_bundle
                    for s, count in c.members
                    for _ in range(count)
                )
            )
        )
        stripped = _strip_cancelled(product)
        for a in stripped.atoms():
            if a.kind not in _NATURAL_ATOMS:
                raise BoundStateError(
                    f"cancellation left a non-natural factor {a.kind.value!r}"
                )
        target = stripped.to_expr()

    return BoundVerdict(
        em_ok=em_ok,
        color_ok=color_ok,
        statistics_ok=statistics_ok,
        target=target,
        classification=classification,
        cancellation_trace=tuple(trace),
    )


def verdict_to_json(c: Composite, verdict: BoundVerdict) -> dict:
    return {
        "composite": [
            {"symbol": s.symbol, "count": count} for s, count in c.members
        ],
        "em_ok": verdict.em_ok,
        "color_ok": verdict.color_ok,
        "statistics_ok": verdict.statistics_ok,
        "classification": verdict.classification.value,
        "target": (
            None
            if verdict.target is None
            else format_normal(normalize(verdict.target))
        ),
        "cancellation_trace": [
            {"rule": step.rule, "count": step.count}
            for step in verdict.cancellation_trace
        ],
    }
