"""Symmetry breaking as expression rewrites, plus carrier enumeration.

Formal breaking trivializes the interaction bundle of a gauge structure:
its generator collapses to a trivial bundle of the same rank, and the
connection space collapses to (dim G) cotangent summands.  A complex
factor trivialized inside a word that stays real-ranked contributes twice
its complex rank, so real ranks are conserved.

Spontaneous electroweak breaking fixes a constant-length section of the
plane bundle: the plane splits into a trivial line plus the charge line,
the determinant line becomes the charge line, and the U(2) connection
space splits into photon, W, and Z slots.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union

from .expr import (
    Atom,
    BundleError,
    BundleExpr,
    COTANGENT,
    GaugeKind,
    GenKind,
    Generator,
    Monomial,
    NormalForm,
    Sum,
    Tensor,
    ZERO,
    conn,
    lam,
    normalize,
    rank_info,
    sum_of,
    tensor_of,
    trivial,
)
from .grammar import format_normal
from .registry import (
    Catalog,
    GaugeStructure,
    Interaction,
    RegistryError,
    Species,
)


class NotApplicableError(BundleError):
    """The requested breaking is explicitly not modeled; carries the reason."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


REFUSAL_SPONTANEOUS_EM = "none: too strong"
REFUSAL_SPONTANEOUS_STRONG = "none: much too strong"
REFUSAL_FORMAL_EW = "of no interest"


@dataclass(frozen=True)
class FormalBreaking:
    gauge: GaugeStructure


@dataclass(frozen=True)
class SpontaneousEW:
    """Reduction of U(2) by a section of constant positive length."""

    phi_norm: float = 1.0

    def __post_init__(self) -> None:
        if not self.phi_norm > 0:
            raise ValueError("the symmetry-breaking section needs positive length")


BreakingMode = Union[FormalBreaking, SpontaneousEW]


@dataclass(frozen=True)
class CarrierSlot:
    name: str
    bundle_slot: BundleExpr
    slot_id: str
    charged: bool
    matterlike: bool


@dataclass(frozen=True)
class CarrierReport:
    interaction: Interaction
    entries: tuple[CarrierSlot, ...]

    def total_slot_rank(self) -> int:
        """Real rank summed over distinct slots (the W pair shares one)."""
        seen: dict[str, int] = {}
        for entry in self.entries:
            seen.setdefault(entry.slot_id, rank_info(entry.bundle_slot).rank)
        return sum(seen.values())

    def to_json_dict(self) -> dict:
        return {
            "interaction": self.interaction.value,
            "entries": [
                {
                    "name": e.name,
                    "bundle_slot": format_normal(normalize(e.bundle_slot)),
                    "slot_id": e.slot_id,
                    "charged": e.charged,
                    "matterlike": e.matterlike,
                }
                for e in self.entries
            ],
            "total_slot_rank": self.total_slot_rank(),
        }


# --------------------------------------------------------------------------
# Formal breaking


def _delta_complex_rank(gauge: GaugeStructure, g: Generator) -> int | None:
    """Complex rank of a generator trivialized by this formal breaking."""
    if gauge.group is GaugeKind.U2 and g.kind is GenKind.IOTA:
        return 2
    if gauge.group is GaugeKind.U2 and g.kind is GenKind.IOTA_DET:
        return 1
    if gauge.group is GaugeKind.SU3 and g.kind is GenKind.RHO:
        return 3
    return None


def formal_break(gauge: GaugeStructure, e: BundleExpr) -> BundleExpr:
    """Trivialize the interaction bundle of ``gauge`` throughout ``e``."""
    acc: dict[Monomial, int] = {}
    for mono, mult in normalize(e).items():
        factor = mult
        new_exp = mono.lambda_exp
        removed: list[int] = []
        if gauge.group is GaugeKind.U1 and mono.lambda_exp != 0:
            new_exp = 0
            removed.append(1)
        kept: list[Generator] = []
        for a in mono.atoms:
            rank = _delta_complex_rank(gauge, a)
            if rank is not None:
                removed.append(rank)
            elif a.kind is GenKind.CONN and a.gauge is gauge.group:
                kept.append(COTANGENT)
                factor *= gauge.dim_g
            else:
                kept.append(a)
        real_context = any(
            k.kind in (GenKind.COTANGENT, GenKind.CONN) for k in kept
        )
        for rank in removed:
            factor *= 2 * rank if real_context else rank
        key = Monomial(new_exp, tuple(kept))
        acc[key] = acc.get(key, 0) + factor
    return NormalForm(acc).to_expr()


# --------------------------------------------------------------------------
# Spontaneous electroweak breaking


def _ew_atom(a: Generator) -> BundleExpr:
    if a.kind is GenKind.IOTA:
        charge_line = Atom(lam(-1 if a.conjugated else 1))
        return Sum((Atom(trivial(1)), charge_line))
    if a.kind is GenKind.IOTA_DET:
        return Atom(lam(-1 if a.conjugated else 1))
    if a.kind is GenKind.CONN and a.gauge is GaugeKind.U2:
        return Sum(
            (
                Atom(conn(GaugeKind.U1)),
                Tensor((Atom(lam(1)), Atom(COTANGENT))),
                Atom(COTANGENT),
            )
        )
    return Atom(a)


def ew_break(e: BundleExpr) -> BundleExpr:
    """Split the plane bundle as trivial-line plus charge-line everywhere."""
    nf = normalize(e)
    if nf.is_zero():
        return ZERO
    terms = []
    for mono, mult in nf.items():
        factors: list[BundleExpr] = []
        if mult > 1:
            factors.append(Atom(trivial(mult)))
        if mono.lambda_exp != 0:
            factors.append(Atom(lam(mono.lambda_exp)))
        factors.extend(_ew_atom(a) for a in mono.atoms)
        if not factors:
            factors.append(Atom(trivial(1)))
        terms.append(tensor_of(*factors))
    return normalize(sum_of(*terms)).to_expr()


# --------------------------------------------------------------------------
# Carriers

_LAMBDA_COTANGENT = Tensor((Atom(lam(1)), Atom(COTANGENT)))


def carriers(kind: Interaction) -> CarrierReport:
    if kind is Interaction.ELECTROMAGNETIC:
        entries = (
            CarrierSlot("gamma", Atom(conn(GaugeKind.U1)), "conn(U1)", False, False),
        )
    elif kind is Interaction.STRONG:
        entries = tuple(
            CarrierSlot(f"g{i}", Atom(COTANGENT), f"Tstar#{i}", False, False)
            for i in range(1, 9)
        )
    elif kind is Interaction.ELECTROWEAK:
        entries = (
            CarrierSlot("gamma", Atom(conn(GaugeKind.U1)), "conn(U1)", False, False),
            CarrierSlot("W-", _LAMBDA_COTANGENT, "lam*Tstar", True, True),
            CarrierSlot("W+", _LAMBDA_COTANGENT, "lam*Tstar", True, True),
            CarrierSlot("Z0", Atom(COTANGENT), "Tstar#Z", False, True),
        )
    else:
        raise ValueError(
            "carriers are enumerated for electromagnetic, strong, and electroweak"
        )
    return CarrierReport(kind, entries)


# --------------------------------------------------------------------------
# Breaking a whole catalog


def _mentions_ew_content(nf: NormalForm) -> bool:
    return any(
        a.kind in (GenKind.IOTA, GenKind.IOTA_DET)
        or (a.kind is GenKind.CONN and a.gauge is GaugeKind.U2)
        for a in nf.atoms()
    )


def _has_delta_content(gauge: GaugeStructure, nf: NormalForm) -> bool:
    if gauge.group is GaugeKind.U1:
        return any(m.lambda_exp != 0 for m in nf.monomials)
    return any(_delta_complex_rank(gauge, a) is not None for a in nf.atoms())


def _divide_multiplicities(nf: NormalForm, n: int, symbol: str) -> BundleExpr:
    out: dict[Monomial, int] = {}
    for mono, mult in nf.monomials.items():
        if mult % n:
            raise RegistryError(
                f"species {symbol!r}: broken bundle does not split into "
                f"{n} equal versions"
            )
        out[mono] = mult // n
    return NormalForm(out).to_expr()


def _formal_break_species(gauge: GaugeStructure, s: Species) -> list[Species]:
    if s.interacting_bundle is None:
        return [s]
    nf = normalize(s.interacting_bundle)
    broken = normalize(formal_break(gauge, s.interacting_bundle))
    if not _has_delta_content(gauge, nf):
        return [replace(s, interacting_bundle=broken.to_expr())]
    n = gauge.fibre_dim
    if n == 1:
        return [replace(s, interacting_bundle=broken.to_expr())]
    slot = _divide_multiplicities(broken, n, s.symbol)
    return [
        replace(
            s,
            name=f"{s.name} (color {i})",
            symbol=f"{s.symbol}_{i}",
            interacting_bundle=slot,
        )
        for i in range(1, n + 1)
    ]


def _ew_break_species(s: Species) -> Species:
    if s.interacting_bundle is None:
        return s
    nf = normalize(s.interacting_bundle)
    broken = normalize(ew_break(s.interacting_bundle))
    if not _mentions_ew_content(nf):
        return replace(s, interacting_bundle=broken.to_expr())
    # The electroweak bundle houses a whole generation; keep the summands
    # whose derived charge (three times the lambda exponent) is this
    # species' charge.
    if s.charge_thirds % 3:
        raise RegistryError(
            f"species {s.symbol!r}: charge {s.charge_thirds}/3 is not an integer "
            "multiple of the electron charge; cannot re-derive it from lambda "
            "exponents"
        )
    wanted = s.charge_thirds // 3
    selected = {
        mono: mult
        for mono, mult in broken.monomials.items()
        if mono.lambda_exp == wanted
    }
    if not selected:
        raise RegistryError(
            f"species {s.symbol!r}: no summand of the broken bundle carries "
            f"charge {s.charge_thirds}/3"
        )
    return replace(s, interacting_bundle=NormalForm(selected).to_expr())


def break_registry(mode: BreakingMode, catalog: Catalog) -> Catalog:
    """Apply a breaking mode to every species of a catalog."""
    if isinstance(mode, FormalBreaking):
        if mode.gauge.group is GaugeKind.U2:
            raise NotApplicableError(REFUSAL_FORMAL_EW)
        broken: list[Species] = []
        for s in catalog:
            broken.extend(_formal_break_species(mode.gauge, s))
        return Catalog(tuple(broken), catalog.massive_neutrinos)
    if isinstance(mode, SpontaneousEW):
        return Catalog(
            tuple(_ew_break_species(s) for s in catalog), catalog.massive_neutrinos
        )
    raise TypeError(f"not a breaking mode: {mode!r}")
