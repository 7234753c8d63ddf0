"""Bundle expressions and their canonical forms.

The expression language describes complex vector bundles built from a
fixed set of generators (a line bundle ``lam`` with integer powers, a
plane bundle ``iota``, a 3-space bundle ``rho``, the two Weyl spinor
bundles ``sigmaL``/``sigmaR``, the real cotangent bundle ``Tstar``,
trivial bundles, and connection spaces ``conn(G)``), closed under direct
sum, tensor product, complex conjugation, and exterior powers.

``normalize`` rewrites any expression into a :class:`NormalForm`, a
multiset of tensor monomials.  Two expressions denote isomorphic bundles
under the declared rule set exactly when their normal forms are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Iterator, Mapping, NamedTuple, Union


class BundleError(Exception):
    """Base class for errors raised by the bundle calculus."""


class ExtDomainError(BundleError):
    """An exterior power was requested outside its domain of definition."""


class GaugeKind(Enum):
    U1 = "U1"
    U2 = "U2"
    SU3 = "SU3"


# Rank bookkeeping constants.  These are configuration data, not derived
# facts: the complex ranks of the generators, the real rank of the
# cotangent bundle, and the group dimensions that size connection spaces.
# Override at module level before building expressions if a different
# convention is wanted.
COTANGENT_REAL_RANK = 4
GAUGE_GROUP_DIM = {GaugeKind.U1: 1, GaugeKind.U2: 4, GaugeKind.SU3: 8}


class GenKind(Enum):
    LAMBDA = "lam"
    IOTA = "iota"
    IOTA_DET = "iotaDet"
    RHO = "rho"
    SIGMA_L = "sigmaL"
    SIGMA_R = "sigmaR"
    COTANGENT = "Tstar"
    TRIVIAL = "trivial"
    CONN = "conn"


_SELF_CONJUGATE = {GenKind.COTANGENT, GenKind.TRIVIAL, GenKind.CONN}

# Complex fibre dimensions of the complex generators.
_COMPLEX_RANK = {
    GenKind.IOTA: 2,
    GenKind.IOTA_DET: 1,
    GenKind.RHO: 3,
    GenKind.SIGMA_L: 2,
    GenKind.SIGMA_R: 2,
}

_ATOM_ORDER = {
    GenKind.IOTA: 0,
    GenKind.IOTA_DET: 1,
    GenKind.RHO: 2,
    GenKind.SIGMA_L: 3,
    GenKind.SIGMA_R: 4,
    GenKind.COTANGENT: 5,
    GenKind.CONN: 6,
}

_GAUGE_ORDER = {GaugeKind.U1: 0, GaugeKind.U2: 1, GaugeKind.SU3: 2}


@dataclass(frozen=True)
class Generator:
    """A single bundle generator.

    ``power`` is used by LAMBDA only, ``count`` by TRIVIAL only and
    ``gauge`` by CONN only.  The ``conjugated`` flag marks conjugates of
    the complex generators; real and trivial generators never carry it,
    conjugated lambda powers fold into the sign of ``power``, and a
    conjugated Weyl spinor generator is rewritten to its partner on
    construction.
    """

    kind: GenKind
    power: int = 0
    count: int = 0
    gauge: GaugeKind | None = None
    conjugated: bool = False

    def __post_init__(self) -> None:
        if self.kind is GenKind.LAMBDA and self.conjugated:
            object.__setattr__(self, "power", -self.power)
            object.__setattr__(self, "conjugated", False)
        if self.kind in _SELF_CONJUGATE and self.conjugated:
            raise ValueError(f"{self.kind.value} is self-conjugate")
        if self.kind is GenKind.SIGMA_L and self.conjugated:
            object.__setattr__(self, "kind", GenKind.SIGMA_R)
            object.__setattr__(self, "conjugated", False)
        elif self.kind is GenKind.SIGMA_R and self.conjugated:
            object.__setattr__(self, "kind", GenKind.SIGMA_L)
            object.__setattr__(self, "conjugated", False)
        if self.kind is GenKind.TRIVIAL and self.count < 0:
            raise ValueError("trivial bundle rank must be non-negative")
        if self.kind is GenKind.CONN and self.gauge is None:
            raise ValueError("connection-space generator needs a gauge group")

    def conjugate(self) -> "Generator":
        if self.kind is GenKind.LAMBDA:
            return Generator(GenKind.LAMBDA, power=-self.power)
        if self.kind in _SELF_CONJUGATE:
            return self
        if self.kind is GenKind.SIGMA_L:
            return Generator(GenKind.SIGMA_R)
        if self.kind is GenKind.SIGMA_R:
            return Generator(GenKind.SIGMA_L)
        return Generator(self.kind, conjugated=not self.conjugated)

    def sort_key(self) -> tuple:
        gauge = -1 if self.gauge is None else _GAUGE_ORDER[self.gauge]
        return (_ATOM_ORDER.get(self.kind, -1), gauge, self.conjugated)


def lam(power: int = 1) -> Generator:
    return Generator(GenKind.LAMBDA, power=power)


def trivial(count: int) -> Generator:
    return Generator(GenKind.TRIVIAL, count=count)


def conn(gauge: GaugeKind) -> Generator:
    return Generator(GenKind.CONN, gauge=gauge)


IOTA = Generator(GenKind.IOTA)
IOTA_BAR = Generator(GenKind.IOTA, conjugated=True)
IOTA_DET = Generator(GenKind.IOTA_DET)
RHO = Generator(GenKind.RHO)
RHO_BAR = Generator(GenKind.RHO, conjugated=True)
SIGMA_L = Generator(GenKind.SIGMA_L)
SIGMA_R = Generator(GenKind.SIGMA_R)
COTANGENT = Generator(GenKind.COTANGENT)


# --------------------------------------------------------------------------
# Abstract syntax


@dataclass(frozen=True)
class Atom:
    generator: Generator


@dataclass(frozen=True)
class Sum:
    terms: tuple["BundleExpr", ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("direct sum needs at least one term")


@dataclass(frozen=True)
class Tensor:
    factors: tuple["BundleExpr", ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("tensor product needs at least one factor")


@dataclass(frozen=True)
class Conj:
    operand: "BundleExpr"


@dataclass(frozen=True)
class Ext:
    operand: "BundleExpr"
    degree: int

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("exterior power degree must be positive")


@dataclass(frozen=True)
class ZeroBundle:
    pass


BundleExpr = Union[Atom, Sum, Tensor, Conj, Ext, ZeroBundle]

ZERO = ZeroBundle()


def atom(g: Generator) -> Atom:
    return Atom(g)


def sum_of(*terms: BundleExpr) -> BundleExpr:
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def tensor_of(*factors: BundleExpr) -> BundleExpr:
    return factors[0] if len(factors) == 1 else Tensor(tuple(factors))


# --------------------------------------------------------------------------
# Normal forms


@dataclass(frozen=True)
class Monomial:
    """A tensor word: an integer lambda exponent times sorted atom factors.

    Lambda powers live entirely in ``lambda_exp`` and trivial factors in
    the enclosing multiplicity, so ``atoms`` holds only the non-line
    generators.
    """

    lambda_exp: int
    atoms: tuple[Generator, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "atoms", tuple(sorted(self.atoms, key=Generator.sort_key))
        )

    def sort_key(self) -> tuple:
        return (self.lambda_exp, tuple(a.sort_key() for a in self.atoms))


UNIT_MONOMIAL = Monomial(0, ())


class NormalForm:
    """Canonical multiset of monomials; the empty multiset is the zero bundle."""

    __slots__ = ("_monomials",)

    def __init__(self, monomials: Mapping[Monomial, int] | None = None):
        cleaned = {m: c for m, c in (monomials or {}).items() if c != 0}
        if any(c < 0 for c in cleaned.values()):
            raise ValueError("monomial multiplicities must be positive")
        self._monomials = cleaned

    @property
    def monomials(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._monomials)

    def is_zero(self) -> bool:
        return not self._monomials

    def items(self) -> Iterator[tuple[Monomial, int]]:
        return iter(sorted(self._monomials.items(), key=lambda mc: mc[0].sort_key()))

    def atoms(self) -> Iterator[Generator]:
        for mono in self._monomials:
            yield from mono.atoms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self._monomials == other._monomials

    def __hash__(self) -> int:
        return hash(frozenset(self._monomials.items()))

    def __str__(self) -> str:
        from . import grammar

        return grammar.format_normal(self)

    def __repr__(self) -> str:
        return f"NormalForm({self})"

    def to_expr(self) -> BundleExpr:
        """Canonical expression tree for this normal form."""
        if self.is_zero():
            return ZERO
        terms = []
        for mono, mult in self.items():
            factors: list[BundleExpr] = []
            if mult > 1:
                factors.append(Atom(trivial(mult)))
            if mono.lambda_exp != 0:
                factors.append(Atom(lam(mono.lambda_exp)))
            factors.extend(Atom(a) for a in mono.atoms)
            if not factors:
                factors.append(Atom(trivial(1)))
            terms.append(tensor_of(*factors))
        return sum_of(*terms)


_UNIT_NF = NormalForm({UNIT_MONOMIAL: 1})
_ZERO_NF = NormalForm()


def _nf_add(parts: list[NormalForm]) -> NormalForm:
    acc: dict[Monomial, int] = {}
    for part in parts:
        for mono, mult in part._monomials.items():
            acc[mono] = acc.get(mono, 0) + mult
    return NormalForm(acc)


def _mono_tensor(a: Monomial, b: Monomial) -> Monomial:
    return Monomial(a.lambda_exp + b.lambda_exp, a.atoms + b.atoms)


def _nf_tensor(a: NormalForm, b: NormalForm) -> NormalForm:
    acc: dict[Monomial, int] = {}
    for ma, ca in a._monomials.items():
        for mb, cb in b._monomials.items():
            m = _mono_tensor(ma, mb)
            acc[m] = acc.get(m, 0) + ca * cb
    return NormalForm(acc)


def _nf_scale(nf: NormalForm, n: int) -> NormalForm:
    if n == 0:
        return _ZERO_NF
    return NormalForm({m: c * n for m, c in nf._monomials.items()})


# --------------------------------------------------------------------------
# Conjugation pushdown


def _push_conj(e: BundleExpr, flip: bool = False) -> BundleExpr:
    if isinstance(e, Conj):
        return _push_conj(e.operand, not flip)
    if isinstance(e, Atom):
        return Atom(e.generator.conjugate()) if flip else e
    if isinstance(e, Sum):
        return Sum(tuple(_push_conj(t, flip) for t in e.terms))
    if isinstance(e, Tensor):
        return Tensor(tuple(_push_conj(f, flip) for f in e.factors))
    if isinstance(e, Ext):
        return Ext(_push_conj(e.operand, flip), e.degree)
    return e  # ZeroBundle


# --------------------------------------------------------------------------
# Exterior powers


def _atom_ext(g: Generator, j: int) -> NormalForm:
    """Exterior power of a single generator, degree j >= 2.

    Rank-1 generators vanish.  The plane bundle tops out at its
    determinant line.  For the 3-space bundle the determinant is
    trivialized by its unit section, which also pairs degree 2 with the
    conjugate bundle; the Weyl spinor bundles carry a canonical
    symplectic line, trivializing their degree 2.
    """
    kind = g.kind
    if kind in (GenKind.IOTA_DET,):
        return _ZERO_NF
    if kind is GenKind.IOTA:
        if j == 2:
            return NormalForm({Monomial(0, (Generator(GenKind.IOTA_DET, conjugated=g.conjugated),)): 1})
        return _ZERO_NF
    if kind is GenKind.RHO:
        if j == 2:
            return NormalForm({Monomial(0, (Generator(GenKind.RHO, conjugated=not g.conjugated),)): 1})
        if j == 3:
            return _UNIT_NF
        return _ZERO_NF
    if kind in (GenKind.SIGMA_L, GenKind.SIGMA_R):
        if j == 2:
            return _UNIT_NF
        return _ZERO_NF
    if kind is GenKind.COTANGENT:
        if j > COTANGENT_REAL_RANK:
            return _ZERO_NF
        raise ExtDomainError(
            f"no generator expresses ext{j} of the cotangent bundle"
        )
    raise ExtDomainError(f"exterior power undefined for {kind.value}")


def _mono_ext(mono: Monomial, j: int) -> NormalForm:
    if j == 0:
        return _UNIT_NF
    if j == 1:
        return NormalForm({mono: 1})
    lines = [a for a in mono.atoms if a.kind is GenKind.IOTA_DET]
    high = [a for a in mono.atoms if a.kind is not GenKind.IOTA_DET]
    if not high:
        return _ZERO_NF  # a tensor product of lines is a line
    if len(high) > 1:
        raise ExtDomainError(
            "exterior power of a product of higher-rank factors is outside "
            "the expression language"
        )
    # ext_j(L (x) E) = L^j (x) ext_j(E) for a line L
    twisted = Monomial(mono.lambda_exp * j, tuple(lines) * j)
    return _nf_tensor(NormalForm({twisted: 1}), _atom_ext(high[0], j))


# Polynomial coefficients are normal forms, or a deferred error when the
# degree is not expressible in the language.  Multiplicities are never
# negative, so nothing can cancel: an unexpressible contribution taints a
# coefficient for good, and the error is raised only if the requested
# degree ends up tainted.
_PolyEntry = Union[NormalForm, ExtDomainError]


def _entry_is_zero(entry: _PolyEntry) -> bool:
    return isinstance(entry, NormalForm) and entry.is_zero()


def _poly_mul(p: list[_PolyEntry], q: list[_PolyEntry], top: int) -> list[_PolyEntry]:
    out: list[_PolyEntry] = [_ZERO_NF] * (top + 1)
    for i, pi in enumerate(p):
        if _entry_is_zero(pi):
            continue
        for j, qj in enumerate(q):
            if i + j > top or _entry_is_zero(qj):
                continue
            degree = i + j
            if isinstance(pi, ExtDomainError) or isinstance(qj, ExtDomainError):
                if not isinstance(out[degree], ExtDomainError):
                    out[degree] = pi if isinstance(pi, ExtDomainError) else qj
                continue
            if isinstance(out[degree], ExtDomainError):
                continue
            out[degree] = _nf_add([out[degree], _nf_tensor(pi, qj)])
    return out


def _nf_ext(nf: NormalForm, k: int) -> NormalForm:
    for g in nf.atoms():
        if g.kind is GenKind.CONN:
            raise ExtDomainError(
                "exterior powers are undefined over connection spaces "
                "(affine, not vector)"
            )
    # Multiply truncated exterior-power generating polynomials, one per
    # summand; the coefficient of degree k is the answer.
    poly: list[_PolyEntry] = [_UNIT_NF] + [_ZERO_NF] * k
    for mono, mult in nf._monomials.items():
        base: list[_PolyEntry] = []
        for j in range(k + 1):
            try:
                base.append(_mono_ext(mono, j))
            except ExtDomainError as err:
                base.append(err)
        for _ in range(mult):
            poly = _poly_mul(poly, base, k)
    result = poly[k]
    if isinstance(result, ExtDomainError):
        raise result
    return result


# --------------------------------------------------------------------------
# Normalization


def _normalize_conj_free(e: BundleExpr) -> NormalForm:
    if isinstance(e, ZeroBundle):
        return _ZERO_NF
    if isinstance(e, Atom):
        g = e.generator
        if g.kind is GenKind.LAMBDA:
            return NormalForm({Monomial(g.power, ()): 1})
        if g.kind is GenKind.TRIVIAL:
            return _nf_scale(_UNIT_NF, g.count)
        return NormalForm({Monomial(0, (g,)): 1})
    if isinstance(e, Sum):
        return _nf_add([_normalize_conj_free(t) for t in e.terms])
    if isinstance(e, Tensor):
        result = _UNIT_NF
        for f in e.factors:
            result = _nf_tensor(result, _normalize_conj_free(f))
            if result.is_zero():
                return _ZERO_NF
        return result
    if isinstance(e, Ext):
        return _nf_ext(_normalize_conj_free(e.operand), e.degree)
    raise TypeError(f"not a bundle expression: {e!r}")


def normalize(e: BundleExpr) -> NormalForm:
    """Rewrite ``e`` to its canonical multiset-of-monomials form."""
    return _normalize_conj_free(_push_conj(e))


def conj(e: BundleExpr) -> BundleExpr:
    """The complex conjugate of ``e``, as a normalized expression."""
    return normalize(Conj(e)).to_expr()


def equal_normal(a: BundleExpr, b: BundleExpr) -> bool:
    """True when both expressions share one normal form."""
    return normalize(a) == normalize(b)


# --------------------------------------------------------------------------
# Fibre dimensions


class RankInfo(NamedTuple):
    rank: int
    real: bool


def _atom_rank(g: Generator) -> RankInfo:
    if g.kind is GenKind.COTANGENT:
        return RankInfo(COTANGENT_REAL_RANK, True)
    if g.kind is GenKind.CONN:
        return RankInfo(GAUGE_GROUP_DIM[g.gauge] * COTANGENT_REAL_RANK, True)
    return RankInfo(_COMPLEX_RANK[g.kind], False)


def _mono_rank(mono: Monomial) -> RankInfo:
    ranks = [_atom_rank(a) for a in mono.atoms]
    if not any(r.real for r in ranks):
        rank = 1
        for r in ranks:
            rank *= r.rank
        return RankInfo(rank, False)
    # Mixed words report real rank: complex factors double, and a lambda
    # power contributes one complex line regardless of its exponent.
    rank = 2 if mono.lambda_exp != 0 else 1
    for r in ranks:
        rank *= r.rank if r.real else 2 * r.rank
    return RankInfo(rank, True)


def rank_of_normal(nf: NormalForm) -> RankInfo:
    parts = [(mult, _mono_rank(mono)) for mono, mult in nf._monomials.items()]
    if not parts:
        return RankInfo(0, False)
    if not any(info.real for _, info in parts):
        return RankInfo(sum(mult * info.rank for mult, info in parts), False)
    total = sum(
        mult * (info.rank if info.real else 2 * info.rank) for mult, info in parts
    )
    return RankInfo(total, True)


def rank_info(e: BundleExpr) -> RankInfo:
    """Fibre dimension of ``e`` with a flag for real (vs complex) counting."""
    return rank_of_normal(normalize(e))


def fibre_dim(e: BundleExpr) -> int:
    """Fibre dimension: complex rank for complex expressions, real rank
    for expressions containing the cotangent bundle or connection spaces."""
    return rank_info(e).rank
