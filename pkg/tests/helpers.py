"""Shared test utilities: independent oracles and expression samplers.

The oracles here deliberately avoid the library's own logic so they can
arbitrate: color cancellation is decided by exhaustive search over move
sequences, statistics dimensions by enumerating basis tuples, and random
expressions are built directly from the AST constructors.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from bundlecalc.expr import (
    Atom,
    BundleExpr,
    Conj,
    Ext,
    GaugeKind,
    Generator,
    GenKind,
    Sum,
    Tensor,
    conn,
    lam,
    trivial,
)
from bundlecalc.registry import Statistics


@lru_cache(maxsize=None)
def brute_force_color_cancellable(n_rho: int, n_rho_bar: int) -> bool:
    """Search over all sequences of the three cancellation moves:
    pair (-1, -1), triple (-3, 0), conjugate triple (0, -3)."""
    if (n_rho, n_rho_bar) == (0, 0):
        return True
    if n_rho >= 1 and n_rho_bar >= 1 and brute_force_color_cancellable(n_rho - 1, n_rho_bar - 1):
        return True
    if n_rho >= 3 and brute_force_color_cancellable(n_rho - 3, n_rho_bar):
        return True
    if n_rho_bar >= 3 and brute_force_color_cancellable(n_rho, n_rho_bar - 3):
        return True
    return False


def count_symmetric_tensors(n: int, k: int) -> int:
    """Dimension of the symmetric power by enumerating weakly increasing
    index tuples."""
    return sum(1 for _ in itertools.combinations_with_replacement(range(n), k))


def count_skew_tensors(n: int, k: int) -> int:
    """Dimension of the exterior power by enumerating strictly increasing
    index tuples."""
    return sum(1 for _ in itertools.combinations(range(n), k))


# --------------------------------------------------------------------------
# Random expression sampling

_COMPLEX_GENERATORS = [
    Generator(GenKind.IOTA),
    Generator(GenKind.IOTA, conjugated=True),
    Generator(GenKind.IOTA_DET),
    Generator(GenKind.RHO),
    Generator(GenKind.RHO, conjugated=True),
    Generator(GenKind.SIGMA_L),
    Generator(GenKind.SIGMA_R),
]

_REAL_GENERATORS = [
    Generator(GenKind.COTANGENT),
    conn(GaugeKind.U1),
    conn(GaugeKind.U2),
    conn(GaugeKind.SU3),
]


def random_atom(rng: random.Random, complex_only: bool = False) -> Atom:
    roll = rng.random()
    if roll < 0.25:
        return Atom(lam(rng.randint(-3, 3)))
    if roll < 0.35:
        return Atom(trivial(rng.randint(0, 3)))
    pool = list(_COMPLEX_GENERATORS)
    if not complex_only:
        pool += _REAL_GENERATORS
    return Atom(rng.choice(pool))


def random_expr(
    rng: random.Random,
    depth: int = 3,
    complex_only: bool = False,
    allow_ext: bool = True,
) -> BundleExpr:
    """A random expression tree with sums, tensors, conjugations, and
    (optionally) exterior powers over safe arguments."""
    if depth <= 0 or rng.random() < 0.3:
        return random_atom(rng, complex_only)
    roll = rng.random()
    if roll < 0.35:
        children = tuple(
            random_expr(rng, depth - 1, complex_only, allow_ext)
            for _ in range(rng.randint(2, 3))
        )
        return Sum(children)
    if roll < 0.70:
        children = tuple(
            random_expr(rng, depth - 1, complex_only, allow_ext)
            for _ in range(rng.randint(2, 3))
        )
        return Tensor(children)
    if roll < 0.90:
        return Conj(random_expr(rng, depth - 1, complex_only, allow_ext))
    if allow_ext:
        return Ext(random_ext_argument(rng), rng.randint(1, 4))
    return random_atom(rng, complex_only)


def random_ext_argument(rng: random.Random) -> BundleExpr:
    """A sum of words with at most one higher-rank complex factor each,
    the domain on which every exterior power stays in the language."""
    words = []
    for _ in range(rng.randint(1, 3)):
        factors: list[BundleExpr] = [Atom(lam(rng.randint(-2, 2)))]
        if rng.random() < 0.5:
            factors.append(Atom(trivial(rng.randint(1, 2))))
        if rng.random() < 0.7:
            factors.append(Atom(rng.choice(_COMPLEX_GENERATORS)))
        words.append(Tensor(tuple(factors)))
    return Sum(tuple(words))


def reshuffle(rng: random.Random, e: BundleExpr) -> BundleExpr:
    """Randomly permute and re-associate sum/tensor children; the result
    denotes the same bundle."""
    if isinstance(e, Sum):
        children = [reshuffle(rng, t) for t in e.terms]
        rng.shuffle(children)
        return _regroup(rng, children, Sum)
    if isinstance(e, Tensor):
        children = [reshuffle(rng, f) for f in e.factors]
        rng.shuffle(children)
        return _regroup(rng, children, Tensor)
    if isinstance(e, Conj):
        return Conj(reshuffle(rng, e.operand))
    if isinstance(e, Ext):
        return Ext(reshuffle(rng, e.operand), e.degree)
    return e


def _regroup(rng: random.Random, children: list, node) -> BundleExpr:
    if len(children) > 2 and rng.random() < 0.5:
        split = rng.randint(1, len(children) - 1)
        left, right = children[:split], children[split:]
        grouped = []
        grouped.append(left[0] if len(left) == 1 else node(tuple(left)))
        grouped.append(right[0] if len(right) == 1 else node(tuple(right)))
        return node(tuple(grouped))
    return node(tuple(children))


def multiplicity_oracle(k: int, n: int, statistics: Statistics) -> int:
    if statistics is Statistics.BOSON:
        return count_symmetric_tensors(n, k)
    return count_skew_tensors(n, k)
