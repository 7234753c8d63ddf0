"""Invariant metrics on u(2): coupling constants and the mixing angle.

The Lie algebra u(2) is spanned by c = (i/2)*identity and the three
Pauli-halves s_k = (i/2)*sigma_k, an orthonormal basis for the trace form
<x, y> = -2 tr(xy).  Bilinear forms invariant under the adjoint action
make up a two-parameter family diag(1/g'^2, 1/g^2, 1/g^2, 1/g^2): an
overall scale (the coupling constant) and an angle theta with
tan(theta) = g'/g (the electroweak mixing angle).

With the symmetry-breaking section along the second coordinate axis, the
photon direction is c + s3 (the generator fixing the section and rotating
its orthogonal line), the W plane is span{s1, s2}, and the Z direction is
the metric-orthogonal complement of the photon inside span{c, s3}.  These
three subspaces are mutually orthogonal for every member of the family.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .expr import BundleError

INVARIANCE_TOL = 1e-10
ROUND_TRIP_TOL = 1e-9
SINGULAR_VALUE_TOL = 1e-8


class CouplingError(BundleError):
    """Bad metric data: non-symmetric, degenerate, or not invariant."""


class LieAlgebraU2:
    """u(2) with a fixed orthonormal basis and cached structure constants."""

    labels = ("c", "s1", "s2", "s3")

    def __init__(self) -> None:
        i2 = 0.5j
        sigma1 = np.array([[0, 1], [1, 0]], dtype=complex)
        sigma2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
        sigma3 = np.array([[1, 0], [0, -1]], dtype=complex)
        self.basis = np.stack(
            [i2 * np.eye(2), i2 * sigma1, i2 * sigma2, i2 * sigma3]
        )
        self.structure = self._structure_constants()

    def _trace_form(self, x: np.ndarray, y: np.ndarray) -> complex:
        return -2.0 * np.trace(x @ y)

    def _structure_constants(self) -> np.ndarray:
        f = np.zeros((4, 4, 4))
        for a in range(4):
            for b in range(4):
                commutator = self.basis[a] @ self.basis[b] - self.basis[b] @ self.basis[a]
                for c in range(4):
                    coefficient = self._trace_form(commutator, self.basis[c])
                    if abs(coefficient.imag) > 1e-14:
                        raise CouplingError("structure constants are not real")
                    f[a, b, c] = coefficient.real
        return f

    def bracket(self, x: Sequence[float], y: Sequence[float]) -> np.ndarray:
        return np.einsum("abc,a,b->c", self.structure, x, y)

    def ad(self, z: Sequence[float]) -> np.ndarray:
        """Matrix of x -> [z, x] in basis coordinates."""
        return np.einsum("abc,a->cb", self.structure, z)


U2_ALGEBRA = LieAlgebraU2()


@dataclass(frozen=True, eq=False)
class AdMetric:
    """A positive-definite invariant form on u(2) with its parameters."""

    gram: np.ndarray
    g: float
    theta_w: float

    def __post_init__(self) -> None:
        gram = np.array(self.gram, dtype=float)
        gram.setflags(write=False)
        object.__setattr__(self, "gram", gram)

    @property
    def g_prime(self) -> float:
        return self.g * math.tan(self.theta_w)


def _as_gram(m: "AdMetric | np.ndarray | Sequence") -> np.ndarray:
    gram = m.gram if isinstance(m, AdMetric) else np.array(m, dtype=float)
    if gram.shape != (4, 4):
        raise CouplingError("the metric must be a 4x4 matrix")
    return gram


def _require_symmetric(gram: np.ndarray) -> None:
    if not np.allclose(gram, gram.T, atol=INVARIANCE_TOL):
        raise CouplingError("the metric must be symmetric")


def _require_positive_definite(gram: np.ndarray) -> None:
    if np.linalg.eigvalsh(gram).min() <= 0:
        raise CouplingError("degenerate metric: not positive definite")


def ad_invariance_residual(m: "AdMetric | np.ndarray | Sequence") -> float:
    """Largest violation of <[z,x],y> + <x,[z,y]> = 0 over basis vectors."""
    gram = _as_gram(m)
    _require_symmetric(gram)
    residual = 0.0
    for z in np.eye(4):
        ad_z = U2_ALGEBRA.ad(z)
        residual = max(residual, np.abs(ad_z.T @ gram + gram @ ad_z).max())
    return float(residual)


def is_ad_invariant(
    m: "AdMetric | np.ndarray | Sequence", tol: float = INVARIANCE_TOL
) -> bool:
    return ad_invariance_residual(m) < tol


def ad_invariant_metric(g: float, theta_w: float) -> AdMetric:
    """The invariant metric diag(1/g'^2, 1/g^2, 1/g^2, 1/g^2) with
    g' = g tan(theta_w)."""
    if not g > 0:
        raise CouplingError("the coupling constant must be positive")
    if not 0 < theta_w < math.pi / 2:
        raise CouplingError("the angle must lie strictly between 0 and pi/2")
    g_prime = g * math.tan(theta_w)
    gram = np.diag([g_prime**-2, g**-2, g**-2, g**-2])
    return AdMetric(gram=gram, g=g, theta_w=theta_w)


def metric_from_gram(gram: "np.ndarray | Sequence") -> AdMetric:
    """Wrap an invariant positive-definite matrix, deriving its parameters."""
    gram = _as_gram(gram)
    _require_symmetric(gram)
    _require_positive_definite(gram)
    if not is_ad_invariant(gram):
        raise CouplingError("the matrix is not invariant under the adjoint action")
    g = float(gram[1, 1] ** -0.5)
    theta = math.atan(math.sqrt(gram[3, 3] / gram[0, 0]))
    return AdMetric(gram=gram, g=g, theta_w=theta)


# --------------------------------------------------------------------------
# The invariant family


def invariant_form_family_dimension(
    structure: np.ndarray, tol: float = SINGULAR_VALUE_TOL
) -> int:
    """Dimension of the space of invariant symmetric bilinear forms for the
    given structure constants, via the nullity of the constraint system."""
    n = structure.shape[0]
    sym_basis = []
    for i in range(n):
        for j in range(i, n):
            e = np.zeros((n, n))
            e[i, j] = e[j, i] = 1.0
            sym_basis.append(e)
    # One block of constraints per basis direction z; columns index the
    # coefficients over the symmetric basis.
    blocks = []
    for z in np.eye(n):
        ad_z = np.einsum("abc,a->cb", structure, z)
        blocks.append(
            np.column_stack([(ad_z.T @ e + e @ ad_z).ravel() for e in sym_basis])
        )
    constraints = np.vstack(blocks)
    singular_values = np.linalg.svd(constraints, compute_uv=False)
    rank = int((singular_values > tol).sum())
    return len(sym_basis) - rank


def su2_structure() -> np.ndarray:
    """Structure constants of the su(2) block alone."""
    return U2_ALGEBRA.structure[1:, 1:, 1:]


def invariant_metric_family_dimension() -> int:
    """Number of parameters of the invariant-metric family on u(2)."""
    return invariant_form_family_dimension(U2_ALGEBRA.structure)


# --------------------------------------------------------------------------
# Electroweak directions


class EWDirections(NamedTuple):
    photon: np.ndarray
    w_plane: tuple[np.ndarray, np.ndarray]
    z: np.ndarray


def _metric_normalize(v: np.ndarray, gram: np.ndarray) -> np.ndarray:
    norm = math.sqrt(float(v @ gram @ v))
    if norm == 0:
        raise CouplingError("degenerate metric: null direction")
    return v / norm


def ew_directions(m: "AdMetric | np.ndarray | Sequence") -> EWDirections:
    """Photon, W-plane, and Z directions, unit-normalized and mutually
    orthogonal for the given invariant metric."""
    gram = _as_gram(m)
    _require_symmetric(gram)
    _require_positive_definite(gram)
    if not is_ad_invariant(gram):
        raise CouplingError("directions are defined for invariant metrics")
    photon_raw = np.array([1.0, 0.0, 0.0, 1.0])
    paired = gram @ photon_raw
    z_raw = np.array([paired[3], 0.0, 0.0, -paired[0]])
    if z_raw[0] < 0:
        z_raw = -z_raw
    photon = _metric_normalize(photon_raw, gram)
    z = _metric_normalize(z_raw, gram)
    w1 = _metric_normalize(np.array([0.0, 1.0, 0.0, 0.0]), gram)
    w2 = _metric_normalize(np.array([0.0, 0.0, 1.0, 0.0]), gram)
    return EWDirections(photon=photon, w_plane=(w1, w2), z=z)


def weinberg_angle(m: "AdMetric | np.ndarray | Sequence") -> float:
    """arctan of g'/g read off the metric: the norm ratio of the third
    Pauli-half to the central direction."""
    gram = _as_gram(m)
    _require_symmetric(gram)
    _require_positive_definite(gram)
    if not is_ad_invariant(gram):
        raise CouplingError("the angle is defined for invariant metrics")
    return math.atan(math.sqrt(gram[3, 3] / gram[0, 0]))


# --------------------------------------------------------------------------
# Interaction strengths

DEFAULT_STRENGTHS = {
    # Placeholder magnitudes; only the ordering is meaningful.
    "strong": 1.0,
    "electromagnetic": 0.30,
    "weak": 0.10,
}

DEFAULT_COUPLING_CONFIG = {
    "strong": 1.0,
    "em": 0.30,
    "weak_g": 0.65,
    "weinberg_angle": 0.49,
}


def load_coupling_config(source: "Mapping | str | Path | None" = None) -> dict:
    """Coupling configuration: {strong, em, weak_g, weinberg_angle}."""
    if source is None:
        return dict(DEFAULT_COUPLING_CONFIG)
    if isinstance(source, (str, Path)):
        with open(source) as handle:
            data = json.load(handle)
    else:
        data = dict(source)
    config = dict(DEFAULT_COUPLING_CONFIG)
    unknown = set(data) - set(config)
    if unknown:
        raise CouplingError(f"unknown coupling config keys: {sorted(unknown)}")
    config.update(data)
    for key, value in config.items():
        if not isinstance(value, (int, float)) or not value > 0:
            raise CouplingError(f"coupling config {key!r} must be positive")
    return config


def strength_order(couplings: Mapping[str, float]) -> list[str]:
    """Interactions sorted by decreasing coupling, ties broken by name."""
    if not couplings:
        return []
    if any(value <= 0 for value in couplings.values()):
        raise CouplingError("coupling constants must be positive")
    return sorted(couplings, key=lambda name: (-couplings[name], name))
