"""Generalized Minkowski spaces: a positive block S and a negative block T,
each carrying its own norm and s.i.p.

Two products live on the direct sum.  The auxiliary product

    [u, v]^- = [s1, s2]_S + [t1, t2]_T

is a genuine s.i.p. (it represents the norm sqrt(max-part^2 + ...)), while
the Minkowski product

    [u, v]^+ = [s1, s2]_S - [t1, t2]_T

is indefinite and classifies vectors as space-, light- or time-like.
Coordinates 1..k belong to S, the rest to T.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, UnsupportedError
from .norms import EUCLIDEAN, NormSpec, SipSpace, sip
from .numerics import DEFAULT_TOLERANCES, Tolerances, as_seed


class VectorClass(enum.Enum):
    SPACE_LIKE = "space-like"
    TIME_LIKE = "time-like"
    LIGHT_LIKE = "light-like"


class ConePart(enum.Enum):
    T_PLUS = "T+"
    T_MINUS = "T-"
    NOT_TIME_LIKE = "not-time-like"


@dataclass(frozen=True)
class GeneralizedMinkowskiSpace:
    s_space: SipSpace
    t_space: SipSpace

    @property
    def k(self) -> int:
        return self.s_space.dim

    @property
    def t_dim(self) -> int:
        return self.t_space.dim

    @property
    def n(self) -> int:
        return self.k + self.t_dim

    @property
    def is_spacetime_model(self) -> bool:
        """One-dimensional negative block."""
        return self.t_dim == 1

    @property
    def is_pseudo_euclidean(self) -> bool:
        return self.s_space.norm.kind == EUCLIDEAN and self.t_space.norm.kind == EUCLIDEAN

    @classmethod
    def pseudo_euclidean(cls, k: int, t_dim: int = 1) -> "GeneralizedMinkowskiSpace":
        return cls(SipSpace.euclidean(k), SipSpace.euclidean(t_dim))

    @classmethod
    def from_norms(cls, s_norm: NormSpec, t_norm: NormSpec) -> "GeneralizedMinkowskiSpace":
        return cls(SipSpace(s_norm), SipSpace(t_norm))


def max_norm_spacetime() -> GeneralizedMinkowskiSpace:
    """The 2+1 space over the max-norm plane.

    Its positive subspaces need not have convex unit balls, which makes
    it the stock counterexample for Cauchy-Schwarz on positive subspaces
    of the Minkowski product.
    """
    return GeneralizedMinkowskiSpace(SipSpace.max_norm(2), SipSpace.euclidean(1))


def _check_dim(space: GeneralizedMinkowskiSpace, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (space.n,):
        raise DimensionError(f"expected a vector of dimension {space.n}, got shape {v.shape}")
    return v


def split(space: GeneralizedMinkowskiSpace, v) -> tuple[np.ndarray, np.ndarray]:
    """Coordinate blocks (s, t) of v with v = s (+) t."""
    v = _check_dim(space, v)
    return v[: space.k].copy(), v[space.k :].copy()


def embed(space: GeneralizedMinkowskiSpace, s=None, t=None) -> np.ndarray:
    """Assemble a full vector from block coordinates (missing block is zero)."""
    v = np.zeros(space.n)
    if s is not None:
        v[: space.k] = np.asarray(s, dtype=float)
    if t is not None:
        v[space.k :] = np.asarray(t, dtype=float)
    return v


def product_minus(space: GeneralizedMinkowskiSpace, u, v) -> float:
    """Auxiliary s.i.p.: S-product plus T-product (positive definite)."""
    s1, t1 = split(space, u)
    s2, t2 = split(space, v)
    return sip(space.s_space, s1, s2) + sip(space.t_space, t1, t2)


def product_plus(space: GeneralizedMinkowskiSpace, u, v) -> float:
    """Minkowski product: S-product minus T-product (indefinite)."""
    s1, t1 = split(space, u)
    s2, t2 = split(space, v)
    return sip(space.s_space, s1, s2) - sip(space.t_space, t1, t2)


def j_operator(space: GeneralizedMinkowskiSpace, v) -> np.ndarray:
    """Identity on S, negation on T; intertwines the two products."""
    v = _check_dim(space, v)
    out = v.copy()
    out[space.k :] *= -1.0
    return out


def j_matrix(space: GeneralizedMinkowskiSpace) -> np.ndarray:
    d = np.ones(space.n)
    d[space.k :] = -1.0
    return np.diag(d)


def classify(space: GeneralizedMinkowskiSpace, v, class_tol: float | None = None) -> VectorClass:
    """Sign of the Minkowski scalar square, with a relative light-like band.

    The band is scaled by the auxiliary (definite) square so the
    classification is stable under rescaling of v.
    """
    if class_tol is None:
        class_tol = DEFAULT_TOLERANCES.class_tol
    v = _check_dim(space, v)
    q = product_plus(space, v, v)
    scale = max(1.0, product_minus(space, v, v))
    if abs(q) <= class_tol * scale:
        return VectorClass.LIGHT_LIKE
    return VectorClass.SPACE_LIKE if q > 0 else VectorClass.TIME_LIKE


def cone_part(space: GeneralizedMinkowskiSpace, v, class_tol: float | None = None) -> ConePart:
    """Which sheet of the time-like double cone v lies on (space-time model)."""
    if not space.is_spacetime_model:
        raise UnsupportedError("cone decomposition needs a one-dimensional T block")
    v = _check_dim(space, v)
    if classify(space, v, class_tol) is not VectorClass.TIME_LIKE:
        return ConePart.NOT_TIME_LIKE
    return ConePart.T_PLUS if v[-1] > 0 else ConePart.T_MINUS


@dataclass(frozen=True)
class ConeReport:
    trials: int
    convexity_violations: tuple
    scaling_violations: tuple

    @property
    def passed(self) -> bool:
        return not self.convexity_violations and not self.scaling_violations


def cone_convexity_check(
    space: GeneralizedMinkowskiSpace,
    seed,
    trials: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ConeReport:
    """Sampled convexity of the upper time-like cone, plus the cone property.

    Draws pairs a, b in T+ by rejection, mixes them with a random weight,
    and records any mixture that leaves T+.  Also checks that classification
    is invariant under nonzero scaling.
    """
    if not space.is_spacetime_model:
        raise UnsupportedError("cone decomposition needs a one-dimensional T block")
    rng = as_seed(seed).rng()
    tol = tolerances.class_tol

    def sample_tplus() -> np.ndarray:
        while True:
            v = rng.uniform(-1.0, 1.0, space.n)
            v[-1] = abs(v[-1]) + 0.05
            if cone_part(space, v, tol) is ConePart.T_PLUS:
                return v

    convexity = []
    scaling = []
    for _ in range(trials):
        a = sample_tplus()
        b = sample_tplus()
        mu = float(rng.uniform(0.0, 1.0))
        mix = mu * a + (1.0 - mu) * b
        if cone_part(space, mix, tol) is not ConePart.T_PLUS:
            convexity.append((a, b, mu))
        lam = float(rng.uniform(0.1, 3.0)) * (1.0 if rng.uniform() < 0.5 else -1.0)
        v = rng.uniform(-1.5, 1.5, space.n)
        if classify(space, lam * v, tol) is not classify(space, v, tol):
            scaling.append((v, lam))
    return ConeReport(trials, tuple(convexity), tuple(scaling))
