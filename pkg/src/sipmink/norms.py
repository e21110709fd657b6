"""Norm families and their semi-inner-product (s.i.p.) representations.

A semi-inner-product is linear in its first argument, positive definite,
and satisfies the Cauchy-Schwarz inequality; it represents a norm via
``|x|^2 = [x, x]``.  For the p-norms the representing product has the
closed form

    [x, y] = |y|^(2-p) * sum_i x_i |y_i|^(p-1) sgn(y_i),

the max norm uses the dominant coordinate (smallest index on ties), and
any other gauge falls back to the norm-derivative construction
``[x, y] = |y| * d/dt |y + t x| at t=0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionError, DomainError
from .numerics import (
    DEFAULT_TOLERANCES,
    ResidualTracker,
    Tolerances,
    as_seed,
    build_report,
    central_diff,
    first_diff_step,
    sample_vectors,
    second_diff_step,
)

EUCLIDEAN = "euclidean"
PNORM = "pnorm"
MAX = "max"
GAUGE = "gauge"

_SMOOTH_KINDS = (EUCLIDEAN, PNORM)


@dataclass(frozen=True)
class NormSpec:
    """Descriptor of a norm family on R^dim."""

    kind: str
    dim: int
    p: float | None = None
    gauge: Callable[[np.ndarray], float] | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError("dimension must be positive")
        if self.kind == PNORM and not (self.p is not None and self.p > 1):
            raise DomainError("p-norm requires p > 1")
        if self.kind == GAUGE and self.gauge is None:
            raise DomainError("custom gauge requires an evaluator")
        if self.kind not in (EUCLIDEAN, PNORM, MAX, GAUGE):
            raise DomainError(f"unknown norm kind {self.kind!r}")

    @classmethod
    def euclidean(cls, dim: int) -> "NormSpec":
        return cls(EUCLIDEAN, dim)

    @classmethod
    def pnorm(cls, p: float, dim: int) -> "NormSpec":
        return cls(PNORM, dim, p=float(p))

    @classmethod
    def max_norm(cls, dim: int) -> "NormSpec":
        return cls(MAX, dim)

    @classmethod
    def custom_gauge(cls, gauge: Callable, dim: int, check_seed=0) -> "NormSpec":
        """Register a positive-homogeneous gauge; spot-checks homogeneity
        and positivity on sampled inputs."""
        spec = cls(GAUGE, dim, gauge=gauge)
        for x in sample_vectors(check_seed, dim, 5, radius=2.0):
            gx = float(gauge(x))
            if not gx > 0:
                raise DomainError("gauge must be positive on nonzero vectors")
            for lam in (-2.0, -0.5, 0.5, 3.0):
                if abs(float(gauge(lam * x)) - abs(lam) * gx) > 1e-8 * max(1.0, gx):
                    raise DomainError("gauge fails absolute homogeneity")
        return spec

    @property
    def is_smooth(self) -> bool:
        """Gateaux-differentiable away from the origin."""
        return self.kind in _SMOOTH_KINDS


@dataclass(frozen=True)
class SipSpace:
    """A norm together with the evaluation route of its s.i.p.

    ``sip_mode`` selects between the closed form ("closed") and the
    norm-derivative construction ("derivative"); the two agree within
    finite-difference tolerance for smooth norms.
    """

    norm: NormSpec
    sip_mode: str = "closed"

    def __post_init__(self):
        if self.sip_mode not in ("closed", "derivative"):
            raise DomainError(f"unknown sip_mode {self.sip_mode!r}")

    @classmethod
    def euclidean(cls, dim: int) -> "SipSpace":
        return cls(NormSpec.euclidean(dim))

    @classmethod
    def pnorm(cls, p: float, dim: int) -> "SipSpace":
        return cls(NormSpec.pnorm(p, dim))

    @classmethod
    def max_norm(cls, dim: int) -> "SipSpace":
        return cls(NormSpec.max_norm(dim))

    @property
    def dim(self) -> int:
        return self.norm.dim


def _spec(space) -> NormSpec:
    return space.norm if isinstance(space, SipSpace) else space


def check_dim(spec: NormSpec, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.dim,):
        raise DimensionError(f"expected a vector of dimension {spec.dim}, got shape {x.shape}")
    return x


def norm(space, x) -> float:
    """Norm of x under the space's norm family."""
    spec = _spec(space)
    x = check_dim(spec, x)
    if spec.kind == EUCLIDEAN:
        return float(np.sqrt(x @ x))
    if spec.kind == PNORM:
        return float(np.sum(np.abs(x) ** spec.p) ** (1.0 / spec.p))
    if spec.kind == MAX:
        return float(np.max(np.abs(x)))
    return float(spec.gauge(x))


def norm_batch(space, X: np.ndarray) -> np.ndarray:
    """Row-wise norms of an (N, dim) array."""
    spec = _spec(space)
    X = np.asarray(X, dtype=float)
    if spec.kind == EUCLIDEAN:
        return np.sqrt(np.einsum("...i,...i->...", X, X))
    if spec.kind == PNORM:
        return np.sum(np.abs(X) ** spec.p, axis=-1) ** (1.0 / spec.p)
    if spec.kind == MAX:
        return np.max(np.abs(X), axis=-1)
    return np.array([float(spec.gauge(row)) for row in X.reshape(-1, spec.dim)]).reshape(X.shape[:-1])


def _sip_closed(spec: NormSpec, x: np.ndarray, y: np.ndarray) -> float:
    if spec.kind == EUCLIDEAN:
        return float(x @ y)
    if spec.kind == PNORM:
        p = spec.p
        ny = float(np.sum(np.abs(y) ** p) ** (1.0 / p))
        if ny == 0.0:
            return 0.0
        return float(ny ** (2.0 - p) * np.sum(x * np.abs(y) ** (p - 1.0) * np.sign(y)))
    if spec.kind == MAX:
        j = int(np.argmax(np.abs(y)))  # smallest index attains the max on ties
        return float(x[j] * y[j])
    raise DomainError("no closed form for this norm kind")


def _sip_derivative(spec: NormSpec, x: np.ndarray, y: np.ndarray) -> float:
    ny = norm(spec, y)
    h = first_diff_step(ny)
    return ny * central_diff(lambda t: norm(spec, y + t * x), 0.0, h)


def sip(space, x, y) -> float:
    """Semi-inner-product [x, y]; linear in x, |.|-homogeneous in y."""
    spec = _spec(space)
    x = check_dim(spec, x)
    y = check_dim(spec, y)
    if not np.any(y):
        return 0.0  # homogeneity forces [x, 0] = 0
    mode = space.sip_mode if isinstance(space, SipSpace) else "closed"
    if mode == "closed" and spec.kind != GAUGE:
        return _sip_closed(spec, x, y)
    return _sip_derivative(spec, x, y)


def sip_matrix(space, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Matrix of pairwise products [U[i], V[j]] (closed forms only)."""
    spec = _spec(space)
    U = np.asarray(U, dtype=float)
    V = np.asarray(V, dtype=float)
    if spec.kind == EUCLIDEAN:
        return U @ V.T
    if spec.kind == PNORM:
        p = spec.p
        nv = norm_batch(spec, V)
        W = np.abs(V) ** (p - 1.0) * np.sign(V)
        scale = np.where(nv > 0, nv ** (2.0 - p), 0.0)
        return (U @ W.T) * scale[None, :]
    if spec.kind == MAX:
        j = np.argmax(np.abs(V), axis=1)
        vals = V[np.arange(V.shape[0]), j]
        return U[:, j] * vals[None, :]
    raise DomainError("sip_matrix requires a closed-form norm kind")


def norm_first_derivative(space, x, y) -> float:
    """Directional derivative of the norm at y in direction x."""
    spec = _spec(space)
    x = check_dim(spec, x)
    y = check_dim(spec, y)
    if not np.any(y):
        raise DomainError("norm derivative is undefined at the origin")
    h = first_diff_step(norm(spec, y))
    return central_diff(lambda t: norm(spec, y + t * x), 0.0, h)


def norm_second_derivative(space, x, z, y) -> float:
    """Second directional derivative of the norm at y, directions x then z."""
    spec = _spec(space)
    x = check_dim(spec, x)
    z = check_dim(spec, z)
    y = check_dim(spec, y)
    if not np.any(y):
        raise DomainError("norm derivative is undefined at the origin")
    h = second_diff_step(norm(spec, y))
    return central_diff(lambda t: norm_first_derivative(space, x, y + t * z), 0.0, h)


def sip_second_arg_derivative(space, x, y, z) -> float:
    """Derivative of t -> [x, y + t z] at t = 0."""
    spec = _spec(space)
    x = check_dim(spec, x)
    y = check_dim(spec, y)
    z = check_dim(spec, z)
    if not np.any(y):
        raise DomainError("second-argument derivative is undefined at the origin")
    if not np.any(z):
        return 0.0
    h = first_diff_step(norm(spec, y))
    return central_diff(lambda t: sip(space, x, y + t * z), 0.0, h)


def derivative_identity_residual(space, x, y, z) -> float:
    """Residual of the identity linking the two derivative notions:

        |y| * norm''_{x,z}(y)  =  d/dt [x, y + t z]|_0  -  [x,y][z,y] / |y|^2.

    Small residuals certify that the s.i.p. differentiates the way the
    twice-differentiable norm does.
    """
    spec = _spec(space)
    ny = norm(spec, y)
    lhs = ny * norm_second_derivative(space, x, z, y)
    rhs = sip_second_arg_derivative(space, x, y, z) - sip(space, x, y) * sip(space, z, y) / (ny * ny)
    return abs(lhs - rhs)


def nath_product(space, p: float, x, y) -> float:
    """p-homogeneous generalized product built from the s.i.p.

    Defined self-consistently by requiring |x| = [x,x]^(1/p), which gives
    [x, y]_p = |y|^(p-2) [x, y]; its second argument is (p-1)-homogeneous.
    """
    if p < 1:
        raise DomainError("requires p >= 1")
    spec = _spec(space)
    y = check_dim(spec, np.asarray(y, dtype=float))
    if not np.any(y):
        return 0.0
    return norm(spec, y) ** (p - 2.0) * sip(space, x, y)


def sip_axiom_report(space, seed, trials: int, tolerances: Tolerances = DEFAULT_TOLERANCES):
    """Max residuals of the s.i.p. axioms over seeded samples.

    Checks additivity and homogeneity in the first argument, real
    homogeneity in the second, positivity and norm consistency of the
    square, and the Cauchy-Schwarz inequality.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    spec = _spec(space)
    product = lambda u, v: sip(space, u, v)
    nrm = lambda v: norm(spec, v)
    return product_axiom_report(product, spec.dim, seed, trials, tolerances, norm_fn=nrm)


def product_axiom_report(
    product: Callable[[np.ndarray, np.ndarray], float],
    dim: int,
    seed,
    trials: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    norm_fn: Callable[[np.ndarray], float] | None = None,
):
    """S.i.p. axiom residuals for an arbitrary product handle.

    When ``norm_fn`` is omitted the norm is taken as sqrt([v, v]).
    """
    rng = as_seed(seed).rng()
    if norm_fn is None:
        norm_fn = lambda v: float(np.sqrt(max(product(v, v), 0.0)))
    add = ResidualTracker("additivity_first")
    hom1 = ResidualTracker("homogeneity_first")
    hom2 = ResidualTracker("homogeneity_second")
    pos = ResidualTracker("positivity")
    sq = ResidualTracker("square_matches_norm")
    cs = ResidualTracker("cauchy_schwarz")
    for _ in range(trials):
        x, y, z = (rng.uniform(-1.5, 1.5, dim) for _ in range(3))
        lam = float(rng.uniform(-3.0, 3.0))
        add.update(product(x + y, z) - product(x, z) - product(y, z), x, y, z)
        hom1.update(product(lam * x, y) - lam * product(x, y), lam, x, y)
        hom2.update(product(x, lam * y) - lam * product(x, y), lam, x, y)
        qx = product(x, x)
        pos.update(max(0.0, -qx) if np.any(x) else 0.0, x)
        sq.update(qx - norm_fn(x) ** 2, x)
        cs.update(max(0.0, product(x, y) ** 2 - qx * product(y, y)), x, y)
    return build_report([add, hom1, hom2, pos, sq, cs], tolerances.eq_tol)
