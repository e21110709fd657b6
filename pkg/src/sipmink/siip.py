"""Semi-indefinite-inner-product (s.i.i.p.) constructions.

An s.i.i.p. is additive and homogeneous in its first argument,
homogeneous in the second, has real scalar squares, is nondegenerate,
and satisfies Cauchy-Schwarz only on definite subspaces.  The variants
here cover the known construction routes:

* ``cross_polytope`` -- the piecewise-linear product whose scalar square
  alternates sign with the combinatorial dimension of the supporting
  cross-polytope face;
* ``sign_function``  -- a supporting-functional product over any smooth
  norm, with a user-chosen sign on the unit sphere;
* ``normsquare_hessian`` -- one half of the Hessian quadratic form of a
  degree-2 homogeneous "normsquare" function;
* ``diagonal``       -- the classic indefinite inner product with a
  +/-1 signature;
* ``weighted_plane`` -- a product associated to the Euclidean plane norm
  that is linear in the first argument and homogeneous in the second yet
  violates Cauchy-Schwarz (definiteness alone does not give the bound).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConstantSignError, DimensionError, DomainError, UnsupportedError
from .norms import NormSpec, norm, check_dim as _check_norm_dim
from .numerics import (
    DEFAULT_TOLERANCES,
    ResidualTracker,
    Tolerances,
    as_seed,
    build_report,
    central_diff,
    first_diff_step,
    second_diff_step,
)

CROSS_POLYTOPE = "cross_polytope"
SIGN_FUNCTION = "sign_function"
NORMSQUARE_HESSIAN = "normsquare_hessian"
DIAGONAL = "diagonal"
WEIGHTED_PLANE = "weighted_plane"


@dataclass(frozen=True)
class SiipSpace:
    kind: str
    dim: int
    norm_spec: NormSpec | None = None
    sign_fn: Callable[[np.ndarray], float] | None = None
    gfun: Callable[[np.ndarray], float] | None = None
    signature: tuple[int, ...] | None = None
    support_tol: float = 1e-9

    @classmethod
    def cross_polytope(cls, dim: int) -> "SiipSpace":
        if dim < 1:
            raise DomainError("dimension must be positive")
        return cls(CROSS_POLYTOPE, dim)

    @classmethod
    def sign_function(cls, norm_spec: NormSpec, sign_fn: Callable) -> "SiipSpace":
        if not norm_spec.is_smooth:
            raise UnsupportedError(
                "sign-function products need a smooth norm; polyhedral norms "
                "have no canonical supporting functional"
            )
        return cls(SIGN_FUNCTION, norm_spec.dim, norm_spec=norm_spec, sign_fn=sign_fn)

    @classmethod
    def normsquare_hessian(cls, gfun: Callable, dim: int) -> "SiipSpace":
        return cls(NORMSQUARE_HESSIAN, dim, gfun=gfun)

    @classmethod
    def diagonal(cls, signature) -> "SiipSpace":
        sig = tuple(int(s) for s in signature)
        if not sig or any(s not in (-1, 1) for s in sig):
            raise DomainError("signature must be a nonempty tuple of +/-1")
        return cls(DIAGONAL, len(sig), signature=sig)

    @classmethod
    def weighted_plane(cls) -> "SiipSpace":
        return cls(WEIGHTED_PLANE, 2)


def _check_dim(space: SiipSpace, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (space.dim,):
        raise DimensionError(f"expected a vector of dimension {space.dim}, got shape {v.shape}")
    return v


def _support(v: np.ndarray, support_tol: float) -> np.ndarray:
    vmax = np.max(np.abs(v))
    if vmax == 0.0:
        return np.zeros(v.shape, dtype=bool)
    return np.abs(v) > support_tol * vmax


def _supporting_functional(norm_spec: NormSpec, unit_v: np.ndarray) -> np.ndarray:
    # finite-difference gradient of the norm, rescaled so ell(v) = 1 exactly
    h = first_diff_step(1.0)
    grad = np.array(
        [
            central_diff(lambda t, i=i: norm(norm_spec, unit_v + t * _basis(norm_spec.dim, i)), 0.0, h)
            for i in range(norm_spec.dim)
        ]
    )
    return grad / float(grad @ unit_v)


def _basis(dim: int, i: int) -> np.ndarray:
    e = np.zeros(dim)
    e[i] = 1.0
    return e


def _hessian(gfun: Callable, v: np.ndarray) -> np.ndarray:
    n = v.size
    h = second_diff_step(float(np.linalg.norm(v)))
    H = np.empty((n, n))
    for i in range(n):
        ei = _basis(n, i)
        for j in range(i, n):
            ej = _basis(n, j)
            val = (
                gfun(v + h * ei + h * ej)
                - gfun(v + h * ei - h * ej)
                - gfun(v - h * ei + h * ej)
                + gfun(v - h * ei - h * ej)
            ) / (4.0 * h * h)
            H[i, j] = H[j, i] = val
    return H


def siip(space: SiipSpace, u, v) -> float:
    """Evaluate the s.i.i.p. [u, v] of the given variant."""
    u = _check_dim(space, u)
    v = _check_dim(space, v)
    if space.kind == DIAGONAL:
        return float(np.sum(np.array(space.signature) * u * v))
    if space.kind == WEIGHTED_PLANE:
        x1, y1 = u
        x2, y2 = v
        den = x2 * x2 + 2.0 * y2 * y2
        if den == 0.0:
            return 0.0  # v = 0; homogeneity forces the value
        return float((x1 * x2 + 2.0 * y1 * y2) * (x2 * x2 + y2 * y2) / den)
    if space.kind == CROSS_POLYTOPE:
        supp = _support(v, space.support_tol)
        if not np.any(supp):
            return 0.0
        k = int(np.sum(supp)) - 1
        one_norm = float(np.sum(np.abs(v[supp])))
        return float((-1.0) ** k * one_norm * np.sum(np.sign(v[supp]) * u[supp]))
    if not np.any(v):
        raise DomainError("this variant is undefined at v = 0")
    if space.kind == SIGN_FUNCTION:
        nv = norm(space.norm_spec, v)
        unit_v = v / nv
        eps = float(space.sign_fn(unit_v))
        if eps not in (-1.0, 1.0):
            raise DomainError("sign function must return +/-1")
        ell = _supporting_functional(space.norm_spec, unit_v)
        return float(eps * nv * (ell @ u))
    if space.kind == NORMSQUARE_HESSIAN:
        H = _hessian(space.gfun, v)
        return float(0.5 * u @ H @ v)
    raise DomainError(f"unknown variant {space.kind!r}")


def _as_product(product) -> Callable[[np.ndarray, np.ndarray], float]:
    if isinstance(product, SiipSpace):
        return lambda u, v: siip(product, u, v)
    return product


def _definite_span(space: SiipSpace, product, u, v, tol: float) -> bool:
    """Whether span{u, v} has constant-sign scalar squares.

    Symmetric bilinear variants admit the exact two-dimensional criterion
    (positive Gram determinant); other variants are scanned along a fixed
    circle of combinations.
    """
    qu, qv = product(u, u), product(v, v)
    if (qu > 0) != (qv > 0):
        return False
    if space.kind == DIAGONAL:
        guv = product(u, v)
        return qu * qv - guv * guv > tol
    signs = []
    for phi in np.linspace(0.0, np.pi, 36, endpoint=False):
        w = np.cos(phi) * u + np.sin(phi) * v
        if not np.any(w):
            continue
        q = product(w, w)
        scale = max(1.0, float(w @ w))
        if abs(q) <= tol * scale:
            return False
        signs.append(q > 0)
    return len(signs) > 0 and (all(signs) or not any(signs))


def siip_axiom_report(space: SiipSpace, seed, trials: int, tolerances: Tolerances = DEFAULT_TOLERANCES):
    """Residual report for the s.i.i.p. axioms over seeded samples.

    Cauchy-Schwarz is only demanded where it is promised: on sampled
    pairs whose two-dimensional span has constant-sign scalar squares.
    Nondegeneracy records a failure flag (and witness) if a sampled
    nonzero v annihilates every basis vector and itself.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    rng = as_seed(seed).rng()
    product = _as_product(space)
    basis = [_basis(space.dim, i) for i in range(space.dim)]
    add = ResidualTracker("additivity_first")
    hom1 = ResidualTracker("homogeneity_first")
    hom2 = ResidualTracker("homogeneity_second")
    sqreal = ResidualTracker("square_real")
    nondeg = ResidualTracker("nondegeneracy")
    cs = ResidualTracker("cauchy_schwarz_definite")
    tol = tolerances.eq_tol
    for _ in range(trials):
        x, y = rng.uniform(-1.5, 1.5, space.dim), rng.uniform(-1.5, 1.5, space.dim)
        v = rng.uniform(-1.5, 1.5, space.dim)
        lam = float(rng.uniform(-3.0, 3.0))
        if not np.any(v):
            continue
        add.update(product(x + y, v) - product(x, v) - product(y, v), x, y, v)
        hom1.update(product(lam * x, v) - lam * product(x, v), lam, x, v)
        if lam != 0.0:
            hom2.update(product(x, lam * v) - lam * product(x, v), lam, x, v)
        qv = product(v, v)
        sqreal.update(0.0 if np.isfinite(qv) else np.inf, v)
        scale = max(1.0, float(v @ v))
        if abs(qv) <= tol * scale and all(abs(product(b, v)) <= tol for b in basis):
            nondeg.update(1.0, v)
        if np.any(x) and _definite_span(space, product, x, v, tol):
            cs.update(max(0.0, product(x, v) ** 2 - product(x, x) * qv), x, v)
    return build_report([add, hom1, hom2, sqreal, nondeg, cs], tol)


def cauchy_schwarz_witness(
    product,
    basis,
    seed,
    trials: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    radius: float = 2.0,
):
    """Search span(basis) for the worst Cauchy-Schwarz violation.

    The subspace must look definite first: if sampled scalar squares
    change sign (or vanish), raises :class:`ConstantSignError`.  Returns
    ``(u, v, margin)`` with margin = [u,v]^2 - [u,u][v,v] for the worst
    violating pair, or ``None`` when no violation was sampled.
    """
    fn = _as_product(product)
    basis = [np.asarray(b, dtype=float) for b in basis]
    rng = as_seed(seed).rng()
    sign = None
    for _ in range(min(trials, 200)):
        c = rng.uniform(-radius, radius, len(basis))
        v = sum(ci * bi for ci, bi in zip(c, basis))
        if not np.any(v):
            continue
        q = fn(v, v)
        if abs(q) <= tolerances.eq_tol * max(1.0, float(v @ v)):
            raise ConstantSignError("sampled scalar square vanishes on the subspace")
        if sign is None:
            sign = q > 0
        elif (q > 0) != sign:
            raise ConstantSignError("sampled scalar squares change sign on the subspace")
    best = None
    for _ in range(trials):
        cu = rng.uniform(-radius, radius, len(basis))
        cv = rng.uniform(-radius, radius, len(basis))
        u = sum(ci * bi for ci, bi in zip(cu, basis))
        v = sum(ci * bi for ci, bi in zip(cv, basis))
        if not (np.any(u) and np.any(v)):
            continue
        margin = fn(u, v) ** 2 - fn(u, u) * fn(v, v)
        if margin > tolerances.eq_tol and (best is None or margin > best[2]):
            best = (u, v, float(margin))
    return best


def normsquare_check(
    gfun: Callable, seed, trials: int, dim: int = 2, tolerances: Tolerances = DEFAULT_TOLERANCES
):
    """Check the normsquare contract of G: degree-2 homogeneity, and
    convexity of sqrt(G) along sampled segments where G stays nonnegative."""
    if trials < 1:
        raise DomainError("trials must be at least 1")
    rng = as_seed(seed).rng()
    hom = ResidualTracker("homogeneity_degree2")
    conv = ResidualTracker("sqrt_convexity")
    for _ in range(trials):
        x = rng.uniform(-2.0, 2.0, dim)
        y = rng.uniform(-2.0, 2.0, dim)
        lam = float(rng.uniform(-3.0, 3.0))
        hom.update(gfun(lam * x) - lam * lam * gfun(x), lam, x)
        ts = np.linspace(0.0, 1.0, 5)
        pts = [x + t * (y - x) for t in ts]
        vals = [gfun(p) for p in pts]
        if all(v >= 0.0 for v in vals):
            roots = np.sqrt(vals)
            for i in range(1, len(ts) - 1):
                conv.update(max(0.0, roots[i] - 0.5 * (roots[i - 1] + roots[i + 1])), x, y, ts[i])
    return build_report([hom, conv], tolerances.eq_tol)


def polarization_neutral_check(
    space: SiipSpace, basis, seed, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """True iff span(basis) is neutral: every vector has zero scalar square.

    For a real symmetric bilinear product this is equivalent (by
    polarization) to all pairwise products of basis vectors vanishing,
    which is what is checked; sampled span vectors cross-check it.
    """
    if space.kind != DIAGONAL:
        raise UnsupportedError("neutrality via polarization needs a symmetric bilinear variant")
    basis = [_check_dim(space, b) for b in basis]
    tol = tolerances.eq_tol
    pairwise = all(
        abs(siip(space, bi, bj)) <= tol for bi in basis for bj in basis
    )
    rng = as_seed(seed).rng()
    for _ in range(32):
        c = rng.uniform(-2.0, 2.0, len(basis))
        v = sum(ci * bi for ci, bi in zip(c, basis))
        sampled_zero = abs(siip(space, v, v)) <= tol * max(1.0, float(v @ v))
        if sampled_zero != pairwise:
            # cannot happen for a bilinear product; guards misuse
            raise DomainError("sampled squares disagree with the pairwise criterion")
    return pairwise
