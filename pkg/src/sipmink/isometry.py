"""Linear maps on generalized Minkowski spaces: product preservation,
the adjoint identity through the J operator, Lorentz boosts, geodesic
distance preservation, and strict-convexity witnesses.

A linear isometry of H+ preserves the Minkowski product, satisfies
F^{-1} = J F^T J (verified here in the weak sampled form
[Fv, J F w]^- = [v, J w]^-, which nondegeneracy makes equivalent), and
maps the pole e_n into H+.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularMapError, UnsupportedError
from .hyperboloid import HPoint, as_hpoint, geodesic_distance, lift
from .minkowski import (
    GeneralizedMinkowskiSpace,
    VectorClass,
    classify,
    j_operator,
    product_minus,
    product_plus,
)
from .norms import MAX, SipSpace, norm, sip
from .numerics import DEFAULT_TOLERANCES, ResidualTracker, Tolerances, as_seed


def load_matrix_csv(path: str) -> np.ndarray:
    """Read a square matrix from CSV (one row per line, comma separated)."""
    try:
        rows = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rows.append([float(cell) for cell in line.split(",")])
    except (OSError, ValueError) as err:
        raise DomainError(f"cannot read matrix from {path!r}: {err}") from None
    F = np.array(rows, dtype=float)
    if F.ndim != 2 or F.shape[0] != F.shape[1]:
        raise DomainError(f"matrix in {path!r} is not square: shape {F.shape}")
    return F


def require_invertible(F: np.ndarray, tol: float = DEFAULT_TOLERANCES.eq_tol) -> np.ndarray:
    F = np.asarray(F, dtype=float)
    if F.ndim != 2 or F.shape[0] != F.shape[1]:
        raise DomainError("expected a square matrix")
    if not np.all(np.isfinite(F)):
        raise SingularMapError("matrix has non-finite entries")
    if abs(np.linalg.det(F)) <= tol:
        raise SingularMapError("matrix is numerically singular")
    return F


@dataclass(frozen=True)
class IsometryReport:
    product_residual: float
    product_witness: tuple
    adjoint_residual: float
    adjoint_witness: tuple
    pole_image: np.ndarray
    pole_class: VectorClass
    pole_last_positive: bool
    pole_square_residual: float

    @property
    def pole_in_upper_sheet(self) -> bool:
        return self.pole_class is VectorClass.TIME_LIKE and self.pole_last_positive

    def passes(self, tol: float) -> bool:
        return (
            self.product_residual <= tol
            and self.adjoint_residual <= tol
            and self.pole_in_upper_sheet
            and self.pole_square_residual <= tol
        )


def isometry_report(
    space: GeneralizedMinkowskiSpace,
    F: np.ndarray,
    seed,
    trials: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> IsometryReport:
    """Sampled residuals of the isometry conditions for a linear map F.

    (a) Minkowski product preservation |[Fv,Fw]^+ - [v,w]^+|;
    (b) the adjoint identity in its weak form |[Fv, JFw]^- - [v, Jw]^-|;
    (c) the pole condition: F e_n stays on the upper sheet.
    """
    F = require_invertible(F, tolerances.eq_tol)
    if F.shape[0] != space.n:
        raise DomainError("matrix dimension does not match the space")
    rng = as_seed(seed).rng()
    prod = ResidualTracker("product")
    adj = ResidualTracker("adjoint")
    for _ in range(trials):
        v = rng.uniform(-1.5, 1.5, space.n)
        w = rng.uniform(-1.5, 1.5, space.n)
        prod.update(product_plus(space, F @ v, F @ w) - product_plus(space, v, w), v, w)
        adj.update(
            product_minus(space, F @ v, j_operator(space, F @ w)) - product_minus(space, v, j_operator(space, w)),
            v,
            w,
        )
    e_n = np.zeros(space.n)
    e_n[-1] = 1.0
    img = F @ e_n
    return IsometryReport(
        product_residual=prod.residual,
        product_witness=prod.witness,
        adjoint_residual=adj.residual,
        adjoint_witness=adj.witness,
        pole_image=img,
        pole_class=classify(space, img, tolerances.class_tol),
        pole_last_positive=bool(img[-1] > 0),
        pole_square_residual=abs(product_plus(space, img, img) + 1.0),
    )


def lorentz_boost(space: GeneralizedMinkowskiSpace, axis: int, rapidity: float) -> np.ndarray:
    """Hyperbolic rotation in the (axis, time) plane of a pseudo-Euclidean
    space-time model; axis indexes the S block (0-based)."""
    if not (space.is_spacetime_model and space.is_pseudo_euclidean):
        raise UnsupportedError("boosts are defined for pseudo-Euclidean space-time models")
    if not 0 <= axis < space.k:
        raise DomainError("boost axis must index the S block")
    F = np.eye(space.n)
    c, s = float(np.cosh(rapidity)), float(np.sinh(rapidity))
    last = space.n - 1
    F[axis, axis] = c
    F[axis, last] = s
    F[last, axis] = s
    F[last, last] = c
    return F


@dataclass(frozen=True)
class DistancePreservationReport:
    max_deviation: float
    pairs: tuple

    def passes(self, tol: float) -> bool:
        return self.max_deviation <= tol


def distance_preservation_check(
    space: GeneralizedMinkowskiSpace,
    F: np.ndarray,
    seed,
    pairs: int,
    m: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    max_distance: float = 3.0,
) -> DistancePreservationReport:
    """Compare geodesic distances before and after applying F to sampled
    point pairs on H+ (distance filtered to at most ``max_distance``)."""
    report = isometry_report(space, F, seed, 64, tolerances)
    if not report.passes(max(tolerances.eq_tol, 1e-10)):
        raise DomainError("map fails the isometry report; distance check is meaningless")
    rng = as_seed(seed).rng()
    deviations = []
    details = []
    attempts = 0
    while len(deviations) < pairs and attempts < 100 * pairs:
        attempts += 1
        a = lift(space, rng.uniform(-1.2, 1.2, space.k))
        b = lift(space, rng.uniform(-1.2, 1.2, space.k))
        mink = product_plus(space, a.vector, b.vector)
        proxy = float(np.arccosh(max(1.0, -mink)))
        if not 0.05 <= proxy <= max_distance:
            continue
        d_ab = geodesic_distance(space, a, b, m, tolerances=tolerances)
        fa = as_hpoint(space, F @ a.vector)
        fb = as_hpoint(space, F @ b.vector)
        d_f = geodesic_distance(space, fa, fb, m, tolerances=tolerances)
        deviations.append(abs(d_ab - d_f))
        details.append((a.s, b.s, d_ab, d_f))
    if not deviations:
        raise DomainError("could not sample point pairs in the distance window")
    return DistancePreservationReport(float(max(deviations)), tuple(details))


def sip_preservation_residual(space: SipSpace, F: np.ndarray, seed, trials: int):
    """(max |[Fx,Fy]-[x,y]|, max ||Fx|-|x||) over samples: a map preserving
    the (unique, smooth-norm) s.i.p. preserves the norm, and conversely."""
    F = np.asarray(F, dtype=float)
    rng = as_seed(seed).rng()
    sip_res = 0.0
    norm_res = 0.0
    for _ in range(trials):
        x = rng.uniform(-1.5, 1.5, space.dim)
        y = rng.uniform(-1.5, 1.5, space.dim)
        sip_res = max(sip_res, abs(sip(space, F @ x, F @ y) - sip(space, x, y)))
        norm_res = max(norm_res, abs(norm(space, F @ x) - norm(space, x)))
    return sip_res, norm_res


def strict_convexity_witness(
    space: SipSpace,
    seed,
    trials: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
):
    """Search for non-parallel x, y with [x, y] = |x||y| (an equality case
    of Cauchy-Schwarz), which certifies the norm is NOT strictly convex.

    The max norm has flat unit-sphere segments, found deterministically by
    pairing vectors that share their dominant coordinate; for strictly
    convex norms the sampled search comes up empty.  Returns (x, y) or None.
    """
    eq_slack = 1e-9
    parallel_gap = 1e-3

    def is_witness(x, y):
        nx, ny = norm(space, x), norm(space, y)
        if nx == 0.0 or ny == 0.0:
            return False
        if abs(sip(space, x, y) - nx * ny) > eq_slack:
            return False
        return float(np.max(np.abs(x / nx - y / ny))) > parallel_gap

    if space.norm.kind == MAX and space.dim >= 2:
        x = np.zeros(space.dim)
        y = np.zeros(space.dim)
        x[0] = y[0] = 1.0
        x[1], y[1] = 0.2, 0.8
        if is_witness(x, y):
            return x, y
    rng = as_seed(seed).rng()
    for _ in range(trials):
        x = rng.uniform(-2.0, 2.0, space.dim)
        y = rng.uniform(-2.0, 2.0, space.dim)
        if np.any(x) and np.any(y) and is_witness(x, y):
            return x, y
    return None
