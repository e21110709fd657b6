"""The imaginary unit sphere H+ of a space-time model and its geometry.

H = {v : [v, v]^+ = -1} is a two-sheet hyperboloid in the auxiliary
norm; the upper sheet H+ is the graph of s -> sqrt(1 + [s, s]) over the
S block.  Tangent spaces of H+ are positive for the Minkowski product,
which therefore restricts to a Finsler-type semi-metric; curve length is
its arc-length integral, and distance is the infimum of curve lengths.

Curves are discretized by their S-coordinates and lifted nodewise, so
every discrete path lies exactly on H+; the distance minimization
relaxes interior nodes, coarse-to-fine.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    NumericalError,
    PathError,
    TangentError,
    UnsupportedError,
)
from .minkowski import GeneralizedMinkowskiSpace, embed, product_plus, split
from .norms import norm, norm_batch, sip
from .numerics import DEFAULT_TOLERANCES, Tolerances, minimize, simpson_weights

_EPS3 = float(np.finfo(float).eps) ** (1.0 / 3.0)


def _require_spacetime(space: GeneralizedMinkowskiSpace):
    if not space.is_spacetime_model:
        raise UnsupportedError("the imaginary unit sphere needs a one-dimensional T block")


@dataclass(frozen=True)
class HPoint:
    """A point on the upper sheet: S-coordinates plus tau = sqrt(1 + [s, s])."""

    space: GeneralizedMinkowskiSpace
    s: np.ndarray
    tau: float

    @property
    def vector(self) -> np.ndarray:
        return embed(self.space, s=self.s, t=[self.tau])


def lift(space: GeneralizedMinkowskiSpace, s) -> HPoint:
    """Lift S-coordinates onto H+."""
    _require_spacetime(space)
    s = np.asarray(s, dtype=float)
    if s.shape != (space.k,):
        raise DimensionError(f"expected S-coordinates of dimension {space.k}")
    tau = float(np.sqrt(1.0 + sip(space.s_space, s, s)))
    return HPoint(space, s.copy(), tau)


def as_hpoint(space: GeneralizedMinkowskiSpace, v, tol: float = 1e-8) -> HPoint:
    """Interpret a full vector as a point of H+ (checked)."""
    _require_spacetime(space)
    s, t = split(space, v)
    if t[0] <= 0:
        raise DomainError("vector lies on the lower sheet")
    q = product_plus(space, v, v)
    if abs(q + 1.0) > tol:
        raise DomainError(f"vector is not on the imaginary unit sphere: [v,v]+ = {q}")
    return HPoint(space, s, float(t[0]))


def f_directional(space: GeneralizedMinkowskiSpace, s, e) -> float:
    """Directional derivative of s -> sqrt(1 + [s, s]) along a unit direction e:
    [e, s] / sqrt(1 + [s, s])."""
    _require_spacetime(space)
    s = np.asarray(s, dtype=float)
    e = np.asarray(e, dtype=float)
    if abs(norm(space.s_space, e) - 1.0) > 1e-8:
        raise DomainError("direction must be a unit vector of the S block")
    return sip(space.s_space, e, s) / float(np.sqrt(1.0 + sip(space.s_space, s, s)))


@dataclass(frozen=True)
class TangentFrame:
    base: HPoint
    vectors: tuple


def tangent_frame(space: GeneralizedMinkowskiSpace, v: HPoint) -> TangentFrame:
    """Frame u_j = e_j + ([e_j, s]/tau) e_n spanning the tangent space at v.

    Each u_j satisfies [u_j, v]^+ = 0 identically (the T block is
    one-dimensional, so the product of the tau components cancels the
    S-side product exactly).
    """
    _require_spacetime(space)
    vecs = []
    vv = v.vector
    for jdx in range(space.k):
        e = np.zeros(space.k)
        e[jdx] = 1.0
        u = embed(space, s=e, t=[sip(space.s_space, e, v.s) / v.tau])
        if abs(product_plus(space, u, vv)) > 10.0 * DEFAULT_TOLERANCES.eq_tol * max(1.0, v.tau):
            raise NumericalError("tangent frame vector failed its orthogonality check")
        vecs.append(u)
    return TangentFrame(v, tuple(vecs))


def ds2(
    space: GeneralizedMinkowskiSpace,
    v: HPoint,
    u1,
    u2,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Semi-metric value [u1, u2]^+ for tangent vectors at v.

    Evaluates both the direct Minkowski product and its tangential
    closed form ([s1,s2] - [s1,s_v][s2,s_v]/(1+[s_v,s_v])) and insists
    they agree; either is the semi-metric.
    """
    _require_spacetime(space)
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    vv = v.vector
    for u in (u1, u2):
        scale = max(1.0, float(np.max(np.abs(u)))) * max(1.0, v.tau)
        if abs(product_plus(space, u, vv)) > tolerances.fd_tol * scale:
            raise TangentError("vector is not tangent to H+ at the base point")
    direct = product_plus(space, u1, u2)
    s1, _ = split(space, u1)
    s2, _ = split(space, u2)
    qv = sip(space.s_space, v.s, v.s)
    closed = sip(space.s_space, s1, s2) - sip(space.s_space, s1, v.s) * sip(space.s_space, s2, v.s) / (1.0 + qv)
    scale = max(1.0, abs(direct))
    if abs(direct - closed) > tolerances.fd_tol * scale:
        raise NumericalError("tangential product forms disagree beyond tolerance")
    return float(direct)


@dataclass(frozen=True)
class Path:
    """Discrete curve on H+: m+1 points on a uniform parameter grid.

    Degenerate (repeated) consecutive nodes are allowed and contribute
    zero length.
    """

    space: GeneralizedMinkowskiSpace
    nodes: tuple

    def __post_init__(self):
        if len(self.nodes) < 3:
            raise DomainError("a path needs at least two segments")

    @property
    def m(self) -> int:
        return len(self.nodes) - 1

    @property
    def s_matrix(self) -> np.ndarray:
        return np.array([p.s for p in self.nodes])

    @classmethod
    def from_s_nodes(cls, space: GeneralizedMinkowskiSpace, s_nodes) -> "Path":
        s_nodes = np.asarray(s_nodes, dtype=float)
        return cls(space, tuple(lift(space, row) for row in s_nodes))


def linear_path(space: GeneralizedMinkowskiSpace, a: HPoint, b: HPoint, m: int) -> Path:
    """Path whose S-coordinates interpolate linearly between the endpoints."""
    ts = np.linspace(0.0, 1.0, m + 1)
    return Path.from_s_nodes(space, a.s[None, :] + ts[:, None] * (b.s - a.s)[None, :])


def _segment_lengths(space, seg_starts: np.ndarray, seg_deltas: np.ndarray, quad_m: int) -> np.ndarray:
    """Arc lengths of chord lifts: S runs straight from start to start+delta,
    tau follows the lift.  Velocities use a central difference of the lifted
    tau along the chord parameter; the S velocity is the constant delta."""
    s_space = space.s_space
    sig = np.linspace(0.0, 1.0, quad_m + 1)
    P = seg_starts[:, None, :] + sig[None, :, None] * seg_deltas[:, None, :]
    step = _EPS3
    off = step * seg_deltas[:, None, :]
    tau_p = np.sqrt(1.0 + norm_batch(s_space, P + off) ** 2)
    tau_m = np.sqrt(1.0 + norm_batch(s_space, P - off) ** 2)
    dtau = (tau_p - tau_m) / (2.0 * step)
    speed2 = norm_batch(s_space, seg_deltas) ** 2
    rad = speed2[:, None] - dtau**2
    floor = -1e-11 * max(1.0, float(np.max(speed2, initial=0.0)))
    if np.any(rad < floor):
        raise PathError("curve velocity left the space-like regime")
    g = np.sqrt(np.clip(rad, 0.0, None))
    return g @ simpson_weights(quad_m)


def path_length(space: GeneralizedMinkowskiSpace, path: Path, quad_m: int = 4) -> float:
    """Sum of per-segment Simpson integrals of the tangential speed."""
    _require_spacetime(space)
    if quad_m < 2 or quad_m % 2:
        raise DomainError("quad_m must be even and at least 2")
    S = path.s_matrix
    return float(np.sum(_segment_lengths(space, S[:-1], S[1:] - S[:-1], quad_m)))


def _path_energy(space, s_nodes: np.ndarray, quad_m: int) -> float:
    L = _segment_lengths(space, s_nodes[:-1], s_nodes[1:] - s_nodes[:-1], quad_m)
    return float((s_nodes.shape[0] - 1) * np.sum(L * L))


def _energy_gradient(space, s_nodes: np.ndarray, quad_m: int, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of the path energy w.r.t. interior nodes,
    batched into a single segment-length evaluation."""
    m = s_nodes.shape[0] - 1
    k = s_nodes.shape[1]
    starts, deltas = [], []
    for i in range(1, m):
        for c in range(k):
            for sign in (1.0, -1.0):
                p = s_nodes[i].copy()
                p[c] += sign * h
                starts.append(s_nodes[i - 1])
                deltas.append(p - s_nodes[i - 1])
                starts.append(p)
                deltas.append(s_nodes[i + 1] - p)
    L = _segment_lengths(space, np.array(starts), np.array(deltas), quad_m)
    pair = m * (L[0::2] ** 2 + L[1::2] ** 2)
    pair = pair.reshape(m - 1, k, 2)
    return (pair[:, :, 0] - pair[:, :, 1]) / (2.0 * h)


def _relax_gradient(space, s_nodes: np.ndarray, quad_m: int, max_iter: int) -> np.ndarray:
    """Barzilai-Borwein descent on the path energy (smooth S norms)."""
    x = s_nodes[1:-1].copy()
    g = _energy_gradient(space, s_nodes, quad_m)
    e = _path_energy(space, s_nodes, quad_m)
    alpha = 1e-3 / max(1e-12, float(np.max(np.abs(g))))
    for _ in range(max_iter):
        x_new = x - alpha * g
        s_nodes[1:-1] = x_new
        g_new = _energy_gradient(space, s_nodes, quad_m)
        e_new = _path_energy(space, s_nodes, quad_m)
        s = (x_new - x).ravel()
        y = (g_new - g).ravel()
        sy = float(s @ y)
        alpha = float(s @ s) / sy if sy > 0 else alpha * 0.5
        x, g = x_new, g_new
        if np.max(np.abs(g)) < 1e-11 or abs(e - e_new) < 1e-15 * max(1.0, e_new):
            break
        e = e_new
    return s_nodes


def _relax_simplex(space, s_nodes: np.ndarray, quad_m: int, sweeps: int, opt_tol: float) -> np.ndarray:
    """Node-wise simplex relaxation (works for non-smooth S norms too)."""
    m = s_nodes.shape[0] - 1
    for _ in range(sweeps):
        moved = 0.0
        for i in range(1, m):
            def local(sv, i=i):
                sub = np.vstack([s_nodes[i - 1], sv, s_nodes[i + 1]])
                L = _segment_lengths(space, sub[:-1], sub[1:] - sub[:-1], quad_m)
                return float(np.sum(L * L))

            try:
                best, _ = minimize(local, s_nodes[i], opt_tol=max(opt_tol, 1e-8), max_iter=300)
            except ConvergenceError as err:  # keep the best point found
                best = err.best_point
            moved = max(moved, float(np.max(np.abs(best - s_nodes[i]))))
            s_nodes[i] = best
        if moved < opt_tol:
            break
    return s_nodes


def geodesic_path(
    space: GeneralizedMinkowskiSpace,
    a: HPoint,
    b: HPoint,
    m: int,
    quad_m: int = 4,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[Path, float]:
    """Shortest discrete path from a to b with m segments, and its length.

    Starts from the linear S-interpolation and relaxes interior nodes
    coarse-to-fine (halved node counts down to four segments).  Smooth S
    norms use a vectorized gradient descent on the path energy; other
    norms fall back to node-wise simplex relaxation.  The search is
    local: the infimum is taken over the basin of the initial path.
    """
    _require_spacetime(space)
    if m < 2:
        raise DomainError("need at least two segments")
    if np.array_equal(a.s, b.s):
        return Path(space, tuple([a] * (m + 1))), 0.0
    levels = [m]
    while levels[-1] > 4 and levels[-1] % 2 == 0:
        levels.append(levels[-1] // 2)
    levels.reverse()
    ts = np.linspace(0.0, 1.0, levels[0] + 1)
    sn = a.s[None, :] + ts[:, None] * (b.s - a.s)[None, :]
    smooth = space.s_space.norm.is_smooth
    for li, ml in enumerate(levels):
        if li > 0:
            doubled = np.empty((2 * (sn.shape[0] - 1) + 1, sn.shape[1]))
            doubled[::2] = sn
            doubled[1::2] = 0.5 * (sn[:-1] + sn[1:])
            sn = doubled
        if smooth:
            sn = _relax_gradient(space, sn, quad_m, max_iter=300 if ml == m else 80)
        else:
            sn = _relax_simplex(space, sn, quad_m, sweeps=8 if ml == m else 3, opt_tol=tolerances.opt_tol)
    length = float(np.sum(_segment_lengths(space, sn[:-1], sn[1:] - sn[:-1], quad_m)))
    if not np.isfinite(length):
        raise ConvergenceError("path relaxation produced a non-finite length", best_value=length)
    return Path.from_s_nodes(space, sn), length


def geodesic_distance(
    space: GeneralizedMinkowskiSpace,
    a: HPoint,
    b: HPoint,
    m: int,
    quad_m: int = 4,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Length of the shortest discrete path from a to b (see geodesic_path)."""
    return geodesic_path(space, a, b, m, quad_m, tolerances)[1]


def path_to_csv(path: Path) -> str:
    """CSV rows (t, S-coordinates, tau) of a discrete path."""
    k = path.space.k
    header = "t," + ",".join(f"s{i + 1}" for i in range(k)) + ",tau"
    ts = np.linspace(0.0, 1.0, path.m + 1)
    lines = [header]
    for t, node in zip(ts, path.nodes):
        cells = ["%.17g" % t] + ["%.17g" % x for x in node.s] + ["%.17g" % node.tau]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def cosh_residual(space: GeneralizedMinkowskiSpace, a: HPoint, b: HPoint, m: int) -> float:
    """| [a, b]^+ + cosh(distance(a, b)) | -- zero in spaces whose linear
    isometries act transitively on H+ (the pseudo-Euclidean case)."""
    d = geodesic_distance(space, a, b, m)
    return abs(product_plus(space, a.vector, b.vector) + float(np.cosh(d)))
