"""Shared numerical kernels: finite differences, Simpson quadrature,
derivative-free minimization, and seeded sampling.

Everything here is a pure function of its inputs; all randomness flows
through :class:`Seed`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, NumericalError

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used throughout the package.

    eq_tol    equality residuals of closed-form identities
    fd_tol    residuals involving finite differences
    opt_tol   minimizer convergence (simplex diameter)
    class_tol light-like classification band, relative to the definite square
    """

    eq_tol: float = 1e-9
    fd_tol: float = 1e-5
    opt_tol: float = 1e-7
    class_tol: float = 1e-9

    def __post_init__(self):
        for name in ("eq_tol", "fd_tol", "opt_tol", "class_tol"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be strictly positive")
        if not self.fd_tol > self.eq_tol:
            raise DomainError("fd_tol must exceed eq_tol")


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class Seed:
    """Deterministic RNG seed. Same seed and configuration give the
    bit-identical sample sequence."""

    value: int = 0

    def __post_init__(self):
        if not 0 <= int(self.value) < 2**64:
            raise DomainError("seed must fit in an unsigned 64-bit integer")

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.value))


def as_seed(seed) -> Seed:
    return seed if isinstance(seed, Seed) else Seed(int(seed))


def first_diff_step(scale: float) -> float:
    """Step for first central differences: balances truncation and rounding."""
    return max(1.0, abs(scale)) * _EPS ** (1.0 / 3.0)


def second_diff_step(scale: float) -> float:
    """Step for second differences and nested first differences."""
    return max(1.0, abs(scale)) * _EPS ** 0.25


def _finite(value: float, what: str) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise NumericalError(f"non-finite value in {what}: {value!r}")
    return value


def central_diff(f: Callable[[float], float], t: float, h: float) -> float:
    """Symmetric difference quotient (f(t+h) - f(t-h)) / (2h)."""
    if not h > 0:
        raise DomainError("step h must be positive")
    fp = _finite(f(t + h), "central_diff")
    fm = _finite(f(t - h), "central_diff")
    return (fp - fm) / (2.0 * h)


def second_diff(f: Callable[[float], float], t: float, h: float) -> float:
    """Second difference quotient (f(t+h) - 2 f(t) + f(t-h)) / h^2."""
    if not h > 0:
        raise DomainError("step h must be positive")
    fp = _finite(f(t + h), "second_diff")
    f0 = _finite(f(t), "second_diff")
    fm = _finite(f(t - h), "second_diff")
    return (fp - 2.0 * f0 + fm) / (h * h)


def simpson_weights(m: int) -> np.ndarray:
    """Composite Simpson weights on m subintervals (m even), for unit length."""
    if m < 2 or m % 2:
        raise DomainError("Simpson rule needs an even number of subintervals")
    w = np.ones(m + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w / (3.0 * m)


def integrate(f: Callable[[float], float], a: float, b: float, m: int) -> float:
    """Composite Simpson estimate of the integral of f over [a, b]."""
    w = simpson_weights(m)
    ts = np.linspace(a, b, m + 1)
    vals = np.array([_finite(f(t), "integrate") for t in ts])
    return float((b - a) * (w @ vals))


def minimize(
    f: Callable[[np.ndarray], float],
    x0,
    opt_tol: float = DEFAULT_TOLERANCES.opt_tol,
    max_iter: int = 2000,
) -> tuple[np.ndarray, float]:
    """Deterministic Nelder-Mead simplex descent.

    Standard reflection/expansion/contraction/shrink coefficients
    (1, 2, 1/2, 1/2); the initial simplex has edge 0.1 * max(1, |x0|).
    Terminates when the simplex diameter drops below ``opt_tol``.

    Returns the best vertex and its value.  Raises
    :class:`ConvergenceError` (carrying the best point found) when
    ``max_iter`` iterations were not enough.
    """
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    n = x0.size
    edge = 0.1 * max(1.0, float(np.linalg.norm(x0)))
    sim = np.empty((n + 1, n))
    sim[0] = x0
    for i in range(n):
        sim[i + 1] = x0
        sim[i + 1, i] += edge
    fv = np.array([_finite(f(v), "minimize") for v in sim])

    for _ in range(max_iter):
        order = np.argsort(fv, kind="stable")
        sim, fv = sim[order], fv[order]
        diam = float(np.max(np.abs(sim[1:] - sim[0]))) if n else 0.0
        if diam < opt_tol:
            return sim[0].copy(), float(fv[0])
        centroid = sim[:-1].mean(axis=0)
        xr = centroid + (centroid - sim[-1])
        fr = _finite(f(xr), "minimize")
        if fr < fv[0]:
            xe = centroid + 2.0 * (centroid - sim[-1])
            fe = _finite(f(xe), "minimize")
            if fe < fr:
                sim[-1], fv[-1] = xe, fe
            else:
                sim[-1], fv[-1] = xr, fr
        elif fr < fv[-2]:
            sim[-1], fv[-1] = xr, fr
        else:
            inside = fr >= fv[-1]
            xc = centroid + 0.5 * ((sim[-1] if inside else xr) - centroid)
            fc = _finite(f(xc), "minimize")
            if fc < min(fr, fv[-1]):
                sim[-1], fv[-1] = xc, fc
            else:
                sim[1:] = sim[0] + 0.5 * (sim[1:] - sim[0])
                fv[1:] = [_finite(f(v), "minimize") for v in sim[1:]]

    best = int(np.argmin(fv))
    raise ConvergenceError(
        f"simplex diameter did not reach {opt_tol} in {max_iter} iterations",
        best_point=sim[best].copy(),
        best_value=float(fv[best]),
    )


def sample_vectors(seed, n: int, count: int, radius: float = 1.0) -> list[np.ndarray]:
    """Deterministic vectors with coordinates uniform in [-radius, radius].

    Never returns the zero vector (resamples on an exact zero draw).
    """
    if count < 1:
        raise DomainError("count must be at least 1")
    if n < 1:
        raise DomainError("dimension must be at least 1")
    rng = as_seed(seed).rng()
    out: list[np.ndarray] = []
    while len(out) < count:
        v = rng.uniform(-radius, radius, size=n)
        if np.all(v == 0.0):
            continue
        out.append(v)
    return out


@dataclass(frozen=True)
class Check:
    """Outcome of one axiom/property check: max residual plus the worst witness."""

    name: str
    residual: float
    witness: tuple = ()
    passed: bool = True


@dataclass(frozen=True)
class AxiomReport:
    """Collection of named residual checks with pass flags at a fixed tolerance."""

    checks: tuple[Check, ...]
    tol: float

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def residual(self, name: str) -> float:
        return self.check(name).residual

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def worst(self) -> Check:
        return max(self.checks, key=lambda c: c.residual)


class ResidualTracker:
    """Accumulates the max residual and its witness for one named check."""

    def __init__(self, name: str):
        self.name = name
        self.residual = 0.0
        self.witness: tuple = ()

    def update(self, residual: float, *witness):
        residual = abs(float(residual))
        if residual > self.residual:
            self.residual = residual
            self.witness = witness

    def check(self, tol: float) -> Check:
        return Check(self.name, self.residual, self.witness, self.residual <= tol)


def build_report(trackers: Sequence[ResidualTracker], tol: float) -> AxiomReport:
    return AxiomReport(tuple(t.check(tol) for t in trackers), tol)
