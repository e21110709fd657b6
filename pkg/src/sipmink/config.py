"""Flat key-value run configuration for the command-line harness.

Grammar: one ``key = value`` pair per line, ``#`` comments, dotted keys.
Strings may be quoted; numbers are bare.  Unknown keys are rejected with
the line and column of the offending token.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

from .errors import UsageError
from .minkowski import GeneralizedMinkowskiSpace
from .norms import NormSpec, SipSpace
from .numerics import Tolerances

_NORM_KINDS = ("euclidean", "pnorm", "max")

KNOWN_KEYS = {
    "space.s.norm": str,
    "space.s.p": float,
    "space.s.dim": int,
    "space.t.norm": str,
    "space.t.p": float,
    "space.t.dim": int,
    "seed": int,
    "trials": int,
    "nodes": int,
    "out": str,
    "tol.eq": float,
    "tol.fd": float,
    "tol.opt": float,
    "tol.class": float,
}

ENV_EQ_TOL = "SIPMINK_TOL_EQ"


@dataclass(frozen=True)
class RunConfig:
    s_kind: str = "euclidean"
    s_p: float | None = None
    s_dim: int = 2
    t_kind: str = "euclidean"
    t_p: float | None = None
    t_dim: int = 1
    seed: int = 42
    trials: int = 200
    nodes: int = 16
    out: str = "verify_report.csv"
    tolerances: Tolerances = field(default_factory=Tolerances)

    def _norm(self, kind: str, p, dim: int) -> NormSpec:
        if kind == "euclidean":
            return NormSpec.euclidean(dim)
        if kind == "pnorm":
            if p is None:
                raise UsageError("pnorm requires a p value (key space.<block>.p)")
            return NormSpec.pnorm(p, dim)
        if kind == "max":
            return NormSpec.max_norm(dim)
        raise UsageError(f"unknown norm kind {kind!r}; expected one of {_NORM_KINDS}")

    def s_norm(self) -> NormSpec:
        return self._norm(self.s_kind, self.s_p, self.s_dim)

    def t_norm(self) -> NormSpec:
        return self._norm(self.t_kind, self.t_p, self.t_dim)

    def s_sip(self) -> SipSpace:
        return SipSpace(self.s_norm())

    def space(self) -> GeneralizedMinkowskiSpace:
        return GeneralizedMinkowskiSpace(SipSpace(self.s_norm()), SipSpace(self.t_norm()))


def _parse_value(key: str, raw: str, lineno: int, col: int):
    want = KNOWN_KEYS[key]
    raw = raw.strip()
    if want is str:
        if len(raw) >= 2 and raw[0] == raw[-1] and raw[0] in "\"'":
            return raw[1:-1]
        return raw
    try:
        return want(raw) if want is not int else int(raw, 10)
    except ValueError:
        raise UsageError(
            f"line {lineno}: cannot parse {raw!r} as {want.__name__} for key {key!r}",
            line=lineno,
            column=col,
        ) from None


def parse_config(text: str) -> dict:
    """Parse config text to a {key: value} mapping, validating keys."""
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0]
        if not stripped.strip():
            continue
        if "=" not in stripped:
            raise UsageError(
                f"line {lineno}: expected 'key = value'", line=lineno, column=1
            )
        key_part, value_part = stripped.split("=", 1)
        key = key_part.strip()
        col = line.find(key) + 1
        if key not in KNOWN_KEYS:
            raise UsageError(
                f"line {lineno}, column {col}: unknown key {key!r}", line=lineno, column=col
            )
        if key in values:
            raise UsageError(
                f"line {lineno}: duplicate key {key!r}", line=lineno, column=col
            )
        vcol = line.find("=") + 2
        values[key] = _parse_value(key, value_part, lineno, vcol)
    return values


def config_from_mapping(values: dict) -> RunConfig:
    tol = Tolerances(
        eq_tol=values.get("tol.eq", 1e-9),
        fd_tol=values.get("tol.fd", 1e-5),
        opt_tol=values.get("tol.opt", 1e-7),
        class_tol=values.get("tol.class", 1e-9),
    )
    cfg = RunConfig(
        s_kind=values.get("space.s.norm", "euclidean"),
        s_p=values.get("space.s.p"),
        s_dim=values.get("space.s.dim", 2),
        t_kind=values.get("space.t.norm", "euclidean"),
        t_p=values.get("space.t.p"),
        t_dim=values.get("space.t.dim", 1),
        seed=values.get("seed", 42),
        trials=values.get("trials", 200),
        nodes=values.get("nodes", 16),
        out=values.get("out", "verify_report.csv"),
        tolerances=tol,
    )
    cfg.space()  # validate eagerly so config errors surface at parse time
    return cfg


def load_config(path: str | None, env: dict | None = None) -> RunConfig:
    """Read a config file (or defaults) and apply environment overrides."""
    env = os.environ if env is None else env
    values: dict = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                values = parse_config(fh.read())
        except OSError as err:
            raise UsageError(f"cannot read config {path!r}: {err}") from None
    cfg = config_from_mapping(values)
    if ENV_EQ_TOL in env:
        try:
            eq = float(env[ENV_EQ_TOL])
        except ValueError:
            raise UsageError(f"{ENV_EQ_TOL} must be a float") from None
        cfg = replace(cfg, tolerances=replace(cfg.tolerances, eq_tol=eq))
    return cfg
