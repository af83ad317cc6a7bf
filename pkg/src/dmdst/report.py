"""Solve reports: the stable JSON surface shared by all solvers."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .certificate import BlockingCertificate

SCHEMA_VERSION = 1


@dataclass
class SolveReport:
    algorithm: str
    profile: str
    n: int
    m: int
    delta_initial: int
    delta_final: int
    lower_bound: Fraction | None
    certificate: BlockingCertificate | None
    iterations: int
    potential_trace: list[dict] | None
    layers_trace: list[dict] | None
    parent: list[int]
    wall_time_ms: float
    config: dict
    guarantee: str
    exit_reason: str

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "algorithm": self.algorithm,
            "profile": self.profile,
            "n": self.n,
            "m": self.m,
            "delta_initial": self.delta_initial,
            "delta_final": self.delta_final,
            "lower_bound": None
            if self.lower_bound is None
            else {
                "num": self.lower_bound.numerator,
                "den": self.lower_bound.denominator,
            },
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "iterations": self.iterations,
            "parent": list(self.parent),
            "wall_time_ms": self.wall_time_ms,
            "config": dict(self.config),
            "guarantee": self.guarantee,
            "exit_reason": self.exit_reason,
        }
        if self.potential_trace is not None:
            out["potential_trace"] = self.potential_trace
        if self.layers_trace is not None:
            out["layers_trace"] = self.layers_trace
        if self.algorithm == "augment":
            out["epsilon"] = self.config.get("epsilon")
            out["c"] = self.config.get("base_c")
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "SolveReport":
        lb = d.get("lower_bound")
        cert = d.get("certificate")
        return cls(
            algorithm=d["algorithm"],
            profile=d["profile"],
            n=d["n"],
            m=d["m"],
            delta_initial=d["delta_initial"],
            delta_final=d["delta_final"],
            lower_bound=None if lb is None else Fraction(lb["num"], lb["den"]),
            certificate=None if cert is None else BlockingCertificate.from_dict(cert),
            iterations=d["iterations"],
            potential_trace=d.get("potential_trace"),
            layers_trace=d.get("layers_trace"),
            parent=list(d["parent"]),
            wall_time_ms=d["wall_time_ms"],
            config=d.get("config", {}),
            guarantee=d["guarantee"],
            exit_reason=d.get("exit_reason", ""),
        )

    @classmethod
    def from_json(cls, text: str) -> "SolveReport":
        return cls.from_dict(json.loads(text))
