"""Solver configuration and the paper/practical profile split."""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

PROFILES = ("paper", "practical")


@dataclass(frozen=True)
class Config:
    """Knobs shared by both solvers.

    profile "paper" keeps the loop thresholds that back the approximation
    guarantee; "practical" sets both stop thresholds to 0 so the solvers
    keep improving for as long as any gated adjustment exists.  base_c is
    floored at max(4, 1/epsilon) so its invariants hold even at small n,
    where the asymptotic default 2*log2(n)**0.4 would be too small.
    """

    epsilon: float = 0.1
    profile: str = "practical"
    base_c: float = 10.0 + 1e-9
    psi_factor: float = 0.125
    stop_threshold_local: float = 0.0
    stop_threshold_aug: float = 0.0
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon < 0.25:
            raise ValueError(f"epsilon must be in (0, 1/4), got {self.epsilon}")
        if self.profile not in PROFILES:
            raise ValueError(f"profile must be one of {PROFILES}, got {self.profile!r}")
        if self.base_c < 4.0 or self.base_c <= 1.0 / self.epsilon:
            raise ValueError(
                f"base_c must be >= 4 and > 1/epsilon, got {self.base_c}"
            )
        if self.psi_factor <= 0:
            raise ValueError(f"psi_factor must be positive, got {self.psi_factor}")

    @classmethod
    def for_n(
        cls,
        n: int,
        profile: str = "practical",
        epsilon: float = 0.1,
        psi_factor: float = 0.125,
        rng_seed: int = 0,
    ) -> "Config":
        """Resolve the n-dependent defaults for an n-vertex instance."""
        log_n = math.log2(n) if n > 1 else 0.0
        base_c = max(4.0, 1.0 / epsilon + 1e-9, 2.0 * log_n ** 0.4)
        if profile == "paper":
            stop_local = 34.0 * log_n
            stop_aug = 2.0 * log_n / math.log2(base_c / 2.0)
        else:
            stop_local = 0.0
            stop_aug = 0.0
        return cls(
            epsilon=epsilon,
            profile=profile,
            base_c=base_c,
            psi_factor=psi_factor,
            stop_threshold_local=stop_local,
            stop_threshold_aug=stop_aug,
            rng_seed=rng_seed,
        )

    @classmethod
    def for_graph(cls, g, **kwargs) -> "Config":
        return cls.for_n(g.n, **kwargs)

    def to_dict(self) -> dict:
        return asdict(self)
