"""
Engine parameters shared by the CLI, the verifiers and the numeric code
"""

import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, Mapping

logger = logging.getLogger(__name__)

SEED_ENV_VAR = "QSPACE_SEED"


@dataclass(frozen=True)
class IntegralParams:
    """Numeric lattice settings: base q, truncation K, tolerance, reference point"""

    q_real: float = 1.1
    trunc_K: int = 500
    tol: float = 1e-10
    x0: float = 1.0

    def __post_init__(self):
        if not self.q_real > 1.0:
            raise ValueError(f"q must be > 1, got {self.q_real}")
        if self.trunc_K < 1:
            raise ValueError(f"K must be positive, got {self.trunc_K}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if not self.x0 > 0.0:
            raise ValueError(f"x0 must be positive, got {self.x0}")

    def to_dict(self) -> Dict[str, Any]:
        return {'q': self.q_real, 'K': self.trunc_K, 'tol': self.tol, 'x0': self.x0}


@dataclass(frozen=True)
class EngineParams:
    """All user-facing knobs with their defaults"""

    q: float = 1.1
    K: int = 500
    tol: float = 1e-10
    N: int = 8
    x0: float = 1.0
    degree: int = 5
    samples: int = 25
    seed: int = 0

    def validate(self) -> "EngineParams":
        self.integral()
        if self.N < 0:
            raise ValueError(f"N must be non-negative, got {self.N}")
        if self.degree < 0:
            raise ValueError(f"degree must be non-negative, got {self.degree}")
        if self.samples < 1:
            raise ValueError(f"samples must be positive, got {self.samples}")
        return self

    def integral(self) -> IntegralParams:
        return IntegralParams(q_real=self.q, trunc_K=self.K, tol=self.tol, x0=self.x0)

    def with_overrides(self, **overrides) -> "EngineParams":
        """Copy with every non-None override applied"""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **changes)

    def with_config(self, data: Mapping[str, Any]) -> "EngineParams":
        """Copy with the keys of a JSON config object applied"""
        if not isinstance(data, Mapping):
            raise ValueError("config file must hold a JSON object")
        unknown = sorted(set(data) - {f.name for f in fields(self)})
        if unknown:
            raise ValueError(f"unknown config keys {unknown}")
        return self.with_overrides(**data)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_env(cls) -> "EngineParams":
        """Defaults, with the RNG seed taken from QSPACE_SEED when set"""
        raw = os.environ.get(SEED_ENV_VAR)
        if raw is None:
            return cls()
        try:
            seed = int(raw)
        except ValueError:
            logger.warning(f"Ignoring non-integer {SEED_ENV_VAR}={raw!r}")
            return cls()
        logger.debug(f"Using seed {seed} from {SEED_ENV_VAR}")
        return cls(seed=seed)
