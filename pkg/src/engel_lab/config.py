import os
from dataclasses import dataclass, field

DEFAULT_CAP = 4096
DEFAULT_MAX_N = 8
DEFAULT_SAMPLES = 512
DEFAULT_SEED = 0
# Exhaustive pair/triple loops below this order, seeded sampling above.
EXHAUSTIVE_LIMIT = 256
# Full Engel report (every element, every g) below this order.
FULL_ENGEL_LIMIT = 1024

CAP_ENV = "ENGEL_LAB_CAP"


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{CAP_ENV} must be positive")
    return cap


@dataclass(frozen=True)
class Limits:
    cap: int = DEFAULT_CAP
    max_n: int = DEFAULT_MAX_N
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    exhaustive_limit: int = EXHAUSTIVE_LIMIT
    full_engel_limit: int = FULL_ENGEL_LIMIT


@dataclass(frozen=True)
class RunConfig:
    command: str
    groups: tuple[str, ...] = ()
    zoo: str | None = None
    suite: str = "all"
    predicate: str | None = None
    max_n: int = DEFAULT_MAX_N
    cap: int = field(default_factory=default_cap)
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    out: str | None = None
    format: str = "json"

    @property
    def limits(self) -> Limits:
        return Limits(cap=self.cap, max_n=self.max_n, samples=self.samples, seed=self.seed)

    def as_dict(self) -> dict:
        # output path deliberately left out: two runs writing to different
        # files must still produce identical bytes
        return {
            "command": self.command,
            "groups": list(self.groups),
            "zoo": self.zoo,
            "suite": self.suite,
            "predicate": self.predicate,
            "max_n": self.max_n,
            "cap": self.cap,
            "samples": self.samples,
            "seed": self.seed,
            "format": self.format,
        }
