"""Campaign specification and the rows and results a campaign produces."""

from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from noma_vr_offloader.agents.models import AGENT_KINDS
from noma_vr_offloader.core.errors import ConfigError

METRIC_COLUMNS = (
    "step",
    "reward",
    "reward_std",
    "successful_frames",
    "energy_j",
    "avg_rate_mbps",
    "rate_defined",
)
SUMMARY_METRICS = ("reward", "successful_frames", "energy_j", "avg_rate_mbps")


@dataclass(frozen=True)
class ExperimentSpec:
    agent: str = "hrppo"
    total_steps: int = 30000
    eval_interval: int = 1000
    seeds: Tuple[int, ...] = (0, 1, 2)
    out_dir: str = "results"
    eval_episodes: int = 10
    workers: int = 1
    final_window_steps: int = 200

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.agent not in AGENT_KINDS:
            raise ConfigError(f"agent must be one of {', '.join(AGENT_KINDS)}, got '{self.agent}'")
        if not self.seeds:
            raise ConfigError("seeds must list at least one seed")
        if len(set(self.seeds)) != len(self.seeds):
            raise ConfigError(f"seeds contain duplicates: {list(self.seeds)}")
        if any(seed < 0 for seed in self.seeds):
            raise ConfigError(f"seeds must be >= 0, got {list(self.seeds)}")
        if self.eval_interval < 1:
            raise ConfigError(f"eval_interval must be >= 1, got {self.eval_interval}")
        if self.total_steps < self.eval_interval:
            raise ConfigError(f"total_steps ({self.total_steps}) must be >= eval_interval ({self.eval_interval})")
        for name in ("eval_episodes", "workers"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.final_window_steps < 0:
            raise ConfigError(f"final_window_steps must be >= 0, got {self.final_window_steps}")

    @property
    def out_path(self) -> Path:
        return Path(self.out_dir)

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class MetricsRow:
    """Greedy-policy evaluation at one training step.

    ``avg_rate_mbps`` is 0 when ``rate_defined`` is False (no frame was offloaded).
    """

    step: int
    reward: float
    reward_std: float
    successful_frames: float
    energy_j: float
    avg_rate_mbps: float
    rate_defined: bool

    def as_record(self) -> Dict[str, Any]:
        return {
            "step": self.step,
            "reward": self.reward,
            "reward_std": self.reward_std,
            "successful_frames": self.successful_frames,
            "energy_j": self.energy_j,
            "avg_rate_mbps": self.avg_rate_mbps,
            "rate_defined": int(self.rate_defined),
        }


@dataclass
class EpisodeSummary:
    reward: float
    successful_frames: float
    energy_j: float
    executed_slots: int
    failures_per_user: List[int]
    rates: List[float] = field(default_factory=list)


@dataclass
class SeedResult:
    seed: int
    rows: List[MetricsRow]
    metrics_path: Path
    checkpoint_path: Optional[Path] = None


@dataclass
class CampaignResult:
    spec: ExperimentSpec
    seeds: List[SeedResult]
    summary_path: Path
    final_path: Path
    config_path: Path
