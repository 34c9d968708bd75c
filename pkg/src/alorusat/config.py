"""Strategy switches and tunable constants."""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass

LBD_SENTINEL = 0x3FFFFFFF


class Reduction(enum.Enum):
    EXACT = "exact"
    APPROX = "approx"


class Tiers(enum.Enum):
    GLUCOSE = "glucose"
    DYNAMIC = "dynamic"


@dataclass
class StrategyConfig:
    """Everything the search and the clause database can be tuned by.

    The clause-management constants default to full scale.  Tests shrink
    them (typically by 100x) through :meth:`replace` or the CLI ``--set``.
    """

    aloru: bool = True
    reduction: Reduction = Reduction.APPROX
    tiers: Tiers = Tiers.GLUCOSE
    lbd_sentinel: int = LBD_SENTINEL

    approx_gate_conflicts: int = 300_000
    stage_switch_conflicts: int = 2_000_000
    core_lbd_cap_stage1: int = 2
    core_lbd_cap_stage2: int = 5
    demote_batch: int = 5000
    demote_min_lbd: int = 3
    local_lower: int = 9000
    local_upper_trigger: int = 18_000
    local_upper_hard: int = 24_000

    first_reduce_at: int = 2000
    reduce_interval_increment: int = 300

    var_decay: float = 0.95
    clause_decay: float = 0.999
    restart_window: int = 50
    restart_k: float = 0.8

    split_probe_conflicts: int = 500
    split_leaf_conflicts: int = 2_000_000
    split_depth_cap: int = 10
    split_warn_literals: int = 1_000_000

    seed: int = 91648253

    def __post_init__(self):
        self.reduction = Reduction(self.reduction)
        self.tiers = Tiers(self.tiers)
        self.validate()

    def validate(self) -> None:
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if isinstance(value, (int, float)) and not isinstance(value, bool) and f.name != "seed":
                if value <= 0:
                    raise ValueError(f"{f.name} must be positive, got {value}")
        if not self.local_lower <= self.local_upper_trigger <= self.local_upper_hard:
            raise ValueError("need local_lower <= local_upper_trigger <= local_upper_hard")
        if self.core_lbd_cap_stage1 > self.core_lbd_cap_stage2:
            raise ValueError("need core_lbd_cap_stage1 <= core_lbd_cap_stage2")
        if not 0 < self.var_decay < 1 or not 0 < self.clause_decay < 1:
            raise ValueError("decay factors must lie in (0, 1)")
        if self.lbd_sentinel != LBD_SENTINEL:
            raise ValueError("lbd_sentinel is fixed at 0x3fffffff")

    def replace(self, **changes) -> "StrategyConfig":
        return dataclasses.replace(self, **changes)

    def with_overrides(self, pairs: dict[str, str]) -> "StrategyConfig":
        """Apply textual ``key=value`` overrides, coercing to each field's type."""
        fields = {f.name: f for f in dataclasses.fields(self)}
        changes = {}
        for key, raw in pairs.items():
            if key not in fields:
                raise KeyError(f"unknown config key {key!r}")
            current = getattr(self, key)
            if isinstance(current, bool):
                lowered = raw.lower()
                if lowered not in ("1", "0", "true", "false", "on", "off", "yes", "no"):
                    raise ValueError(f"{key}: expected a boolean, got {raw!r}")
                changes[key] = lowered in ("1", "true", "on", "yes")
            elif isinstance(current, enum.Enum):
                changes[key] = type(current)(raw.lower())
            elif isinstance(current, int):
                changes[key] = int(raw.replace("_", ""), 0)
            else:
                changes[key] = float(raw)
        return self.replace(**changes)

    def as_dict(self) -> dict:
        out = {}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            out[f.name] = v.value if isinstance(v, enum.Enum) else v
        return out
