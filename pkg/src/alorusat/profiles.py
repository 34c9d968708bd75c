"""Named solver presets.

``drup`` proof-logging track solver: Glucose-style single pool, ALORU,
approximation reduction.  ``inc`` swaps in the dynamic core/local tiers.
``lim`` is the no-proof Glucose-style preset; the XOR/cardinality
reasoning and the external-solver hand-off of the original no-limit solver
are not part of this package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import Reduction, StrategyConfig, Tiers


@dataclass(frozen=True)
class Profile:
    name: str
    config: StrategyConfig
    proof: bool
    split_available: bool


def _presets() -> dict[str, Profile]:
    base = StrategyConfig(aloru=True, reduction=Reduction.APPROX, tiers=Tiers.GLUCOSE)
    return {
        "drup": Profile("drup", base, proof=True, split_available=True),
        "inc": Profile("inc", base.replace(tiers=Tiers.DYNAMIC), proof=False, split_available=True),
        "lim": Profile("lim", base, proof=False, split_available=True),
        "custom": Profile("custom", base, proof=False, split_available=True),
    }


PROFILE_NAMES = ("drup", "inc", "lim", "custom")
DEFAULT_PROFILE = "drup"


def get_profile(name: str) -> Profile:
    try:
        return _presets()[name]
    except KeyError:
        raise KeyError(f"unknown profile {name!r}; choose from {', '.join(PROFILE_NAMES)}") from None


def parse_profile_spec(spec: str) -> tuple[str, StrategyConfig]:
    """``"inc"`` or ``"inc:aloru=off,seed=3"`` -> (label, config)."""
    name, _, rest = spec.partition(":")
    cfg = get_profile(name).config
    if rest:
        pairs = {}
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"bad override {item!r} in profile spec {spec!r}")
            pairs[key.strip()] = value.strip()
        cfg = cfg.with_overrides(pairs)
    return spec, cfg
