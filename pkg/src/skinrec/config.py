"""Engine configuration: one flat dataclass covering every tunable default.

The on-disk format is flat ``key=value`` text ('#' comments allowed). The
embedding and factorization trainers each have their own learning rate and
momentum, so those keys carry a tsne_/mf_ prefix.
"""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Union

from .errors import ConfigError
from .mf import MFConfig
from .tsne import TSNEConfig


@dataclass(frozen=True)
class EngineConfig:
    perplexity: float = 30.0
    tsne_iterations: int = 1000
    exaggeration: float = 12.0
    exaggeration_iters: int = 250
    tsne_lr: float = 200.0
    tsne_momentum_early: float = 0.5
    tsne_momentum_late: float = 0.8
    momentum_switch_iter: int = 250
    k: int = 8
    reg: float = 0.01
    mf_lr: float = 0.01
    mf_momentum: float = 0.9
    mf_epochs: int = 500
    alpha: float = 0.5
    seed: int = 0

    def tsne(self) -> TSNEConfig:
        return TSNEConfig(
            perplexity=self.perplexity,
            iterations=self.tsne_iterations,
            exaggeration=self.exaggeration,
            exaggeration_iters=self.exaggeration_iters,
            learning_rate=self.tsne_lr,
            momentum_early=self.tsne_momentum_early,
            momentum_late=self.tsne_momentum_late,
            momentum_switch_iter=self.momentum_switch_iter,
            seed=self.seed,
        )

    def mf(self) -> MFConfig:
        return MFConfig(
            k=self.k,
            reg=self.reg,
            momentum=self.mf_momentum,
            learning_rate=self.mf_lr,
            epochs=self.mf_epochs,
            seed=self.seed,
        )

    def digest(self) -> str:
        """Stable hash of the configuration, used for artifact cache keys."""
        payload = ";".join(f"{k}={v!r}" for k, v in sorted(asdict(self).items()))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def load_config(path: Union[str, Path]) -> EngineConfig:
    """Parse a flat key=value config file into an EngineConfig."""
    types = {f.name: f.type for f in fields(EngineConfig)}
    values: dict[str, Union[int, float]] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in types:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        try:
            values[key] = int(raw) if types[key] in ("int", int) else float(raw)
        except ValueError:
            raise ConfigError(f"line {lineno}: bad value for {key}: {raw!r}")
    return EngineConfig(**values)


def dump_config(config: EngineConfig) -> str:
    return "\n".join(f"{k}={v}" for k, v in asdict(config).items()) + "\n"
