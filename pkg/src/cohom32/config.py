"""Runtime configuration shared by the computational modules."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path

MiB = 1 << 20
GiB = 1 << 30

CACHE_ENV = "COHOM32_CACHE"


class ResourceCapError(MemoryError):
    """Raised when an operation would exceed the configured memory cap."""


def _default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "cohom32"


@dataclass(frozen=True)
class Config:
    memory_cap: int = 2 * GiB
    cache_dir: Path = field(default_factory=_default_cache_dir)
    threads: int = 1
    output_format: str = "text"
    maxdeg: int = 8

    def __post_init__(self):
        if self.memory_cap < 64 * MiB:
            raise ValueError("memory cap must be at least 64 MiB")
        if self.maxdeg < 1:
            raise ValueError("maxdeg must be >= 1")
        if self.threads < 1:
            raise ValueError("thread count must be >= 1")
        if self.output_format not in ("text", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")

    def replace(self, **kw) -> "Config":
        return replace(self, **kw)


_current = Config()


def get_config() -> Config:
    return _current


def set_config(cfg: Config) -> Config:
    """Install ``cfg`` as the process-wide configuration; returns the previous one."""
    global _current
    prev, _current = _current, cfg
    return prev


def check_size(nbytes: int, what: str, cap: int | None = None) -> None:
    cap = get_config().memory_cap if cap is None else cap
    if nbytes > cap:
        raise ResourceCapError(
            f"{what} needs {nbytes} bytes ({nbytes / GiB:.2f} GiB), "
            f"above the memory cap of {cap} bytes ({cap / GiB:.2f} GiB)"
        )
