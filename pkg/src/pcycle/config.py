from __future__ import annotations

from dataclasses import dataclass, fields

from .cycles import DEFAULT_CYCLE_CAP
from .db import DEFAULT_PAIR_CAP
from .ilp import DEFAULT_TIME_LIMIT


@dataclass
class RunConfig:
    max_hops: int | None = None
    time_limit_s: float = DEFAULT_TIME_LIMIT
    pair_cap: int = DEFAULT_PAIR_CAP
    cycle_cap: int = DEFAULT_CYCLE_CAP
    engine: str = "auto"

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        types = {f.name: f.type for f in fields(cls)}
        cfg = cls()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = (s.strip() for s in line.partition("="))
            if not sep or key not in types:
                raise ValueError(f"config line {lineno}: expected one of {sorted(types)} as key=value")
            if key == "engine":
                setattr(cfg, key, value)
            elif key == "time_limit_s":
                setattr(cfg, key, float(value))
            else:
                setattr(cfg, key, int(value))
        return cfg

    @classmethod
    def load(cls, path) -> "RunConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read())
