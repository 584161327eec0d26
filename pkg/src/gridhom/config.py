"""Run configuration shared by the command line and batch scripts."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import ValidationError
from .homology import EngineConfig

_STRATUM = re.compile(r"^\s*(g)?\s*([+-]\s*\d+)?\s*$")


@dataclass
class RunConfig:
    command: str = ""
    inputs: list[str] = field(default_factory=list)
    max_full_enum: int = 10
    budget_mb: float = 6000.0
    threads: int = 1
    seed: int = 0
    fmt: str = "json"
    strata: Optional[str] = None
    assert_minimal: bool = False

    def __post_init__(self):
        if self.max_full_enum < 1:
            raise ValidationError("--max-full-enum must be positive", "max_full_enum")
        if self.budget_mb <= 0:
            raise ValidationError("--budget-mb must be positive", "budget_mb")
        if self.threads < 1:
            raise ValidationError("--threads must be positive", "threads")
        if self.fmt not in ("json", "table"):
            raise ValidationError("--format must be json or table", "format")

    def engine(self) -> EngineConfig:
        return EngineConfig(self.max_full_enum, self.budget_mb, self.threads)

    def resolve_strata(self, g: int) -> Optional[list[int]]:
        """Turn ``"g,g-1,3"`` into integers given the genus."""
        if self.strata is None:
            return None
        return parse_strata(self.strata, g)


def parse_strata(text: str, g: int) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        m = _STRATUM.match(tok)
        if m is None or (m.group(1) is None and m.group(2) is None):
            try:
                out.append(int(tok))
                continue
            except ValueError:
                raise ValidationError(f"bad stratum {tok!r}; use integers or g, g-1, ...", "strata") from None
        base = g if m.group(1) else 0
        off = int(m.group(2).replace(" ", "")) if m.group(2) else 0
        out.append(base + off)
    if not out:
        raise ValidationError("no strata given", "strata")
    return sorted(set(out), reverse=True)
