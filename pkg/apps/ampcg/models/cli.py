from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field


class OutputFormat(str, Enum):
    cg = "cg"
    dot = "dot"


class CliConfig(BaseModel):
    """Validated options of one command invocation"""

    command: str
    graph: Optional[Path] = None
    other_graph: Optional[Path] = None
    data: Optional[Path] = None
    output: Optional[Path] = None
    alpha: float = Field(0.01, gt=0.0, lt=1.0)
    seed: int = 0
    n: int = Field(1000, ge=1)
    format: OutputFormat = OutputFormat.cg
    x: list[str] = Field(default_factory=list)
    y: list[str] = Field(default_factory=list)
    z: list[str] = Field(default_factory=list)
    fixtures: bool = False
