"""
Validated description of one CLI invocation.
"""
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .family import FamilySpec


class Command(Enum):
    """CLI subcommands."""
    GENERATE = "Generate"
    ANALYZE = "Analyze"
    CHECK_ESA = "CheckEsa"
    CHECK_MSA = "CheckMsa"
    LCG = "Lcg"
    CLASSIFY = "Classify"
    PLOT = "Plot"

    @classmethod
    def from_cli(cls, name: str) -> "Command":
        """Map a subcommand name such as 'check-esa' to its Command."""
        key = name.replace("-", "_").upper()
        return cls[key]


class RunConfig(BaseModel):
    """
    One command with its files and options.

    Attributes:
        command: Which pipeline to run
        input_path: Curve CSV to read (all commands except Generate)
        output_path: Artifact to write (CSV, JSON report or SVG)
        family: Curve family to sample (Generate only)
        options: Command options (grids, group, route, tolerances, ...)
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    command: Command
    output_path: Path
    input_path: Optional[Path] = None
    family: Optional[FamilySpec] = None
    options: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_inputs(self) -> "RunConfig":
        if self.command == Command.GENERATE:
            if self.family is None:
                raise ValueError("generate requires a curve family")
        elif self.command == Command.PLOT and self.options.get("reference"):
            pass
        elif self.input_path is None:
            raise ValueError(f"{self.command.value} requires an input path")
        return self

    def option(self, key: str, default: Any = None) -> Any:
        return self.options.get(key, default)

    def summary(self) -> Dict[str, Any]:
        return {
            "command": self.command.value,
            "input": str(self.input_path) if self.input_path else None,
            "output": str(self.output_path),
            "family": self.family.to_dict() if self.family else None,
        }
