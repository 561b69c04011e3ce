from typing import Literal, get_args

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .. import config

Command = Literal[
    "d2check",
    "cohomology",
    "jacobian",
    "ginzburg",
    "bar",
    "dualbar",
    "trivext-iso",
    "cy-check",
    "selfinj-check",
    "stable-hom",
    "shifted-hom",
]

COMMANDS: tuple[str, ...] = get_args(Command)


def parse_degrees(text: str) -> tuple[int, int]:
    """``a..b`` with integer bounds"""
    low, separator, high = text.partition("..")
    if not separator:
        raise ValueError(f"Degree window must look like a..b, got {text!r}")

    return int(low), int(high)


class JobSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: Command
    inputs: tuple[str, ...] = Field(min_length=1, max_length=2)
    truncation: int = Field(default_factory=lambda: config.default_truncation())
    degrees: tuple[int, int] = Field(default_factory=lambda: config.DEFAULT_DEGREES)
    machine: bool = False
    seed: int = 0
    d: int = Field(default_factory=lambda: config.DEFAULT_CY_PARAMETER)
    shift: int | None = None
    """Single shift for ``shifted-hom``; the range -3..3 otherwise"""
    verbose: bool = False

    @field_validator("truncation")
    @classmethod
    def positive_truncation(cls, value: int) -> int:
        if value < 1:
            raise ValueError("truncation must be at least 1")
        return value

    @field_validator("degrees")
    @classmethod
    def nonempty_window(cls, value: tuple[int, int]) -> tuple[int, int]:
        if value[0] > value[1]:
            raise ValueError(f"degree window {value[0]}..{value[1]} is empty")
        return value

    @field_validator("d")
    @classmethod
    def calabi_yau_parameter(cls, value: int) -> int:
        if value < 2:
            raise ValueError("Calabi-Yau parameter must be at least 2")
        return value

    @model_validator(mode="after")
    def one_file_unless_modules(self) -> "JobSpec":
        if len(self.inputs) == 2 and self.command not in ("stable-hom", "shifted-hom"):
            raise ValueError(f"{self.command} takes a single input file")
        return self
