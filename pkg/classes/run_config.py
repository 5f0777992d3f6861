"""Run configuration for the experiment commands."""

import json
import os
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field, field_validator

from classes.chart_grid import MIN_AXIS_CELLS
from classes.manifold_tag import FrontGluing

CONFIG_FILE = Path(".kk_nodal.json")

ENV_KEYS = {
    "threads": "KK_NODAL_THREADS",
    "seed": "KK_NODAL_SEED",
    "y_max": "KK_NODAL_YMAX",
    "zero_tol": "KK_NODAL_ZERO_TOL",
}


class Command(str, Enum):
    """Enum representing the experiment subcommands."""

    TORUS_BASIS = "torus-basis"
    TORUS_COUNT = "torus-count"
    T2_COUNT = "t2-count"
    MODULAR_TAU = "modular-tau"
    MODULAR_COUNT = "modular-count"
    SPHERE_CHECK = "sphere-check"
    GRAPH_COUNT = "graph-count"
    INDEX = "index"


def parse_resolution(value: str) -> tuple[int, ...]:
    """Parse ``AxBxC`` (or ``AxB``) into a tuple of cell counts.

    :param value: Resolution text.
    :type value: str
    :return: Cell counts.
    :rtype: tuple[int, ...]
    """
    try:
        return tuple(int(part) for part in value.lower().split("x"))
    except ValueError:
        raise ValueError(
            f"resolution '{value}' is not of the form AxBxC with integer axes, e.g. 96x96x192"
        ) from None


class RunConfig(BaseModel):
    """Parameters of one experiment run.

    :ivar command: Subcommand being run.
    :ivar resolution: Cell counts per axis, if the command uses a grid.
    :ivar y_max: Cusp truncation height of the modular solid.
    :ivar zero_tol: Zero threshold for sign sampling.
    :ivar max_freq: Maximal torus frequency.
    :ivar m: Weight, or largest weight for sweeps.
    :ivar n: Truncation order of q-expansions.
    :ivar seed: Seed of randomized suites.
    :ivar samples: Size of randomized suites.
    :ivar threads: Slab parallelism.
    :ivar cap_rows: Cusp-cap rows of the modular solid.
    :ivar front_gluing: Front gluing mode of the modular solid.
    :ivar out: JSON summary path; stdout when unset.
    :ivar csv: Optional CSV path for nodal points.
    :ivar omit_timing: Leave elapsed_ms out of the summary.
    """

    command: Command
    resolution: Optional[tuple[int, ...]] = None
    y_max: float = Field(default=2.0, gt=1.0)
    zero_tol: float = Field(default=0.0, ge=0.0)
    max_freq: int = Field(default=1, ge=1)
    m: Optional[int] = Field(default=None, ge=1)
    n: int = Field(default=7, ge=1)
    seed: int = 0
    samples: Optional[int] = Field(default=None, ge=1)
    threads: int = Field(default=1, ge=1)
    cap_rows: int = Field(default=4, ge=0)
    front_gluing: FrontGluing = FrontGluing.OVERLAP
    out: Optional[Path] = None
    csv: Optional[Path] = None
    omit_timing: bool = False

    @field_validator("resolution", mode="before")
    @classmethod
    def _parse_resolution(cls, value: Any) -> Any:
        if isinstance(value, str):
            value = parse_resolution(value)
        if value is not None and min(value) < MIN_AXIS_CELLS:
            raise ValueError(
                f"every resolution axis needs at least {MIN_AXIS_CELLS} cells, got "
                f"{'x'.join(str(v) for v in value)}"
            )
        return value

    def with_defaults(self, **defaults: Any) -> "RunConfig":
        """Fill fields still unset with command-specific defaults.

        :param defaults: Values keyed by field name.
        :return: A new configuration.
        :rtype: RunConfig
        """
        missing = {k: v for k, v in defaults.items() if getattr(self, k) is None}
        return self.model_validate({**self.model_dump(), **missing})

    def params(self) -> dict[str, Any]:
        """Parameters echoed into the summary (everything but paths and flags).

        :return: JSON-ready parameters.
        :rtype: dict[str, Any]
        """
        return self.model_dump(
            mode="json", exclude={"command", "out", "csv", "omit_timing", "threads"}
        )

    @classmethod
    def load(
        cls, command: Command, config_file: Path = CONFIG_FILE, **cli: Any
    ) -> "RunConfig":
        """Load configuration from the CLI, .kk_nodal.json, or environment variables.

        Values given on the command line take precedence over the file, which
        takes precedence over the environment; defaults fill the rest.

        :param command: Subcommand being run.
        :type command: Command
        :param config_file: Path of the JSON configuration file.
        :type config_file: Path
        :param cli: Values from command-line flags; None means not given.
        :return: The merged configuration.
        :rtype: RunConfig
        :raises pydantic.ValidationError: If a value is invalid.
        """
        merged: dict[str, Any] = {}

        # Environment variables are the weakest source
        for key, variable in ENV_KEYS.items():
            value = os.environ.get(variable)
            if value:
                merged[key] = value

        if config_file.exists():
            try:
                data = json.loads(config_file.read_text())
                merged.update({k: v for k, v in data.items() if k in cls.model_fields and k != "command"})
            except json.JSONDecodeError:
                pass

        merged.update({k: v for k, v in cli.items() if v is not None})
        return cls(command=command, **merged)
