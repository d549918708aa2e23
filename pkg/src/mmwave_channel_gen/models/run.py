"""Resolved run configurations written next to every command's output."""

import json
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field

from mmwave_channel_gen.config.standards import DEFAULT_CARRIER_HZ, SNR_REALIZATIONS, TRAIN_FRACTION, CellType
from mmwave_channel_gen.models.training import LinkStateTrainConfig, VaeTrainConfig

CONFIG_SUFFIX = ".config.json"


class TrainRunConfig(BaseModel):
    """Resolved configuration of a ``train`` run."""

    command: Literal["train"] = "train"
    data: str
    out: str
    seed: int = Field(..., ge=0)
    train_fraction: float | None = Field(
        default=None,
        gt=0,
        lt=1,
        description="Hold out a test split of the data file; None trains on every link",
    )
    carrier_frequency_hz: float = Field(default=DEFAULT_CARRIER_HZ, gt=0)
    link_state: LinkStateTrainConfig
    vae: VaeTrainConfig


class GenerateRunConfig(BaseModel):
    """Resolved configuration of a ``generate`` run."""

    command: Literal["generate"] = "generate"
    model: str
    conditions: str
    out: str
    n_per_condition: int = Field(..., ge=1)
    seed: int = Field(..., ge=0)
    mode: str = "sample"


class EvalRunConfig(BaseModel):
    """Resolved configuration of an ``eval`` run."""

    command: Literal["eval"] = "eval"
    model: str
    test: str
    outdir: str
    seed: int = Field(..., ge=0)


class SnrMapRunConfig(BaseModel):
    """Resolved configuration of a ``snrmap`` run."""

    command: Literal["snrmap"] = "snrmap"
    model: str
    out: str
    gnb: CellType
    gnb_height_m: float
    seed: int = Field(..., ge=0)
    n_real: int = Field(default=SNR_REALIZATIONS, ge=1)
    x_max_m: float
    x_step_m: float
    z_max_m: float
    z_step_m: float


class OracleRunConfig(BaseModel):
    """Resolved configuration of an ``oracle`` run."""

    command: Literal["oracle"] = "oracle"
    out: str
    n: int = Field(..., ge=1)
    seed: int = Field(..., ge=0)
    conditions: str | None = None
    params: dict[str, float]


class SplitRunConfig(BaseModel):
    """Resolved configuration of a ``split`` run."""

    command: Literal["split"] = "split"
    data: str
    train: str
    test: str
    fraction: float = Field(default=TRAIN_FRACTION, gt=0, lt=1)
    seed: int = Field(..., ge=0)
    train_count: int
    test_count: int


RunConfig = (
    TrainRunConfig | GenerateRunConfig | EvalRunConfig | SnrMapRunConfig | OracleRunConfig | SplitRunConfig
)


def config_path_for(output: str | Path) -> Path:
    """``<output>.config.json`` beside a file or directory output."""
    out = Path(output)
    return out.with_name(out.name + CONFIG_SUFFIX)


def write_run_config(config: RunConfig, output: str | Path) -> Path:
    """Write the resolved configuration beside ``output``."""
    path = config_path_for(output)
    path.write_text(json.dumps(config.model_dump(mode="json"), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
