"""Request models for training runs."""

from pydantic import BaseModel, Field, field_validator

from mmwave_channel_gen.config.standards import (
    BATCH_SIZE,
    DECODER_HIDDEN,
    ENCODER_HIDDEN,
    LATENT_DIM,
    LINK_STATE_EPOCHS,
    LINK_STATE_HIDDEN,
    LINK_STATE_LEARNING_RATE,
    VAE_EPOCHS,
    VAE_LEARNING_RATE,
)


class LinkStateTrainConfig(BaseModel):
    """Training configuration for the link-state predictor."""

    epochs: int = Field(default=LINK_STATE_EPOCHS, ge=1)
    batch_size: int = Field(default=BATCH_SIZE, ge=1)
    learning_rate: float = Field(default=LINK_STATE_LEARNING_RATE, gt=0)
    seed: int = Field(default=0, ge=0)
    hidden: tuple[int, ...] = Field(default=LINK_STATE_HIDDEN)
    class_weighting: bool = Field(
        default=False,
        description="Weight cross-entropy by inverse class frequency",
    )


class VaeTrainConfig(BaseModel):
    """Training configuration for the path VAE."""

    epochs: int = Field(default=VAE_EPOCHS, ge=1)
    batch_size: int = Field(default=BATCH_SIZE, ge=1)
    learning_rate: float = Field(default=VAE_LEARNING_RATE, gt=0)
    seed: int = Field(default=0, ge=0)
    latent_dim: int = Field(default=LATENT_DIM, ge=1)
    encoder_hidden: tuple[int, ...] = Field(default=ENCODER_HIDDEN)
    decoder_hidden: tuple[int, ...] = Field(
        default=DECODER_HIDDEN,
        description="Decoder hidden widths; (80, 200) is accepted as the alternative order",
    )

    @field_validator("encoder_hidden", "decoder_hidden")
    @classmethod
    def _positive(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if not value or any(w < 1 for w in value):
            raise ValueError("hidden widths must be a nonempty list of positive integers")
        return value
