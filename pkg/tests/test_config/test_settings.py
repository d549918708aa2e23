"""Tests for settings and logging setup."""

import logging

import pytest
from pydantic import ValidationError

from mmwave_channel_gen.config.logging_setup import configure_logging
from mmwave_channel_gen.config.settings import Settings, get_settings


class TestSettings:
    """Tests for environment-driven settings."""

    def test_defaults(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test the defaults when no variables are set."""
        monkeypatch.delenv("MMWCHAN_LOG_LEVEL", raising=False)
        monkeypatch.delenv("MMWCHAN_PROGRESS_EVERY_BATCHES", raising=False)

        settings = Settings(_env_file=None)  # type: ignore[call-arg]

        assert settings.log_level == "WARNING"
        assert settings.carrier_frequency_hz == 28e9
        assert settings.absent_threshold_db == 195.0
        assert settings.los_angle_tolerance_deg == 0.5

    def test_environment_override(self, monkeypatch: pytest.MonkeyPatch, clear_settings_cache: None) -> None:
        """Test that prefixed variables override defaults."""
        monkeypatch.setenv("MMWCHAN_ABSENT_THRESHOLD_DB", "190")

        assert get_settings().absent_threshold_db == 190.0

    def test_cached(self) -> None:
        """Test that settings are built once."""
        assert get_settings() is get_settings()

    def test_rejects_threshold_above_padding(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that the absent threshold cannot exceed the padding loss."""
        monkeypatch.setenv("MMWCHAN_ABSENT_THRESHOLD_DB", "250")

        with pytest.raises(ValidationError):
            Settings(_env_file=None)  # type: ignore[call-arg]


class TestConfigureLogging:
    """Tests for configure_logging function."""

    def test_single_handler(self) -> None:
        """Test that repeated setup keeps one handler."""
        configure_logging("info")
        configure_logging("debug")

        package_logger = logging.getLogger("mmwave_channel_gen")
        assert len(package_logger.handlers) == 1
        assert package_logger.level == logging.DEBUG
        assert package_logger.propagate is False
