"""Tests for pydantic models."""
