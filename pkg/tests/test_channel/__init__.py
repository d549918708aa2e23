"""Tests for channel transforms."""
