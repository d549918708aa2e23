"""Tests for validators."""
