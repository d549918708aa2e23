"""Tests for antennas and link budgets."""
