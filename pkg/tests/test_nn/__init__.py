"""Tests for dense-network numerics."""
