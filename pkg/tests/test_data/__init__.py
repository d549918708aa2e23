"""Tests for dataset IO and the oracle."""
