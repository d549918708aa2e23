"""Tests for evaluation."""
