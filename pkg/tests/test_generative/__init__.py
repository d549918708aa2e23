"""Tests for the generative model."""
