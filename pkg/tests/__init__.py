"""Tests for mmwave-channel-gen."""
