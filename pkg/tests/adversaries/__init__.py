"""Tests for adversarial profiles and functions."""
