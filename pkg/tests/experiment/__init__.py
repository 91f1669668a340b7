"""Tests for experiment grids."""
