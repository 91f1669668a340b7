"""Tests for core domain models."""
