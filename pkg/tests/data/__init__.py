"""Tests for sources and streams."""
