"""Unit tests for settings and experiment configs."""
