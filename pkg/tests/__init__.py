"""Tests for fuzzyspectrum."""
