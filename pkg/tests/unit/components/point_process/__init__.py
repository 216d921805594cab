"""Tests for point patterns, samplers and integration series."""
