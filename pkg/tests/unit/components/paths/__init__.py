"""Tests for jump paths, densities and the exponential evaluators."""
