"""Unit tests for components."""
