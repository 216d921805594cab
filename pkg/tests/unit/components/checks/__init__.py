"""Tests for check suites, their registry and the report format."""
