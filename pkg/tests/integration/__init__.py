"""Integration tests for spinpath."""
