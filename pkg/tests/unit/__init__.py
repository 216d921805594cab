"""Unit tests for spinpath."""
