"""Test package for spinpath."""
