"""Tests for regions, the transformation groupoid and local operators."""
