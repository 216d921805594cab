"""Tests for dynamics, the KMS condition and perturbed states."""
