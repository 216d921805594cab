"""Tests for interactions, Hamiltonians and model files."""
