"""Core infrastructure tests."""
