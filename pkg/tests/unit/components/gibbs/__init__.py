"""Tests for Gibbs functionals, the boundary map and the DLR equation."""
