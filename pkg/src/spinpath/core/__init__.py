"""
Core infrastructure for spinpath.

Logging, run settings, the error hierarchy, the event bus and the abstract
interfaces that the numerical components build on.
"""
