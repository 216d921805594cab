"""
Numerical components of spinpath.

Each subpackage implements one layer: the groupoid algebra, interactions and
Hamiltonians, point processes, jump paths and density evaluators, Gibbs
functionals, KMS machinery, and the check suites the CLI runs.
"""
