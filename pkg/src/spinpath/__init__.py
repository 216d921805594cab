"""
Spinpath - finite-volume quantum spin systems through groupoids and jump paths.

Realizes the spin algebra as the convolution algebra of a finite transformation
groupoid, evaluates Gibbs densities through the Poisson jump-path representation,
and runs quantum specification, DLR and KMS conditions as numerical checks
against an exact matrix oracle.
"""

__version__ = "0.1.0"
__author__ = "Spinpath Development Team"
