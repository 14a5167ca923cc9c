"""Glued complementary channel pairs.

Tools to build isometries by gluing smaller ones, evaluate entropy bias and
single-letter coherent information of the resulting channel pairs, and probe
two-copy nonadditivity for generalized erasure models built on amplitude
damping and dephasing qubits.
"""

__version__ = "0.1.0"
