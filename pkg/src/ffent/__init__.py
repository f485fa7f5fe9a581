"""Entanglement entropy of disordered quasifree lattice fermions.

The package builds discrete Schrödinger operators ``H = -Delta + V`` on
finite boxes of ``Z^d``, forms Fermi projections and evaluates block
entanglement entropies, with Monte Carlo drivers over disorder ensembles
and independent oracles for validation.
"""

__version__ = "0.1.0"
