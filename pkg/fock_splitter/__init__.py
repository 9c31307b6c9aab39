"""Photon-number statistics of a lossless beam splitter fed by Fock states."""

__version__ = "0.1.0"
