"""Bi-Cayley graphs of generalized quaternion groups and their BCI properties."""

__version__ = "0.1.0"

from .group import GQ, IDENTITY, Automorphism, Elem, InvalidParameter, Subgroup, TooLarge
from .bicayley import (BiCayleyGraph, ConnectionSet, build, connection_set, is_connected,
                       right_translation, translate_and_map)
from .spectra import Irrep, SpectrumSummary, charpoly_exact, irreps, spectrum_via_reps
from .iso import bcay_equivalent, graphs_isomorphic, reduced_iso_check
from .bci import is_bci_subset, is_fif, is_m_bci, verify_lemma_3_3, verify_theorem_1

__all__ = [
    "GQ", "IDENTITY", "Automorphism", "Elem", "InvalidParameter", "Subgroup", "TooLarge",
    "BiCayleyGraph", "ConnectionSet", "build", "connection_set", "is_connected",
    "right_translation", "translate_and_map",
    "Irrep", "SpectrumSummary", "charpoly_exact", "irreps", "spectrum_via_reps",
    "bcay_equivalent", "graphs_isomorphic", "reduced_iso_check",
    "is_bci_subset", "is_fif", "is_m_bci", "verify_lemma_3_3", "verify_theorem_1",
]
