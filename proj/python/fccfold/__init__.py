"""Lattice protein structure prediction on the face-centred cubic lattice.

Thin wrapper over the compiled extension module; see the individual
docstrings for the exposed operations.
"""
from ._fccfold import (
    Conformation,
    Error,
    Sequence,
    bundled_ids,
    bundled_sequence,
    count_saws,
    exact_optimum,
    fold,
    grow,
    hp_energy,
    mj_energy,
    relative_improvement,
    rmsd,
    scaled_coords,
)

__all__ = [
    "Conformation",
    "Error",
    "Sequence",
    "bundled_ids",
    "bundled_sequence",
    "count_saws",
    "exact_optimum",
    "fold",
    "grow",
    "hp_energy",
    "mj_energy",
    "relative_improvement",
    "rmsd",
    "scaled_coords",
]
