"""Supercharacter theories of cyclic and dihedral groups, computed exactly."""
from .characters import CharacterTable, character_table
from .core import InvalidTheoryError, Sct, assemble, build_sct, sct_from_json, sct_M, sct_m
from .groups import FiniteGroup, GroupHom, group_from_descriptor, make_cyclic, make_dihedral
from .lattice import SctLattice, enumerate_scts, join, meet
from .partitions import SetPartition

__all__ = [
    "CharacterTable",
    "FiniteGroup",
    "GroupHom",
    "InvalidTheoryError",
    "Sct",
    "SctLattice",
    "SetPartition",
    "assemble",
    "build_sct",
    "character_table",
    "enumerate_scts",
    "group_from_descriptor",
    "join",
    "make_cyclic",
    "make_dihedral",
    "meet",
    "sct_M",
    "sct_from_json",
    "sct_m",
]
