"""Packing and partitioning orbitopes for cyclic and symmetric column groups."""
from .core import (SCI, Bar, BinaryMatrix, CostVector, DiagCoord, FractionalPoint, Group, RowMode,
                   Shape, ShiftedColumn, bar_of, cell_to_diag, column_segment, diag_to_cell, point_sum,
                   triangle_size)
from .errors import CapacityError, DomainError, OrbitopeError
from .orbits import canonicalize, enumerate_vertices, is_lex_max, lex_compare
from .optimize import build_sym_tables, optimize_cyclic, optimize_symmetric
from .separation import build_shifting_tables, reconstruct_shifting, separate_cyclic, separate_sci
from .descriptions import (Redundancy, classify_sci, describe, describe_cyclic_packing,
                           describe_cyclic_partitioning, describe_symmetric, lift_pack_to_part,
                           project_part_to_pack)

__version__ = "0.1.0"
