"""
Height fields and the level-square solver
"""
from .fields import FieldKind, HeightField, HeightGrid, field_from_grid, load_grid_file, tabletop
from .solver import leg_heights, level_energy, solve_table, start_ladder

__all__ = [
    'FieldKind', 'HeightField', 'HeightGrid', 'field_from_grid', 'load_grid_file', 'tabletop',
    'leg_heights', 'level_energy', 'solve_table', 'start_ladder',
]
