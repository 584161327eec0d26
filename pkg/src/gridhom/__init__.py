"""Grid homology over F2 for knots in grid position, with tools for diagonal
grid diagrams."""
from .errors import GridhomError
from .grid import (GridDiagram, connected_sum, from_sigma, is_diagonal, load_grid, new_grid,
                   parse_grid, to_sigma, torus_grid)
from .homology import (BigradedDims, EngineConfig, alexander_poly, genus, hat_homology,
                       tilde_homology)
from .laurent import LaurentPoly

__version__ = "0.1.0"

__all__ = [
    "GridhomError", "GridDiagram", "connected_sum", "from_sigma", "is_diagonal", "load_grid",
    "new_grid", "parse_grid", "to_sigma", "torus_grid", "BigradedDims", "EngineConfig",
    "alexander_poly", "genus", "hat_homology", "tilde_homology", "LaurentPoly", "data_path",
]


def data_path(name: str) -> str:
    """Path of a bundled example grid, e.g. ``data_path("trefoil.json")``."""
    from importlib.resources import files
    return str(files(__name__) / "data" / name)
