"""Exact Ringel-Hall algebra computations for quivers over finite fields."""

__version__ = "0.1.0"

from .quiver import DimVector, Quiver, euler_form, preset_quiver, symmetric_euler_form  # noqa: E402
from .gf import GaloisField, field_make  # noqa: E402
from .reps import IsoClassTable, Rep, TableStore, build_iso_table, hall_number  # noqa: E402
from .scalar import SqrtQScalar  # noqa: E402
from .hall import HallElement, hall_comultiply, hall_multiply, serre_defect  # noqa: E402

__all__ = [
    "DimVector", "Quiver", "euler_form", "symmetric_euler_form", "preset_quiver",
    "GaloisField", "field_make", "IsoClassTable", "Rep", "TableStore", "build_iso_table",
    "hall_number", "SqrtQScalar", "HallElement", "hall_multiply", "hall_comultiply", "serre_defect",
]
