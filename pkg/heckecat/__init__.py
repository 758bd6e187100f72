from .config import EngineConfig
from .exceptions import HeckecatError
from .hecke import HeckeAlgebra, LaurentInt
from .realization import Realization, SamplePoints
from .sbim import SoergelCategory
from .weyl import RootDatum, root_datum

__version__ = '0.1.0'

__all__ = [
    'EngineConfig',
    'HeckeAlgebra',
    'HeckecatError',
    'LaurentInt',
    'Realization',
    'RootDatum',
    'SamplePoints',
    'SoergelCategory',
    'root_datum',
]
