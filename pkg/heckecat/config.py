import os
from dataclasses import dataclass, field
from typing import Optional

from .utils import interpolate_env_var

APP_MODE = os.environ.get('APP_MODE', 'test')

DEFAULT_SEED = int(interpolate_env_var('HECKECAT_SEED', '20240607'))
DEFAULT_FIELD_EXT = int(interpolate_env_var('HECKECAT_FIELD_EXT', '0')) or None
DEFAULT_SAMPLES = int(interpolate_env_var('HECKECAT_SAMPLES', '2'))
DEFAULT_MAX_LEN = int(interpolate_env_var('HECKECAT_MAX_LEN', '6'))
DEFAULT_DEGREE_BOUND = int(interpolate_env_var('HECKECAT_DEGREE_BOUND', '10'))
DEFAULT_IDEMPOTENT_ITERATIONS = 64

PRESETS = ('A1', 'A2', 'A2ad')
OUTPUT_FORMATS = ('json', 'csv', 'tex')


@dataclass
class EngineConfig:
    # root datum
    type: str = 'A1'
    p: int = 5
    root_file: Optional[str] = None

    # randomness
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    field_ext: Optional[int] = DEFAULT_FIELD_EXT

    # budgets
    max_len: int = DEFAULT_MAX_LEN
    degree_bound: int = DEFAULT_DEGREE_BOUND
    idempotent_iterations: int = DEFAULT_IDEMPOTENT_ITERATIONS

    # command parameters
    word: str = ''
    weight: Optional[str] = None
    bound: Optional[int] = None
    lower: int = 0
    out: Optional[str] = None
    format: str = 'json'
    extras: dict = field(default_factory=dict)

    def _update(self, values):
        for k, v in values.items():
            if v is None:
                continue
            if hasattr(self, k):
                setattr(self, k, v)
            else:
                self.extras[k] = v

