import os
import re

from marshmallow import ValidationError

from .utils import string_to_word

WEIGHT_PAT = re.compile(r'-?\d+')


def must_be_odd_prime(val):
    if val < 3 or any(val % d == 0 for d in range(2, int(val ** 0.5) + 1)):
        raise ValidationError(f'{val} is not an odd prime')


def must_be_positive(val):
    if val is not None and val <= 0:
        raise ValidationError('Must be positive')


def must_exist(path):
    if path and not os.path.isfile(path):
        raise ValidationError(f'File not found: {path}')


def parse_weight(text, rank=None):
    '''Parse `3` or `1,-2` (parentheses allowed) into a tuple of ints.'''
    stripped = (text or '').strip().strip('()[]')
    if not stripped:
        raise ValidationError('empty weight at position 0')
    coords = []
    pos = 0
    for chunk in stripped.split(','):
        item = chunk.strip()
        if not WEIGHT_PAT.fullmatch(item):
            offset = pos + len(chunk) - len(chunk.lstrip())
            bad = next((i for i, ch in enumerate(item) if not (ch.isdigit() or (ch == '-' and i == 0))), 0)
            raise ValidationError(f'malformed weight at position {offset + bad}: {text!r}')
        coords.append(int(item))
        pos += len(chunk) + 1
    if rank is not None and len(coords) != rank:
        raise ValidationError(f'weight needs {rank} coordinates, got {len(coords)}')
    return tuple(coords)


def parse_word(text):
    try:
        return string_to_word(text)
    except ValueError as exc:
        raise ValidationError(f'malformed word: {exc}')
