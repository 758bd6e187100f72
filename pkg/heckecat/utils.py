import json
import os
import re
from fractions import Fraction

import numpy as np
import orjson


ORJSON_FLAGS = orjson.OPT_SORT_KEYS | orjson.OPT_NON_STR_KEYS | orjson.OPT_SERIALIZE_NUMPY
WORD_PAT = re.compile(r's(\d+)')


def def_dump(val):
    if hasattr(val, 'to_json'):
        return val.to_json()
    if isinstance(val, (set, frozenset)):
        return sorted(val, key=repr)
    if isinstance(val, Fraction):
        return str(val)
    if isinstance(val, np.ndarray):
        return val.tolist()
    if isinstance(val, np.integer):
        return int(val)
    return str(val)


def dumps(val):
    try:
        return orjson.dumps(val, default=def_dump, option=ORJSON_FLAGS).decode()
    except (orjson.JSONEncodeError, TypeError):
        return json.dumps(val, default=def_dump, sort_keys=True)


def interpolate_env_var(envvar, default_value=None, template=re.compile(r'(<<(.*?)>>)')):
    main_val = os.environ.get(envvar, default_value)
    if not main_val:
        return main_val
    inter_hit = set(re.findall(template, main_val))
    inter_dict = {templ_key: os.environ.get(key, '') for (templ_key, key) in inter_hit}
    for key, sub in inter_dict.items():
        main_val = main_val.replace(key, sub)
    return main_val


def make_rng(seed):
    return np.random.default_rng(seed)


def word_to_string(word):
    return ''.join(f's{i}' for i in word)


def string_to_word(text):
    '''Parse `s1s0s1` (spaces allowed) into generator indices.'''
    stripped = re.sub(r'\s+', '', text or '')
    if not stripped or stripped == 'e':
        return []
    pos = 0
    word = []
    for match in WORD_PAT.finditer(stripped):
        if match.start() != pos:
            raise ValueError(f'unexpected character at position {pos}: {stripped[pos]!r}')
        word.append(int(match.group(1)))
        pos = match.end()
    if pos != len(stripped):
        raise ValueError(f'unexpected character at position {pos}: {stripped[pos]!r}')
    return word


def laurent_str(coeffs, var='v'):
    if not coeffs:
        return '0'
    parts = []
    for exp in sorted(coeffs, reverse=True):
        c = coeffs[exp]
        if exp == 0:
            mono = ''
        elif exp == 1:
            mono = var
        else:
            mono = f'{var}^{exp}' if exp > 0 else f'{var}^({exp})'
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f'{abs(c)}{mono}'
        sign = '-' if c < 0 else '+'
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ('-' if first_sign == '-' else '') + first
    for sign, body in parts[1:]:
        out += f' {sign} {body}'
    return out
