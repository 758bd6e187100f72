from marshmallow import EXCLUDE, Schema, ValidationError, fields, post_load, validates_schema
from marshmallow.validate import OneOf, Range

from .config import (
    DEFAULT_DEGREE_BOUND,
    DEFAULT_FIELD_EXT,
    DEFAULT_IDEMPOTENT_ITERATIONS,
    DEFAULT_MAX_LEN,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    OUTPUT_FORMATS,
    PRESETS,
    EngineConfig,
)
from .validators import must_be_odd_prime, must_be_positive, must_exist, parse_weight, parse_word
from .weyl import RootDatum, root_datum


class RunConfigSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    type = fields.String(missing='A1', validate=[OneOf(PRESETS)])
    root_file = fields.String(allow_none=True, validate=[must_exist])
    p = fields.Integer(missing=5, validate=[must_be_odd_prime])
    seed = fields.Integer(missing=DEFAULT_SEED, validate=[Range(min=0)])
    samples = fields.Integer(missing=DEFAULT_SAMPLES, validate=[Range(min=1, max=64)])
    field_ext = fields.Integer(missing=DEFAULT_FIELD_EXT, allow_none=True, validate=[must_be_positive])
    max_len = fields.Integer(missing=DEFAULT_MAX_LEN, validate=[Range(min=0)])
    degree_bound = fields.Integer(missing=DEFAULT_DEGREE_BOUND, validate=[Range(min=0)])
    idempotent_iterations = fields.Integer(missing=DEFAULT_IDEMPOTENT_ITERATIONS, validate=[Range(min=1)])
    word = fields.String(missing='')
    weight = fields.String(allow_none=True)
    bound = fields.Integer(allow_none=True, validate=[must_be_positive])
    lower = fields.Integer(missing=0)
    out = fields.String(allow_none=True)
    format = fields.String(missing='json', validate=[OneOf(OUTPUT_FORMATS)])

    @validates_schema
    def validate_cross_fields(self, data, **kwargs):
        if data.get('root_file') and 'type' in self.explicit:
            raise ValidationError('`type` and `root_file` are mutually exclusive', 'root_file')
        parse_word(data.get('word'))
        if data.get('weight') is not None:
            parse_weight(data['weight'])
        bound = data.get('bound')
        if bound is not None and data.get('lower', 0) > bound:
            raise ValidationError('`lower` exceeds `bound`', 'lower')

    def load(self, data, *args, **kwargs):
        self.explicit = {k for k, v in data.items() if v is not None}
        return super().load({k: v for k, v in data.items() if v is not None}, *args, **kwargs)

    @post_load
    def make_config(self, data, **kwargs):
        config = EngineConfig()
        config._update(data)
        return config


def load_key_value_file(path):
    '''Read `key = value` lines; `#` starts a comment. Keys use the flag names.'''
    values = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ValidationError(f'Cannot read config file {path}: {exc.strerror}', 'config')
    for lineno, line in enumerate(lines, 1):
        body = line.split('#', 1)[0].strip()
        if not body:
            continue
        key, sep, val = body.partition('=')
        if not sep or not key.strip():
            raise ValidationError(f'{path}:{lineno}: expected `key = value`', 'config')
        values[key.strip().replace('-', '_')] = val.strip()
    return values


def datum_from_config(config):
    if config.root_file:
        return RootDatum.from_config(load_key_value_file(config.root_file), prime=config.p)
    return root_datum(config.type, config.p)
