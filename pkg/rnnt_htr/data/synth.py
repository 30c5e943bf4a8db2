#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import functools
import logging

import numpy as np

from rnnt_htr.constants import Direction
from rnnt_htr.defaults import OPT_CHARSET_SIZE, OPT_GLYPH_CELL, \
    OPT_MIN_LENGTH, OPT_MAX_LENGTH, OPT_SPACING, OPT_ROTATION, \
    OPT_SCALE_RANGE, OPT_SHEAR_RANGE, OPT_NOISE_SIGMA, OPT_CANVAS_HEIGHT, \
    OPT_SYNTH_DIRECTION, VALIDATION_EVERY
from rnnt_htr.errors import ConfigError, UnknownConfigKeyError, UsageError
from rnnt_htr.pool import ordered_map
from rnnt_htr.data.charset import default_charset
from rnnt_htr.data.glyphs import glyph_bank
from rnnt_htr.data.images import affine_warp, to_bytes
from rnnt_htr.data.sample import LineSample

logger = logging.getLogger(__name__)

MIXED = 'mixed'
SYNTH_DIRECTIONS = (Direction.HORIZONTAL.value, Direction.VERTICAL.value,
                    MIXED)


def _count(name, value, minimum):
    try:
        number = int(value)
    except (TypeError, ValueError):
        number = None
    if number is None or number != value or number < minimum:
        raise ConfigError('synth.{0} must be an integer >= {1}, got '
                          '{2!r}'.format(name, minimum, value))
    return number


def _real(name, value, minimum=0.0):
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigError('synth.{0}: expected a number, got {1!r}'.format(
            name, value))
    if not np.isfinite(number) or number < minimum:
        raise ConfigError('synth.{0} must be a number >= {1}, got '
                          '{2!r}'.format(name, minimum, value))
    return number


def _range(name, value, convert, minimum):
    try:
        low, high = value
    except (TypeError, ValueError):
        raise ConfigError('synth.{0}: expected [low, high], got {1!r}'.format(
            name, value))
    low, high = convert(name, low, minimum), convert(name, high, minimum)
    if low > high:
        raise ConfigError('synth.{0}: range [{1}, {2}] is not ordered'.format(
            name, low, high))
    return low, high


class SynthConfig(object):
    '''
    Generator settings for synthetic text lines. rotation (degrees) and
    shear_range are symmetric bounds, scale_range and spacing (pixels
    between glyphs) are [low, high]. canvas_height is the line's extent
    across the reading direction.
    '''

    def __init__(self, charset_size=OPT_CHARSET_SIZE,
                 glyph_cell=OPT_GLYPH_CELL, min_length=OPT_MIN_LENGTH,
                 max_length=OPT_MAX_LENGTH, spacing=OPT_SPACING,
                 rotation=OPT_ROTATION, scale_range=OPT_SCALE_RANGE,
                 shear_range=OPT_SHEAR_RANGE, noise_sigma=OPT_NOISE_SIGMA,
                 canvas_height=OPT_CANVAS_HEIGHT,
                 direction=OPT_SYNTH_DIRECTION):
        self._charset_size = _count('charset_size', charset_size, 1)
        self._glyph_cell = _count('glyph_cell', glyph_cell, 1)
        self._min_length = _count('min_length', min_length, 1)
        self._max_length = _count('max_length', max_length, 1)
        if self._min_length > self._max_length:
            raise ConfigError('synth.min_length {0} exceeds max_length '
                              '{1}'.format(self._min_length, self._max_length))
        self._spacing = _range('spacing', spacing, _count, 0)
        self._rotation = _real('rotation', rotation)
        self._scale_range = _range('scale_range', scale_range, _real, 1e-3)
        self._shear_range = _real('shear_range', shear_range)
        self._noise_sigma = _real('noise_sigma', noise_sigma)
        self._canvas_height = _count('canvas_height', canvas_height, 1)
        if self._canvas_height < self._glyph_cell:
            raise ConfigError('synth.canvas_height {0} is smaller than the '
                              'glyph cell {1}'.format(self._canvas_height,
                                                      self._glyph_cell))
        if direction not in SYNTH_DIRECTIONS:
            raise ConfigError('synth.direction must be one of {0}, got '
                              '{1!r}'.format(', '.join(SYNTH_DIRECTIONS),
                                             direction))
        self._direction = direction

    charset_size = property(lambda self: self._charset_size)
    glyph_cell = property(lambda self: self._glyph_cell)
    min_length = property(lambda self: self._min_length)
    max_length = property(lambda self: self._max_length)
    spacing = property(lambda self: self._spacing)
    rotation = property(lambda self: self._rotation)
    scale_range = property(lambda self: self._scale_range)
    shear_range = property(lambda self: self._shear_range)
    noise_sigma = property(lambda self: self._noise_sigma)
    canvas_height = property(lambda self: self._canvas_height)
    direction = property(lambda self: self._direction)

    def as_dict(self):
        return {'charset_size': self._charset_size,
                'glyph_cell': self._glyph_cell,
                'min_length': self._min_length,
                'max_length': self._max_length,
                'spacing': list(self._spacing),
                'rotation': self._rotation,
                'scale_range': list(self._scale_range),
                'shear_range': self._shear_range,
                'noise_sigma': self._noise_sigma,
                'canvas_height': self._canvas_height,
                'direction': self._direction}

    @classmethod
    def from_dict(cls, values):
        known = cls().as_dict()
        for key in values:
            if key not in known:
                raise UnknownConfigKeyError('synth', key)
        return cls(**values)

    def replace(self, **changes):
        values = self.as_dict()
        values.update(changes)
        return self.from_dict(values)

    def __eq__(self, rhs):
        return isinstance(rhs, SynthConfig) and \
            self.as_dict() == rhs.as_dict()

    def __ne__(self, rhs):
        return not self.__eq__(rhs)

    def __repr__(self):
        return '%s(%r)' % (self.__class__.__name__, self.as_dict())


def distort(image, rng, cfg, strength):
    '''
    Random affine warp within cfg's jitter scaled by strength, then
    additive Gaussian noise, clamped to [0, 1]. Draws the same number of
    variates whatever the ranges are.
    '''
    rotation = cfg.rotation * strength
    shear = cfg.shear_range * strength
    angle = rng.uniform(-rotation, rotation)
    scale = 1.0 + strength * (rng.uniform(*cfg.scale_range) - 1.0)
    shear = rng.uniform(-shear, shear)
    if angle != 0.0 or scale != 1.0 or shear != 0.0:
        image = affine_warp(image, angle, scale, shear)
    else:
        image = np.array(image, dtype=np.float64)
    sigma = cfg.noise_sigma * strength
    noise = rng.normal(0.0, 1.0, size=image.shape) * sigma
    return np.clip(image + noise, 0.0, 1.0)


def _compose(glyphs, labels, gaps, canvas_height, vertical):
    cell = glyphs.shape[1]
    extent = int(gaps.sum()) + len(labels) * cell
    across = slice((canvas_height - cell) // 2,
                   (canvas_height - cell) // 2 + cell)
    if vertical:
        canvas = np.zeros((extent, canvas_height))
    else:
        canvas = np.zeros((canvas_height, extent))
    position = int(gaps[0])
    for label, gap in zip(labels, gaps[1:]):
        along = slice(position, position + cell)
        # glyphs stay upright in both directions
        if vertical:
            canvas[along, across] = glyphs[label - 1]
        else:
            canvas[across, along] = glyphs[label - 1]
        position += cell + int(gap)
    return canvas


def render_synthetic_line(cfg, seed, charset=None):
    '''
    One random line: glyphs of random labels laid out along the reading
    direction with random gaps, then distorted at full strength. The image
    is quantized to 8 bits, so it survives a PGM round trip unchanged.
    '''
    if charset is None:
        charset = default_charset(cfg.charset_size)
    elif len(charset) != cfg.charset_size:
        raise ConfigError('synth.charset_size is {0} but the charset has {1} '
                          'symbols'.format(cfg.charset_size, len(charset)))
    rng = np.random.default_rng(seed)
    if cfg.direction == MIXED:
        direction = Direction.VERTICAL if rng.random() < 0.5 \
            else Direction.HORIZONTAL
    else:
        direction = Direction(cfg.direction)
    length = int(rng.integers(cfg.min_length, cfg.max_length + 1))
    labels = rng.integers(1, cfg.charset_size + 1, size=length)
    gaps = rng.integers(cfg.spacing[0], cfg.spacing[1] + 1, size=length + 1)

    canvas = _compose(glyph_bank(cfg.charset_size, cfg.glyph_cell), labels,
                      gaps, cfg.canvas_height,
                      direction is Direction.VERTICAL)
    image = distort(canvas, rng, cfg, 1.0)
    image = to_bytes(image) / 255.0
    return LineSample(image, charset.decode(labels), direction)


def _render_indexed(cfg, seed, charset, index):
    return render_synthetic_line(cfg, seed ^ index, charset)


def synthesize_dataset(cfg, count, seed, workers=1, charset=None):
    '''count samples in index order; sample i is rendered from seed ^ i.'''
    if count < 0:
        raise UsageError('sample count must be >= 0, got {0}'.format(count))
    if charset is None:
        charset = default_charset(cfg.charset_size)
    logger.info('rendering %d synthetic lines (seed %d)', count, seed)
    render = functools.partial(_render_indexed, cfg, int(seed), charset)
    return ordered_map(render, range(count), workers)


def split_samples(samples):
    '''Deterministic 9:1 split: every tenth sample goes to validation.'''
    train, val = [], []
    for index, sample in enumerate(samples):
        if index % VALIDATION_EVERY == VALIDATION_EVERY - 1:
            val.append(sample)
        else:
            train.append(sample)
    return train, val
