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

import numpy as np
from PIL import Image

from rnnt_htr.defaults import GLYPH_GRID, GLYPH_MIN_HAMMING, GLYPH_SEED, \
    OPT_GLYPH_CELL
from rnnt_htr.errors import ConfigError

MAX_DRAWS_PER_GLYPH = 1000
MIN_INK = GLYPH_GRID


def glyph_masks(size, seed=GLYPH_SEED):
    '''
    `size` binary GRID x GRID masks, pairwise at least GLYPH_MIN_HAMMING
    cells apart. Drawn from one generator in order, so mask k does not
    depend on how many masks are asked for.
    '''
    rng = np.random.default_rng(seed)
    masks = []
    draws = 0
    while len(masks) < size:
        draws += 1
        if draws > MAX_DRAWS_PER_GLYPH * size:
            raise ConfigError('cannot draw {0} separable glyphs'.format(size))
        mask = rng.random((GLYPH_GRID, GLYPH_GRID)) < 0.5
        if mask.sum() < MIN_INK:
            continue
        if all(np.count_nonzero(mask != m) >= GLYPH_MIN_HAMMING
               for m in masks):
            masks.append(mask)
    return masks


@functools.lru_cache(maxsize=8)
def _bank(size, cell, seed):
    glyphs = np.zeros((size, cell, cell))
    for k, mask in enumerate(glyph_masks(size, seed)):
        small = Image.fromarray(mask.astype(np.uint8) * 255)
        big = small.resize((cell, cell), Image.NEAREST)
        glyphs[k] = np.asarray(big, dtype=np.float64) / 255.0
    glyphs.setflags(write=False)
    return glyphs


def glyph_bank(size, cell=OPT_GLYPH_CELL, seed=GLYPH_SEED):
    '''
    Bitmaps (size x cell x cell, ink 1.0 on 0.0) for label ids 1..size;
    row k - 1 draws label k. The result is shared and read-only.
    '''
    if cell < GLYPH_GRID:
        raise ConfigError('glyph cell of {0} pixels is smaller than the '
                          '{1}x{1} glyph grid'.format(cell, GLYPH_GRID))
    return _bank(int(size), int(cell), int(seed))
