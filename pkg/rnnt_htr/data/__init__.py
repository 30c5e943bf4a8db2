#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from .files import open_text, makedirs
from .charset import Charset, load_charset, write_charset, \
    default_charset
from .glyphs import glyph_masks, glyph_bank
from .images import read_image, write_image, resize_to_height, affine_warp
from .sample import LineSample, preprocess
from .synth import SynthConfig, render_synthetic_line, synthesize_dataset, \
    split_samples
from .augment import augment
from .manifest import load_manifest, write_manifest
