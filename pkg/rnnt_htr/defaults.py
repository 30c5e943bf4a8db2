#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import os, sys
from .version import RNNT_NAME

# defaults for the command-line options
OPT_OUTPUT = 'text'
OPT_PRETTY_PRINT = False
OPT_WORKERS = 1
OPT_VERBOSITY = 0
OPT_VERIFY_SCALE = 'default'
OPT_DECODE_DIRECTION = 'horizontal'
OPT_OUT_DIR = 'out'
OPT_OUTPUT_FORMATS = ('text', 'json', 'yaml')

# model section (desk-scale S1)
OPT_CONV_BLOCKS = [[8, 3, [2, 2]], [16, 3, [4, 2]], [32, 3, [4, 1]]]
OPT_RECURRENT_LAYERS_VISUAL = 1
OPT_RECURRENT_LAYERS_LINGUISTIC = 1
OPT_HIDDEN_SIZE = 64
OPT_EMBED_SIZE = 32
OPT_ENCODED_SIZE = 64
OPT_VOCAB_SIZE = 12
OPT_INPUT_HEIGHT = 32
OPT_DROPOUT_RATE = 0.0
OPT_LAYER_NORM = False

# train section
OPT_BATCH_SIZE = 16
OPT_EPOCHS = 30
OPT_BASE_LR = 2e-4
OPT_WARMUP_EPOCHS = 1
OPT_SEED = 0
OPT_GRAD_CLIP_NORM = 5.0
OPT_AUGMENT_STRENGTH = 0.5
OPT_CHECKPOINT_DIR = 'checkpoints'
OPT_LOG_WALL_TIME = False

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPSILON = 1e-8

# synth section
OPT_SYNTH_SAMPLES = 2200
OPT_CHARSET_SIZE = 12
OPT_GLYPH_CELL = 20
OPT_MIN_LENGTH = 1
OPT_MAX_LENGTH = 8
OPT_SPACING = [1, 4]
OPT_ROTATION = 2.0
OPT_SCALE_RANGE = [0.95, 1.05]
OPT_SHEAR_RANGE = 0.05
OPT_NOISE_SIGMA = 0.03
OPT_CANVAS_HEIGHT = 32
OPT_SYNTH_DIRECTION = 'horizontal'

# decode section
OPT_DECODE_MODE = 'paper_greedy'
OPT_MAX_SYMBOLS_PER_FRAME = 3

# numerics
LOG_ZERO = float('-inf')
NORM_EPSILON = 1e-5
FORGET_GATE_BIAS = 1.0
EMBEDDING_INIT_RANGE = 0.1

# lattice
ENUMERATION_LIMIT = 12

# data
GLYPH_GRID = 5
GLYPH_MIN_HAMMING = 5
GLYPH_SEED = 20210901
VALIDATION_EVERY = 10
TOY_ALPHABET = ('ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz'
                '0123456789')

# files
CHECKPOINT_SUFFIX = '.ckpt'
BEST_CHECKPOINT = 'best' + CHECKPOINT_SUFFIX
METRICS_LOG = 'metrics.tsv'
CHARSET_FILE = 'charset.txt'
TRAIN_MANIFEST = 'train.tsv'
VAL_MANIFEST = 'val.tsv'
IMAGE_DIR = 'images'

CONFIG_FILE_SEARCH_PATH = [os.getcwd(),
                           os.path.expanduser('~'),
                           os.path.dirname(sys.argv[0])
                          ]
CONFIG_FILE_NAME = RNNT_NAME + '-config.json'
