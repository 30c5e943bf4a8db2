#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import copy
import os

import rnnt_htr.defaults as defaults
from rnnt_htr.data import SynthConfig
from rnnt_htr.decode import DecodeConfig
from rnnt_htr.errors import ConfigError, UnknownConfigKeyError
from rnnt_htr.model import ModelConfig
from rnnt_htr.train import TrainConfig

# keys of the synth section that are not SynthConfig fields
_SYNTH_RUN_KEYS = ('samples', 'seed')


class Settings(object):
    '''
    The RunConfig document: one section per module, every key defaulted.
    Path values that are None fall back to names under paths.out_dir.
    '''

    known_opts = {
        'model': {
            'conv_blocks': defaults.OPT_CONV_BLOCKS,
            'recurrent_layers_visual': defaults.OPT_RECURRENT_LAYERS_VISUAL,
            'recurrent_layers_linguistic':
                defaults.OPT_RECURRENT_LAYERS_LINGUISTIC,
            'hidden_size': defaults.OPT_HIDDEN_SIZE,
            'embed_size': defaults.OPT_EMBED_SIZE,
            'encoded_size': defaults.OPT_ENCODED_SIZE,
            'vocab_size': defaults.OPT_VOCAB_SIZE,
            'input_height': defaults.OPT_INPUT_HEIGHT,
            'dropout_rate': defaults.OPT_DROPOUT_RATE,
            'layer_norm': defaults.OPT_LAYER_NORM,
        },
        'train': {
            'batch_size': defaults.OPT_BATCH_SIZE,
            'epochs': defaults.OPT_EPOCHS,
            'base_lr': defaults.OPT_BASE_LR,
            'warmup_epochs': defaults.OPT_WARMUP_EPOCHS,
            'seed': defaults.OPT_SEED,
            'grad_clip_norm': defaults.OPT_GRAD_CLIP_NORM,
            'augment_strength': defaults.OPT_AUGMENT_STRENGTH,
            'checkpoint_dir': defaults.OPT_CHECKPOINT_DIR,
            'log_wall_time': defaults.OPT_LOG_WALL_TIME,
        },
        'synth': {
            'samples': defaults.OPT_SYNTH_SAMPLES,
            'seed': defaults.OPT_SEED,
            'charset_size': defaults.OPT_CHARSET_SIZE,
            'glyph_cell': defaults.OPT_GLYPH_CELL,
            'min_length': defaults.OPT_MIN_LENGTH,
            'max_length': defaults.OPT_MAX_LENGTH,
            'spacing': defaults.OPT_SPACING,
            'rotation': defaults.OPT_ROTATION,
            'scale_range': defaults.OPT_SCALE_RANGE,
            'shear_range': defaults.OPT_SHEAR_RANGE,
            'noise_sigma': defaults.OPT_NOISE_SIGMA,
            'canvas_height': defaults.OPT_CANVAS_HEIGHT,
            'direction': defaults.OPT_SYNTH_DIRECTION,
        },
        'decode': {
            'mode': defaults.OPT_DECODE_MODE,
            'max_symbols_per_frame': defaults.OPT_MAX_SYMBOLS_PER_FRAME,
        },
        'paths': {
            'out_dir': defaults.OPT_OUT_DIR,
            'charset': None,
            'train_manifest': None,
            'val_manifest': None,
            'manifest': None,
            'checkpoint': None,
        },
    }

    def __init__(self, options={}):
        if options is None:
            options = {}
        if not isinstance(options, dict):
            raise ConfigError('configuration must be a mapping of sections, '
                              'got {0}'.format(type(options).__name__))
        for section in options:
            if section not in self.known_opts:
                raise UnknownConfigKeyError(None, section)
        for section, known in self.known_opts.items():
            given = options.get(section) or {}
            if not isinstance(given, dict):
                raise ConfigError('configuration section {0!r} must be a '
                                  'mapping'.format(section))
            for key in given:
                if key not in known:
                    raise UnknownConfigKeyError(section, key)
            values = copy.deepcopy(known)
            values.update(copy.deepcopy(given))
            setattr(self, section, values)

    def set(self, section, key, value):
        '''Command-line override; None leaves the configured value.'''
        if value is None:
            return
        values = getattr(self, section, None)
        if values is None or key not in values:
            raise UnknownConfigKeyError(section, key)
        values[key] = value

    def model_config(self):
        return ModelConfig.from_dict(self.model)

    def train_config(self):
        '''TrainConfig with a relative checkpoint_dir placed under out_dir.'''
        values = dict(self.train)
        directory = values['checkpoint_dir']
        if directory and not os.path.isabs(directory):
            values['checkpoint_dir'] = os.path.join(self.paths['out_dir'],
                                                    directory)
        return TrainConfig.from_dict(values)

    def synth_config(self):
        return SynthConfig.from_dict(dict(
            (k, v) for k, v in self.synth.items()
            if k not in _SYNTH_RUN_KEYS))

    def decode_config(self):
        return DecodeConfig(**self.decode)

    def _path(self, key, default_name):
        path = self.paths[key]
        if path:
            return path
        return os.path.join(self.paths['out_dir'], default_name)

    def charset_path(self):
        return self._path('charset', defaults.CHARSET_FILE)

    def train_manifest_path(self):
        return self._path('train_manifest', defaults.TRAIN_MANIFEST)

    def val_manifest_path(self):
        return self._path('val_manifest', defaults.VAL_MANIFEST)

    def eval_manifest_path(self):
        return self.paths['manifest'] or self.val_manifest_path()

    def checkpoint_path(self):
        if self.paths['checkpoint']:
            return self.paths['checkpoint']
        return os.path.join(self.train_config().checkpoint_dir,
                            defaults.BEST_CHECKPOINT)

    def as_dict(self):
        return dict((section, copy.deepcopy(getattr(self, section)))
                    for section in self.known_opts)

    def __eq__(self, other):
        if isinstance(other, type(self)):
            return all(getattr(self, section) == getattr(other, section)
                       for section in self.known_opts)
        return False

    def __ne__(self, other):
        return not self.__eq__(other)
