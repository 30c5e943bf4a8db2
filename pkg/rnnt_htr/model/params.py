#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import collections

import numpy as np

from rnnt_htr.defaults import OPT_CONV_BLOCKS, OPT_RECURRENT_LAYERS_VISUAL, \
    OPT_RECURRENT_LAYERS_LINGUISTIC, OPT_HIDDEN_SIZE, OPT_EMBED_SIZE, \
    OPT_ENCODED_SIZE, OPT_VOCAB_SIZE, OPT_INPUT_HEIGHT, OPT_DROPOUT_RATE, \
    OPT_LAYER_NORM, FORGET_GATE_BIAS, EMBEDDING_INIT_RANGE
from rnnt_htr.errors import ConfigError, UnknownConfigKeyError, UsageError
from rnnt_htr.numerics import pooled_extent
from rnnt_htr.numerics.layers import LSTM_TENSORS

ConvBlock = collections.namedtuple('ConvBlock',
                                   ['out_channels', 'kernel', 'pool'])


def _count(name, value, minimum=1):
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigError('model.{0}: expected an integer, got {1!r}'.format(
            name, value))
    if number != value or number < minimum:
        raise ConfigError('model.{0} must be an integer >= {1}, got '
                          '{2!r}'.format(name, minimum, value))
    return number


def _conv_block(index, entry):
    try:
        out_channels, kernel, pool = entry
    except (TypeError, ValueError):
        raise ConfigError('model.conv_blocks[{0}]: expected [channels, '
                          'kernel, pool], got {1!r}'.format(index, entry))
    if isinstance(pool, (list, tuple)):
        if len(pool) != 2:
            raise ConfigError('model.conv_blocks[{0}]: pool must be '
                              '[height, width]'.format(index))
        pool = tuple(pool)
    else:
        pool = (pool, pool)
    where = 'conv_blocks[{0}]'.format(index)
    block = ConvBlock(_count(where, out_channels),
                      _count(where, kernel),
                      (_count(where, pool[0]), _count(where, pool[1])))
    if block.kernel % 2 != 1:
        raise ConfigError('model.{0}: kernel size must be odd, got '
                          '{1}'.format(where, block.kernel))
    return block


class ModelConfig(object):
    '''
    Layer sizes of the three networks. The conv stack has to collapse
    input_height to exactly one row; its width pooling fixes the frame rate.
    '''

    def __init__(self, conv_blocks=OPT_CONV_BLOCKS,
                 recurrent_layers_visual=OPT_RECURRENT_LAYERS_VISUAL,
                 recurrent_layers_linguistic=OPT_RECURRENT_LAYERS_LINGUISTIC,
                 hidden_size=OPT_HIDDEN_SIZE, embed_size=OPT_EMBED_SIZE,
                 encoded_size=OPT_ENCODED_SIZE, vocab_size=OPT_VOCAB_SIZE,
                 input_height=OPT_INPUT_HEIGHT, dropout_rate=OPT_DROPOUT_RATE,
                 layer_norm=OPT_LAYER_NORM):
        if not conv_blocks:
            raise ConfigError('model.conv_blocks must not be empty')
        self._conv_blocks = tuple(_conv_block(i, b)
                                  for i, b in enumerate(conv_blocks))
        self._visual_layers = _count('recurrent_layers_visual',
                                     recurrent_layers_visual)
        self._linguistic_layers = _count('recurrent_layers_linguistic',
                                         recurrent_layers_linguistic)
        self._hidden_size = _count('hidden_size', hidden_size)
        self._embed_size = _count('embed_size', embed_size)
        self._encoded_size = _count('encoded_size', encoded_size)
        self._vocab_size = _count('vocab_size', vocab_size)
        self._input_height = _count('input_height', input_height)
        self._dropout_rate = float(dropout_rate)
        if not 0.0 <= self._dropout_rate < 1.0:
            raise ConfigError('model.dropout_rate must lie in [0, 1), got '
                              '{0!r}'.format(dropout_rate))
        if not isinstance(layer_norm, bool):
            raise ConfigError('model.layer_norm must be true or false')
        self._layer_norm = layer_norm

        height = self._input_height
        for block in self._conv_blocks:
            height = pooled_extent(height, block.pool[0])
        if height != 1:
            raise ConfigError('model.conv_blocks reduce an input height of '
                              '{0} to {1}, not 1'.format(self._input_height,
                                                         height))

    conv_blocks = property(lambda self: self._conv_blocks)
    recurrent_layers_visual = property(lambda self: self._visual_layers)
    recurrent_layers_linguistic = property(
        lambda self: self._linguistic_layers)
    hidden_size = property(lambda self: self._hidden_size)
    embed_size = property(lambda self: self._embed_size)
    encoded_size = property(lambda self: self._encoded_size)
    vocab_size = property(lambda self: self._vocab_size)
    input_height = property(lambda self: self._input_height)
    dropout_rate = property(lambda self: self._dropout_rate)
    layer_norm = property(lambda self: self._layer_norm)

    @property
    def width_downsample(self):
        factor = 1
        for block in self._conv_blocks:
            factor *= block.pool[1]
        return factor

    def frames_for(self, width):
        '''Number of feature frames T for an image of the given width.'''
        if width < 1:
            raise UsageError('image width must be positive, got {0}'.format(
                width))
        for block in self._conv_blocks:
            width = pooled_extent(width, block.pool[1])
        return width

    def as_dict(self):
        return {'conv_blocks': [[b.out_channels, b.kernel, list(b.pool)]
                                for b in self._conv_blocks],
                'recurrent_layers_visual': self._visual_layers,
                'recurrent_layers_linguistic': self._linguistic_layers,
                'hidden_size': self._hidden_size,
                'embed_size': self._embed_size,
                'encoded_size': self._encoded_size,
                'vocab_size': self._vocab_size,
                'input_height': self._input_height,
                'dropout_rate': self._dropout_rate,
                'layer_norm': self._layer_norm}

    @classmethod
    def from_dict(cls, values):
        known = cls().as_dict()
        for key in values:
            if key not in known:
                raise UnknownConfigKeyError('model', key)
        return cls(**values)

    def replace(self, **changes):
        values = self.as_dict()
        values.update(changes)
        return self.from_dict(values)

    def __eq__(self, rhs):
        return isinstance(rhs, ModelConfig) and \
            self.as_dict() == rhs.as_dict()

    def __ne__(self, rhs):
        return not self.__eq__(rhs)

    def __repr__(self):
        return '%s(%r)' % (self.__class__.__name__, self.as_dict())


class ModelParams(object):
    '''
    Named parameter tensors in a fixed order. Names are dotted paths such as
    "visual.fwd0.W"; group() returns the tensors under one prefix keyed by
    the last component.
    '''

    def __init__(self, tensors=None):
        self._tensors = collections.OrderedDict()
        for name, value in (tensors or []):
            self._tensors[name] = np.asarray(value, dtype=np.float64)

    names = property(lambda self: list(self._tensors.keys()))

    def __getitem__(self, name):
        try:
            return self._tensors[name]
        except KeyError:
            raise UsageError('no parameter named {0!r}'.format(name))

    def __setitem__(self, name, value):
        self._tensors[name] = value

    def __contains__(self, name):
        return name in self._tensors

    def __iter__(self):
        return iter(self._tensors)

    def __len__(self):
        return len(self._tensors)

    def items(self):
        return self._tensors.items()

    def group(self, prefix):
        prefix = prefix + '.'
        return dict((name[len(prefix):], value)
                    for name, value in self._tensors.items()
                    if name.startswith(prefix) and
                    '.' not in name[len(prefix):])

    def zeros_like(self):
        return ModelParams((name, np.zeros_like(value))
                           for name, value in self._tensors.items())

    def copy(self):
        return ModelParams((name, value.copy())
                           for name, value in self._tensors.items())

    def accumulate(self, other):
        '''In-place sum with a structurally identical ModelParams.'''
        for name, value in other.items():
            self[name] += value
        return self

    def scale(self, factor):
        for value in self._tensors.values():
            value *= factor
        return self

    def global_norm(self):
        return float(np.sqrt(sum(np.sum(v * v)
                                 for v in self._tensors.values())))

    def non_finite(self):
        return [name for name, value in self._tensors.items()
                if not np.all(np.isfinite(value))]

    def shapes(self):
        return collections.OrderedDict((name, value.shape)
                                       for name, value in self._tensors.items())

    def __eq__(self, rhs):
        if not isinstance(rhs, ModelParams) or self.names != rhs.names:
            return False
        return all(np.array_equal(v, rhs[k]) for k, v in self.items())

    def __ne__(self, rhs):
        return not self.__eq__(rhs)

    def __repr__(self):
        return '<{0} tensors={1} values={2}>'.format(
            self.__class__.__name__, len(self._tensors),
            sum(v.size for v in self._tensors.values()))


def linguistic_layer_names(config):
    return ['linguistic.lstm{0}'.format(layer)
            for layer in range(config.recurrent_layers_linguistic)]


def _glorot(rng, shape, fan_in, fan_out):
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, shape)


def _lstm_tensors(rng, input_size, hidden):
    b = np.zeros(4 * hidden)
    # gate order is input, forget, candidate, output
    b[hidden:2 * hidden] = FORGET_GATE_BIAS
    values = {'W': _glorot(rng, (4 * hidden, input_size), input_size,
                           4 * hidden),
              'U': _glorot(rng, (4 * hidden, hidden), hidden, 4 * hidden),
              'b': b,
              'ln_gain': np.ones(4 * hidden),
              'ln_shift': np.zeros(4 * hidden)}
    return [(k, values[k]) for k in LSTM_TENSORS]


def init_params(config, seed):
    '''Deterministic initial parameters for config; seed fixes every draw.'''
    rng = np.random.default_rng(seed)
    tensors = []
    channels = 1
    for i, block in enumerate(config.conv_blocks):
        k = block.kernel
        shape = (block.out_channels, channels, k, k)
        prefix = 'conv{0}.'.format(i)
        tensors.append((prefix + 'weight',
                        _glorot(rng, shape, channels * k * k,
                                block.out_channels * k * k)))
        tensors.append((prefix + 'bias', np.zeros(block.out_channels)))
        tensors.append((prefix + 'gain', np.ones(block.out_channels)))
        tensors.append((prefix + 'shift', np.zeros(block.out_channels)))
        channels = block.out_channels

    hidden = config.hidden_size
    encoded = config.encoded_size
    size = channels
    for layer in range(config.recurrent_layers_visual):
        for direction in ('fwd', 'bwd'):
            prefix = 'visual.{0}{1}.'.format(direction, layer)
            tensors.extend((prefix + k, v)
                           for k, v in _lstm_tensors(rng, size, hidden))
        size = 2 * hidden
    tensors.append(('visual.proj.weight',
                    _glorot(rng, (encoded, size), size, encoded)))
    tensors.append(('visual.proj.bias', np.zeros(encoded)))

    classes = config.vocab_size + 1
    tensors.append(('embedding', rng.uniform(-EMBEDDING_INIT_RANGE,
                                             EMBEDDING_INIT_RANGE,
                                             (classes, config.embed_size))))
    size = config.embed_size
    for name in linguistic_layer_names(config):
        tensors.extend((name + '.' + k, v)
                       for k, v in _lstm_tensors(rng, size, hidden))
        size = hidden
    tensors.append(('linguistic.proj.weight',
                    _glorot(rng, (encoded, size), size, encoded)))
    tensors.append(('linguistic.proj.bias', np.zeros(encoded)))

    tensors.append(('joint.bias', np.zeros(encoded)))
    tensors.append(('joint.weight',
                    _glorot(rng, (classes, encoded), encoded, classes)))
    return ModelParams(tensors)


def check_params(params, config):
    '''Names and shapes of params must be exactly those init_params builds.'''
    expected = init_params(config, 0).shapes()
    found = params.shapes()
    if list(expected.keys()) != list(found.keys()):
        missing = [k for k in expected if k not in found]
        extra = [k for k in found if k not in expected]
        raise UsageError('parameter set does not fit the model configuration '
                         '(missing {0}, unexpected {1})'.format(missing, extra))
    for name, shape in expected.items():
        if found[name] != shape:
            raise UsageError('parameter {0} has shape {1}, expected '
                             '{2}'.format(name, found[name], shape))
