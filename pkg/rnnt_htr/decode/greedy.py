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

from rnnt_htr.constants import BLANK_ID, DecodeMode
from rnnt_htr.defaults import OPT_DECODE_MODE, OPT_MAX_SYMBOLS_PER_FRAME
from rnnt_htr.errors import ConfigError, UsageError
from rnnt_htr.model import encode_features, linguistic_initial_state, \
    linguistic_step, joint
from rnnt_htr.pool import ordered_map

logger = logging.getLogger(__name__)


class DecodeConfig(object):

    def __init__(self, mode=OPT_DECODE_MODE,
                 max_symbols_per_frame=OPT_MAX_SYMBOLS_PER_FRAME):
        try:
            self._mode = DecodeMode(mode)
        except ValueError:
            raise ConfigError('decode.mode must be one of {0}, got {1!r}'
                              .format(', '.join(m.value for m in DecodeMode),
                                      mode))
        try:
            self._max_symbols = int(max_symbols_per_frame)
        except (TypeError, ValueError):
            self._max_symbols = 0
        if self._max_symbols != max_symbols_per_frame or \
                self._max_symbols < 1:
            raise ConfigError('decode.max_symbols_per_frame must be an '
                              'integer >= 1, got {0!r}'.format(
                                  max_symbols_per_frame))

    mode = property(lambda self: self._mode)
    max_symbols_per_frame = property(lambda self: self._max_symbols)

    @property
    def emissions_per_frame(self):
        if self._mode is DecodeMode.PAPER_GREEDY:
            return 1
        return self._max_symbols

    def __repr__(self):
        return '%s(mode=%r, max_symbols_per_frame=%d)' % (
            self.__class__.__name__, self._mode.value, self._max_symbols)


class ModelScorer(object):
    '''Binds the search to a model: the context encoder and the joint.'''

    def __init__(self, params, config):
        self._params = params
        self._config = config

    def start(self):
        return linguistic_step(BLANK_ID, linguistic_initial_state(self._config),
                               self._params, self._config)

    def advance(self, label, state):
        return linguistic_step(label, state, self._params, self._config)

    def joint(self, f_t, g):
        return joint(f_t, g, self._params)


def greedy_search(features, scorer, decode_config=None):
    '''
    Frame-by-frame argmax search. The context starts from the blank and
    moves on only when a label is emitted. In paper_greedy mode each frame
    emits at most one label; multi_emit keeps scoring the same frame with
    the new context until a blank or the per-frame cap.
    '''
    decode_config = decode_config or DecodeConfig()
    if len(features) == 0:
        raise UsageError('cannot decode an empty feature sequence')
    cap = decode_config.emissions_per_frame
    g, state = scorer.start()
    labels = []
    for f_t in features:
        for _ in range(cap):
            # argmax returns the first maximum, so blank wins ties
            k = int(np.argmax(scorer.joint(f_t, g)))
            if k == BLANK_ID:
                break
            labels.append(k)
            g, state = scorer.advance(k, state)
    return tuple(labels)


def greedy_decode(features, params, config, decode_config=None):
    return greedy_search(features, ModelScorer(params, config), decode_config)


def _check_vocab(vocab, config):
    if len(vocab) != config.vocab_size:
        raise ConfigError('charset of {0} symbols for a model with K = {1}'
                          .format(len(vocab), config.vocab_size))


def decode_image(image, params, config, vocab, decode_config=None):
    '''Transcript of one canonical line image.'''
    _check_vocab(vocab, config)
    features = encode_features(image, params, config)
    labels = greedy_decode(features, params, config, decode_config)
    logger.debug('decoded %d frames into %d labels', len(features),
                 len(labels))
    return vocab.decode(labels)


def decode_batch(images, params, config, vocab, decode_config=None,
                 workers=1):
    '''decode_image over many images, in input order.'''
    _check_vocab(vocab, config)
    worker = functools.partial(decode_image, params=params, config=config,
                               vocab=vocab, decode_config=decode_config)
    return ordered_map(worker, images, workers)
