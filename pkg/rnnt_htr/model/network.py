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
import logging

import numpy as np

from rnnt_htr.constants import BLANK_ID
from rnnt_htr.errors import UsageError, NumericError
from rnnt_htr.lattice import LogitLattice, rnnt_tables, rnnt_grad
from rnnt_htr.numerics import LstmState, affine_forward, affine_backward, \
    conv2d_forward, conv2d_backward, channel_norm_forward, \
    channel_norm_backward, relu_forward, relu_backward, max_pool_forward, \
    max_pool_backward, lstm_step, lstm_sequence_forward, \
    lstm_sequence_backward, dropout_mask, embedding_forward, \
    embedding_backward, log_softmax, log_softmax_backward
from rnnt_htr.model.params import linguistic_layer_names

logger = logging.getLogger(__name__)

LatticeCache = collections.namedtuple(
    'LatticeCache', ['config', 'visual', 'linguistic', 'joint', 'log_probs'])

DIRECTIONS = (('fwd', False), ('bwd', True))


def _add(grads, prefix, values):
    for key, value in values.items():
        grads[prefix + '.' + key] += value


def _check_image(image, config):
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2 or image.size == 0:
        raise UsageError('expected a non-empty grayscale image, got shape '
                         '{0}'.format(image.shape))
    if image.shape[0] != config.input_height:
        raise UsageError('image height {0} differs from the model input '
                         'height {1}'.format(image.shape[0],
                                             config.input_height))
    return image


def _check_labels(y, config):
    y = tuple(int(i) for i in y)
    for i in y:
        if not 1 <= i <= config.vocab_size:
            raise UsageError('label id {0} outside [1, {1}]'.format(
                i, config.vocab_size))
    return y


#
# visual feature encoder
#

def _visual_forward(image, params, config, rng):
    x = _check_image(image, config)[None]
    conv_caches = []
    for i, block in enumerate(config.conv_blocks):
        p = params.group('conv{0}'.format(i))
        x, conv = conv2d_forward(x, p['weight'], p['bias'])
        x, norm = channel_norm_forward(x, p['gain'], p['shift'])
        x, relu = relu_forward(x)
        x, pool = max_pool_forward(x, block.pool)
        conv_caches.append((conv, norm, relu, pool))

    seq = np.ascontiguousarray(x[:, 0, :].T)
    recurrent_caches = []
    for layer in range(config.recurrent_layers_visual):
        outputs, caches = [], []
        for direction, reverse in DIRECTIONS:
            p = params.group('visual.{0}{1}'.format(direction, layer))
            mask = dropout_mask(rng, config.hidden_size, config.dropout_rate)
            out, _, cache = lstm_sequence_forward(
                seq, p, mask=mask, layer_norm=config.layer_norm,
                reverse=reverse)
            outputs.append(out)
            caches.append(cache)
        seq = np.concatenate(outputs, axis=1)
        recurrent_caches.append(caches)

    proj = params.group('visual.proj')
    features = affine_forward(seq, proj['weight'], proj['bias'])
    return features, (conv_caches, recurrent_caches, seq)


def _visual_backward(grad_features, cache, params, config, grads):
    conv_caches, recurrent_caches, seq = cache
    proj = params.group('visual.proj')
    grad_seq, gw, gb = affine_backward(grad_features, seq, proj['weight'])
    _add(grads, 'visual.proj', {'weight': gw, 'bias': gb})

    hidden = config.hidden_size
    for layer in reversed(range(config.recurrent_layers_visual)):
        grad_in = 0.0
        for idx, (direction, _) in enumerate(DIRECTIONS):
            prefix = 'visual.{0}{1}'.format(direction, layer)
            part = grad_seq[:, idx * hidden:(idx + 1) * hidden]
            grad_x, g = lstm_sequence_backward(part, recurrent_caches[layer][idx],
                                               params.group(prefix))
            _add(grads, prefix, g)
            grad_in = grad_in + grad_x
        grad_seq = grad_in

    g = grad_seq.T[:, None, :]
    for i in reversed(range(len(config.conv_blocks))):
        conv, norm, relu, pool = conv_caches[i]
        g = max_pool_backward(g, pool)
        g = relu_backward(g, relu)
        g, g_gain, g_shift = channel_norm_backward(g, norm)
        g, g_weight, g_bias = conv2d_backward(g, conv)
        _add(grads, 'conv{0}'.format(i), {'weight': g_weight, 'bias': g_bias,
                                          'gain': g_gain, 'shift': g_shift})


def visual_encode(image, params, config):
    '''Feature sequence f (T x encoded_size) of a canonical line image.'''
    return _visual_forward(image, params, config, None)[0]


encode_features = visual_encode


#
# linguistic context encoder
#

def _linguistic_forward(y, params, config, rng):
    ids = np.asarray((BLANK_ID,) + _check_labels(y, config), dtype=np.intp)
    seq = embedding_forward(ids, params['embedding'])
    caches = []
    for name in linguistic_layer_names(config):
        mask = dropout_mask(rng, config.hidden_size, config.dropout_rate)
        seq, _, cache = lstm_sequence_forward(seq, params.group(name),
                                              mask=mask,
                                              layer_norm=config.layer_norm)
        caches.append(cache)
    proj = params.group('linguistic.proj')
    context = affine_forward(seq, proj['weight'], proj['bias'])
    return context, (ids, caches, seq)


def _linguistic_backward(grad_context, cache, params, config, grads):
    ids, caches, seq = cache
    proj = params.group('linguistic.proj')
    grad_seq, gw, gb = affine_backward(grad_context, seq, proj['weight'])
    _add(grads, 'linguistic.proj', {'weight': gw, 'bias': gb})
    names = linguistic_layer_names(config)
    for layer in reversed(range(len(names))):
        grad_seq, g = lstm_sequence_backward(grad_seq, caches[layer],
                                             params.group(names[layer]))
        _add(grads, names[layer], g)
    grads['embedding'] += embedding_backward(grad_seq, ids,
                                             params['embedding'].shape)


def linguistic_encode(y, params, config):
    '''Context vectors g_0..g_U for the inputs (blank, y_1, ..., y_U).'''
    return _linguistic_forward(y, params, config, None)[0]


def linguistic_initial_state(config):
    return tuple(LstmState.zeros(config.hidden_size)
                 for _ in range(config.recurrent_layers_linguistic))


def linguistic_step(prev_label, state, params, config):
    '''
    Feeds one extended id (blank starts the sequence) through the context
    encoder. Returns (g, new_state); state is a tuple of per-layer LstmState.
    '''
    prev_label = int(prev_label)
    if not 0 <= prev_label <= config.vocab_size:
        raise UsageError('label id {0} outside [0, {1}]'.format(
            prev_label, config.vocab_size))
    names = linguistic_layer_names(config)
    if len(state) != len(names):
        raise UsageError('state has {0} layers, the encoder {1}'.format(
            len(state), len(names)))
    x = params['embedding'][prev_label]
    new_state = []
    for name, layer_state in zip(names, state):
        x, layer_state = lstm_step(x, layer_state, params.group(name),
                                   layer_norm=config.layer_norm)
        new_state.append(layer_state)
    proj = params.group('linguistic.proj')
    return affine_forward(x, proj['weight'], proj['bias']), tuple(new_state)


#
# joint decoder
#

def joint(f_t, g_u, params):
    '''log_softmax(W_joint tanh(f_t + g_u + b)) over the K + 1 classes.'''
    f_t = np.asarray(f_t, dtype=np.float64)
    g_u = np.asarray(g_u, dtype=np.float64)
    bias = params['joint.bias']
    if f_t.shape != bias.shape or g_u.shape != bias.shape:
        raise UsageError('joint: vectors {0} and {1} for encoded size '
                         '{2}'.format(f_t.shape, g_u.shape, bias.shape[0]))
    hidden = np.tanh(f_t + g_u + bias)
    return log_softmax(np.dot(params['joint.weight'], hidden))


def _joint_forward(features, context, params):
    hidden = np.tanh(features[:, None, :] + context[None, :, :] +
                     params['joint.bias'])
    logits = np.dot(hidden, params['joint.weight'].T)
    return log_softmax(logits), hidden


def _joint_backward(grad_logits, hidden, params, grads):
    grads['joint.weight'] += np.einsum('tuk,tue->ke', grad_logits, hidden)
    grad_pre = np.dot(grad_logits, params['joint.weight']) * \
        (1.0 - hidden * hidden)
    grads['joint.bias'] += grad_pre.sum(axis=(0, 1))
    return grad_pre.sum(axis=1), grad_pre.sum(axis=0)


#
# whole model
#

def forward_lattice(image, y, params, config, rng=None):
    '''
    Lattice of log Pr(k | f_t, g_u) for one sample, plus what backward_pass
    needs. Passing a numpy Generator as rng enables recurrent dropout.
    '''
    features, visual = _visual_forward(image, params, config, rng)
    context, linguistic = _linguistic_forward(y, params, config, rng)
    log_probs, hidden = _joint_forward(features, context, params)
    cache = LatticeCache(config, visual, linguistic, hidden, log_probs)
    return LogitLattice(log_probs, check=False), cache


def backward_pass(grad, cache, params):
    '''
    Parameter gradients from a gradient on the lattice log-probabilities.
    Tensors the forward pass did not touch get exact zeros.
    '''
    if not isinstance(cache, LatticeCache):
        raise UsageError('backward_pass needs the cache of forward_lattice')
    grad = np.asarray(grad, dtype=np.float64)
    if grad.shape != cache.log_probs.shape:
        raise UsageError('gradient of shape {0} for a lattice of shape '
                         '{1}'.format(grad.shape, cache.log_probs.shape))
    grads = params.zeros_like()
    grad_logits = log_softmax_backward(grad, cache.log_probs)
    grad_features, grad_context = _joint_backward(grad_logits, cache.joint,
                                                  params, grads)
    _linguistic_backward(grad_context, cache.linguistic, params, cache.config,
                         grads)
    _visual_backward(grad_features, cache.visual, params, cache.config, grads)
    return grads


def loss_and_grad(image, y, params, config, rng=None):
    '''(L, dL/dparams) for L = -log Pr(y|x) of one sample.'''
    lat, cache = forward_lattice(image, y, params, config, rng)
    tables = rnnt_tables(lat, y)
    if not np.isfinite(tables.log_prob):
        raise NumericError('non-finite log-likelihood {0!r}'.format(
            tables.log_prob))
    return tables.loss, backward_pass(rnnt_grad(lat, y, tables), cache,
                                      params)
