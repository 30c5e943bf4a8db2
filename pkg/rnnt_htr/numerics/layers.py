#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import math

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from rnnt_htr.defaults import NORM_EPSILON
from rnnt_htr.errors import UsageError

# LSTM gate rows, in this order, in W (4H x I), U (4H x H) and b (4H):
# input, forget, candidate, output.
GATE_INPUT, GATE_FORGET, GATE_CANDIDATE, GATE_OUTPUT = range(4)
LSTM_TENSORS = ('W', 'U', 'b', 'ln_gain', 'ln_shift')


def sigmoid(x):
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def _check(cond, msg, *args):
    if not cond:
        raise UsageError(msg.format(*args))


#
# affine
#

def affine_forward(x, weights, bias):
    x = np.asarray(x, dtype=np.float64)
    _check(weights.ndim == 2 and x.shape[-1] == weights.shape[1],
           'affine: input of size {0} does not fit weights {1}',
           x.shape[-1], weights.shape)
    _check(bias.shape == (weights.shape[0],),
           'affine: bias {0} does not fit weights {1}', bias.shape,
           weights.shape)
    return np.dot(x, weights.T) + bias


def affine_backward(grad_out, x, weights):
    '''Returns (grad_input, grad_weights, grad_bias).'''
    x = np.asarray(x, dtype=np.float64)
    g2 = grad_out.reshape(-1, weights.shape[0])
    x2 = x.reshape(-1, weights.shape[1])
    _check(g2.shape[0] == x2.shape[0],
           'affine: gradient {0} does not fit cached input {1}',
           grad_out.shape, x.shape)
    grad_input = np.dot(g2, weights).reshape(x.shape)
    return grad_input, np.dot(g2.T, x2), g2.sum(axis=0)


#
# embedding
#

def embedding_forward(ids, table):
    ids = np.asarray(ids, dtype=np.int64)
    _check(ids.size == 0 or (ids.min() >= 0 and ids.max() < table.shape[0]),
           'embedding: ids out of range [0, {0})', table.shape[0])
    return table[ids]


def embedding_backward(grad_out, ids, table_shape):
    grad = np.zeros(table_shape)
    np.add.at(grad, np.asarray(ids, dtype=np.int64), grad_out)
    return grad


#
# normalization
#

def _normalize(x, eps):
    mean = x.mean(axis=-1, keepdims=True)
    centred = x - mean
    inv_std = 1.0 / np.sqrt((centred * centred).mean(axis=-1, keepdims=True)
                            + eps)
    return centred * inv_std, inv_std


def _normalize_backward(grad_xhat, xhat, inv_std):
    mean_g = grad_xhat.mean(axis=-1, keepdims=True)
    mean_gx = (grad_xhat * xhat).mean(axis=-1, keepdims=True)
    return inv_std * (grad_xhat - mean_g - xhat * mean_gx)


def layer_norm_forward(x, gain, shift, eps=NORM_EPSILON):
    x = np.asarray(x, dtype=np.float64)
    _check(x.shape[-1] >= 2, 'layer_norm: needs at least 2 features, got {0}',
           x.shape[-1])
    _check(gain.shape == (x.shape[-1],) and shift.shape == gain.shape,
           'layer_norm: gain/shift {0} do not fit input {1}', gain.shape,
           x.shape)
    xhat, inv_std = _normalize(x, eps)
    return xhat * gain + shift, (xhat, inv_std, gain)


def layer_norm(x, gain, shift, eps=NORM_EPSILON):
    return layer_norm_forward(x, gain, shift, eps)[0]


def layer_norm_backward(grad_out, cache):
    '''Returns (grad_input, grad_gain, grad_shift).'''
    xhat, inv_std, gain = cache
    lead = tuple(range(grad_out.ndim - 1))
    grad_gain = np.sum(grad_out * xhat, axis=lead)
    grad_shift = np.sum(grad_out, axis=lead)
    return _normalize_backward(grad_out * gain, xhat, inv_std), \
        grad_gain, grad_shift


def channel_norm_forward(x, gain, shift, eps=NORM_EPSILON):
    '''
    Normalizes every channel of one (C, H, W) sample over its own spatial
    extent, then applies a per-channel gain and shift. No batch statistics
    are involved, so a sample always normalizes the same way.
    '''
    c = x.shape[0]
    _check(gain.shape == (c,) and shift.shape == (c,),
           'channel_norm: gain/shift {0} do not fit {1} channels', gain.shape,
           c)
    xhat, inv_std = _normalize(x.reshape(c, -1), eps)
    out = xhat * gain[:, None] + shift[:, None]
    return out.reshape(x.shape), (xhat, inv_std, gain, x.shape)


def channel_norm_backward(grad_out, cache):
    xhat, inv_std, gain, shape = cache
    g = grad_out.reshape(shape[0], -1)
    grad_x = _normalize_backward(g * gain[:, None], xhat, inv_std)
    return grad_x.reshape(shape), np.sum(g * xhat, axis=1), np.sum(g, axis=1)


#
# convolution stack pieces
#

def conv2d_forward(x, weight, bias):
    '''Stride 1, zero "same" padding; x is (C, H, W), weight (O, C, k, k).'''
    out_c, in_c, kh, kw = weight.shape
    _check(x.ndim == 3 and x.shape[0] == in_c,
           'conv2d: input {0} does not fit weight {1}', x.shape, weight.shape)
    _check(kh == kw and kh % 2 == 1, 'conv2d: kernel must be odd and square')
    _check(bias.shape == (out_c,), 'conv2d: bias {0} for {1} channels',
           bias.shape, out_c)
    _, h, w = x.shape
    p = kh // 2
    padded = np.pad(x, ((0, 0), (p, p), (p, p)))
    windows = sliding_window_view(padded, (kh, kw), axis=(1, 2))
    cols = windows.transpose(1, 2, 0, 3, 4).reshape(h * w, in_c * kh * kw)
    out = np.dot(cols, weight.reshape(out_c, -1).T) + bias
    return out.T.reshape(out_c, h, w), (x.shape, cols, weight)


def conv2d_backward(grad_out, cache):
    '''Returns (grad_input, grad_weight, grad_bias).'''
    shape, cols, weight = cache
    out_c, in_c, k, _ = weight.shape
    c, h, w = shape
    p = k // 2
    g = grad_out.reshape(out_c, h * w)
    grad_weight = np.dot(g, cols).reshape(weight.shape)
    grad_bias = g.sum(axis=1)
    grad_cols = np.dot(g.T, weight.reshape(out_c, -1)).reshape(h, w, c, k, k)
    grad_padded = np.zeros((c, h + 2 * p, w + 2 * p))
    for i in range(k):
        for j in range(k):
            grad_padded[:, i:i + h, j:j + w] += \
                grad_cols[:, :, :, i, j].transpose(2, 0, 1)
    return grad_padded[:, p:p + h, p:p + w], grad_weight, grad_bias


def relu_forward(x):
    mask = x > 0
    return x * mask, mask


def relu_backward(grad_out, mask):
    return grad_out * mask


def pooled_extent(size, pool):
    return int(math.ceil(size / pool))


def max_pool_forward(x, pool):
    '''Ceil-mode max pooling of (C, H, W) with window == stride == pool.'''
    ph, pw = pool
    c, h, w = x.shape
    ho, wo = pooled_extent(h, ph), pooled_extent(w, pw)
    padded = np.full((c, ho * ph, wo * pw), -np.inf)
    padded[:, :h, :w] = x
    windows = padded.reshape(c, ho, ph, wo, pw).transpose(0, 1, 3, 2, 4) \
                    .reshape(c, ho, wo, ph * pw)
    # first maximum wins ties
    idx = np.argmax(windows, axis=-1)
    out = np.take_along_axis(windows, idx[..., None], axis=-1)[..., 0]
    return out, (x.shape, idx, pool)


def max_pool_backward(grad_out, cache):
    shape, idx, (ph, pw) = cache
    c, ho, wo = idx.shape
    grad_windows = np.zeros((c, ho, wo, ph * pw))
    np.put_along_axis(grad_windows, idx[..., None], grad_out[..., None],
                      axis=-1)
    grad = grad_windows.reshape(c, ho, wo, ph, pw).transpose(0, 1, 3, 2, 4) \
                       .reshape(c, ho * ph, wo * pw)
    return grad[:, :shape[1], :shape[2]]


#
# LSTM
#

class LstmState(object):

    def __init__(self, hidden, cell):
        if hidden.shape != cell.shape:
            raise UsageError('LstmState: hidden {0} and cell {1} differ'.format(
                hidden.shape, cell.shape))
        self._hidden = hidden
        self._cell = cell

    hidden = property(lambda self: self._hidden)
    cell = property(lambda self: self._cell)

    @classmethod
    def zeros(cls, size):
        return cls(np.zeros(size), np.zeros(size))

    def __repr__(self):
        return '<{0} size={1}>'.format(self.__class__.__name__,
                                       self._hidden.shape[0])


def _check_lstm(params, input_size, state):
    hidden = params['U'].shape[1]
    _check(params['W'].shape == (4 * hidden, input_size),
           'lstm: W {0} does not fit input size {1}', params['W'].shape,
           input_size)
    _check(state.hidden.shape == (hidden,),
           'lstm: state of size {0} for hidden size {1}',
           state.hidden.shape, hidden)


def _cell_forward(zx, state, params, mask, layer_norm):
    hsize = state.hidden.shape[0]
    h_in = state.hidden if mask is None else state.hidden * mask
    z = zx + np.dot(params['U'], h_in)
    ln_cache = None
    if layer_norm:
        z, ln_cache = layer_norm_forward(z, params['ln_gain'],
                                         params['ln_shift'])
    gates = sigmoid(z)
    i = gates[:hsize]
    f = gates[hsize:2 * hsize]
    o = gates[3 * hsize:]
    g = np.tanh(z[2 * hsize:3 * hsize])
    c = f * state.cell + i * g
    tc = np.tanh(c)
    h = o * tc
    return h, LstmState(h, c), (h_in, state.cell, i, f, g, o, tc, mask,
                                ln_cache)


def _cell_backward(grad_h, grad_c, cache, params):
    h_in, c_prev, i, f, g, o, tc, mask, ln_cache = cache
    dc = grad_c + grad_h * o * (1.0 - tc * tc)
    dz = np.concatenate([dc * g * i * (1.0 - i),
                         dc * c_prev * f * (1.0 - f),
                         dc * i * (1.0 - g * g),
                         grad_h * tc * o * (1.0 - o)])
    dgain = dshift = None
    if ln_cache is not None:
        dz, dgain, dshift = layer_norm_backward(dz, ln_cache)
    dh_in = np.dot(params['U'].T, dz)
    dh_prev = dh_in if mask is None else dh_in * mask
    return dz, dh_prev, dc * f, dgain, dshift


def _zero_lstm_grads(params):
    return dict((k, np.zeros_like(params[k])) for k in LSTM_TENSORS)


def lstm_step_forward(x, state, params, mask=None, layer_norm=False):
    x = np.asarray(x, dtype=np.float64)
    _check_lstm(params, x.shape[0], state)
    zx = np.dot(params['W'], x) + params['b']
    h, new_state, cell_cache = _cell_forward(zx, state, params, mask,
                                             layer_norm)
    return h, new_state, (x, cell_cache)


def lstm_step(x, state, params, mask=None, layer_norm=False):
    '''One LSTM step. Returns (output, new state); the input state is
    left untouched.'''
    h, new_state, _ = lstm_step_forward(x, state, params, mask, layer_norm)
    return h, new_state


def lstm_step_backward(grad_h, grad_c, cache, params):
    '''
    Backward through one step. grad_h is the gradient reaching the step's
    output (from above and from the next step), grad_c the one reaching its
    cell. Returns (grad_x, grad_h_prev, grad_c_prev, param grads).
    '''
    x, cell_cache = cache
    dz, dh_prev, dc_prev, dgain, dshift = _cell_backward(grad_h, grad_c,
                                                         cell_cache, params)
    grads = _zero_lstm_grads(params)
    grads['W'] = np.outer(dz, x)
    grads['U'] = np.outer(dz, cell_cache[0])
    grads['b'] = dz
    if dgain is not None:
        grads['ln_gain'], grads['ln_shift'] = dgain, dshift
    return np.dot(params['W'].T, dz), dh_prev, dc_prev, grads


def dropout_mask(rng, size, rate):
    '''Variational mask: one draw per sequence, rescaled by 1/(1-rate).'''
    if rng is None or rate <= 0.0:
        return None
    keep = 1.0 - rate
    return (rng.random(size) < keep) / keep


def lstm_sequence_forward(xs, params, state=None, mask=None, layer_norm=False,
                          reverse=False):
    '''
    Runs lstm_step over the rows of xs (T x I). The input projection of all
    steps is computed in one product. Returns (outputs T x H, final state,
    cache).
    '''
    xs = np.asarray(xs, dtype=np.float64)
    hsize = params['U'].shape[1]
    if state is None:
        state = LstmState.zeros(hsize)
    _check_lstm(params, xs.shape[1], state)
    zx = np.dot(xs, params['W'].T) + params['b']
    order = range(xs.shape[0] - 1, -1, -1) if reverse else range(xs.shape[0])
    outputs = np.zeros((xs.shape[0], hsize))
    caches = []
    for t in order:
        outputs[t], state, cell_cache = _cell_forward(zx[t], state, params,
                                                      mask, layer_norm)
        caches.append((t, cell_cache))
    return outputs, state, (xs, caches)


def lstm_sequence_backward(grad_outputs, cache, params):
    '''Backpropagation through time. Returns (grad_xs, param grads).'''
    xs, caches = cache
    hsize = params['U'].shape[1]
    grads = _zero_lstm_grads(params)
    dzs = np.zeros((xs.shape[0], 4 * hsize))
    h_ins = np.zeros((xs.shape[0], hsize))
    dh = np.zeros(hsize)
    dc = np.zeros(hsize)
    for t, cell_cache in reversed(caches):
        dz, dh, dc, dgain, dshift = _cell_backward(grad_outputs[t] + dh, dc,
                                                   cell_cache, params)
        dzs[t] = dz
        h_ins[t] = cell_cache[0]
        if dgain is not None:
            grads['ln_gain'] += dgain
            grads['ln_shift'] += dshift
    grads['W'] = np.dot(dzs.T, xs)
    grads['U'] = np.dot(dzs.T, h_ins)
    grads['b'] = dzs.sum(axis=0)
    return np.dot(dzs, params['W']), grads
