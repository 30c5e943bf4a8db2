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

from rnnt_htr.defaults import LOG_ZERO
from rnnt_htr.errors import UsageError, NumericError


def logsumexp(values):
    '''
    log(sum(exp(values))) for a non-empty vector, max-shifted so that inputs
    down to the bottom of the float64 exp range do not underflow to zero.
    -inf is the additive identity; the result is -inf iff every input is.
    '''
    v = np.asarray(values, dtype=np.float64).ravel()
    if v.size == 0:
        raise UsageError('logsumexp needs at least one value')
    m = np.max(v)
    if np.isinf(m):
        return float(m)
    return float(m + np.log(np.sum(np.exp(v - m))))


def log_add(a, b):
    if a == LOG_ZERO:
        return b
    if b == LOG_ZERO:
        return a
    if a > b:
        return a + math.log1p(math.exp(b - a))
    return b + math.log1p(math.exp(a - b))


def log_softmax(logits, axis=-1):
    z = np.asarray(logits, dtype=np.float64)
    if not np.all(np.isfinite(z)):
        raise NumericError('log_softmax received non-finite logits')
    shifted = z - np.max(z, axis=axis, keepdims=True)
    return shifted - np.log(np.sum(np.exp(shifted), axis=axis, keepdims=True))


def log_softmax_backward(grad_out, log_probs, axis=-1):
    '''Gradient with respect to the logits, given one w.r.t. the outputs.'''
    total = np.sum(grad_out, axis=axis, keepdims=True)
    return grad_out - np.exp(log_probs) * total
