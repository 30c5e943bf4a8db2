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

from rnnt_htr.constants import BLANK_ID
from rnnt_htr.defaults import LOG_ZERO
from rnnt_htr.errors import UsageError
from rnnt_htr.numerics import log_add, log_softmax_backward
from rnnt_htr.lattice.alignment import LogitLattice, check_labels


class AlphaBetaTables(collections.namedtuple('AlphaBetaTables',
                                             ['alpha', 'beta', 'log_prob'])):
    '''
    Forward and backward log-mass over the T x (U+1) nodes. alpha[t, u] is
    the mass of every prefix reaching (t, u); beta[t, u] the mass of every
    suffix leaving it, including its final blank.
    '''
    __slots__ = ()

    loss = property(lambda self: -self.log_prob)


def _transitions(lat, y):
    values = lat.values
    blank = values[:, :, BLANK_ID]
    label = np.full((lat.frames, lat.rows), LOG_ZERO)
    if y:
        u = np.arange(len(y))
        label[:, :-1] = values[:, u, np.asarray(y)]
    return blank, label


def _alpha(blank, label):
    frames, rows = blank.shape
    alpha = np.full((frames, rows), LOG_ZERO)
    alpha[0, 0] = 0.0
    for u in range(1, rows):
        alpha[0, u] = alpha[0, u - 1] + label[0, u - 1]
    for t in range(1, frames):
        down = alpha[t - 1] + blank[t - 1]
        alpha[t, 0] = down[0]
        for u in range(1, rows):
            alpha[t, u] = log_add(down[u], alpha[t, u - 1] +
                                  label[t, u - 1])
    return alpha


def _beta(blank, label):
    frames, rows = blank.shape
    beta = np.full((frames, rows), LOG_ZERO)
    beta[-1, -1] = blank[-1, -1]
    for u in range(rows - 2, -1, -1):
        beta[-1, u] = beta[-1, u + 1] + label[-1, u]
    for t in range(frames - 2, -1, -1):
        up = beta[t + 1] + blank[t]
        beta[t, -1] = up[-1]
        for u in range(rows - 2, -1, -1):
            beta[t, u] = log_add(up[u], beta[t, u + 1] + label[t, u])
    return beta


def rnnt_forward(lat, y):
    y = check_labels(lat, y)
    blank, label = _transitions(lat, y)
    alpha = _alpha(blank, label)
    return AlphaBetaTables(alpha, None, float(alpha[-1, -1] + blank[-1, -1]))


def rnnt_backward(lat, y):
    y = check_labels(lat, y)
    return _beta(*_transitions(lat, y))


def rnnt_tables(lat, y):
    '''Both tables and log Pr(y|x) in one pass over the label transitions.'''
    y = check_labels(lat, y)
    blank, label = _transitions(lat, y)
    alpha = _alpha(blank, label)
    return AlphaBetaTables(alpha, _beta(blank, label),
                           float(alpha[-1, -1] + blank[-1, -1]))


def transition_posteriors(lat, y, tables=None):
    '''
    Posterior probability gamma[t, u, k] that a path takes transition k out
    of node (t, u). Only the blank and the next label are ever non-zero.
    '''
    y = check_labels(lat, y)
    if tables is None or tables.beta is None:
        tables = rnnt_tables(lat, y)
    if not np.isfinite(tables.log_prob):
        raise UsageError('label sequence has zero probability under the '
                         'lattice')
    alpha, beta, log_prob = tables
    blank, label = _transitions(lat, y)

    after_blank = np.full(alpha.shape, LOG_ZERO)
    after_blank[:-1] = beta[1:]
    after_blank[-1, -1] = 0.0
    after_label = np.full(alpha.shape, LOG_ZERO)
    after_label[:, :-1] = beta[:, 1:]

    gamma = np.zeros(lat.values.shape)
    gamma[:, :, BLANK_ID] = np.exp(alpha + blank + after_blank - log_prob)
    if y:
        t = np.arange(lat.frames)[:, None]
        u = np.arange(len(y))[None, :]
        gamma[t, u, np.asarray(y)[None, :]] = np.exp(
            alpha[:, :-1] + label[:, :-1] + after_label[:, :-1] - log_prob)
    return gamma


def rnnt_grad(lat, y, tables=None):
    '''dL/dvalues for L = -log Pr(y|x).'''
    return -transition_posteriors(lat, y, tables)


def rnnt_logit_grad(log_probs, grad):
    '''Chains a gradient on log-probabilities back through log_softmax.'''
    if isinstance(log_probs, LogitLattice):
        log_probs = log_probs.values
    return log_softmax_backward(grad, log_probs)


def rnnt_loss_and_grad(logits, y):
    '''Loss and its gradient with respect to raw joint logits (T x U+1 x K+1).'''
    lat = LogitLattice.from_logits(logits)
    tables = rnnt_tables(lat, y)
    grad = rnnt_grad(lat, y, tables)
    return tables.loss, rnnt_logit_grad(lat, grad)
