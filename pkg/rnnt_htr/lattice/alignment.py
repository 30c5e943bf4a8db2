#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import itertools

import numpy as np

from rnnt_htr.constants import BLANK_ID
from rnnt_htr.defaults import ENUMERATION_LIMIT
from rnnt_htr.errors import UsageError
from rnnt_htr.numerics import logsumexp, log_softmax

NORMALIZATION_TOLERANCE = 1e-9


class LogitLattice(object):
    '''
    Log-probabilities over the extended label set at every lattice node:
    values[t, u, k] = log Pr(k | f_t, g_u), with t in [0, T), u in [0, U]
    and k in [0, K], blank at k = 0.
    '''

    def __init__(self, values, check=True):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 3 or values.shape[0] < 1 or values.shape[2] < 2:
            raise UsageError('a lattice needs shape T x (U+1) x (K+1) with '
                             'T >= 1 and K >= 1, got {0}'.format(values.shape))
        self._values = values
        if check:
            mass = np.exp(values).sum(axis=-1)
            worst = np.max(np.abs(mass - 1.0))
            if not worst <= NORMALIZATION_TOLERANCE:
                raise UsageError('lattice slices are not normalized (worst '
                                 'deviation {0:g})'.format(worst))

    values = property(lambda self: self._values)
    frames = property(lambda self: self._values.shape[0])
    rows = property(lambda self: self._values.shape[1])
    classes = property(lambda self: self._values.shape[2])
    labels = property(lambda self: self._values.shape[1] - 1)

    @classmethod
    def from_logits(cls, logits):
        return cls(log_softmax(logits), check=False)

    def __repr__(self):
        return '<{0} T={1} U={2} K={3}>'.format(
            self.__class__.__name__, self.frames, self.labels,
            self.classes - 1)


def check_labels(lat, y):
    y = tuple(int(i) for i in y)
    if len(y) != lat.labels:
        raise UsageError('label sequence of length {0} for a lattice with '
                         'U = {1}'.format(len(y), lat.labels))
    for i in y:
        if not 1 <= i < lat.classes:
            raise UsageError('label id {0} outside [1, {1}]'.format(
                i, lat.classes - 1))
    return y


def remove_blanks(alignment, vocab_size):
    '''
    The map from an alignment to its label sequence: drops every blank.
    Ids must lie in [0, vocab_size].
    '''
    out = []
    for i in alignment:
        if not 0 <= i <= vocab_size:
            raise UsageError('alignment id {0} outside [0, {1}]'.format(
                i, vocab_size))
        if i != BLANK_ID:
            out.append(i)
    return tuple(out)


def _guard(frames, y):
    if frames < 1:
        raise UsageError('need at least one frame, got {0}'.format(frames))
    if frames + len(y) > ENUMERATION_LIMIT:
        raise UsageError('refusing to enumerate alignments for T + U = {0} '
                         '(limit {1})'.format(frames + len(y),
                                              ENUMERATION_LIMIT))


def enumerate_alignments(frames, y):
    '''
    Every alignment of y over T frames: sequences of length T + U holding
    the labels of y in order and T blanks, the last symbol being a blank.
    There are C(T+U-1, U) of them.
    '''
    y = tuple(y)
    _guard(frames, y)
    slots = frames + len(y) - 1
    found = []
    for positions in itertools.combinations(range(slots), len(y)):
        a = [BLANK_ID] * (slots + 1)
        for pos, label in zip(positions, y):
            a[pos] = label
        found.append(tuple(a))
    return found


def _check_alignment(lat, y, alignment):
    if len(alignment) != lat.frames + len(y):
        raise UsageError('alignment of length {0}, expected T + U = '
                         '{1}'.format(len(alignment), lat.frames + len(y)))
    if alignment[-1] != BLANK_ID:
        raise UsageError('alignment must end with a blank')
    if remove_blanks(alignment, lat.classes - 1) != y:
        raise UsageError('alignment does not reduce to the label sequence')


def alignment_log_prob(lat, y, alignment):
    '''
    Log-probability of one path: starting at node (0, 0), a blank consumes a
    frame (t + 1) and a label advances the output position (u + 1); the
    result is the sum of the T + U log-probabilities met on the way.
    '''
    y = check_labels(lat, y)
    alignment = tuple(alignment)
    _check_alignment(lat, y, alignment)
    values = lat.values
    t = u = 0
    total = 0.0
    for k in alignment:
        total += values[t, u, k]
        if k == BLANK_ID:
            t += 1
        else:
            u += 1
    return float(total)


def rnnt_loss_brute(lat, y):
    '''log Pr(y|x) by summing every alignment; the loss is its negation.'''
    y = check_labels(lat, y)
    _guard(lat.frames, y)
    return logsumexp([alignment_log_prob(lat, y, a)
                      for a in enumerate_alignments(lat.frames, y)])
