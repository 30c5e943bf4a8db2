#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import Levenshtein


def edit_distance(hypothesis, reference):
    '''Unit-cost Levenshtein distance over codepoints.'''
    return Levenshtein.distance(hypothesis, reference)


def cer(hypothesis, reference):
    '''
    Character error rate of one line. An empty reference scores 0.0
    against an empty hypothesis and 1.0 against anything else.
    '''
    if not reference:
        return 0.0 if not hypothesis else 1.0
    return edit_distance(hypothesis, reference) / len(reference)


def corpus_cer(pairs):
    '''Total edits over total reference length for (hypothesis, reference).'''
    edits = length = 0
    for hypothesis, reference in pairs:
        edits += edit_distance(hypothesis, reference)
        length += len(reference)
    if length == 0:
        return 0.0 if edits == 0 else 1.0
    return edits / length
