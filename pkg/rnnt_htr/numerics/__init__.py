#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from .logspace import logsumexp, log_add, log_softmax, log_softmax_backward
from .layers import LstmState, affine_forward, affine_backward, \
    lstm_step, lstm_step_forward, lstm_step_backward, \
    lstm_sequence_forward, lstm_sequence_backward, dropout_mask, \
    layer_norm, layer_norm_forward, layer_norm_backward, \
    channel_norm_forward, channel_norm_backward, conv2d_forward, \
    conv2d_backward, relu_forward, relu_backward, max_pool_forward, \
    max_pool_backward, embedding_forward, embedding_backward, sigmoid, \
    pooled_extent
