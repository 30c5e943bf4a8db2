#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from .params import ConvBlock, ModelConfig, ModelParams, init_params, \
    check_params
from .network import visual_encode, encode_features, linguistic_encode, \
    linguistic_initial_state, linguistic_step, joint, forward_lattice, \
    backward_pass, loss_and_grad, LatticeCache
from .checkpoint import Checkpoint, save_checkpoint, load_checkpoint, \
    encode_checkpoint, decode_checkpoint
