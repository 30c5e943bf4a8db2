#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from .optim import TrainConfig, OptState, lr_at, clip_by_global_norm, \
    adam_step
from .metrics import edit_distance, cer, corpus_cer
from .loop import EpochRecord, TrainResult, checkpoint_name, evaluate, \
    format_record, train_run
