#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from .vocab import Vocab
from .alignment import LogitLattice, check_labels, remove_blanks, \
    enumerate_alignments, alignment_log_prob, rnnt_loss_brute
from .transducer import AlphaBetaTables, rnnt_forward, rnnt_backward, \
    rnnt_tables, transition_posteriors, rnnt_grad, rnnt_logit_grad, \
    rnnt_loss_and_grad
