#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from .greedy import DecodeConfig, ModelScorer, greedy_search, greedy_decode, \
    decode_image, decode_batch
